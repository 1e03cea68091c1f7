"""Flat ``key = value`` scenario files.

Grammar, one entry per line::

    # comment (also allowed after a value)
    case = 2
    s = 3
    d = 1
    degF = 1
    R = 2
    target = 1
    mode = crossover
    horizon = 20

Integers are parsed exactly; ``A``, ``c_h2``, ``c_f0`` accept fractions like
``3/2``; ``h2_poly`` (fractions) and ``smalln_h1`` (integers) are comma lists,
lowest-degree coefficient first.  Keys that are unknown, repeated, or do not
belong to the chosen case are errors reported as ``path:line:col``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping

from .errors import InvalidScenarioError, ScenarioFileError
from .lie_closed import CurveShape
from .scenario import DEFAULT_HORIZON, Case1, Case2, Case3, Case4, Case4Constants, Scenario

INT_KEYS = {"case", "g", "s", "d", "degF", "degFprime", "R", "n0", "gY", "target", "horizon"}
FRACTION_KEYS = {"A", "c_h2", "c_f0"}
INT_LIST_KEYS = {"smalln_h1"}
FRACTION_LIST_KEYS = {"h2_poly"}
STRING_KEYS = {"mode"}
ALIASES = {"target_codim": "target"}
KNOWN_KEYS = INT_KEYS | FRACTION_KEYS | INT_LIST_KEYS | FRACTION_LIST_KEYS | STRING_KEYS | set(ALIASES)

COMMON_KEYS = {"case", "d", "target", "mode", "horizon"}
CASE_KEYS = {
    1: {"g", "s", "degF", "h2_poly"},
    2: {"s", "degF", "R"},
    3: {"degF", "n0", "smalln_h1"},
    4: {"gY", "degFprime", "degF", "A", "c_h2", "c_f0"},
}

_INT = re.compile(r"[+-]?\d+")
_FRACTION = re.compile(r"[+-]?\d+(?:/\d+)?")
_KEY = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class Entry:
    value: Any
    line: int
    column: int


def _convert(key: str, raw: str, fail) -> Any:
    if key in INT_KEYS:
        if not _INT.fullmatch(raw):
            fail(f"{key} needs an integer, got {raw!r}")
        return int(raw)
    if key in FRACTION_KEYS:
        if not _FRACTION.fullmatch(raw):
            fail(f"{key} needs an integer or fraction p/q, got {raw!r}")
        return Fraction(raw)
    if key in INT_LIST_KEYS or key in FRACTION_LIST_KEYS:
        if raw == "":
            return ()
        pattern, kind = (_INT, int) if key in INT_LIST_KEYS else (_FRACTION, Fraction)
        items = [item.strip() for item in raw.split(",")]
        for item in items:
            if not pattern.fullmatch(item):
                fail(f"bad entry {item!r} in {key}")
        return tuple(kind(item) for item in items)
    return raw


def parse_scenario_text(text: str, path: str = "<scenario>") -> dict[str, Entry]:
    entries: dict[str, Entry] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        key_col = len(body) - len(body.lstrip()) + 1
        if "=" not in body:
            raise ScenarioFileError("expected 'key = value'", lineno, key_col, path)
        key_part, _, value_part = body.partition("=")
        key = key_part.strip()
        if not _KEY.fullmatch(key):
            raise ScenarioFileError(f"bad key {key!r}", lineno, key_col, path)
        if key not in KNOWN_KEYS:
            raise ScenarioFileError(f"unknown key {key!r}", lineno, key_col, path)
        key = ALIASES.get(key, key)
        if key in entries:
            first = entries[key].line
            raise ScenarioFileError(f"duplicate key {key!r} (first set on line {first})", lineno, key_col, path)
        raw = value_part.strip()
        value_col = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if raw == "" and key not in INT_LIST_KEYS | FRACTION_LIST_KEYS:
            raise ScenarioFileError(f"missing value for {key!r}", lineno, value_col, path)

        def fail(message: str, _line=lineno, _col=value_col):
            raise ScenarioFileError(message, _line, _col, path)

        entries[key] = Entry(_convert(key, raw, fail), lineno, key_col)
    return entries


def check_case_keys(entries: Mapping[str, Entry], path: str = "<scenario>") -> None:
    if "case" not in entries:
        raise ScenarioFileError("missing required key 'case'", 1, 1, path)
    case = entries["case"].value
    if case not in CASE_KEYS:
        e = entries["case"]
        raise ScenarioFileError(f"case must be 1, 2, 3 or 4, got {case}", e.line, e.column, path)
    allowed = COMMON_KEYS | CASE_KEYS[case]
    for key, e in entries.items():
        if key not in allowed:
            raise ScenarioFileError(f"key {key!r} does not apply to case {case}", e.line, e.column, path)


def load_scenario_text(text: str, path: str = "<scenario>") -> dict[str, Any]:
    entries = parse_scenario_text(text, path)
    check_case_keys(entries, path)
    return {k: e.value for k, e in entries.items()}


def build_scenario(values: Mapping[str, Any]) -> Scenario:
    """Scenario from already-typed values (file entries merged with CLI overrides)."""
    values = dict(values)
    case_no = values.pop("case", None)
    if case_no not in CASE_KEYS:
        raise InvalidScenarioError("scenario needs case = 1, 2, 3 or 4")
    stray = set(values) - COMMON_KEYS - CASE_KEYS[case_no]
    if stray:
        raise InvalidScenarioError(f"parameters {sorted(stray)} do not apply to case {case_no}")

    def need(key):
        if values.get(key) is None:
            raise InvalidScenarioError(f"case {case_no} needs {key}")
        return values[key]

    d = need("d")
    if case_no == 1:
        case = Case1(CurveShape(need("g"), values.get("s") or 0), d, need("degF"), values.get("h2_poly"))
    elif case_no == 2:
        case = Case2(need("s"), d, need("degF"), need("R"))
    elif case_no == 3:
        case = Case3(d, need("degF"), need("n0"), values.get("smalln_h1"))
    else:
        if values.get("degF") is not None and values.get("degFprime") is not None:
            raise InvalidScenarioError("give degFprime or its alias degF, not both")
        deg = values.get("degFprime") if values.get("degFprime") is not None else values.get("degF")
        if deg is None:
            raise InvalidScenarioError("case 4 needs degFprime")
        given = [values.get(k) is not None for k in ("A", "c_h2", "c_f0")]
        if any(given) and not all(given):
            raise InvalidScenarioError("case 4 constants A, c_h2, c_f0 must be given together")
        consts = Case4Constants(values["A"], values["c_h2"], values["c_f0"]) if all(given) else None
        case = Case4(need("gY"), d, deg, consts)
    kwargs = {}
    if values.get("mode") is not None:
        kwargs["mode"] = values["mode"]
    return Scenario(
        case,
        values.get("target"),
        horizon=values.get("horizon") if values.get("horizon") is not None else DEFAULT_HORIZON,
        **kwargs,
    )


def load_scenario_file(path: str, overrides: Mapping[str, Any] | None = None) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        values = load_scenario_text(fh.read(), path)
    for key, value in (overrides or {}).items():
        if value is not None:
            values[key] = value
    return build_scenario(values)
