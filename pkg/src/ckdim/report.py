"""Machine and text renderings of a verdict.

The machine document is JSON with sorted keys and a fixed layout::

    {
      "schema": "ckdim.report",
      "schema_version": 1,
      "tool": {"name": "ckdim", "version": "0.1.0"},
      "scenario": {...},            # Scenario.echo()
      "annotations": [...],         # assumptions the verdict rests on
      "provenance": {...},          # where every input number came from
      "verdict": {"outcome": "crossover" | "divergence" | "inconclusive", ...},
      "stamp": "..."                # only with --stamp
    }

Crossover verdicts carry the full ledger at ``n_min``; every row names the
provenance of its ``dim Z_X,n`` (closed-form, oracle, user-supplied).
Divergence verdicts carry the growth sum and the ordered comparison chain.
"""

from __future__ import annotations

import json

from . import TOOL_NAME, __version__
from .errors import InvalidParameterError
from .growth import DivergenceCertificate, GrowthSum, Inconclusive
from .ledger import Ledger, zx_spec
from .scenario import ASYMPTOTIC, Case1, Case2, Case3, Case4, Scenario
from .verifier import Crossover, Divergence, Verdict

SCHEMA = "ckdim.report"
SCHEMA_VERSION = 1


def _user_inputs(scenario: Scenario) -> list[str]:
    case = scenario.case
    names: list[str] = []
    if isinstance(case, Case1) and case.h2_poly is not None:
        names.append("h2_poly")
    elif isinstance(case, Case2):
        names.append("R")
    elif isinstance(case, Case3):
        names.append("n0")
        if case.smalln_h1 is not None:
            names.append("smalln_h1")
    elif isinstance(case, Case4) and case.constants is not None:
        names.extend(["A", "c_f0", "c_h2"])
    return names


def provenance(verdict: Verdict) -> dict:
    scenario = verdict.scenario
    doc = {
        "zx_spec": zx_spec(scenario.case).canonical(),
        "user_supplied": _user_inputs(scenario),
    }
    outcome = verdict.outcome
    if isinstance(outcome, Crossover):
        doc["zx_dims"] = sorted({r.zx_provenance for r in outcome.ledger.rows})
    elif scenario.mode == ASYMPTOTIC:
        doc["growth_constants"] = "symbolic"
    return doc


def outcome_to_dict(outcome) -> dict:
    if isinstance(outcome, Crossover):
        return {
            "outcome": "crossover",
            "n_min": outcome.n_min,
            "holds_through_horizon": outcome.holds_through_horizon,
            "codim_by_level": list(outcome.codim_by_level),
            "ledger": outcome.ledger.to_dict(),
        }
    if isinstance(outcome, Divergence):
        return {
            "outcome": "divergence",
            "scale": outcome.scale,
            "growth_sum": outcome.growth_sum.to_list(),
            "certificate": outcome.certificate.to_dict(),
        }
    if isinstance(outcome, Inconclusive):
        return {"outcome": "inconclusive", "kind": outcome.kind, "reason": outcome.reason}
    raise InvalidParameterError(f"unknown outcome {outcome!r}")


def outcome_from_dict(d: dict):
    kind = d["outcome"]
    if kind == "crossover":
        return Crossover(
            d["n_min"], Ledger.from_dict(d["ledger"]), tuple(d["codim_by_level"]), d["holds_through_horizon"]
        )
    if kind == "divergence":
        return Divergence(
            DivergenceCertificate.from_dict(d["certificate"]), GrowthSum.from_list(d["growth_sum"]), d["scale"]
        )
    if kind == "inconclusive":
        return Inconclusive(d["kind"], d["reason"])
    raise InvalidParameterError(f"unknown outcome {kind!r}")


def report_document(verdict: Verdict, stamp: str | None = None) -> dict:
    doc = {
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": TOOL_NAME, "version": __version__},
        "scenario": verdict.scenario.echo(),
        "annotations": list(verdict.annotations),
        "provenance": provenance(verdict),
        "verdict": outcome_to_dict(verdict.outcome),
    }
    if stamp is not None:
        doc["stamp"] = stamp
    return doc


def emit_machine(verdict: Verdict, stamp: str | None = None) -> str:
    return json.dumps(report_document(verdict, stamp), sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> Verdict:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise InvalidParameterError("not a ckdim report")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise InvalidParameterError(f"unsupported schema version {doc.get('schema_version')!r}")
    return Verdict(
        Scenario.from_echo(doc["scenario"]),
        outcome_from_dict(doc["verdict"]),
        tuple(doc["annotations"]),
    )


# ------------------------------------------------------------ text


LEDGER_COLUMNS = ("n", "dim Z_X", "source", "lo", "hi", "m*", "h1<=", "contrib", "rule")


def ledger_table(ledger: Ledger) -> list[str]:
    body = [
        (str(r.n), str(r.zx_dim), r.zx_provenance, str(r.lo), str(r.hi),
         str(r.local_contrib), str(r.h1_upper), str(r.codim_contrib_lower), r.rule)
        for r in ledger.rows
    ]
    widths = [max(len(c), *(len(row[i]) for row in body)) for i, c in enumerate(LEDGER_COLUMNS)]

    def fmt(cells):
        return "  ".join(c.rjust(w) if i not in (2, 8) else c.ljust(w) for i, (c, w) in enumerate(zip(cells, widths)))

    lines = [fmt(LEDGER_COLUMNS).rstrip(), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row).rstrip() for row in body)
    lines.append(f"F^0 upper           {ledger.f0_upper}")
    lines.append(f"local dim (- F^0)   {ledger.local_total}")
    lines.append(f"Selmer upper        {ledger.selmer_upper}")
    lines.append(f"codim lower         {ledger.codim_lower}")
    return lines


def emit_text(verdict: Verdict, stamp: str | None = None) -> str:
    s = verdict.scenario
    params = " ".join(f"{k}={v}" for k, v in sorted(s.case.params().items()) if v is not None)
    lines = [
        f"{TOOL_NAME} {__version__}",
        f"case {s.case.number}: {params}",
        f"mode {s.mode}, target codim {s.target_codim}, horizon {s.horizon}",
    ]
    if stamp is not None:
        lines.append(f"stamp {stamp}")
    lines.append("")
    outcome = verdict.outcome
    if isinstance(outcome, Crossover):
        lines.append(f"CROSSOVER  N_min = {outcome.n_min}")
        if not outcome.holds_through_horizon:
            lines.append(f"note: bound dips below target again before N = {s.horizon}")
        lines.append("")
        lines.extend(ledger_table(outcome.ledger))
    elif isinstance(outcome, Divergence):
        lines.append(f"DIVERGENCE  ({outcome.scale} codimension bound)")
        lines.append(f"growth sum: {outcome.growth_sum}")
        lines.extend(f"  {line}" for line in outcome.certificate.lines())
    else:
        lines.append(f"INCONCLUSIVE  [{outcome.kind}] {outcome.reason}")
    lines.append("")
    lines.append("assumptions:")
    lines.extend(f"  - {a}" for a in verdict.annotations)
    return "\n".join(lines) + "\n"
