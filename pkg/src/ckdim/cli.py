"""Command-line front end.

Exit status: 0 success (for ``verify``/``growth``: a verdict was obtained),
1 inconclusive or horizon exhausted, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Sequence

from . import TOOL_NAME, __version__
from .cache import DimsCache
from .errors import CacheMismatchError, CkdimError, FeasibilityError, InvalidParameterError, ModeUnavailableError
from .growth import NEG, POS, GrowthSum, GrowthTerm, Inconclusive, NoneWithinHorizon, QuadSurd, crossover, diverges, surd
from .lie_closed import (
    CM_TRUNCATION,
    FREE_LCS,
    FREE_METABELIAN,
    SURFACE_LCS,
    SURFACE_METABELIAN,
    CMTruncation,
    FreeLCS,
    FreeMetabelian,
    QuotientSpec,
    SurfaceLCS,
    SurfaceMetabelian,
    graded_series,
    has_closed_form,
)
from .lie_oracle import format_dims, oracle_series
from .report import emit_machine, emit_text
from .scenario_file import build_scenario, load_scenario_file
from .verifier import (
    ChabautyParams,
    chabauty_check,
    restriction_params,
    unlikely_codim_check,
    verify_dimension_hypothesis,
)

EXIT_OK, EXIT_INCONCLUSIVE, EXIT_INVALID = 0, 1, 2

QUOTIENTS = {
    "free": FREE_LCS,
    "surface": SURFACE_LCS,
    "free-metabelian": FREE_METABELIAN,
    "surface-metabelian": SURFACE_METABELIAN,
    "cm": CM_TRUNCATION,
}

# formula-vs-oracle pairs checked by default
ORACLE_MATRIX = (
    (FreeLCS(2), 8),
    (FreeLCS(3), 6),
    (SurfaceLCS(2), 5),
    (SurfaceLCS(3), 4),
    (FreeMetabelian(2), 6),
    (FreeMetabelian(3), 6),
    (FreeMetabelian(4), 6),
    (CMTruncation(), 10),
)


class UsageError(InvalidParameterError):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}") from exc


def _fraction_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_fraction(x) for x in text.split(",")) if text.strip() else ()


def _quotient_spec(args) -> QuotientSpec:
    kind = QUOTIENTS[args.quotient]
    if kind in (FREE_LCS, FREE_METABELIAN):
        if args.m is None:
            raise UsageError(f"--quotient {args.quotient} needs --m")
        return QuotientSpec(kind, args.m)
    if kind in (SURFACE_LCS, SURFACE_METABELIAN):
        if args.g is None:
            raise UsageError(f"--quotient {args.quotient} needs --g")
        return QuotientSpec(kind, args.g)
    return CMTruncation()


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------ dims / oracle-check


def cmd_dims(args) -> int:
    spec = _quotient_spec(args)
    if args.N < 1:
        raise UsageError("--N must be >= 1")
    series = oracle_series(spec, args.N) if args.source == "oracle" else graded_series(spec, args.N)
    if args.format == "machine":
        doc = {"spec": spec.canonical(), "provenance": series.provenance, "dims": list(series.dims)}
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    else:
        _emit(format_dims(series), args.output)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if args.quotient is not None:
        spec = _quotient_spec(args)
        if not has_closed_form(spec):
            raise UsageError(f"{spec.canonical()} has no closed form to check")
        matrix = [(spec, args.N or 5)]
    else:
        matrix = list(ORACLE_MATRIX)
    lines = [f"{'spec':<22} {'n':>3} {'formula':>9} {'oracle':>9}  status"]
    failures = 0
    for spec, N in matrix:
        closed = graded_series(spec, N).dims
        oracle = oracle_series(spec, N).dims
        for n, (a, b) in enumerate(zip(closed, oracle), start=1):
            ok = a == b
            failures += not ok
            lines.append(f"{spec.canonical():<22} {n:>3} {a:>9} {b:>9}  {'ok' if ok else 'DIFF'}")
    lines.append(f"{failures} mismatches")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK if failures == 0 else EXIT_INCONCLUSIVE


# ------------------------------------------------------------ verify


SCENARIO_FLAGS = ("case", "g", "s", "d", "degF", "degFprime", "R", "n0", "smalln_h1",
                  "gY", "A", "c_h2", "c_f0", "h2_poly", "target", "mode", "horizon")


def _stamp(args) -> str | None:
    if args.stamp is None:
        return None
    if args.stamp == "now":
        return datetime.now(timezone.utc).isoformat(timespec="seconds")
    return args.stamp


def _provider(args):
    if args.no_cache:
        return None
    if args.cache_dir:
        return DimsCache(args.cache_dir, verify=args.verify_cache)
    return DimsCache.from_env(verify=args.verify_cache)


def cmd_verify(args) -> int:
    overrides = {k: getattr(args, k) for k in SCENARIO_FLAGS}
    if args.scenario:
        scenario = load_scenario_file(args.scenario, overrides)
    else:
        scenario = build_scenario({k: v for k, v in overrides.items() if v is not None})
    verdict = verify_dimension_hypothesis(scenario, _provider(args))
    stamp = _stamp(args)
    text = emit_machine(verdict, stamp) if args.format == "machine" else emit_text(verdict, stamp)
    _emit(text, args.output)
    return EXIT_OK if verdict.obtained else EXIT_INCONCLUSIVE


# ------------------------------------------------------------ chabauty / codim


def cmd_chabauty(args) -> int:
    if args.gX is not None:
        if args.g is not None or args.d is not None:
            raise UsageError("give either --gX/--degF or --g/--d")
        if args.degF is None:
            raise UsageError("--gX needs --degF")
        params = restriction_params(args.gX, args.degF, args.r, args.delta)
    else:
        if args.g is None or args.d is None:
            raise UsageError("chabauty needs --gX/--degF or --g/--d")
        params = ChabautyParams(args.g, args.d, args.r, args.delta)
    rep = chabauty_check(params)
    if args.format == "machine":
        doc = {
            "params": {"g": params.g, "d": params.d, "r": params.r, "delta": params.delta},
            "holds": rep.holds,
            "slack": rep.slack,
            "text": rep.text,
        }
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    else:
        status = "holds" if rep.holds else "fails"
        _emit(
            f"g={params.g} d={params.d} r={params.r} delta={params.delta}\n"
            f"{status}, slack {rep.slack}\n{rep.text}\n",
            args.output,
        )
    return EXIT_OK


def cmd_codim(args) -> int:
    rep = unlikely_codim_check(args.dimX, args.dimLocal, args.codimZ)
    if args.format == "machine":
        doc = {
            "dimX": rep.dimX, "dimLocal": rep.dimLocal, "codimZ": rep.codimZ,
            "triggers": rep.triggers, "codim_W_lower": rep.codim_W_lower,
            "dim_W_upper": rep.dim_W_upper, "text": rep.text,
        }
        _emit(json.dumps(doc, sort_keys=True) + "\n", args.output)
    else:
        _emit(f"{'triggers' if rep.triggers else 'does not trigger'}\n{rep.text}\n", args.output)
    return EXIT_OK


# ------------------------------------------------------------ growth


_FRAC = r"\d+(?:/\d+)?"
_BASE = re.compile(
    rf"^(?P<a>[+-]?{_FRAC})?(?:(?P<sign>[+-])(?:(?P<b>{_FRAC})\*)?sqrt\((?P<D>\d+)\))?$"
)


def parse_base(text: str) -> QuadSurd:
    """``"3"``, ``"2+sqrt(3)"``, ``"1/2+3/4*sqrt(5)"`` and the like."""
    match = _BASE.match(text.replace(" ", ""))
    if not match or (match["a"] is None and match["D"] is None):
        raise UsageError(f"bad growth base {text!r}")
    a = Fraction(match["a"] or 0)
    if match["D"] is None:
        return QuadSurd(a)
    b = Fraction(match["b"] or 1) * (-1 if match["sign"] == "-" else 1)
    return surd(a, b, int(match["D"]))


def parse_term(text: str) -> GrowthTerm:
    """``COEFF:POLYDEG:BASE``; COEFF is a fraction, ``+?`` or ``-?``; POLYDEG may be ``?``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"growth term {text!r} is not COEFF:POLYDEG:BASE")
    c, k, base = (p.strip() for p in parts)
    if c in ("+?", "?"):
        coeff = POS
    elif c == "-?":
        coeff = NEG
    else:
        try:
            coeff = Fraction(c)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad coefficient {c!r}") from exc
    if k == "?":
        polydeg = None
    elif re.fullmatch(r"[+-]?\d+", k):
        polydeg = int(k)
    else:
        raise UsageError(f"bad polynomial degree {k!r}")
    return GrowthTerm(coeff, polydeg, parse_base(base))


def cmd_growth(args) -> int:
    total = GrowthSum(tuple(parse_term(t) for t in args.term))
    if args.threshold is not None:
        result = crossover(total, args.threshold, args.horizon)
        if isinstance(result, NoneWithinHorizon):
            _emit(f"none within horizon {result.horizon}\n", args.output)
            return EXIT_INCONCLUSIVE
        _emit(f"crossover n = {result}\n", args.output)
        return EXIT_OK
    result = diverges(total)
    if isinstance(result, Inconclusive):
        _emit(f"inconclusive [{result.kind}] {result.reason}\n", args.output)
        return EXIT_INCONCLUSIVE
    if args.format == "machine":
        _emit(json.dumps(result.to_dict(), sort_keys=True) + "\n", args.output)
    else:
        lines = [f"diverges; dominant term {result.dominant}"] + [f"  {x}" for x in result.lines()]
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


# ------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog=TOOL_NAME, description="Exact dimension bookkeeping for Selmer varieties.")
    parser.add_argument("--version", action="version", version=f"{TOOL_NAME} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "machine")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", "-o", help="write to this file instead of stdout")

    p = sub.add_parser("dims", help="graded dimension table of a Lie algebra quotient")
    p.add_argument("--quotient", choices=sorted(QUOTIENTS), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--source", choices=("closed", "oracle"), default="closed",
                   help="closed form where one exists, or the linear-algebra oracle")
    common(p)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("oracle-check", help="compare closed forms with the oracle")
    p.add_argument("--quotient", choices=sorted(QUOTIENTS))
    p.add_argument("--m", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("verify", help="check the dimension hypothesis for a scenario")
    p.add_argument("--scenario", help="key = value scenario file; flags override its entries")
    p.add_argument("--case", type=int, choices=(1, 2, 3, 4))
    for name in ("g", "s", "d", "degF", "degFprime", "R", "n0", "gY", "horizon"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--target", "--target-codim", dest="target", type=int)
    p.add_argument("--mode", choices=("crossover", "asymptotic"))
    p.add_argument("--smalln-h1", dest="smalln_h1", type=_int_list)
    p.add_argument("--h2-poly", dest="h2_poly", type=_fraction_list)
    p.add_argument("--A", type=_fraction)
    p.add_argument("--c-h2", dest="c_h2", type=_fraction)
    p.add_argument("--c-f0", dest="c_f0", type=_fraction)
    p.add_argument("--stamp", nargs="?", const="now", help="add a stamp (default: current UTC time)")
    p.add_argument("--cache-dir", help="dimension cache directory (default: $CKDIM_CACHE_DIR)")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--verify-cache", action="store_true", help="recompute every cache hit and compare")
    common(p, ("machine", "text"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chabauty", help="abelian Chabauty rank condition")
    for name in ("gX", "degF", "g", "d"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_chabauty)

    p = sub.add_parser("codim", help="codimension bookkeeping for an unlikely intersection")
    p.add_argument("--dimX", type=int, required=True)
    p.add_argument("--dimLocal", type=int, required=True)
    p.add_argument("--codimZ", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_codim)

    p = sub.add_parser("growth", help="decide divergence of a sum of growth terms")
    p.add_argument("--term", action="append", required=True, metavar="COEFF:POLYDEG:BASE",
                   help="repeatable; write --term=-?:0:2 when COEFF starts with a minus sign")
    p.add_argument("--threshold", type=_fraction, help="find the crossover with this threshold instead")
    p.add_argument("--horizon", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_growth)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InvalidParameterError, ModeUnavailableError, FeasibilityError) as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CacheMismatchError as exc:
        print(f"{TOOL_NAME}: cache error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CkdimError as exc:
        print(f"{TOOL_NAME}: internal error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
