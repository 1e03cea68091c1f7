"""Per-degree dimension ledger for the global-vs-local Selmer comparison.

For each degree ``n`` the graded piece ``Z_n`` has unknown dimension ``m`` in
an interval ``[lo, hi]``.  Its net contribution to the codimension lower bound
is ``m - h1_upper(n, m)``, where ``h1_upper`` is a safe upper bound on
``dim H^1(G_T, Z_n)`` supplied by a cost model.  Every cost model is monotone
in ``m`` on the interval, so the worst case sits at an endpoint.  Summing the
worst cases and subtracting the ``F^0`` bound gives a certified lower bound for
the codimension of the global Selmer image in ``Pi_n^dR / F^0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Mapping, Sequence

from .errors import ContractError, InvalidParameterError, InvalidScenarioError, ModeUnavailableError
from .growth import ONE, POS, GrowthTerm, QuadSurd
from .lie_closed import (
    USER_SUPPLIED,
    CMTruncation,
    FreeLCS,
    GradedDims,
    QuotientSpec,
    SurfaceLCS,
    SurfaceMetabelian,
    b1,
    graded_series,
)
from .lie_oracle import IDEAL_MAX_DEGREE, IDEAL_MAX_LETTERS
from .scenario import ASYMPTOTIC, CROSSOVER, Case, Case1, Case2, Case3, Case4, Scenario

SeriesProvider = Callable[[QuotientSpec, int], GradedDims]


@dataclass(frozen=True)
class DimIntervalSeries:
    intervals: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for lo, hi in self.intervals:
            if not 0 <= lo <= hi:
                raise ContractError(f"bad interval [{lo}, {hi}]")

    def __getitem__(self, i):
        return self.intervals[i]

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def as_lists(self) -> list[list[int]]:
        return [[lo, hi] for lo, hi in self.intervals]


def sandwich_interval(zx: Sequence[int] | GradedDims, d: int, degF: int) -> DimIntervalSeries:
    """``[d * zx(n), degF * zx(n)]`` per degree."""
    if d < 1 or degF < 1:
        raise InvalidParameterError("d and degF must be >= 1")
    if d > degF:
        raise InvalidParameterError(f"d={d} exceeds degF={degF}")
    return DimIntervalSeries(tuple((d * z, degF * z) for z in zx))


def zplus_lower(n: int, lo: int) -> int:
    """Lower bound for the complex-conjugation-fixed part: half in odd degree, else nothing."""
    if lo < 0:
        raise InvalidParameterError("dimension bound must be >= 0")
    return lo // 2 if n % 2 else 0


def h1_upper_euler(n: int, m: int, h2_upper: int, zplus_low: int) -> int:
    """Euler characteristic with ``H^0 = 0``: ``h2 + m - zplus``."""
    if min(m, h2_upper, zplus_low) < 0:
        raise InvalidParameterError("inputs must be >= 0")
    if zplus_low > m:
        raise ContractError(f"zplus lower bound {zplus_low} exceeds dimension {m}")
    return h2_upper + m - zplus_low


def h1_upper_soule(n: int, m: int, R: int) -> int:
    """Mixed Tate piece ``Q_p(n)^m``: ``R*m`` in weight 1, 0 in even weight, ``m`` in odd weight >= 3."""
    if n < 1 or m < 0 or R < 0:
        raise InvalidParameterError("need n >= 1, m >= 0, R >= 0")
    if n == 1:
        return R * m
    return 0 if n % 2 == 0 else m


# ------------------------------------------------------------ cost models


@dataclass(frozen=True)
class MixedTate:
    R: int

    rule = "soule"

    def h1_upper(self, n: int, m: int) -> int:
        return h1_upper_soule(n, m, self.R)

    def rule_at(self, n: int) -> str:
        return self.rule


@dataclass(frozen=True)
class EulerChar:
    """Euler-characteristic bound with the odd-degree half rule for ``Z_n^+``.

    ``overrides[n]`` replaces the formula in degree ``n``: an integer is an
    explicit H^1 bound, ``None`` means the trivial bound ``h1 = m``.
    """

    h2_upper: Callable[[int], int]
    overrides: Mapping[int, int | None]

    def h1_upper(self, n: int, m: int) -> int:
        if n in self.overrides:
            bound = self.overrides[n]
            return m if bound is None else bound
        return h1_upper_euler(n, m, self.h2_upper(n), zplus_lower(n, m))

    def rule_at(self, n: int) -> str:
        if n in self.overrides:
            return "trivial" if self.overrides[n] is None else "user-h1"
        return "euler"


def _zero(n: int) -> int:
    return 0


def _poly_h2(poly: Sequence[Fraction], degF: int, g: int) -> Callable[[int], int]:
    def h2(n: int) -> int:
        p = sum(Fraction(c) * n**i for i, c in enumerate(poly))
        if p < 0:
            raise InvalidScenarioError(f"P({n}) = {p} is negative; an H^2 bound must be >= 0")
        return ceil(degF * p * g**n)

    return h2


def cost_model(case: Case) -> MixedTate | EulerChar:
    """The crossover-mode H^1 bound for ``case``; symbolic constants raise."""
    if isinstance(case, Case2):
        return MixedTate(case.R)
    if isinstance(case, Case1):
        if case.h2_poly is None:
            raise ModeUnavailableError("case 1 crossover needs a concrete H^2 polynomial P(n)")
        return EulerChar(_poly_h2(case.h2_poly, case.degF, case.shape.genus), {})
    if isinstance(case, Case3):
        if case.smalln_h1 is None:
            overrides = {n: None for n in range(1, case.n0)}
        else:
            overrides = {n: case.smalln_h1[n - 1] for n in range(1, case.n0)}
        return EulerChar(_zero, overrides)
    if isinstance(case, Case4):
        if case.constants is None:
            raise ModeUnavailableError("case 4 crossover needs constants A, c_h2, c_f0")
        c_h2, e = case.constants.c_h2, 2 * case.gY - 2
        return EulerChar(lambda n: ceil(c_h2 * n**e), {})
    raise InvalidScenarioError(f"unknown case {case!r}")


# ------------------------------------------------------------ graded pieces


def zx_spec(case: Case) -> QuotientSpec:
    """Quotient whose graded pieces are ``Z_{X,n}`` (or ``Z_{Y,n}``) for this case."""
    if isinstance(case, Case1):
        if case.shape.compact:
            return SurfaceLCS(case.shape.genus)
        return FreeLCS(b1(case.shape))
    if isinstance(case, Case2):
        return FreeLCS(case.s - 1)
    if isinstance(case, Case3):
        return CMTruncation()
    if isinstance(case, Case4):
        return SurfaceMetabelian(case.gY)
    raise InvalidScenarioError(f"unknown case {case!r}")


def case4_oracle_limit(case: Case4) -> int:
    """Largest degree the metabelian oracle covers for this genus (0 if none)."""
    return IDEAL_MAX_DEGREE if 2 * case.gY <= IDEAL_MAX_LETTERS else 0


def zx_series(case: Case, N: int, provider: SeriesProvider | None = None) -> list[tuple[int, str]]:
    """``[(dim Z_{X,n}, provenance)]`` for ``n = 1..N``."""
    provider = provider or graded_series
    spec = zx_spec(case)
    if not isinstance(case, Case4):
        series = provider(spec, N)
        return [(d, series.provenance) for d in series.dims]
    limit = min(N, case4_oracle_limit(case))
    out: list[tuple[int, str]] = []
    if limit:
        series = provider(spec, limit)
        out = [(d, series.provenance) for d in series.dims]
    if N > limit:
        if case.constants is None:
            raise ModeUnavailableError(
                f"surface-metabelian dimensions beyond degree {limit} need the constant A"
            )
        A, e = case.constants.A, 2 * case.gY - 1
        out += [(floor(A * n**e), USER_SUPPLIED) for n in range(limit + 1, N + 1)]
    return out


# ------------------------------------------------------------ F^0 bounds


def f0_cumulative_upper(case: Case, N: int, mode: str = CROSSOVER) -> int | GrowthTerm:
    """Upper bound for ``dim F^0 U_N^dR``; a positive growth term when only its order is known."""
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    if isinstance(case, Case2):
        return 0
    if isinstance(case, Case3):
        # F^0 is one-dimensional in degrees 1 and 2 and vanishes afterwards
        return case.degF * min(N, 2)
    if isinstance(case, Case1):
        g = case.shape.genus
        if g == 0:
            return 0
        if mode == ASYMPTOTIC:
            return GrowthTerm(POS, 0 if g >= 2 else 1, QuadSurd(Fraction(g)))
        return case.degF * sum(g**n for n in range(1, N + 1))
    if isinstance(case, Case4):
        if mode == ASYMPTOTIC:
            return GrowthTerm(POS, case.gY + 1, ONE)
        if case.constants is None:
            raise ModeUnavailableError("case 4 crossover needs the F^0 constant c_f0")
        c = case.constants.c_f0
        return sum(ceil(c * n**case.gY) for n in range(1, N + 1))
    raise InvalidScenarioError(f"unknown case {case!r}")


# ------------------------------------------------------------ ledger


@dataclass(frozen=True)
class LedgerRow:
    """One degree of the ledger.

    ``local_contrib`` is the value of ``m`` at the minimizing endpoint and
    ``h1_upper`` the H^1 bound there, so ``codim_contrib_lower`` equals
    ``local_contrib - h1_upper``.
    """

    n: int
    zx_dim: int
    zx_provenance: str
    lo: int
    hi: int
    local_contrib: int
    h1_upper: int
    codim_contrib_lower: int
    rule: str

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "zx_dim": self.zx_dim,
            "zx_provenance": self.zx_provenance,
            "interval": [self.lo, self.hi],
            "local_contrib": self.local_contrib,
            "h1_upper": self.h1_upper,
            "codim_contrib_lower": self.codim_contrib_lower,
            "rule": self.rule,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LedgerRow":
        lo, hi = d["interval"]
        return cls(
            d["n"], d["zx_dim"], d["zx_provenance"], lo, hi,
            d["local_contrib"], d["h1_upper"], d["codim_contrib_lower"], d["rule"],
        )


def _row(n: int, zx: int, provenance: str, lo: int, hi: int, model) -> LedgerRow:
    candidates = []
    for m in (lo, hi):
        h1 = model.h1_upper(n, m)
        candidates.append((m - h1, m, h1))
    value, m, h1 = min(candidates)
    row = LedgerRow(n, zx, provenance, lo, hi, m, h1, value, model.rule_at(n))
    if not (lo <= m <= hi and row.codim_contrib_lower == m - h1):
        raise ContractError(f"inconsistent ledger row {row}")
    return row


def ledger_rows(case: Case, N: int, provider: SeriesProvider | None = None) -> list[LedgerRow]:
    if N < 1:
        raise InvalidParameterError("ledger needs N >= 1")
    model = cost_model(case)
    series = zx_series(case, N, provider)
    intervals = sandwich_interval([z for z, _ in series], case.d, case.field_degree)
    return [
        _row(n, z, prov, lo, hi, model)
        for n, ((z, prov), (lo, hi)) in enumerate(zip(series, intervals), start=1)
    ]


@dataclass(frozen=True)
class Ledger:
    N: int
    rows: tuple[LedgerRow, ...]
    f0_upper: int
    local_total: int
    selmer_upper: int
    codim_lower: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "rows": [r.to_dict() for r in self.rows],
            "f0_upper": self.f0_upper,
            "local_total": self.local_total,
            "selmer_upper": self.selmer_upper,
            "codim_lower": self.codim_lower,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Ledger":
        return cls(
            d["N"], tuple(LedgerRow.from_dict(r) for r in d["rows"]),
            d["f0_upper"], d["local_total"], d["selmer_upper"], d["codim_lower"],
        )


def summarize(case: Case, rows: Sequence[LedgerRow]) -> Ledger:
    """Ledger for the first ``len(rows)`` degrees."""
    N = len(rows)
    if N < 1 or [r.n for r in rows] != list(range(1, N + 1)):
        raise ContractError("ledger rows must cover degrees 1..N contiguously")
    f0 = f0_cumulative_upper(case, N, CROSSOVER)
    local = sum(r.local_contrib for r in rows) - f0
    selmer = sum(r.h1_upper for r in rows)
    total = sum(r.codim_contrib_lower for r in rows) - f0
    if total != local - selmer:
        raise ContractError("ledger totals disagree")
    return Ledger(N, tuple(rows), f0, local, selmer, total)


def build_ledger(case: Case | Scenario, N: int, provider: SeriesProvider | None = None) -> Ledger:
    if isinstance(case, Scenario):
        case = case.case
    return summarize(case, ledger_rows(case, N, provider))


def codim_lower(scenario: Scenario | Case, N: int, provider: SeriesProvider | None = None):
    """``(lower bound, rows)`` for the codimension at level ``N``."""
    ledger = build_ledger(scenario, N, provider)
    return ledger.codim_lower, list(ledger.rows)


def direct_codim(case: Case, assignment: Sequence[int]) -> int:
    """Codimension bound for one concrete choice of ``dim Z_n``, evaluated without the ledger."""
    model = cost_model(case)
    N = len(assignment)
    f0 = f0_cumulative_upper(case, N, CROSSOVER)
    return sum(assignment) - f0 - sum(model.h1_upper(n, m) for n, m in enumerate(assignment, start=1))

