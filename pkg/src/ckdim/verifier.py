"""Verdicts on the dimension hypothesis, the abelian Chabauty condition, and codimension bookkeeping.

Crossover mode searches levels ``1..horizon`` for the first ``N`` whose
certified codimension lower bound reaches the target.  Asymptotic mode
assembles the growth orders of gain and cost and asks the growth algebra for a
divergence certificate.  Nothing here asserts finiteness of integral points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InvalidParameterError
from .growth import (
    NEG,
    ONE,
    POS,
    DivergenceCertificate,
    GrowthSum,
    GrowthTerm,
    Inconclusive,
    QuadSurd,
    diverges,
    surd,
)
from .ledger import (
    Ledger,
    SeriesProvider,
    case4_oracle_limit,
    cost_model,
    f0_cumulative_upper,
    ledger_rows,
    summarize,
)
from .lie_closed import b1
from .scenario import ASYMPTOTIC, Case, Case1, Case2, Case3, Case4, Scenario

CUMULATIVE = "cumulative"
PER_DEGREE = "per-degree"

NO_FINITENESS = "verdict concerns the dimension hypothesis only; finiteness of integral points is not claimed"


@dataclass(frozen=True)
class Crossover:
    n_min: int
    ledger: Ledger
    codim_by_level: tuple[int, ...]
    holds_through_horizon: bool


@dataclass(frozen=True)
class Divergence:
    certificate: DivergenceCertificate
    growth_sum: GrowthSum
    scale: str


Outcome = Union[Crossover, Divergence, Inconclusive]


@dataclass(frozen=True)
class Verdict:
    scenario: Scenario
    outcome: Outcome
    annotations: tuple[str, ...]

    @property
    def obtained(self) -> bool:
        return not isinstance(self.outcome, Inconclusive)


# ------------------------------------------------------------ annotations


def annotations(scenario: Scenario) -> tuple[str, ...]:
    case = scenario.case
    notes: list[str] = []
    crossover = scenario.mode != ASYMPTOTIC
    if isinstance(case, Case1):
        notes.append("conditional on the Fontaine-Mazur conjecture or the Bloch-Kato conjecture (H^2 <= P(n) g^n)")
        notes.append("transport of H^2 bounds from F to Q (corestriction, semisimplicity) is assumed, not modelled")
        if crossover and case.h2_poly is not None:
            poly = ", ".join(str(c) for c in case.h2_poly)
            notes.append(f"H^2 polynomial P(n) coefficients [{poly}] are user-supplied")
        notes.append("F^0 bound uses degF * sum_n g^n (per-level bound summed over degrees)")
    elif isinstance(case, Case2):
        notes.append("mixed Tate graded pieces: Soule vanishing applied per degree")
        notes.append(f"R = dim H^1(G_T, Q_p(1)) = {case.R} is user-supplied")
    elif isinstance(case, Case3):
        notes.append(f"H^2 vanishes from degree n0 = {case.n0} (user-supplied threshold)")
        if case.n0 > 1:
            if case.smalln_h1 is None:
                notes.append("degrees below n0 use the trivial bound h1 = dim (zero net gain)")
            else:
                notes.append("H^1 bounds below n0 are user-supplied")
        notes.append("degree-2 piece of L/L_{>=2,>=2} is 1-dimensional (only [e,f]); series is 2,1,2,2,...")
    elif isinstance(case, Case4):
        if crossover and case.constants is not None:
            notes.append("constants A, c_h2, c_f0 are user-supplied")
            limit = case4_oracle_limit(case)
            notes.append(f"surface-metabelian dimensions from the oracle up to degree {limit}, floor(A n^(2g-1)) beyond")
        notes.append("Z_n^+ >= c dim Z_n with unknown c > 0 in asymptotic mode")
    notes.append(NO_FINITENESS)
    return tuple(notes)


# ------------------------------------------------------------ growth sums


def _poly_degree(poly) -> int | None:
    coeffs = list(poly)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return len(coeffs) - 1 if coeffs else None


def growth_sum(case: Case) -> tuple[GrowthSum, str]:
    """Growth orders of the codimension bound and the scale they describe.

    Cases 1-3 describe the cumulative bound at level ``N``.  Case 4 describes
    the per-degree increment; its divergence implies the cumulative one.
    """
    if isinstance(case, Case1):
        g = case.shape.genus
        gain_base = surd(g, 1, g * g - 1) if case.shape.compact else QuadSurd(Fraction(b1(case.shape)))
        terms = [GrowthTerm(POS, -1, gain_base)]
        if g >= 1:
            cost_base = QuadSurd(Fraction(g))
            if case.h2_poly is None:
                terms.append(GrowthTerm(NEG, None, cost_base))
            else:
                k = _poly_degree(case.h2_poly)
                if k is not None:
                    terms.append(GrowthTerm(NEG, k + (1 if g == 1 else 0), cost_base))
            f0 = f0_cumulative_upper(case, 1, ASYMPTOTIC)
            terms.append(GrowthTerm(NEG, f0.polydeg, f0.base))
        return GrowthSum(tuple(terms)), CUMULATIVE
    if isinstance(case, Case2):
        model = cost_model(case)
        r1 = case.s - 1
        first = min(m - model.h1_upper(1, m) for m in (case.d * r1, case.degF * r1))
        terms = [GrowthTerm(POS, -1, QuadSurd(Fraction(r1)))]
        if first:
            terms.append(GrowthTerm(Fraction(first), 0, ONE))
        return GrowthSum(tuple(terms)), CUMULATIVE
    if isinstance(case, Case3):
        # each odd degree >= n0 gains floor(2d / 2) = d
        return GrowthSum((GrowthTerm(Fraction(case.d, 2), 1, ONE), GrowthTerm(NEG, 0, ONE))), CUMULATIVE
    if isinstance(case, Case4):
        g = case.gY
        return (
            GrowthSum((GrowthTerm(POS, 2 * g - 1, ONE), GrowthTerm(NEG, 2 * g - 2, ONE), GrowthTerm(NEG, g, ONE))),
            PER_DEGREE,
        )
    raise InvalidParameterError(f"unknown case {case!r}")


# ------------------------------------------------------------ verdicts


def _crossover(scenario: Scenario, provider: SeriesProvider | None) -> Outcome:
    case, H, target = scenario.case, scenario.horizon, scenario.target_codim
    rows = ledger_rows(case, H, provider)
    ledgers = [summarize(case, rows[:N]) for N in range(1, H + 1)]
    values = tuple(L.codim_lower for L in ledgers)
    for N, value in enumerate(values, start=1):
        if value >= target:
            stays = all(v >= target for v in values[N - 1 :])
            return Crossover(N, ledgers[N - 1], values, stays)
    return Inconclusive(
        "horizon-exhausted",
        f"codim lower bound stays below {target} for N <= {H} (max {max(values)})",
    )


def _asymptotic(scenario: Scenario) -> Outcome:
    total, scale = growth_sum(scenario.case)
    result = diverges(total)
    if isinstance(result, Inconclusive):
        return result
    return Divergence(result, total.normalized(), scale)


def verify_dimension_hypothesis(scenario: Scenario, provider: SeriesProvider | None = None) -> Verdict:
    if scenario.mode == ASYMPTOTIC:
        outcome = _asymptotic(scenario)
    else:
        outcome = _crossover(scenario, provider)
    return Verdict(scenario, outcome, annotations(scenario))


# ------------------------------------------------------------ abelian Chabauty


@dataclass(frozen=True)
class ChabautyParams:
    g: int
    d: int
    r: int
    delta: int

    def __post_init__(self):
        for name in ("g", "d", "r", "delta"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be >= 0")


@dataclass(frozen=True)
class ChabautyReport:
    params: ChabautyParams
    holds: bool
    slack: int
    text: str


def chabauty_check(params: ChabautyParams) -> ChabautyReport:
    budget = params.g - params.d
    used = params.r + params.delta
    holds = used <= budget
    if holds:
        text = (
            f"r + delta = {used} <= g - d = {budget}: the image of V(Q_p) meets the p-adic closure "
            "of A(Q) inside a finite union of cosets of proper abelian subvarieties of A. "
            "Finiteness of V(Q) does not follow in general."
        )
    else:
        text = f"r + delta = {used} > g - d = {budget}: the condition fails; no conclusion."
    return ChabautyReport(params, holds, budget - used, text)


def restriction_params(gX: int, degF: int, r: int, delta: int) -> ChabautyParams:
    """Albanese data of the restriction of scalars of a genus-``gX`` curve over a degree-``degF`` field."""
    if gX < 2:
        raise InvalidParameterError("restriction of scalars needs a hyperbolic curve, gX >= 2")
    if degF < 1:
        raise InvalidParameterError("degF must be >= 1")
    params = ChabautyParams(degF * gX, degF, r, delta)
    assert params.g - params.d == degF * (gX - 1)
    return params


@dataclass(frozen=True)
class CodimReport:
    dimX: int
    dimLocal: int
    codimZ: int
    triggers: bool
    codim_W_lower: int
    dim_W_upper: int
    text: str


def unlikely_codim_check(dimX: int, dimLocal: int, codimZ: int) -> CodimReport:
    """Does a subvariety ``Z`` of the local space have codimension at least ``dim X``?"""
    if min(dimX, dimLocal, codimZ) < 0:
        raise InvalidParameterError("dimensions must be >= 0")
    if codimZ > dimLocal:
        raise InvalidParameterError(f"codimZ={codimZ} exceeds dimLocal={dimLocal}")
    triggers = codimZ >= dimX
    # V = X x Z has codimension codimZ; the graph has codimension dimLocal
    codim_W = codimZ + dimLocal
    dim_W = max(dimX + dimLocal - codim_W, 0)
    text = f"codim(W) >= codim(V) + codim(Gamma) = {codimZ} + {dimLocal} = {codim_W}; "
    if triggers:
        text += "W is forced to be zero-dimensional away from weakly special loci"
    else:
        text += f"dim W <= {dim_W}; codimension {codimZ} < dim X = {dimX}, no conclusion"
    return CodimReport(dimX, dimLocal, codimZ, triggers, codim_W, dim_W, text)
