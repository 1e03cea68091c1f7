"""Closed-form graded dimensions of the Lie-algebra quotients used by the verifier.

Everything here is integer arithmetic.  Möbius sums are divided by ``n`` only
after asserting exact divisibility; a remainder means a bug, never rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterator, Sequence

from .errors import ContractError, InvalidParameterError, InvalidShapeError

FREE_LCS = "free-lcs"
SURFACE_LCS = "surface-lcs"
FREE_METABELIAN = "free-metabelian"
SURFACE_METABELIAN = "surface-metabelian"
CM_TRUNCATION = "cm-truncation"

QUOTIENT_KINDS = (FREE_LCS, SURFACE_LCS, FREE_METABELIAN, SURFACE_METABELIAN, CM_TRUNCATION)

CLOSED_FORM = "closed-form"
ORACLE = "oracle"
USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class CurveShape:
    genus: int
    punctures: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.punctures < 0:
            raise InvalidParameterError("genus and punctures must be nonnegative")

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.punctures

    @property
    def hyperbolic(self) -> bool:
        return self.euler_characteristic < 0

    @property
    def compact(self) -> bool:
        return self.punctures == 0


def b1(shape: CurveShape) -> int:
    """First Betti number of a hyperbolic curve: ``2g`` if compact, else ``2g + s - 1``."""
    if not shape.hyperbolic:
        raise InvalidShapeError(
            f"curve of genus {shape.genus} with {shape.punctures} punctures is not hyperbolic"
        )
    if shape.punctures == 0:
        return 2 * shape.genus
    return 2 * shape.genus + shape.punctures - 1


@dataclass(frozen=True)
class QuotientSpec:
    """Which Lie-algebra quotient a dimension series refers to.

    ``param`` is the generator count ``m`` for the free kinds, the genus ``g``
    for the surface kinds, and unused for the CM truncation.
    """

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind not in QUOTIENT_KINDS:
            raise InvalidParameterError(f"unknown quotient kind {self.kind!r}")
        if self.kind == CM_TRUNCATION:
            if self.param is not None:
                raise InvalidParameterError("cm-truncation takes no parameter")
            return
        if self.param is None:
            raise InvalidParameterError(f"{self.kind} needs a parameter")
        if self.kind in (FREE_LCS, FREE_METABELIAN) and self.param < 1:
            raise InvalidParameterError("generator count m must be >= 1")
        if self.kind in (SURFACE_LCS, SURFACE_METABELIAN) and self.param < 2:
            raise InvalidParameterError("surface quotients need genus g >= 2")

    @property
    def generators(self) -> int:
        if self.kind == CM_TRUNCATION:
            return 2
        if self.kind in (SURFACE_LCS, SURFACE_METABELIAN):
            return 2 * self.param
        return self.param

    def canonical(self) -> str:
        if self.kind == CM_TRUNCATION:
            return CM_TRUNCATION
        name = "m" if self.kind in (FREE_LCS, FREE_METABELIAN) else "g"
        return f"{self.kind}({name}={self.param})"

    @classmethod
    def parse(cls, text: str) -> "QuotientSpec":
        text = text.strip()
        if text == CM_TRUNCATION:
            return cls(CM_TRUNCATION)
        kind, _, rest = text.partition("(")
        if not rest.endswith(")") or "=" not in rest:
            raise InvalidParameterError(f"cannot parse quotient spec {text!r}")
        _, _, value = rest[:-1].partition("=")
        return cls(kind, int(value))

    def __str__(self) -> str:
        return self.canonical()


def FreeLCS(m: int) -> QuotientSpec:
    return QuotientSpec(FREE_LCS, m)


def SurfaceLCS(g: int) -> QuotientSpec:
    return QuotientSpec(SURFACE_LCS, g)


def FreeMetabelian(m: int) -> QuotientSpec:
    return QuotientSpec(FREE_METABELIAN, m)


def SurfaceMetabelian(g: int) -> QuotientSpec:
    return QuotientSpec(SURFACE_METABELIAN, g)


def CMTruncation() -> QuotientSpec:
    return QuotientSpec(CM_TRUNCATION)


@dataclass(frozen=True)
class GradedDims:
    """Dimensions of degrees ``1..N``; ``dims[0]`` is degree 1."""

    spec: QuotientSpec | None
    dims: tuple[int, ...]
    provenance: str = CLOSED_FORM
    label: str = field(default="", compare=False)

    def __post_init__(self):
        for value in self.dims:
            if type(value) is not int or value < 0:
                raise ContractError(f"graded dimension {value!r} is not a nonnegative int")

    @property
    def N(self) -> int:
        return len(self.dims)

    def dim(self, n: int) -> int:
        if not 1 <= n <= self.N:
            raise IndexError(f"degree {n} outside 1..{self.N}")
        return self.dims[n - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.dims)

    def __len__(self) -> int:
        return len(self.dims)

    def as_list(self) -> list[int]:
        return list(self.dims)


def _require_positive(**values: int) -> None:
    for name, value in values.items():
        if value < 1:
            raise InvalidParameterError(f"{name} must be >= 1, got {value}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; degrees stay small."""
    _require_positive(n=n)
    factors: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def mobius(n: int) -> int:
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    _require_positive(n=n)
    small = [d for d in range(1, int(n**0.5) + 2) if d * d <= n and n % d == 0]
    large = [n // d for d in reversed(small) if d * d != n]
    return small + large


def _exact_div(total: int, n: int, what: str) -> int:
    q, r = divmod(total, n)
    if r:
        raise ContractError(f"{what}: Möbius sum {total} not divisible by {n}")
    return q


def witt_dim(m: int, n: int) -> int:
    """Dimension of the degree-``n`` part of the free Lie algebra on ``m`` generators."""
    _require_positive(m=m, n=n)
    total = sum(mobius(d) * m ** (n // d) for d in divisors(n))
    return _exact_div(total, n, f"witt_dim({m}, {n})")


def labute_trace(g: int, n: int) -> int:
    """``alpha^n + beta^n`` for the roots of ``x^2 - 2g x + 1``, via the integer recurrence."""
    if n < 0:
        raise InvalidParameterError("n must be >= 0")
    prev, cur = 2, 2 * g
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2 * g * cur - prev
    return cur


def labute_traces(g: int, n_max: int) -> list[int]:
    """``[a_0, a_1, ..., a_{n_max}]`` in one pass."""
    seq = [2, 2 * g]
    while len(seq) <= n_max:
        seq.append(2 * g * seq[-1] - seq[-2])
    return seq[: n_max + 1]


def surface_lcs_dim(g: int, n: int) -> int:
    """Graded dimension of the lower central series of a genus-``g`` surface group."""
    if g < 2:
        raise InvalidParameterError(f"surface_lcs_dim needs g >= 2, got {g}")
    _require_positive(n=n)
    a = labute_traces(g, n)
    total = sum(mobius(n // d) * a[d] for d in divisors(n))
    return _exact_div(total, n, f"surface_lcs_dim({g}, {n})")


def free_metabelian_dim(m: int, n: int) -> int:
    _require_positive(m=m, n=n)
    if n == 1:
        return m
    return (n - 1) * comb(m + n - 2, n)


def cm_truncation_dim(n: int) -> int:
    # degree 2 is spanned by [e, f] alone; the oracle agrees
    _require_positive(n=n)
    return 1 if n == 2 else 2


def _closed_form(spec: QuotientSpec) -> Callable[[int], int] | None:
    if spec.kind == FREE_LCS:
        return lambda n: witt_dim(spec.param, n)
    if spec.kind == SURFACE_LCS:
        return lambda n: surface_lcs_dim(spec.param, n)
    if spec.kind == FREE_METABELIAN:
        return lambda n: free_metabelian_dim(spec.param, n)
    if spec.kind == CM_TRUNCATION:
        return cm_truncation_dim
    return None


def has_closed_form(spec: QuotientSpec) -> bool:
    return _closed_form(spec) is not None


def graded_series(spec: QuotientSpec, N: int) -> GradedDims:
    """Dimensions of degrees ``1..N`` for ``spec``.

    Surface-metabelian quotients have no closed form and are delegated to the
    brute-force oracle, which raises :class:`FeasibilityError` past its envelope.
    """
    _require_positive(N=N)
    formula = _closed_form(spec)
    if formula is None:
        from .lie_oracle import metabelian_dims_oracle, surface_relator

        g = spec.param
        oracle = metabelian_dims_oracle(2 * g, N, surface_relator(g))
        return GradedDims(spec, oracle.dims, ORACLE)
    return GradedDims(spec, tuple(formula(n) for n in range(1, N + 1)), CLOSED_FORM)


def necklace_sum(values: Sequence[int], n: int) -> int:
    """``sum_{d | n} d * values[d-1]``; the inverse of the Möbius step."""
    return sum(d * values[d - 1] for d in divisors(n))
