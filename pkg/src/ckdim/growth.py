"""Exact exponential-polynomial growth orders ``c * n^k * beta^n``.

Bases are real quadratic surds ``a + b*sqrt(D)``, compared exactly: signs come
from rational arithmetic plus squaring, never from floating point.
Coefficients are either exact rationals or :class:`Unknown` constants of known
sign, so divergence can be certified where only big-O information exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .errors import AmbiguousDominanceError, InvalidParameterError, ModeUnavailableError
from .lie_closed import factorize


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def squarefree_part(D: int) -> tuple[int, int]:
    """``D = s^2 * r`` with ``r`` squarefree; returns ``(s, r)``."""
    if D < 0:
        raise InvalidParameterError("radicand must be nonnegative")
    if D == 0:
        return 0, 0
    s, r = 1, 1
    for p, e in factorize(D).items():
        s *= p ** (e // 2)
        r *= p ** (e % 2)
    return s, r


@total_ordering
@dataclass(frozen=True)
class QuadSurd:
    """``a + b*sqrt(D)`` with ``D`` squarefree (``D = 0`` forces ``b = 0``)."""

    a: Fraction
    b: Fraction = Fraction(0)
    D: int = 0

    def __post_init__(self):
        a, b, D = Fraction(self.a), Fraction(self.b), self.D
        if D < 0:
            raise InvalidParameterError("radicand must be nonnegative")
        if D in (0, 1):
            a, b, D = a + b * D, Fraction(0), 0
        elif squarefree_part(D)[0] != 1:
            raise InvalidParameterError(f"radicand {D} is not squarefree; use surd()")
        if b == 0:
            D = 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    @property
    def is_rational(self) -> bool:
        return self.D == 0

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger square wins; equality is impossible for squarefree D > 1
        return sa if self.a * self.a > self.b * self.b * self.D else sb

    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadSurd(Fraction(other))
        return NotImplemented

    def _field(self, other: "QuadSurd") -> int:
        if self.D and other.D and self.D != other.D:
            raise InvalidParameterError(
                f"cannot combine sqrt({self.D}) and sqrt({other.D}) in one quadratic field"
            )
        return self.D or other.D

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadSurd(self.a + other.a, self.b + other.b, self._field(other))

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.a, -self.b, self.D)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        D = self._field(other)
        return QuadSurd(
            self.a * other.a + self.b * other.b * D,
            self.a * other.b + self.b * other.a,
            D,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero surd")
        num = self * other.conjugate()
        return QuadSurd(num.a / n, num.b / n, num.D)

    def __pow__(self, k: int) -> "QuadSurd":
        if k < 0:
            return QuadSurd(Fraction(1)) / (self ** (-k))
        result, base = QuadSurd(Fraction(1)), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __lt__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return surd_compare(self, other) < 0

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self.a, self.b, self.D) == (other.a, other.b, other.D)

    def __hash__(self):
        return hash((self.a, self.b, self.D))

    def __str__(self) -> str:
        if self.D == 0:
            return str(self.a)
        root = f"sqrt({self.D})"
        mag = abs(self.b)
        term = root if mag == 1 else f"{mag}*{root}"
        if self.a == 0:
            return term if self.b > 0 else f"-{term}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{term}"

    def to_dict(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "D": self.D}

    @classmethod
    def from_dict(cls, d: dict) -> "QuadSurd":
        return cls(Fraction(d["a"]), Fraction(d["b"]), int(d["D"]))


def surd(a, b=0, radicand: int = 0) -> QuadSurd:
    """Build ``a + b*sqrt(radicand)``, pulling square factors out of the radicand."""
    s, r = squarefree_part(radicand)
    return QuadSurd(Fraction(a), Fraction(b) * s, r)


def _sign_two_radicals(p: Fraction, q: Fraction, D1: int, r: Fraction, D2: int) -> int:
    """Sign of ``p + q*sqrt(D1) + r*sqrt(D2)``."""
    A = QuadSurd(p, q, D1)
    sA, sB = A.sign(), _sign(r)
    if sA == 0 or sA == sB:
        return sB if sA == 0 else sA
    if sB == 0:
        return sA
    # A and r*sqrt(D2) have opposite signs: compare squares
    diff = A * A - QuadSurd(r * r * D2)
    s = diff.sign()
    if s == 0:
        return 0
    return sA if s > 0 else sB


def surd_compare(x: QuadSurd, y: QuadSurd) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    if x.D == y.D or x.D == 0 or y.D == 0:
        return (x - y).sign()
    return _sign_two_radicals(x.a - y.a, x.b, x.D, -y.b, y.D)


# ------------------------------------------------------------------ terms


@dataclass(frozen=True)
class Unknown:
    """A constant of unknown magnitude and known sign (+1 or -1)."""

    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidParameterError("Unknown sign must be +1 or -1")

    def __str__(self):
        return "+?" if self.sign > 0 else "-?"


POS = Unknown(1)
NEG = Unknown(-1)

Coefficient = Union[Fraction, Unknown]


def coeff_sign(c: Coefficient) -> int:
    return c.sign if isinstance(c, Unknown) else _sign(c)


ONE = QuadSurd(Fraction(1))


@dataclass(frozen=True)
class GrowthTerm:
    """``coeff * n^polydeg * base^n``.

    ``polydeg`` may be negative (``n^-1`` factors from Witt-type counts) or
    ``None`` for a polynomial factor of unknown finite degree.
    """

    coeff: Coefficient
    polydeg: int | None
    base: QuadSurd = ONE

    def __post_init__(self):
        if not isinstance(self.coeff, Unknown):
            object.__setattr__(self, "coeff", Fraction(self.coeff))
        if not isinstance(self.base, QuadSurd):
            object.__setattr__(self, "base", QuadSurd(Fraction(self.base)))
        if surd_compare(self.base, ONE) < 0:
            raise InvalidParameterError(f"growth base {self.base} is below 1")

    @property
    def concrete(self) -> bool:
        return not isinstance(self.coeff, Unknown) and self.polydeg is not None

    @property
    def sign(self) -> int:
        return coeff_sign(self.coeff)

    def __str__(self) -> str:
        k = "?" if self.polydeg is None else str(self.polydeg)
        return f"{self.coeff}*n^{k}*({self.base})^n"

    def to_dict(self) -> dict:
        coeff = str(self.coeff)
        return {"coeff": coeff, "polydeg": self.polydeg, "base": self.base.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "GrowthTerm":
        c = d["coeff"]
        coeff = POS if c == "+?" else NEG if c == "-?" else Fraction(c)
        return cls(coeff, d["polydeg"], QuadSurd.from_dict(d["base"]))

    def value(self, n: int) -> QuadSurd:
        if not self.concrete:
            raise ModeUnavailableError(f"term {self} has no concrete value")
        return (self.base ** n) * (Fraction(n) ** self.polydeg) * self.coeff


def _merge_key(t: GrowthTerm):
    return (t.base, t.polydeg)


@dataclass(frozen=True)
class GrowthSum:
    terms: tuple[GrowthTerm, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))

    def normalized(self) -> "GrowthSum":
        """Merge concrete coefficients sharing ``(base, polydeg)``; merge same-sign unknowns.

        Zero concrete sums vanish.  Opposite-sign unknowns are kept side by side.
        """
        concrete: dict = {}
        unknown: dict = {}
        order: list = []
        for t in self.terms:
            key = _merge_key(t)
            if key not in concrete and key not in unknown:
                order.append(key)
            if isinstance(t.coeff, Unknown):
                unknown.setdefault(key, set()).add(t.coeff.sign)
            else:
                concrete[key] = concrete.get(key, Fraction(0)) + t.coeff
        out = []
        for key in order:
            base, k = key
            c = concrete.get(key)
            if c:
                out.append(GrowthTerm(c, k, base))
            for s in sorted(unknown.get(key, ()), reverse=True):
                out.append(GrowthTerm(Unknown(s), k, base))
        return GrowthSum(tuple(out))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "GrowthSum") -> "GrowthSum":
        return GrowthSum(self.terms + other.terms)

    def __neg__(self) -> "GrowthSum":
        return GrowthSum(tuple(GrowthTerm(_negate(t.coeff), t.polydeg, t.base) for t in self.terms))

    def to_list(self) -> list[dict]:
        return [t.to_dict() for t in self.terms]

    @classmethod
    def from_list(cls, items: Iterable[dict]) -> "GrowthSum":
        return cls(tuple(GrowthTerm.from_dict(d) for d in items))

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"


def _negate(c: Coefficient) -> Coefficient:
    return Unknown(-c.sign) if isinstance(c, Unknown) else -c


def _top_base(terms: Sequence[GrowthTerm]) -> QuadSurd:
    top = terms[0].base
    for t in terms[1:]:
        if surd_compare(t.base, top) > 0:
            top = t.base
    return top


def _by_base(terms: Sequence[GrowthTerm]) -> list[list[GrowthTerm]]:
    """Group terms by base, largest base first."""
    groups: list[list[GrowthTerm]] = []
    remaining = list(terms)
    while remaining:
        top = _top_base(remaining)
        groups.append([t for t in remaining if surd_compare(t.base, top) == 0])
        remaining = [t for t in remaining if surd_compare(t.base, top) != 0]
    return groups


def dominant_term(total: GrowthSum) -> GrowthTerm:
    """Largest term under (base, polydeg) order; ties with unknown sign are errors."""
    terms = total.normalized().terms
    if not terms:
        if total.terms:
            raise AmbiguousDominanceError("all terms cancel; nothing dominates")
        raise InvalidParameterError("dominant_term of an empty sum")
    group = _by_base(terms)[0]
    if len(group) == 1:
        return group[0]
    if any(t.polydeg is None for t in group):
        raise AmbiguousDominanceError(
            f"terms at base {group[0].base} include a polynomial factor of unknown degree"
        )
    top = max(t.polydeg for t in group)
    tied = [t for t in group if t.polydeg == top]
    if len(tied) > 1:
        raise AmbiguousDominanceError(
            "tie at base {} and degree {} between {}".format(
                group[0].base, top, ", ".join(str(t.coeff) for t in tied)
            )
        )
    return tied[0]


@dataclass(frozen=True)
class Comparison:
    larger: str
    smaller: str
    by: str  # "base" or "polydeg"

    def __str__(self):
        return f"{self.larger} > {self.smaller} ({self.by})"

    def to_dict(self) -> dict:
        return {"larger": self.larger, "smaller": self.smaller, "by": self.by}

    @classmethod
    def from_dict(cls, d: dict) -> "Comparison":
        return cls(d["larger"], d["smaller"], d["by"])


@dataclass(frozen=True)
class DivergenceCertificate:
    """Why a growth sum tends to +infinity.

    ``chain`` lists, from the top down, how each distinct (base, degree) class
    is beaten by the one above it; ``growth`` states why the dominant term itself
    is unbounded.
    """

    dominant: GrowthTerm
    chain: tuple[Comparison, ...]
    growth: str

    def to_dict(self) -> dict:
        return {
            "dominant": self.dominant.to_dict(),
            "chain": [c.to_dict() for c in self.chain],
            "growth": self.growth,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DivergenceCertificate":
        return cls(
            GrowthTerm.from_dict(d["dominant"]),
            tuple(Comparison.from_dict(c) for c in d["chain"]),
            d["growth"],
        )

    def lines(self) -> list[str]:
        return [str(c) for c in self.chain] + [self.growth]


@dataclass(frozen=True)
class Inconclusive:
    kind: str  # "ambiguous", "bounded", "negative"
    reason: str


def _comparison_chain(terms: Sequence[GrowthTerm]) -> tuple[Comparison, ...]:
    chain = []
    groups = _by_base(terms)
    prev_label = None
    for group in groups:
        base = group[0].base
        # an unknown degree inside a beaten base class needs no ordering
        degrees = sorted({t.polydeg for t in group if t.polydeg is not None}, reverse=True)
        if prev_label is not None:
            chain.append(Comparison(prev_label, str(base), "base"))
        for hi, lo in zip(degrees, degrees[1:]):
            chain.append(Comparison(f"n^{hi}", f"n^{lo}", f"polydeg at base {base}"))
        prev_label = str(base)
    return tuple(chain)


def diverges(total: GrowthSum) -> DivergenceCertificate | Inconclusive:
    try:
        top = dominant_term(total)
    except AmbiguousDominanceError as exc:
        return Inconclusive("ambiguous", str(exc))
    if top.sign < 0:
        return Inconclusive("negative", f"dominant term {top} is negative")
    above_one = surd_compare(top.base, ONE) > 0
    if above_one:
        growth = f"{top.base} > 1"
    elif top.polydeg is not None and top.polydeg >= 1:
        growth = f"polydeg {top.polydeg} >= 1 at base 1"
    else:
        return Inconclusive("bounded", f"dominant term {top} stays bounded")
    return DivergenceCertificate(top, _comparison_chain(total.normalized().terms), growth)


@dataclass(frozen=True)
class NoneWithinHorizon:
    horizon: int


def evaluate(total: GrowthSum, n: int) -> QuadSurd:
    """Exact value at ``n``; all radicals must live in one quadratic field."""
    value = QuadSurd(Fraction(0))
    for t in total.terms:
        value = value + t.value(n)
    return value


def crossover(total: GrowthSum, threshold, horizon: int) -> int | NoneWithinHorizon:
    """Least ``n <= horizon`` from which the sum stays ``>= threshold`` through ``horizon``."""
    if horizon < 1:
        raise InvalidParameterError("horizon must be >= 1")
    for t in total.terms:
        if not t.concrete:
            raise ModeUnavailableError(f"term {t} is symbolic; crossover needs concrete coefficients")
    thr = QuadSurd(Fraction(threshold))
    powers = [QuadSurd(Fraction(1))] * len(total.terms)
    start = None
    for n in range(1, horizon + 1):
        value = QuadSurd(Fraction(0))
        for i, t in enumerate(total.terms):
            powers[i] = powers[i] * t.base
            value = value + powers[i] * (Fraction(n) ** t.polydeg) * t.coeff
        if surd_compare(value, thr) >= 0:
            if start is None:
                start = n
        else:
            start = None
    return NoneWithinHorizon(horizon) if start is None else start
