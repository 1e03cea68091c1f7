"""Brute-force graded free Lie algebra over Q in the Lyndon basis.

Words are strings over the letters ``"1", "2", ...`` (letter ``i`` is
``chr(ord("1") + i)``), so Python string order is the lexicographic order the
Lyndon theory needs.  A Lyndon word ``w`` stands for its standard bracketing
``P(w)``; Lie elements are sparse maps ``word -> coefficient``.

Brackets of basis elements are rewritten into the basis with the classical
recursion: if ``u < v`` and the standard factorization of ``u`` is
``(u1, u2)`` with ``u2 >= v`` (or ``u`` is a letter), ``[P(u), P(v)] = P(uv)``;
otherwise Jacobi gives ``[[u1, u2], v] = [u1, [u2, v]] - [u2, [u1, v]]``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContractError, FeasibilityError, InvalidParameterError
from .lie_closed import (
    CM_TRUNCATION,
    ORACLE,
    GradedDims,
    QuotientSpec,
)
from .linalg import EchelonBasis, integral

# (max generators, max degree) for ideal saturation; degree-n pieces grow like m^n/n
IDEAL_MAX_LETTERS = 6
IDEAL_MAX_DEGREE = 6
# bracketing and the bigraded oracle work on far smaller pieces
BRACKET_MAX_DEGREE = 16
BIGRADED_MAX_DEGREE = 16


def letter(i: int) -> str:
    return chr(ord("1") + i)


def alphabet(m: int) -> list[str]:
    return [letter(i) for i in range(m)]


def _check_envelope(m: int, N: int, max_letters: int, max_degree: int, what: str) -> None:
    if m > max_letters:
        raise FeasibilityError(
            f"{what}: {m} generators exceeds the envelope of {max_letters}", max_supported=max_degree
        )
    if N > max_degree:
        raise FeasibilityError(
            f"{what}: degree {N} exceeds the envelope; max supported N is {max_degree}",
            max_supported=max_degree,
        )


# ---------------------------------------------------------------- words


def is_lyndon(w: str) -> bool:
    """Strictly smaller than every proper rotation."""
    return len(w) > 0 and all(w < w[i:] + w[:i] for i in range(1, len(w)))


def _duval(m: int, n_max: int) -> Iterator[list[int]]:
    # yields the shared buffer; callers copy what they keep
    w = [-1]
    while w:
        w[-1] += 1
        yield w
        k = len(w)
        while len(w) < n_max:
            w.append(w[len(w) - k])
        while w and w[-1] == m - 1:
            w.pop()


def iter_lyndon_words(m: int, n: int) -> Iterator[str]:
    """Lyndon words of length ``n`` on ``m`` letters, in lexicographic order."""
    if m < 1 or n < 1:
        raise InvalidParameterError("need m >= 1 and n >= 1")
    table = alphabet(m)
    for w in _duval(m, n):
        if len(w) == n:
            yield "".join(map(table.__getitem__, w))


def lyndon_counts(m: int, n_max: int) -> list[int]:
    """``[#Lyndon words of length n for n = 1..n_max]`` from one enumeration."""
    if m < 1 or n_max < 1:
        raise InvalidParameterError("need m >= 1 and n_max >= 1")
    counts = [0] * (n_max + 1)
    for w in _duval(m, n_max):
        counts[len(w)] += 1
    return counts[1:]


@lru_cache(maxsize=None)
def _lyndon_tuple(m: int, n: int) -> tuple[str, ...]:
    return tuple(iter_lyndon_words(m, n))


def lyndon_words(m: int, n: int) -> list[str]:
    return list(_lyndon_tuple(m, n))


@lru_cache(maxsize=None)
def standard_factorization(w: str) -> tuple[str, str]:
    """``(u, v)`` with ``v`` the longest proper Lyndon suffix of ``w``."""
    if len(w) < 2:
        raise InvalidParameterError(f"{w!r} has no standard factorization")
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ContractError(f"no Lyndon suffix in {w!r}")  # pragma: no cover


def bracketing(w: str) -> str:
    """Human-readable standard bracketing, e.g. ``[[1,2],2]``."""
    if len(w) == 1:
        return w
    u, v = standard_factorization(w)
    return f"[{bracketing(u)},{bracketing(v)}]"


# ---------------------------------------------------------------- brackets


@lru_cache(maxsize=None)
def _bracket_words(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if u == v:
        return ()
    if u > v:
        return tuple((w, -c) for w, c in _bracket_words(v, u))
    if len(u) == 1 or standard_factorization(u)[1] >= v:
        return ((u + v, 1),)
    u1, u2 = standard_factorization(u)
    acc: dict[str, int] = {}
    for w, c in _bracket_words(u2, v):
        for x, e in _bracket_words(u1, w):
            acc[x] = acc.get(x, 0) + c * e
    for w, c in _bracket_words(u1, v):
        for x, e in _bracket_words(u2, w):
            acc[x] = acc.get(x, 0) - c * e
    return tuple(sorted((w, c) for w, c in acc.items() if c))


def bracket_words(u: str, v: str) -> dict[str, int]:
    """``[P(u), P(v)]`` in the Lyndon basis, integer coefficients."""
    if len(u) + len(v) > BRACKET_MAX_DEGREE:
        raise FeasibilityError(
            f"bracket degree {len(u) + len(v)} exceeds {BRACKET_MAX_DEGREE}",
            max_supported=BRACKET_MAX_DEGREE,
        )
    if not (is_lyndon(u) and is_lyndon(v)):
        raise InvalidParameterError(f"{u!r} and {v!r} must be Lyndon words")
    return dict(_bracket_words(u, v))


def _bracket_sparse(x: Mapping[str, int], y: Mapping[str, int]) -> dict:
    acc: dict[str, int] = {}
    for u, a in x.items():
        for v, b in y.items():
            for w, c in _bracket_words(u, v):
                acc[w] = acc.get(w, 0) + a * b * c
    return {w: c for w, c in acc.items() if c}


@dataclass(frozen=True)
class LieVector:
    """Homogeneous element of the free Lie algebra, in Lyndon coordinates."""

    degree: int
    coords: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for w, c in self.coords.items():
            if len(w) != self.degree:
                raise InvalidParameterError(f"word {w!r} is not of degree {self.degree}")
            c = Fraction(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "coords", dict(sorted(clean.items())))

    @classmethod
    def basis(cls, word: str) -> "LieVector":
        if not is_lyndon(word):
            raise InvalidParameterError(f"{word!r} is not a Lyndon word")
        return cls(len(word), {word: Fraction(1)})

    @classmethod
    def generator(cls, i: int) -> "LieVector":
        return cls(1, {letter(i): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "LieVector") -> "LieVector":
        if self.degree != other.degree:
            raise InvalidParameterError("cannot add vectors of different degrees")
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, 0) + c
        return LieVector(self.degree, out)

    def __neg__(self) -> "LieVector":
        return LieVector(self.degree, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other: "LieVector") -> "LieVector":
        return self + (-other)

    def __rmul__(self, scalar) -> "LieVector":
        s = Fraction(scalar)
        return LieVector(self.degree, {w: s * c for w, c in self.coords.items()})

    def __hash__(self):
        return hash((self.degree, tuple(self.coords.items())))

    def __eq__(self, other):
        if not isinstance(other, LieVector):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and dict(self.coords) == dict(other.coords)

    def __repr__(self):
        if not self.coords:
            return f"LieVector({self.degree}, 0)"
        terms = " + ".join(f"{c}*{w}" for w, c in self.coords.items())
        return f"LieVector({self.degree}, {terms})"


def bracket(u: LieVector, v: LieVector) -> LieVector:
    """Bilinear extension of the basis bracket."""
    degree = u.degree + v.degree
    if degree > BRACKET_MAX_DEGREE:
        raise FeasibilityError(
            f"bracket degree {degree} exceeds {BRACKET_MAX_DEGREE}", max_supported=BRACKET_MAX_DEGREE
        )
    acc: dict[str, Fraction] = {}
    for a, x in u.coords.items():
        for b, y in v.coords.items():
            for w, c in _bracket_words(a, b):
                acc[w] = acc.get(w, 0) + x * y * c
    return LieVector(degree, acc)


# ------------------------------------------------ associative cross-check


def expand_associative(w: str) -> dict[str, int]:
    """``P(w)`` as a noncommutative polynomial, ``[a, b] = ab - ba``.

    Independent of the rewrite above; used by tests to check it.
    """
    if len(w) == 1:
        return {w: 1}
    u, v = standard_factorization(w)
    return commutator(expand_associative(u), expand_associative(v))


def commutator(x: Mapping[str, int], y: Mapping[str, int]) -> dict[str, int]:
    acc: dict[str, int] = {}
    for a, c in x.items():
        for b, d in y.items():
            acc[a + b] = acc.get(a + b, 0) + c * d
            acc[b + a] = acc.get(b + a, 0) - c * d
    return {k: c for k, c in acc.items() if c}


def to_associative(v: LieVector) -> dict[str, Fraction]:
    acc: dict[str, Fraction] = {}
    for w, c in v.coords.items():
        for x, e in expand_associative(w).items():
            acc[x] = acc.get(x, 0) + c * e
    return {k: c for k, c in acc.items() if c}


# ---------------------------------------------------------------- ideals


@dataclass
class GradedIdealBasis:
    """Per-degree echelon bases of a graded ideal in the free Lie algebra on ``m`` letters."""

    m: int
    degrees: dict[int, EchelonBasis]

    @property
    def N(self) -> int:
        return max(self.degrees, default=0)

    def dims(self) -> tuple[int, ...]:
        return tuple(self.degrees[n].rank for n in range(1, self.N + 1))

    def check_closure(self) -> bool:
        """Bracketing a basis vector with any generator stays in the next degree's span."""
        for n in range(1, self.N):
            nxt = self.degrees[n + 1]
            for row in self.degrees[n].basis():
                for x in alphabet(self.m):
                    if not nxt.contains(_bracket_sparse({x: 1}, row)):
                        return False
        return True


def _generator_rows(generators: Iterable[LieVector], N: int) -> dict[int, list[dict]]:
    by_degree: dict[int, list[dict]] = {}
    for g in generators:
        if g.is_zero():
            continue
        if g.degree <= N:
            by_degree.setdefault(g.degree, []).append(integral(g.coords))
    return by_degree


def _check_letters(generators: Sequence[LieVector], m: int) -> None:
    allowed = set(alphabet(m))
    for g in generators:
        for w in g.coords:
            if not set(w) <= allowed:
                raise InvalidParameterError(f"word {w!r} uses letters outside the {m}-letter alphabet")


def ideal_basis(
    generators: Sequence[LieVector],
    m: int,
    N: int,
    extra: Mapping[int, Iterable[Mapping[str, int]]] | None = None,
    max_degree: int = IDEAL_MAX_DEGREE,
    max_letters: int = IDEAL_MAX_LETTERS,
) -> GradedIdealBasis:
    """Saturate ``generators`` by brackets with the degree-1 generators.

    The ideal generated by homogeneous elements is spanned by iterated
    brackets ``[x_{i1}, [x_{i2}, ..., [x_{ik}, r]]]``, since ad of the algebra
    is generated by ad of its letters.  ``extra`` adds per-degree spanning
    vectors that are already known to form an ideal (e.g. a derived term).
    """
    if m < 1 or N < 1:
        raise InvalidParameterError("need m >= 1 and N >= 1")
    _check_envelope(m, N, max_letters, max_degree, "ideal computation")
    generators = list(generators)
    _check_letters(generators, m)
    gens = _generator_rows(generators, N)
    letters = alphabet(m)
    degrees: dict[int, EchelonBasis] = {}
    prev: list[dict] = []
    for n in range(1, N + 1):
        basis = EchelonBasis()
        for row in gens.get(n, ()):
            basis.add(row)
        if extra:
            for row in extra.get(n, ()):
                basis.add(row)
        for row in prev:
            for x in letters:
                basis.add(_bracket_sparse({x: 1}, row))
        degrees[n] = basis
        prev = basis.basis()
    return GradedIdealBasis(m, degrees)


def ideal_graded_dims(generators: Sequence[LieVector], m: int, N: int, **envelope) -> GradedDims:
    dims = ideal_basis(generators, m, N, **envelope).dims()
    return GradedDims(None, dims, ORACLE, label="ideal")


def surface_relator(g: int) -> LieVector:
    """``sum_i [a_i, b_i]`` with generators ordered ``a_1, b_1, ..., a_g, b_g``."""
    if g < 1:
        raise InvalidParameterError("genus must be >= 1")
    return LieVector(2, {letter(2 * i) + letter(2 * i + 1): 1 for i in range(g)})


def _basis_count(m: int, n: int) -> int:
    return len(_lyndon_tuple(m, n))


@lru_cache(maxsize=None)
def _surface_dims(g: int, N: int) -> tuple[int, ...]:
    m = 2 * g
    ideal = ideal_basis([surface_relator(g)], m, N).dims()
    return tuple(_basis_count(m, n) - ideal[n - 1] for n in range(1, N + 1))


def surface_dims_oracle(g: int, N: int) -> GradedDims:
    """Lower-central-series dimensions of the surface Lie algebra, by row reduction."""
    if g < 2:
        raise InvalidParameterError("surface oracle needs g >= 2")
    _check_envelope(2 * g, N, IDEAL_MAX_LETTERS, IDEAL_MAX_DEGREE, "surface_dims_oracle")
    return GradedDims(QuotientSpec("surface-lcs", g), _surface_dims(g, N), ORACLE)


def derived_square_rows(m: int, n: int) -> list[dict]:
    """Spanning set of degree ``n`` of ``[L', L']``; in a free Lie algebra ``L'`` is degree >= 2."""
    rows = []
    for i in range(2, n // 2 + 1):
        j = n - i
        left = _lyndon_tuple(m, i)
        right = _lyndon_tuple(m, j)
        for a, u in enumerate(left):
            for b, v in enumerate(right):
                if i == j and b <= a:
                    continue
                vec = dict(_bracket_words(u, v))
                if vec:
                    rows.append(vec)
    return rows


@lru_cache(maxsize=None)
def _metabelian_dims(m: int, N: int, relator: LieVector | None) -> tuple[int, ...]:
    extra = {n: derived_square_rows(m, n) for n in range(4, N + 1)}
    gens = [relator] if relator is not None else []
    ideal = ideal_basis(gens, m, N, extra=extra).dims()
    return tuple(_basis_count(m, n) - ideal[n - 1] for n in range(1, N + 1))


def metabelian_dims_oracle(m: int, N: int, relator: LieVector | None = None) -> GradedDims:
    """Free metabelian Lie algebra on ``m`` letters, optionally modulo a relator.

    Kills ``L'' = [L', L']`` (an ideal) together with the ideal generated by
    ``relator`` and reads off the quotient dimensions.
    """
    if m < 1 or N < 1:
        raise InvalidParameterError("need m >= 1 and N >= 1")
    _check_envelope(m, N, IDEAL_MAX_LETTERS, IDEAL_MAX_DEGREE, "metabelian_dims_oracle")
    if relator is not None:
        _check_letters([relator], m)
    dims = _metabelian_dims(m, N, relator)
    spec = None
    if relator is None:
        spec = QuotientSpec("free-metabelian", m)
    elif m % 2 == 0 and relator == surface_relator(m // 2) and m >= 4:
        spec = QuotientSpec("surface-metabelian", m // 2)
    return GradedDims(spec, dims, ORACLE)


def bidegree(w: str) -> tuple[int, int]:
    c = Counter(w)
    return c[letter(0)], c[letter(1)]


def _killed(w: str) -> bool:
    e, f = bidegree(w)
    return e >= 2 and f >= 2


def truncation_ideal_closed(N: int) -> list[bool]:
    """Per degree ``n < N``: does bracketing the killed span with ``e``, ``f`` stay killed?"""
    if N > BIGRADED_MAX_DEGREE:
        raise FeasibilityError(
            f"bigraded oracle degree {N} exceeds {BIGRADED_MAX_DEGREE}", max_supported=BIGRADED_MAX_DEGREE
        )
    results = []
    for n in range(1, N):
        ok = True
        for w in _lyndon_tuple(2, n):
            if not _killed(w):
                continue
            for x in alphabet(2):
                image = _bracket_sparse({x: 1}, {w: 1})
                if not all(_killed(u) for u in image):
                    ok = False
        results.append(ok)
    return results


def bigraded_truncation_dims_oracle(N: int) -> GradedDims:
    """Dimensions of ``L / L_{>=2,>=2}`` on two generators ``e = "1"``, ``f = "2"``."""
    if N < 1:
        raise InvalidParameterError("N must be >= 1")
    if N > BIGRADED_MAX_DEGREE:
        raise FeasibilityError(
            f"bigraded oracle degree {N} exceeds {BIGRADED_MAX_DEGREE}", max_supported=BIGRADED_MAX_DEGREE
        )
    if not all(truncation_ideal_closed(N)):
        raise ContractError("killed span is not closed under brackets")
    dims = tuple(sum(1 for w in _lyndon_tuple(2, n) if not _killed(w)) for n in range(1, N + 1))
    return GradedDims(QuotientSpec(CM_TRUNCATION), dims, ORACLE)


def oracle_series(spec: QuotientSpec, N: int) -> GradedDims:
    """Oracle counterpart of :func:`ckdim.lie_closed.graded_series`."""
    if spec.kind == "free-lcs":
        return GradedDims(spec, tuple(_basis_count(spec.param, n) for n in range(1, N + 1)), ORACLE)
    if spec.kind == "surface-lcs":
        return surface_dims_oracle(spec.param, N)
    if spec.kind == "free-metabelian":
        return GradedDims(spec, metabelian_dims_oracle(spec.param, N).dims, ORACLE)
    if spec.kind == "surface-metabelian":
        g = spec.param
        return GradedDims(spec, metabelian_dims_oracle(2 * g, N, surface_relator(g)).dims, ORACLE)
    return bigraded_truncation_dims_oracle(N)


# ------------------------------------------------ plain-text matrix format

MATRIX_HEADER = "# ckdim-dims v1"
BASIS_HEADER = "# ckdim-basis v1"


def format_dims(series: GradedDims, extra_header: Mapping[str, str] | None = None) -> str:
    """Deterministic plain-text table of a dimension series.

    Layout::

        # ckdim-dims v1
        # spec: surface-lcs(g=2)
        # provenance: oracle
        # N: 4
        n dim
        1 4
        ...
    """
    lines = [MATRIX_HEADER]
    lines.append(f"# spec: {series.spec.canonical() if series.spec else series.label or '-'}")
    lines.append(f"# provenance: {series.provenance}")
    lines.append(f"# N: {series.N}")
    for key, value in sorted((extra_header or {}).items()):
        lines.append(f"# {key}: {value}")
    lines.append("n dim")
    lines.extend(f"{n} {d}" for n, d in enumerate(series.dims, start=1))
    return "\n".join(lines) + "\n"


def parse_dims(text: str) -> tuple[GradedDims, dict[str, str]]:
    lines = text.splitlines()
    if not lines or lines[0] != MATRIX_HEADER:
        raise InvalidParameterError("not a ckdim-dims document")
    header: dict[str, str] = {}
    rows: list[int] = []
    for line in lines[1:]:
        if line.startswith("# "):
            key, _, value = line[2:].partition(": ")
            header[key] = value
        elif line == "n dim":
            continue
        elif line:
            n, d = line.split()
            if int(n) != len(rows) + 1:
                raise InvalidParameterError("degrees must be contiguous from 1")
            rows.append(int(d))
    if int(header.get("N", -1)) != len(rows):
        raise InvalidParameterError("row count does not match N")
    spec_text = header.pop("spec")
    spec = QuotientSpec.parse(spec_text) if spec_text not in ("-", "ideal") else None
    provenance = header.pop("provenance")
    header.pop("N")
    return GradedDims(spec, tuple(rows), provenance), header


def format_ideal_basis(basis: GradedIdealBasis) -> str:
    """Echelon rows per degree: ``<degree> <word>:<coeff> ...`` after a header."""
    lines = [BASIS_HEADER, f"# letters: {basis.m}", f"# N: {basis.N}"]
    for n in range(1, basis.N + 1):
        ech = basis.degrees[n]
        lines.append(f"# degree {n} rank {ech.rank}")
        for row in ech.basis():
            lines.append(f"{n} " + " ".join(f"{w}:{c}" for w, c in sorted(row.items())))
    return "\n".join(lines) + "\n"
