"""Fraction-free sparse row echelon form over the integers.

Rows are ``dict[key, int]`` with sortable keys.  Each stored row is primitive
(content 1, positive pivot) and its pivot is its smallest key, so a vector lies
in the span iff repeatedly cancelling its leading key against stored pivots
drives it to zero.  Rank over Z equals rank over Q, which is what callers use.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Mapping

Vector = dict


def primitive(vec: Mapping[Hashable, int]) -> dict:
    """Divide out the content and make the leading coefficient positive."""
    if not vec:
        return {}
    g = 0
    for c in vec.values():
        g = gcd(g, c)
    lead = vec[min(vec)]
    if lead < 0:
        g = -g
    return {k: c // g for k, c in vec.items()}


def integral(vec: Mapping[Hashable, Fraction | int]) -> dict:
    """Clear denominators; scaling never changes the span."""
    den = 1
    for c in vec.values():
        den = lcm(den, Fraction(c).denominator)
    out = {}
    for k, c in vec.items():
        c = Fraction(c) * den
        if c:
            out[k] = int(c)
    return out


class EchelonBasis:
    def __init__(self, vectors: Iterable[Mapping] = ()):
        self.rows: dict = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping) -> dict:
        """Return a primitive remainder; empty means ``vec`` is in the span."""
        v = {k: c for k, c in integral(vec).items() if c}
        while v:
            lead = min(v)
            row = self.rows.get(lead)
            if row is None:
                return primitive(v)
            a, b = row[lead], v[lead]
            out = {k: a * c for k, c in v.items()}
            for k, c in row.items():
                nc = out.get(k, 0) - b * c
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
            v = primitive(out)
        return {}

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def basis(self) -> list[dict]:
        return [self.rows[k] for k in sorted(self.rows)]


def rank(vectors: Iterable[Mapping]) -> int:
    return EchelonBasis(vectors).rank
