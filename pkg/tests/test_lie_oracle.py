from itertools import product
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from ckdim.errors import FeasibilityError, InvalidParameterError
from ckdim.lie_closed import ORACLE, free_metabelian_dim, surface_lcs_dim, witt_dim
from ckdim.lie_oracle import (
    IDEAL_MAX_DEGREE,
    LieVector,
    alphabet,
    bidegree,
    bigraded_truncation_dims_oracle,
    bracket,
    bracket_words,
    format_dims,
    format_ideal_basis,
    ideal_basis,
    ideal_graded_dims,
    is_lyndon,
    lyndon_counts,
    lyndon_words,
    metabelian_dims_oracle,
    oracle_series,
    parse_dims,
    standard_factorization,
    surface_dims_oracle,
    surface_relator,
    to_associative,
    truncation_ideal_closed,
)
from fixtures import CM_TRUNCATION_10, SURFACE_LCS, SURFACE_METABELIAN, SURFACE_RELATOR_IDEAL_G2

e, f = LieVector.generator(0), LieVector.generator(1)


def _rotation_minimal(w):
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def test_lyndon_examples():
    assert lyndon_words(2, 1) == ["1", "2"]
    assert lyndon_words(2, 3) == ["112", "122"]
    assert lyndon_words(2, 4) == ["1112", "1122", "1222"]


def test_lyndon_words_match_exhaustive_rotation_check():
    for m in range(1, 4):
        for n in range(1, 7):
            brute = sorted("".join(w) for w in product(alphabet(m), repeat=n) if _rotation_minimal("".join(w)))
            assert lyndon_words(m, n) == brute
            assert all(is_lyndon(w) for w in brute)


def test_lyndon_counts_match_witt():
    assert lyndon_counts(3, 10) == [witt_dim(3, n) for n in range(1, 11)]


def test_standard_factorization():
    assert standard_factorization("112") == ("1", "12")
    assert standard_factorization("1122") == ("1", "122")
    u, v = standard_factorization("11212")
    assert is_lyndon(u) and is_lyndon(v) and u < v


def test_bracket_examples():
    assert bracket(e, e).is_zero()
    assert bracket(e, f) == LieVector.basis("12")
    assert bracket(f, bracket(e, f)) == -LieVector.basis("122")


def test_bracket_words_antisymmetry():
    assert bracket_words("2", "1") == {"12": -1}


def test_degree3_structure_constants_via_associative_expansion():
    # every bracket of a letter with a degree-2 basis vector, checked as noncommutative polynomials
    for x in (e, f, LieVector.generator(2)):
        for w in lyndon_words(3, 2):
            v = LieVector.basis(w)
            lhs = to_associative(bracket(x, v))
            a, b = to_associative(x), to_associative(v)
            rhs = {}
            for p, c in a.items():
                for q, d in b.items():
                    rhs[p + q] = rhs.get(p + q, 0) + c * d
                    rhs[q + p] = rhs.get(q + p, 0) - c * d
            assert lhs == {k: c for k, c in rhs.items() if c}


def _vector(draw_words, coeffs):
    return LieVector(len(draw_words[0]), dict(zip(draw_words, coeffs)))


@st.composite
def homogeneous(draw, m=3, max_degree=4):
    n = draw(st.integers(1, max_degree))
    words = lyndon_words(m, n)
    chosen = draw(st.lists(st.sampled_from(words), min_size=1, max_size=3, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(chosen), max_size=len(chosen)))
    return LieVector(n, dict(zip(chosen, coeffs)))


@settings(max_examples=60, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_bracket_is_bilinear_antisymmetric_and_jacobi(x, y, z):
    assert bracket(x, x).is_zero()
    assert bracket(x, y) == -bracket(y, x)
    if y.degree == z.degree:
        assert bracket(x, y + z) == bracket(x, y) + bracket(x, z)
    jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    assert jac.is_zero()


@settings(max_examples=40, deadline=None)
@given(homogeneous(), homogeneous())
def test_bracket_matches_associative_commutator(x, y):
    a, b = to_associative(x), to_associative(y)
    expected = {}
    for p, c in a.items():
        for q, d in b.items():
            expected[p + q] = expected.get(p + q, 0) + c * d
            expected[q + p] = expected.get(q + p, 0) - c * d
    assert to_associative(bracket(x, y)) == {k: c for k, c in expected.items() if c}


def test_lie_vector_rejects_mixed_degree():
    with pytest.raises(InvalidParameterError):
        LieVector(2, {"1": 1})
    with pytest.raises(InvalidParameterError):
        LieVector.basis("21")


def test_ideal_examples():
    assert ideal_graded_dims([bracket(e, f)], 2, 5).dims == (0, 1, 2, 3, 6)
    assert ideal_graded_dims([], 2, 5).dims == (0, 0, 0, 0, 0)
    dims = ideal_graded_dims([surface_relator(2)], 4, 5).dims
    assert dims == SURFACE_RELATOR_IDEAL_G2
    for n, dim in enumerate(dims, start=1):
        assert witt_dim(4, n) - dim == surface_lcs_dim(2, n)


def test_ideal_is_monotone_in_generators():
    base = ideal_graded_dims([bracket(e, bracket(e, f))], 2, 6).dims
    more = ideal_graded_dims([bracket(e, bracket(e, f)), bracket(f, bracket(e, f))], 2, 6).dims
    assert all(a <= b for a, b in zip(base, more))


def test_ideal_closure_check():
    basis = ideal_basis([surface_relator(2)], 4, 4)
    assert basis.check_closure()
    text = format_ideal_basis(basis)
    assert text.startswith("# ckdim-basis v1")


def test_ideal_envelope_is_enforced():
    with pytest.raises(FeasibilityError) as info:
        ideal_graded_dims([bracket(e, f)], 2, IDEAL_MAX_DEGREE + 1)
    assert info.value.max_supported == IDEAL_MAX_DEGREE


def test_surface_oracle_examples():
    assert surface_dims_oracle(2, 2).dims == (4, 5)
    assert surface_dims_oracle(2, 4).dims == (4, 5, 16, 45)
    assert surface_dims_oracle(3, 2).dims == (6, 14)
    assert surface_dims_oracle(2, 6).dims == SURFACE_LCS[2]
    assert surface_dims_oracle(2, 4).provenance == ORACLE


def test_metabelian_oracle_matches_closed_form():
    assert metabelian_dims_oracle(2, 4).dims == (2, 1, 2, 3)
    assert metabelian_dims_oracle(4, 3).dims == (4, 6, 20)
    for m in (2, 3):
        assert metabelian_dims_oracle(m, 6).dims == tuple(free_metabelian_dim(m, n) for n in range(1, 7))


def test_surface_metabelian_regression():
    assert metabelian_dims_oracle(4, 4, surface_relator(2)).dims == SURFACE_METABELIAN[2][:4]
    assert metabelian_dims_oracle(4, 6, surface_relator(2)).dims == SURFACE_METABELIAN[2]


def test_surface_metabelian_agrees_with_lcs_below_degree_four():
    # the second derived term starts in degree 4
    for g in (2, 3):
        assert SURFACE_METABELIAN[g][:3] == SURFACE_LCS[g][:3]
        # in degree 4 it is spanned by brackets of pairs of degree-2 elements
        assert SURFACE_LCS[g][3] - SURFACE_METABELIAN[g][3] == comb(SURFACE_LCS[g][1], 2)


def test_bigraded_truncation():
    assert bigraded_truncation_dims_oracle(2).dims == (2, 1)
    assert bigraded_truncation_dims_oracle(4).dims == (2, 1, 2, 2)
    assert bigraded_truncation_dims_oracle(6).dims == (2, 1, 2, 2, 2, 2)
    assert bigraded_truncation_dims_oracle(10).dims == CM_TRUNCATION_10
    assert all(truncation_ideal_closed(10))


def test_bidegree():
    assert bidegree("11212") == (3, 2)


def test_oracle_series_dispatch():
    from ckdim.lie_closed import CMTruncation, FreeLCS, FreeMetabelian, SurfaceLCS, SurfaceMetabelian

    assert oracle_series(FreeLCS(2), 6).dims == (2, 1, 2, 3, 6, 9)
    assert oracle_series(SurfaceLCS(2), 3).dims == (4, 5, 16)
    assert oracle_series(FreeMetabelian(3), 4).dims == (3, 3, 8, 15)
    assert oracle_series(SurfaceMetabelian(2), 5).dims == SURFACE_METABELIAN[2][:5]
    assert oracle_series(CMTruncation(), 5).dims == (2, 1, 2, 2, 2)


def test_dims_text_round_trip():
    series = surface_dims_oracle(2, 4)
    text = format_dims(series, {"note": "x"})
    parsed, header = parse_dims(text)
    assert parsed == series and header == {"note": "x"}
    assert format_dims(parsed, header) == text
