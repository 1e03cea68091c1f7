from math import comb

import pytest
from hypothesis import given, strategies as st

from ckdim.errors import ContractError, InvalidParameterError, InvalidShapeError
from ckdim.lie_closed import (
    CLOSED_FORM,
    ORACLE,
    CMTruncation,
    CurveShape,
    FreeLCS,
    FreeMetabelian,
    GradedDims,
    QuotientSpec,
    SurfaceLCS,
    SurfaceMetabelian,
    _exact_div,
    b1,
    cm_truncation_dim,
    divisors,
    factorize,
    free_metabelian_dim,
    graded_series,
    labute_trace,
    labute_traces,
    mobius,
    necklace_sum,
    surface_lcs_dim,
    witt_dim,
)
from fixtures import SURFACE_LCS, SURFACE_METABELIAN, WITT_M2


@pytest.mark.parametrize("g,s,expected", [(0, 3, 2), (2, 0, 4), (1, 1, 2), (3, 0, 6), (2, 3, 6)])
def test_b1(g, s, expected):
    assert b1(CurveShape(g, s)) == expected


@pytest.mark.parametrize("g,s", [(0, 0), (0, 1), (0, 2), (1, 0)])
def test_b1_rejects_non_hyperbolic(g, s):
    assert not CurveShape(g, s).hyperbolic
    with pytest.raises(InvalidShapeError):
        b1(CurveShape(g, s))


def test_hyperbolic_flag_matches_euler_characteristic():
    for g in range(4):
        for s in range(5):
            assert CurveShape(g, s).hyperbolic == (2 - 2 * g - s < 0)


def test_mobius_and_divisors():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    for n in range(1, 200):
        assert sum(mobius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_witt_examples():
    assert witt_dim(1, 2) == 0
    assert witt_dim(2, 4) == 3
    assert witt_dim(2, 12) == 335
    assert tuple(witt_dim(2, n) for n in range(1, 13)) == WITT_M2


def test_witt_necklace_identity():
    for m in range(1, 5):
        for n in range(1, 13):
            assert sum(d * witt_dim(m, d) for d in divisors(n)) == m**n


def test_exact_division_never_rounds():
    with pytest.raises(ContractError):
        _exact_div(7, 2, "test")


def test_surface_examples():
    assert [surface_lcs_dim(2, n) for n in (1, 2, 4)] == [4, 5, 45]
    for g, dims in SURFACE_LCS.items():
        assert tuple(surface_lcs_dim(g, n) for n in range(1, len(dims) + 1)) == dims


def test_surface_rejects_small_genus():
    with pytest.raises(InvalidParameterError):
        surface_lcs_dim(1, 3)


def test_labute_traces_recurrence():
    assert labute_traces(2, 4) == [2, 4, 14, 52, 194]
    for g in range(2, 6):
        a = labute_traces(g, 20)
        assert all(a[n] == labute_trace(g, n) for n in range(21))


def test_labute_necklace_identity():
    for g in range(2, 6):
        for n in range(1, 21):
            assert sum(d * surface_lcs_dim(g, d) for d in divisors(n)) == labute_trace(g, n)


def test_necklace_sum_helper():
    values = [witt_dim(3, n) for n in range(1, 9)]
    assert necklace_sum(values, 6) == 3**6


def test_free_metabelian_examples():
    assert free_metabelian_dim(4, 2) == 6
    assert free_metabelian_dim(2, 4) == 3
    assert free_metabelian_dim(4, 3) == 20
    assert free_metabelian_dim(5, 1) == 5
    for m in range(1, 6):
        assert free_metabelian_dim(m, 2) == comb(m, 2)


def test_cm_truncation():
    assert [cm_truncation_dim(n) for n in (1, 2, 3, 5, 40)] == [2, 1, 2, 2, 2]


def test_growth_is_strict():
    for b in range(2, 7):
        for n in range(2, 21):
            assert witt_dim(b, n + 1) > witt_dim(b, n)
    for g in range(2, 5):
        for n in range(2, 21):
            assert surface_lcs_dim(g, n + 1) > surface_lcs_dim(g, n)


def test_graded_series_examples():
    assert graded_series(FreeLCS(2), 5).as_list() == [2, 1, 2, 3, 6]
    assert graded_series(CMTruncation(), 4).as_list() == [2, 1, 2, 2]
    assert graded_series(SurfaceLCS(2), 3).as_list() == [4, 5, 16]
    assert graded_series(SurfaceLCS(2), 3).provenance == CLOSED_FORM


def test_graded_series_surface_metabelian_uses_oracle():
    series = graded_series(SurfaceMetabelian(2), 5)
    assert series.provenance == ORACLE
    assert series.dims == SURFACE_METABELIAN[2][:5]


def test_graded_series_rejects_bad_N():
    with pytest.raises(InvalidParameterError):
        graded_series(FreeLCS(2), 0)


def test_quotient_spec_validation_and_canonical_round_trip():
    for spec in (FreeLCS(3), SurfaceLCS(2), FreeMetabelian(4), SurfaceMetabelian(3), CMTruncation()):
        assert QuotientSpec.parse(spec.canonical()) == spec
    with pytest.raises(InvalidParameterError):
        SurfaceLCS(1)
    with pytest.raises(InvalidParameterError):
        FreeLCS(0)
    assert SurfaceLCS(2).generators == 4
    assert CMTruncation().generators == 2


def test_graded_dims_rejects_non_integers():
    with pytest.raises(ContractError):
        GradedDims(FreeLCS(2), (2, 1.0))
    with pytest.raises(ContractError):
        GradedDims(FreeLCS(2), (2, -1))
    dims = GradedDims(FreeLCS(2), (2, 1, 2))
    assert dims.N == 3 and dims.dim(2) == 1 and list(dims) == [2, 1, 2]


@given(st.integers(1, 6), st.integers(1, 30))
def test_witt_matches_mobius_sum_directly(m, n):
    total = sum(mobius(d) * m ** (n // d) for d in divisors(n))
    assert total % n == 0
    assert witt_dim(m, n) == total // n >= 0
