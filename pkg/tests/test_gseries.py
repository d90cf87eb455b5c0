from fractions import Fraction

import pytest

from exactcft.gseries import (
    BiharmonicSeries,
    closed_coefficient,
    completion_series,
    verify_biharmonic,
)
from exactcft.series import TruncatedSeries

F = Fraction


def test_closed_coefficients():
    g = completion_series(6, "closed")
    assert g.coefficient(0, 0) == 1
    assert g.coefficient(1, 1) == F(1, 3)
    assert g.coefficient(2, 1) == F(1, 6)
    assert g.coefficient(2, 2) == F(2, 15)
    assert g.coefficient(3, 0) == 0
    assert g.coefficient(0, 2) == 0


def test_recursion_matches_closed():
    for cap in (4, 8, 12):
        rec = completion_series(cap, "recursion")
        clo = completion_series(cap, "closed")
        assert rec.series == clo.series


def test_biharmonic_residual_vanishes():
    g = completion_series(10, "closed")
    assert verify_biharmonic(g).is_zero()


def test_biharmonic_residual_detects_perturbation():
    g = completion_series(6, "closed")
    terms = dict(g.series.terms)
    terms[(1, 1)] = F(1, 2)
    broken = BiharmonicSeries(TruncatedSeries(g.series.variables, 6, terms))
    res = verify_biharmonic(broken)
    assert not res.is_zero()
    # lowest broken instance is the first one: residual starts at s-order 1
    assert res.coefficient((1, 1)) != 0


def test_biharmonic_requires_cap():
    with pytest.raises(ValueError):
        verify_biharmonic(completion_series(1, "closed"))


def test_constant_series_satisfies_leading_order_only():
    # the order-0 instance is vacuous; the first recursion instance breaks
    one = BiharmonicSeries(TruncatedSeries(("u_plus", "u_minus"), 4, {(0, 0): F(1)}))
    res = verify_biharmonic(one)
    assert not res.is_zero()
    assert res.coefficient((0, 0)) == 0
    assert res.coefficient((1, 0)) == 0
    assert res.coefficient((1, 1)) != 0


def test_biharmonic_requires_symmetry():
    terms = {(0, 0): F(1), (1, 0): F(1)}
    bad = BiharmonicSeries(TruncatedSeries(("u_plus", "u_minus"), 4, terms))
    with pytest.raises(ValueError):
        verify_biharmonic(bad)


def test_closed_coefficient_function():
    assert closed_coefficient(0, 0) == 1
    assert closed_coefficient(4, 0) == 0
    assert closed_coefficient(1, 2) == F(2 * 2, 3 * 8)
