from fractions import Fraction

import pytest

from exactcft.errors import SingularDiagonalError
from exactcft.pairs import FactoredLaurent, PairSum, TwoChiralSum

F = Fraction


def mono(points, coeff, exps):
    return PairSum.monomial(points, coeff, exps)


def test_linear_dependence_is_seen():
    # x13 - x12 - x23 = 0 as a function even though the monomials differ
    pts = (1, 2, 3)
    s = (
        mono(pts, 1, {(1, 3): 1})
        + mono(pts, -1, {(1, 2): 1})
        + mono(pts, -1, {(2, 3): 1})
    )
    assert not s.is_structurally_zero()
    assert s.is_zero_function()


def test_distinct_rational_classes_do_not_cancel():
    pts = (1, 2)
    s = mono(pts, 1, {(1, 2): F(1, 2)}) + mono(pts, -1, {(1, 2): F(1, 3)})
    assert not s.is_zero_function()
    # same class (integer shift), still nonzero as a function
    t = mono(pts, 1, {(1, 2): F(1, 2)}) + mono(pts, -1, {(1, 2): F(3, 2)})
    assert not t.is_zero_function()


def test_class_grouping_with_integer_offsets():
    # x12^(1/2) * (x12 - x12) = 0 across an integer shift within one class
    pts = (1, 2)
    s = mono(pts, 1, {(1, 2): F(3, 2)}) + mono(pts, -1, {(1, 2): F(3, 2)})
    assert s.is_zero_function()


def test_differentiate_product_rule():
    pts = (1, 2, 3)
    s = mono(pts, 1, {(1, 2): 2, (2, 3): 1})
    d = s.differentiate(2)
    expected = mono(pts, -2, {(1, 2): 1, (2, 3): 1}) + mono(pts, 1, {(1, 2): 2})
    assert d.equals_function(expected)


def test_differentiate_rational_power():
    pts = (1, 2)
    s = mono(pts, 1, {(1, 2): F(1, 2)})
    d = s.differentiate(1)
    assert d.equals_function(mono(pts, F(1, 2), {(1, 2): F(-1, 2)}))


def test_merge_drops_positive_powers():
    pts = (1, 2, 3)
    s = mono(pts, 1, {(1, 2): 1, (2, 3): -1}) + mono(pts, 5, {(1, 3): 2})
    merged = s.merge_adjacent(1)
    assert merged.points == (1, 3)
    assert merged.equals_function(PairSum.monomial((1, 3), 5, {(1, 3): 2}))


def test_merge_detects_singularity():
    pts = (1, 2, 3)
    s = mono(pts, 1, {(1, 2): -1, (2, 3): 1})
    with pytest.raises(SingularDiagonalError):
        s.merge_adjacent(1)


def test_merge_relabels_upper_point():
    pts = (1, 2, 3)
    s = mono(pts, 1, {(2, 3): 4})
    merged = s.merge_adjacent(1)
    assert merged.equals_function(PairSum.monomial((1, 3), 1, {(1, 3): 4}))


def test_relabel_antisymmetry_sign():
    pts = (1, 2, 3)
    s = mono(pts, 1, {(1, 2): 1})
    swapped = s.relabel({1: 2, 2: 1, 3: 3})
    assert swapped.equals_function(mono(pts, -1, {(1, 2): 1}))


def test_relabel_unsigned_symbols():
    pts = (1, 2, 3)
    s = PairSum.monomial(pts, 1, {(1, 2): 1}, antisym=False)
    swapped = s.relabel({1: 2, 2: 1, 3: 3})
    assert swapped.terms == PairSum.monomial(pts, 1, {(1, 2): 1}, antisym=False).terms


def test_proportionality():
    pts = (1, 2, 3)
    a = mono(pts, 2, {(1, 2): 1}) + mono(pts, 2, {(2, 3): 1})
    b = mono(pts, 3, {(1, 3): 1})
    lam = a.proportional_to(b)
    assert lam == F(2, 3)
    assert b.proportional_to(a) == F(3, 2)
    assert a.proportional_to(mono(pts, 1, {(1, 2): 1})) is None


def test_proportionality_with_rational_prefactors():
    pts = (1, 2, 3)
    base = {(1, 2): F(1, 3), (2, 3): F(-5, 2)}
    a = mono(pts, 4, base).mul_monomial(1, {(1, 3): 1})
    b = mono(pts, 1, base).mul_monomial(1, {(1, 2): 1}) + mono(pts, 1, base).mul_monomial(
        1, {(2, 3): 1}
    )
    # x13 = x12 + x23 underneath a shared rational-power prefactor
    assert a.proportional_to(b) == 4


def test_factored_laurent():
    fl = FactoredLaurent({(1, 2): F(-3, 2), (1, 3): 2}, 5)
    assert fl.exponent((1, 2)) == F(-3, 2)
    assert fl.exponent((2, 3)) == 0
    prod = fl.mul(FactoredLaurent({(1, 2): F(3, 2)}, F(1, 5)))
    assert prod.exponent((1, 2)) == 0
    assert prod.constant_numerator() == 1
    js = fl.to_json()
    assert js["factors"]["1,2"] == "-3/2"


def test_two_chiral_zero_detects_ptolemy():
    # x13x24 - x12x34 - x14x23 = 0 in the plus chirality, tensored with 1
    pts = (1, 2, 3, 4)
    t = (
        TwoChiralSum.monomial(pts, 1, {(1, 3): 1, (2, 4): 1}, {})
        + TwoChiralSum.monomial(pts, -1, {(1, 2): 1, (3, 4): 1}, {})
        + TwoChiralSum.monomial(pts, -1, {(1, 4): 1, (2, 3): 1}, {})
    )
    assert t.is_zero_function()


def test_two_chiral_cross_terms():
    pts = (1, 2, 3)
    # (x12+ x23-) - (x23- x12+) = 0; then a genuine nonzero
    t = TwoChiralSum.monomial(pts, 1, {(1, 2): 1}, {(2, 3): 1}) + TwoChiralSum.monomial(
        pts, -1, {(1, 2): 1}, {(2, 3): 1}
    )
    assert t.is_zero_function()
    nz = TwoChiralSum.monomial(pts, 1, {(1, 2): 1}, {(2, 3): 1}) + TwoChiralSum.monomial(
        pts, -1, {(2, 3): 1}, {(1, 2): 1}
    )
    assert not nz.is_zero_function()


def test_two_chiral_bilinear_cancellation():
    # x13+ (x12- + x23-) - (x12+ + x23+) x13- + [swap] style identity:
    # (x12+ + x23+) tensor x13-  equals  x13+ tensor x13- after plus-side Ptolemy
    pts = (1, 2, 3)
    t = (
        TwoChiralSum.monomial(pts, 1, {(1, 2): 1}, {(1, 3): 1})
        + TwoChiralSum.monomial(pts, 1, {(2, 3): 1}, {(1, 3): 1})
        + TwoChiralSum.monomial(pts, -1, {(1, 3): 1}, {(1, 3): 1})
    )
    assert t.is_zero_function()
