"""Laurent polynomial arithmetic over Z_p."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import laurent_polys
from stabtee.laurent import LaurentPoly, Monomial, Window, parse_poly


def test_parse_basic():
    f = parse_poly(2, "x^3 + y + y^2")
    assert f.coeff(3, 0) == 1
    assert f.coeff(0, 1) == 1
    assert f.coeff(0, 2) == 1
    assert f.coeff(1, 1) == 0


def test_parse_negative_exponents_and_coeffs():
    f = parse_poly(5, "2*x*y^-1 + 3*x^-2 + 1")
    assert f.coeff(1, -1) == 2
    assert f.coeff(-2, 0) == 3
    assert f.coeff(0, 0) == 1


def test_parse_merges_and_reduces_mod_p():
    assert parse_poly(2, "x + x").is_zero()
    assert parse_poly(3, "x + x + x").is_zero()
    assert str(parse_poly(3, "2*x + 2*x")) == "x"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_poly(2, "x +")
    with pytest.raises(ValueError):
        parse_poly(2, "(x + y)")
    with pytest.raises(ValueError):
        parse_poly(2, "")


@given(laurent_polys(p=3), laurent_polys(p=3), laurent_polys(p=3))
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert (f + g) + h == f + (g + h)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(laurent_polys(p=2), laurent_polys(p=2))
def test_char_two_addition_cancels(f, g):
    assert (f + f).is_zero()
    assert f - g == f + g


@given(laurent_polys(p=5))
def test_antipode_involution_and_multiplicativity(f):
    assert f.antipode().antipode() == f


@given(laurent_polys(p=5), laurent_polys(p=5))
def test_antipode_is_ring_map(f, g):
    assert (f * g).antipode() == f.antipode() * g.antipode()
    assert (f + g).antipode() == f.antipode() + g.antipode()


@given(laurent_polys(p=3))
def test_reflect_y_involution(f):
    assert f.reflect_y().reflect_y() == f


@given(laurent_polys(p=2), st.integers(-3, 3), st.integers(-3, 3))
def test_shift_moves_support(f, dx, dy):
    g = f.shift(dx, dy)
    for mono, c in f.terms:
        assert g.coeff(mono.xexp + dx, mono.yexp + dy) == c


@given(laurent_polys(p=3))
def test_str_parse_roundtrip(f):
    if f.is_zero():
        return
    assert parse_poly(3, str(f)) == f


def test_support_box():
    f = parse_poly(2, "x^-1*y + x^2 + y^3")
    assert f.support_box() == (-1, 2, 0, 3)
    assert LaurentPoly.zero(2).support_box() is None


@given(laurent_polys(p=2))
def test_window_projection_splits(f):
    w = Window(None, None, 0, None)  # y >= 0 half
    lower = Window(None, None, None, 0)  # y < 0, the complement
    assert f.project(w) + f.project(lower) == f


def test_const_and_monomial():
    assert LaurentPoly.monomial(7, 2, -1, 3).coeff(2, -1) == 3
    assert LaurentPoly.constant(7, 10).const() == 3
    assert Monomial(1, 2).antipode() == Monomial(-1, -2)
