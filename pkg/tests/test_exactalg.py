import pytest
from hypothesis import given, strategies as st

from cmwild.exactalg import (GradedRing, ParseError, format_ring, grevlex_key, parse_poly,
                             parse_ring)

P = 32003
R = GradedRing("xyzw", P)


def test_parse_and_print_roundtrip():
    f = parse_poly("3*x^2*y - y^3 + 2*z*w*x", R)
    assert parse_poly(str(f), R) == f
    assert f.degree() == 3 and f.is_homogeneous()


def test_negative_coefficients_are_reduced_mod_p():
    f = parse_poly("-x", R)
    assert f.terms == {(1, 0, 0, 0): P - 1}


def test_product_over_f5_reduces_coefficients():
    F5 = GradedRing("xyzw", 5)
    f = parse_poly("x*z - y^2", F5) * parse_poly("w", F5)
    assert f == parse_poly("x*z*w - y^2*w", F5)
    g = parse_poly("3*x", F5) * parse_poly("4*y", F5)
    assert g.terms == {(1, 1, 0, 0): 2}


def test_characteristic_zero_is_exact():
    Q = GradedRing("xy", 0)
    f = parse_poly("40000*x + y", Q) * parse_poly("40000*x", Q)
    assert f.terms[(2, 0)] == 1600000000


def test_grevlex_order_on_degree_two():
    # grevlex x>y>z>w: yz beats xw because xw involves the last variable
    assert grevlex_key((0, 1, 1, 0)) > grevlex_key((1, 0, 0, 1))
    assert grevlex_key((2, 0, 0, 0)) > grevlex_key((1, 1, 0, 0))


@pytest.mark.parametrize("text", ["x +", "x^", "q*x", "x**y", "(x + y"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text, R)


def test_ring_file_roundtrip():
    ring = parse_ring("ring p=32003 vars a,b,c,d\nideal a*c-b^2, b*d-c^2, a*d-b*c")
    again = parse_ring(format_ring(ring))
    assert again.variables == ring.variables
    assert [g.terms for g in again.ideal] == [g.terms for g in ring.ideal]


def test_inhomogeneous_ideal_is_rejected():
    with pytest.raises(ParseError):
        parse_ring("ring p=32003 vars x,y\nideal x^2 - y")


def test_bad_characteristic():
    with pytest.raises(ParseError):
        parse_ring("ring p=32004 vars x,y")


exps = st.tuples(*[st.integers(0, 3)] * 4)
coeffs = st.integers(1, P - 1)
polys = st.dictionaries(exps, coeffs, max_size=5)


def _poly(d):
    from cmwild.exactalg import Poly
    return Poly(R, d)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    a, b, c = _poly(a), _poly(b), _poly(c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == R.zero()


@given(st.integers(0, 3), st.integers(0, 3), polys)
def test_homogeneous_products_add_degrees(d1, d2, seed_poly):
    from cmwild.exactalg import monomials_of_degree
    f = _poly({e: 1 for e in monomials_of_degree(4, d1)})
    g = _poly({e: 2 for e in monomials_of_degree(4, d2)})
    h = f * g
    assert h.is_homogeneous() and h.degree() == d1 + d2


@given(polys)
def test_print_parse_roundtrip_property(d):
    f = _poly(d)
    assert parse_poly(str(f), R) == f
