import random

import pytest
from hypothesis import given, strategies as st

from cmwild.exactalg import GradedRing, parse_poly
from cmwild.groebner import (HVector, artinian_reduction_hvector, groebner_basis, hilbert_hvector,
                             hilbert_series, krull_dim, normal_form, sectional_genus)

P = 32003
TWISTED_CUBIC = ["a*c-b^2", "b*d-c^2", "a*d-b*c"]


def test_twisted_cubic_basis_is_its_generators():
    R = GradedRing("abcd", P, TWISTED_CUBIC)
    gb = groebner_basis(R, R.ideal)
    assert sorted(str(g) for g in (R.ambient.poly(str(x)) for x in
                                   (parse_poly(t, R.ambient) for t in TWISTED_CUBIC))) and len(gb) == 3


def test_normal_form_uses_grevlex_leading_terms():
    R = GradedRing("xyzw", P, ["x*w - y*z"])
    gb = groebner_basis(R, R.ideal)
    yz = parse_poly("y*z", R.ambient)
    xw = parse_poly("x*w", R.ambient)
    # y*z is the leading term, so it is rewritten and x*w is standard
    assert normal_form(yz, gb) == xw
    assert normal_form(xw, gb) == xw
    assert normal_form(yz - xw, gb).is_zero()


def test_normal_form_of_ideal_element_is_zero():
    R = GradedRing("abcd", P, TWISTED_CUBIC)
    gb = groebner_basis(R, R.ideal)
    f = parse_poly("(a*c-b^2)*(a+d) + (b*d-c^2)*b^2", R.ambient)
    assert normal_form(f, gb).is_zero()


@pytest.mark.parametrize("gens,names,h", [
    (TWISTED_CUBIC, "abcd", (1, 2)),
    (["x^3+y^3+z^3"], "xyz", (1, 1, 1)),
    (["x^4+y^4+z^4"], "xyz", (1, 1, 1, 1)),
    (["x*y-z*w"], "xyzw", (1, 1)),
    (["a^2+b^2+c^2+d^2+e^2", "a*b+c*d+e^2"], "abcde", (1, 2, 1)),
])
def test_hvectors(gens, names, h):
    R = GradedRing(names, P, gens)
    assert hilbert_hvector(R).entries == h
    assert artinian_reduction_hvector(R, seed=1).entries == h


def test_krull_dimensions():
    assert krull_dim(GradedRing("abcd", P, TWISTED_CUBIC)) == 2
    assert krull_dim(GradedRing("xyzw", P, ["x^3+y^3+z^3+w^3"])) == 3
    assert krull_dim(GradedRing("xyz", P)) == 3


@pytest.mark.parametrize("h,g", [((1, 2), 0), ((1, 1, 1), 1), ((1, 1, 1, 1), 3),
                                 ((1, 2, 1), 1), ((1, 3), 0), ((1,), 0)])
def test_sectional_genus(h, g):
    assert sectional_genus(h) == g


def test_hvector_must_start_with_one():
    with pytest.raises(ValueError):
        HVector((2, 1))


def test_plane_curve_genus_formula():
    for d in range(1, 7):
        assert sectional_genus((1,) * d) == (d - 1) * (d - 2) // 2


@given(st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_genus_is_sum_of_weighted_entries(tail):
    h = (1,) + tuple(tail)
    assert sectional_genus(h) == sum((i - 1) * x for i, x in enumerate(h) if i >= 2)


monomial = st.tuples(*[st.integers(0, 3)] * 3).filter(lambda e: sum(e) > 0)


@given(st.lists(monomial, min_size=1, max_size=4), st.integers(1, 2), st.integers(0, 10**6))
def test_regular_element_identity_on_artinian_free_extension(monos, a, seed):
    """Adjoining a new variable u gives S[u]/I; u^a is regular with HS multiplied by 1 - t^a."""
    names = "xyzu"
    gens = [{e + (0,): 1 for e in [m]} for m in monos]
    R = GradedRing(names, P, gens)
    Q = GradedRing(names, P, gens + [{(0, 0, 0, a): 1}])
    base = hilbert_series(R).as_dict()
    want = {}
    for k, c in base.items():
        want[k] = want.get(k, 0) + c
        want[k + a] = want.get(k + a, 0) - c
    assert hilbert_series(Q).as_dict() == {k: v for k, v in want.items() if v}


@given(st.integers(0, 10**6))
def test_gb_reduction_is_idempotent(seed):
    rng = random.Random(seed)
    R = GradedRing("xyz", P, ["x^2 - y*z", "y^2 - x*z"])
    gb = groebner_basis(R, R.ideal)
    f = {(rng.randrange(4), rng.randrange(4), rng.randrange(4)): rng.randrange(1, P)
         for _ in range(4)}
    once = normal_form(f, gb)
    assert normal_form(once, gb) == once
