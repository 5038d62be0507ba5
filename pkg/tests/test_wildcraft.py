import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cmwild.catalog import load_fixture
from cmwild.exactalg import GradedRing
from cmwild.gradmod import is_mcm, is_ulrich
from cmwild.homalg import hom_space, is_isomorphic, is_simple
from cmwild.wildcraft import (HypothesisError, QuiverMorphism, QuiverRep, WildcraftError,
                              ext_basis, functor_hom_check, psi_pipeline, quiver_decomposition,
                              quiver_hom, quiver_isomorphic, random_points_on, random_rep,
                              serre_construct, syzygy_transport, universal_extension,
                              verdict_from_flags)

P = 32003


@pytest.fixture(scope="module")
def scroll3():
    fx = load_fixture("scroll-d3")
    return fx, ext_basis(fx.modules["A"], fx.modules["B"])


small = st.tuples(st.integers(1, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 10**6))


@given(small)
def test_identity_lies_in_quiver_end(args):
    w, a, b, seed = args
    R = random_rep(w, a, b, random.Random(seed))
    hom = quiver_hom(R, R)
    assert len(hom) >= (1 if a + b else 0)
    if a + b:
        QuiverMorphism(R, R, np.eye(a, dtype=np.int64), np.eye(b, dtype=np.int64))


@given(small)
def test_hom_into_direct_sum_is_additive(args):
    w, a, b, seed = args
    rng = random.Random(seed)
    R, S, U = (random_rep(w, a, b, rng) for _ in range(3))
    assert len(quiver_hom(R, S.direct_sum(U))) == len(quiver_hom(R, S)) + len(quiver_hom(R, U))


@given(small)
def test_composition_of_morphisms_is_a_morphism(args):
    w, a, b, seed = args
    R = random_rep(w, a, b, random.Random(seed))
    hom = quiver_hom(R, R)
    for f in hom[:3]:
        for g in hom[:3]:
            f.compose(g)


def test_bad_morphism_is_rejected():
    R = QuiverRep(1, 1, 1, ([[1]],))
    with pytest.raises(WildcraftError):
        QuiverMorphism(R, R, [[1]], [[2]])


def test_generic_kronecker_reps_are_indecomposable():
    rng = random.Random(3)
    R = random_rep(3, 2, 2, rng)
    assert quiver_decomposition(R).status == "indecomposable"
    S = QuiverRep(1, 1, 1, ([[1]],)).direct_sum(QuiverRep(1, 1, 1, ([[1]],)))
    assert quiver_decomposition(S).status == "decomposable"
    assert quiver_isomorphic(R, R)
    U = random_rep(3, 1, 1, rng)
    assert not quiver_isomorphic(R, U.direct_sum(U))


def test_unit_vertex_reps_map_to_the_two_modules(scroll3):
    fx, eb = scroll3
    A, B = fx.modules["A"], fx.modules["B"]
    assert eb.w == 1 and eb.verify()
    first = universal_extension(eb, QuiverRep(1, 1, 0, (np.zeros((0, 1)),)))
    second = universal_extension(eb, QuiverRep(1, 0, 1, (np.zeros((1, 0)),)))
    assert is_isomorphic(first, A).status == "isomorphic"
    assert is_isomorphic(second, B).status == "isomorphic"


def test_nonsplit_extension_is_indecomposable_of_rank_two(scroll3):
    fx, eb = scroll3
    E = universal_extension(eb, QuiverRep(1, 1, 1, ([[1]],)))
    assert E.ngens == 6
    assert is_simple(E)
    assert is_mcm(E) and is_ulrich(E)


def test_functor_preserves_hom_dimensions(scroll3):
    _, eb = scroll3
    R = QuiverRep(1, 1, 1, ([[1]],))
    S = QuiverRep(1, 1, 0, (np.zeros((0, 1)),))
    for X, Y in [(R, R), (R, S), (S, R), (S, S)]:
        out = functor_hom_check(eb, X, Y)
        assert out["equal"] and out["injective"]


def test_psi_refuses_without_hypotheses(scroll3):
    fx, eb = scroll3
    with pytest.raises(HypothesisError, match="missing hypothesis"):
        psi_pipeline(eb, QuiverRep(1, 1, 1, ([[1]],)), fx.ring, 1, hypotheses={})


def test_transport_of_ulrich_module_to_quadric_threefold():
    fx = load_fixture("quadric-surface-mf")
    tr = syzygy_transport(fx.modules["L_T"], fx.data["R3"], 1)
    assert tr.ulrich_source and tr.mcm.value
    assert not tr.free_summand.has_free_summand
    assert tr.warnings == []


def test_transport_warns_for_non_ulrich_source():
    fx = load_fixture("quadric-surface-mf")
    T = fx.data["T"]
    from cmwild.gradmod import Presentation
    tr = syzygy_transport(Presentation.free(T), fx.data["R3"], 1)
    assert not tr.ulrich_source and tr.warnings


def test_serre_construction_on_cubic_surface():
    R = GradedRing("xyzw", P, ["x^3+y^3+z^3+w^3"])
    Z = random_points_on(R, 5, seed=2)
    F = serre_construct(R, Z)
    assert F.ngens == 6  # rank 2 Ulrich on a cubic: 2 * 3 generators
    assert is_ulrich(F)


def test_serre_construction_rejects_points_off_the_surface():
    R = GradedRing("xyzw", P, ["x^3+y^3+z^3+w^3"])
    Z = random_points_on(R, 4, seed=2) + [(1, 0, 0, 0)]
    with pytest.raises(WildcraftError, match="does not lie on Y"):
        serre_construct(R, Z)


def test_serre_construction_needs_degree_plus_two_points():
    R = GradedRing("xyzw", P, ["x^3+y^3+z^3+w^3"])
    with pytest.raises(WildcraftError):
        serre_construct(R, random_points_on(R, 4, seed=2))


BASE = dict(simple_A=True, simple_B=True, hom_AB_zero=True, hom_BA_zero=True, w=3,
            acm_A=True, acm_B=True, ulrich_A=True, ulrich_B=True)


@pytest.mark.parametrize("change,verdict", [
    ({}, "strictly-Ulrich-wild"),
    ({"ulrich_B": False}, "strictly-CM-wild"),
    ({"w": 2}, "insufficient"),
    ({"simple_A": False}, "insufficient"),
    ({"acm_A": False}, "insufficient"),
    ({"omega_section_ok": True}, "CM-wild-via-section"),
    ({"omega_section_ok": False}, "insufficient"),
    ({"omega_section_ok": True, "ulrich_A": False}, "insufficient"),
])
def test_verdict_table(change, verdict):
    assert verdict_from_flags({**BASE, **change})[0] == verdict


def test_hom_between_scroll_modules_vanishes(scroll3):
    fx, _ = scroll3
    A, B = fx.modules["A"], fx.modules["B"]
    assert hom_space(A, B, 0).dim == 0 and hom_space(B, A, 0).dim == 0
