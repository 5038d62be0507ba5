import pytest
from hypothesis import given, settings, strategies as st

from cmwild.catalog import betti_ranks, mf_pattern
from cmwild.exactalg import GradedRing, parse_poly
from cmwild.gradmod import (Presentation, canonical_module, degree_and_rank, dual, is_mcm,
                            is_ulrich, is_zero_module, minimal_resolution, minimize,
                            omega_section_check, syzygy_module, truncation)
from cmwild import recipes as rc

P = 32003


def quadric():
    return GradedRing("xyzw", P, ["x*w - y*z"])


def ruling(R, transpose=False):
    m = [["x", "y"], ["z", "w"]]
    if transpose:
        m = [list(r) for r in zip(*m)]
    rows = [[parse_poly(e, R.ambient).terms for e in row] for row in m]
    return Presentation.from_matrix(R, rows, [0, 0], [-1, -1])


def test_ruling_has_two_periodic_resolution():
    R = quadric()
    res = minimal_resolution(ruling(R), 6)
    assert betti_ranks(res) == mf_pattern(2, 2, 3)
    assert res.is_complex() and res.is_minimal()


def test_ruling_is_ulrich_and_mcm():
    R = quadric()
    L = ruling(R)
    assert is_mcm(L)
    assert is_ulrich(L)
    dr = degree_and_rank(L)
    assert dr.rank == 1 and dr.degree == 2


def test_maximal_ideal_is_not_mcm_on_curve_cone():
    R = GradedRing("abcd", P, ["a*c-b^2", "b*d-c^2", "a*d-b*c"])
    k = Presentation.quotient_ring(R, [parse_poly(v, R.ambient).terms for v in "abcd"])
    assert not is_mcm(k)
    assert not is_zero_module(k)
    assert is_mcm(Presentation.free(R))


def test_free_module_is_not_ulrich_unless_linear():
    R = quadric()
    assert not is_ulrich(Presentation.free(R))


def test_plane_cubic_is_gorenstein_with_trivial_twist():
    R = GradedRing("xyz", P, ["x^3+y^3+z^3"])
    omega = minimize(canonical_module(R))
    assert omega.ngens == 1 and omega.generator_degrees == [0]
    assert omega.hf(0) == 1


def test_cubic_surface_canonical_module_is_shifted():
    R = GradedRing("xyzw", P, ["x^3+y^3+z^3+w^3"])
    omega = minimize(canonical_module(R))
    # omega = R(-1): generated in degree 1
    assert omega.generator_degrees == [1]


@pytest.mark.parametrize("names,eq,m,c,expected", [
    ("xyzw", "x^3+y^3+z^3+w^3", 3, 1, True),
    ("xyzw", "x*w-y*z", 3, 1, False),
    ("xyzw", "x^4+y^4+z^4+w^4", 3, 1, True),
])
def test_omega_section_hypothesis(names, eq, m, c, expected):
    assert bool(omega_section_check(GradedRing(names, P, [eq]), m, c)) is expected


def test_dual_of_ruling_is_other_ruling_shifted():
    R = quadric()
    D = dual(ruling(R))
    assert D.generator_degrees == [1, 1]
    other = ruling(R, True).twist(-1)
    assert [D.hf(t) for t in range(-2, 5)] == [other.hf(t) for t in range(-2, 5)]


def test_double_dual_of_mcm_returns_hilbert_function():
    R = quadric()
    L = ruling(R)
    DD = dual(dual(L))
    assert [DD.hf(t) for t in range(0, 5)] == [L.hf(t) for t in range(0, 5)]


def test_truncation_drops_low_degrees():
    R = quadric()
    T = truncation(Presentation.free(R), 2)
    assert T.hf(0) == 0 and T.hf(1) == 0
    assert [T.hf(t) for t in range(2, 5)] == [Presentation.free(R).hf(t) for t in range(2, 5)]


def test_syzygy_of_mcm_on_hypersurface_is_mcm():
    R = quadric()
    k = Presentation.quotient_ring(R, [parse_poly(v, R.ambient).terms for v in "xyzw"])
    om = syzygy_module(k, 3)
    assert is_mcm(om)


def test_twist_shifts_hilbert_function():
    R = quadric()
    L = ruling(R)
    assert [L.twist(2).hf(t) for t in range(-2, 3)] == [L.hf(t) for t in range(0, 5)]


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_random_determinantal_cokernel_resolution_is_periodic(seed):
    det = rc.determinantal_hypersurface("xyz", 2, seed)
    res = minimal_resolution(det.L, 4)
    assert res.is_complex() and res.is_minimal()
    assert betti_ranks(res) == mf_pattern(2, 2, 2)
