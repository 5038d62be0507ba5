import numpy as np
import pytest

from cmwild.exactalg import GradedRing, parse_poly
from cmwild.gradmod import Presentation
from cmwild.homalg import (Unsupported, endomorphism_algebra, euler_chi, ext, hom_space,
                           is_indecomposable, is_isomorphic, is_simple, nilpotent_endomorphism,
                           sheaf_ext_dim, stable_hom)

P = 32003


def quadric():
    return GradedRing("xyzw", P, ["x*w - y*z"])


def ruling(R, transpose=False):
    m = [["x", "y"], ["z", "w"]]
    if transpose:
        m = [list(r) for r in zip(*m)]
    rows = [[parse_poly(e, R.ambient).terms for e in row] for row in m]
    return Presentation.from_matrix(R, rows, [0, 0], [-1, -1])


def test_rulings_are_orthogonal():
    R = quadric()
    L, L2 = ruling(R), ruling(R, True)
    assert hom_space(L, L, 0).dim == 1
    assert hom_space(L, L2, 0).dim == 0
    assert hom_space(L2, L, 0).dim == 0
    assert ext(L, L2, 1, 0).dim == 0
    assert ext(L2, L, 1, 0).dim == 0


def test_hom_into_free_module_counts_sections():
    R = quadric()
    F = Presentation.free(R)
    for t in range(3):
        assert hom_space(F, F, t).dim == F.hf(t)


def test_ext_vanishes_into_free_for_mcm_on_gorenstein_ring():
    R = quadric()
    L = ruling(R)
    for t in (-1, 0, 1):
        assert ext(L, Presentation.free(R), 1, t).dim == 0


def test_ext_is_two_periodic_on_hypersurface():
    R = quadric()
    L = ruling(R)
    a = ext(L, L, 2, 2).dim
    b = ext(L, L, 4, 4).dim
    assert a == b


def test_rational_curve_euler_characteristic():
    R = GradedRing("abcd", P, ["a*c-b^2", "b*d-c^2", "a*d-b*c"])
    O = Presentation.free(R)
    assert euler_chi(O, O) == 1
    assert sheaf_ext_dim(O, O, 1)[0] == 0


def test_elliptic_curve_euler_characteristic():
    R = GradedRing("xyz", P, ["x^3+y^3+z^3"])
    O = Presentation.free(R)
    assert euler_chi(O, O) == 0
    assert sheaf_ext_dim(O, O, 1)[0] == 1


def test_euler_chi_refuses_surfaces():
    R = quadric()
    with pytest.raises(Unsupported):
        euler_chi(ruling(R), ruling(R))


def test_split_module_has_nilpotent_endomorphism():
    R = quadric()
    M = Presentation.free(R, [0, -1])
    E = endomorphism_algebra(M)
    assert E.dim == 2 + R.nvars
    n = nilpotent_endomorphism(M)
    assert n is not None
    A = E.element(n)
    assert np.any(A % P)
    assert not np.any(np.linalg.matrix_power(A.astype(object), 4) % P)
    assert not is_simple(M)
    assert is_indecomposable(M).status == "decomposable"


def test_ruling_is_simple_and_indecomposable():
    L = ruling(quadric())
    assert is_simple(L)
    assert nilpotent_endomorphism(L) is None
    assert is_indecomposable(L).status == "indecomposable"


def test_isomorphism_detection():
    R = quadric()
    L, L2 = ruling(R), ruling(R, True)
    assert is_isomorphic(L, L).status == "isomorphic"
    assert is_isomorphic(L, L2).status == "non-isomorphic"
    assert is_isomorphic(L, L.twist(1)).status == "non-isomorphic"


def test_stable_hom_kills_free_modules():
    R = quadric()
    L = ruling(R)
    assert stable_hom(Presentation.free(R), L).dim == 0
    assert stable_hom(L, L).dim == 1
