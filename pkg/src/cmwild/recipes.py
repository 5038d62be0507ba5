"""Ring and module recipes used by the fixture catalog.

Everything here is seeded: the same seed always produces the same ring and
the same presentation matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from . import linalg as la
from .exactalg import GradedRing, monomials_of_degree, pmul, padd, pscale
from .gradmod import FreeModule, ModuleMap, Presentation, image_presentation, minimize
from .wildcraft import RingMap, WildcraftError, ideal_of_points, kernel_ideal


def linear_form(coeffs, nvars: int) -> dict:
    return {tuple(int(i == k) for i in range(nvars)): int(c) for k, c in enumerate(coeffs) if c}


def random_linear(nvars: int, rng: random.Random, p: int) -> dict:
    return linear_form([rng.randrange(p) for _ in range(nvars)], nvars)


def random_form(nvars: int, d: int, rng: random.Random, p: int) -> dict:
    return {e: rng.randrange(1, p) for e in monomials_of_degree(nvars, d)}


def determinant(mat, p: int) -> dict:
    """Leibniz expansion; fine for the 2x2 .. 4x4 matrices of the catalog."""
    n = len(mat)
    total: dict = {}
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = None
        for i in range(n):
            f = mat[i][perm[i]]
            if not f:
                term = {}
                break
            term = f if term is None else pmul(term, f, p)
        if term:
            total = padd(total, pscale(term, sign % p, p), p)
    return total


def random_linear_matrix(n: int, nvars: int, rng: random.Random, p: int) -> list:
    return [[random_linear(nvars, rng, p) for _ in range(n)] for _ in range(n)]


def matrix_module(ring: GradedRing, mat, twist: int = 0) -> Presentation:
    """Cokernel of a square linear matrix: generators in degree ``twist``."""
    n = len(mat)
    return minimize(Presentation.from_matrix(ring, [[mat[i][j] for j in range(n)]
                                                    for i in range(n)],
                                             [-twist] * n, [-twist - 1] * n))


def transpose(mat):
    return [list(r) for r in zip(*mat)]


@dataclass
class Determinantal:
    """Hypersurface f = det(M) with its two Ulrich cokernels coker M and coker M^T."""

    ring: GradedRing
    matrix: list
    L: Presentation
    L_t: Presentation


def determinantal_hypersurface(names: str, n: int, seed: int, p: int = 32003) -> Determinantal:
    rng = random.Random(seed)
    mat = random_linear_matrix(n, len(names), rng, p)
    f = determinant(mat, p)
    R = GradedRing(names, p, [f])
    return Determinantal(R, mat, matrix_module(R, mat), matrix_module(R, transpose(mat)))


def restrict_matrix(mat, keep: int, nvars: int, sub=None) -> list:
    """Entries restricted to the first ``keep`` variables (the others set to zero)."""
    out = []
    for row in mat:
        out.append([{e[:keep]: c for e, c in f.items() if not any(e[keep:])} for f in row])
    return out


# -- rational normal scrolls ----------------------------------------------------------------


@dataclass
class Scroll:
    a: int
    b: int
    ring: GradedRing
    matrix: list  # 2 x (a+b) of variable indices

    @property
    def degree(self) -> int:
        return self.a + self.b


def scroll(a: int, b: int, p: int = 32003) -> Scroll:
    """S(a, b) in P^{a+b+1}: 2x2 minors of [[x0..x_{a-1}, x_{a+1}..], [x1..x_a, ...]]."""
    n = a + b + 2
    names = [f"x{i}" for i in range(n)]
    cols = [(i, i + 1) for i in range(a)] + [(a + 1 + i, a + 2 + i) for i in range(b)]
    var = lambda i: {tuple(int(k == i) for k in range(n)): 1}
    gens = []
    for j in range(len(cols)):
        for k in range(j + 1, len(cols)):
            f = padd(pmul(var(cols[j][0]), var(cols[k][1]), p),
                     pscale(pmul(var(cols[j][1]), var(cols[k][0]), p), p - 1, p), p)
            if f:
                gens.append(f)
    R = GradedRing(names, p, gens)
    return Scroll(a, b, R, cols)


def scroll_fiber_module(sc: Scroll, k: int) -> Presentation:
    """O(kF): generators s^k, s^{k-1}t, ..., t^k in degree 0."""
    R = sc.ring
    n = R.nvars
    var = lambda i: {tuple(int(j == i) for j in range(n)): 1}
    F = FreeModule(R, [0] * (k + 1))
    rels = []
    for top, bot in sc.matrix:
        for i in range(k):
            v = F.zero()
            v[i] = var(bot)
            v[i + 1] = {e: R.p - c for e, c in var(top).items()}
            rels.append(v)
    src = FreeModule(R, [-1] * len(rels))
    return minimize(Presentation(ModuleMap(src, F, rels)))


def scroll_fiber_ideal_module(sc: Scroll) -> Presentation:
    """O(H - F) = I_F(1) for the fiber over (s:t) = (1:0)."""
    R = sc.ring
    n = R.nvars
    keep = {0, sc.a + 1}
    gens = [[{tuple(int(j == i) for j in range(n)): 1}] for i in range(n) if i not in keep]
    return minimize(image_presentation(FreeModule(R, [0]), gens)).twist(1)


def scroll_point(sc: Scroll, s: int, t: int, u: int, v: int, p: int) -> tuple:
    a, b = sc.a, sc.b
    U = [pow(s, a - i, p) * pow(t, i, p) * u % p for i in range(a + 1)]
    V = [pow(s, b - i, p) * pow(t, i, p) * v % p for i in range(b + 1)]
    return tuple(U + V)


# -- projections to non-normal surfaces -------------------------------------------------------


@dataclass
class Projection:
    """Y = image of a scroll under projection from a point on the plane of a conic."""

    scroll: Scroll
    ring: GradedRing          # k[Y]
    ringmap: RingMap          # k[Y] -> k[scroll]
    center: tuple
    plane: list               # three vectors spanning the conic plane
    line_ideal: list          # linear forms of L inside k[Y]
    notes: dict = field(default_factory=dict)

    def fiber_line_ideal(self, c: int) -> list:
        """Linear forms vanishing on the image of the fiber over (1:c)."""
        p = self.ring.p
        sc = self.scroll
        pts = [scroll_point(sc, 1, c, 1, 0, p), scroll_point(sc, 1, c, 0, 1, p)]
        return self._forms_vanishing_on([self.project(q) for q in pts])

    def fiber_points(self, c: int, count: int) -> list:
        p = self.ring.p
        sc = self.scroll
        return [self.project(scroll_point(sc, 1, c, 1, k, p)) for k in range(1, count + 1)]

    def project(self, x) -> tuple:
        p = self.ring.p
        N = self.notes["N"]
        return tuple(int(v) for v in (N @ np.array(x, dtype=np.int64)) % p)

    def _forms_vanishing_on(self, pts) -> list:
        p = self.ring.p
        n = self.ring.nvars
        K = la.nullspace(np.array(pts, dtype=np.int64).reshape(len(pts), n), p)
        return [linear_form(row, n) for row in K]


def conic_plane(sc: Scroll, rng: random.Random, p: int) -> list:
    """Coefficient vectors (of s^2, st, t^2) of a conic on S(1,2) or S(2,2)."""
    if (sc.a, sc.b) == (1, 2):
        al, be = rng.randrange(1, p), rng.randrange(1, p)
        # u = al*s + be*t, v = 1:  (s u, t u, s^2, st, t^2)
        return [[al, 0, 1, 0, 0], [be, al, 0, 1, 0], [0, be, 0, 0, 1]]
    if (sc.a, sc.b) == (2, 2):
        lam = rng.randrange(1, p)
        return [[lam, 0, 0, 1, 0, 0], [0, lam, 0, 0, 1, 0], [0, 0, lam, 0, 0, 1]]
    raise WildcraftError("conic planes are implemented for S(1,2) and S(2,2)")


def nonnormal_projection(a: int, b: int, seed: int, p: int = 32003) -> Projection:
    """Project S(a,b) from a random point of the plane of a random conic on it."""
    rng = random.Random(seed)
    sc = scroll(a, b, p)
    n = sc.ring.nvars
    plane = conic_plane(sc, rng, p)
    while True:
        c = [rng.randrange(p) for _ in range(3)]
        if (c[1] * c[1] - c[0] * c[2]) % p:  # off the conic
            break
    center = tuple(sum(c[k] * plane[k][j] for k in range(3)) % p for j in range(n))
    N = la.nullspace(np.array([center], dtype=np.int64), p)  # (n-1) x n
    d = sc.degree
    names = [f"y{i}" for i in range(n - 1)]
    S = GradedRing(names, p)
    images = [linear_form(row, n) for row in N]
    eqs = kernel_ideal(S, sc.ring, images, 3)
    Y = GradedRing(names, p, eqs)
    phi = RingMap(Y, sc.ring, images)
    proj = Projection(sc, Y, phi, center, plane, [], {"N": N, "degree": d})
    proj.line_ideal = proj._forms_vanishing_on([proj.project(v) for v in plane])
    return proj


def cyclic_module(ring: GradedRing, gens: list) -> Presentation:
    """R / (gens) as a presentation."""
    return Presentation.quotient_ring(ring, gens)


def union_of_lines_ideal(proj: Projection, params: list, max_degree: int = 3) -> list:
    pts = []
    for c in params:
        pts.extend(proj.fiber_points(c, max_degree + 2))
    return ideal_of_points(GradedRing(proj.ring.variables, proj.ring.p), pts, max_degree)
