"""Graded Hom and Ext, endomorphism algebras, stable Hom, decomposition tests.

A degree-t homomorphism M -> N is stored by the images of the generators of M,
as elements of the free cover G0 of N.  Linear-algebra coordinates of such a
map are the concatenated quotient coordinates in N_{d_j + t}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from flint import nmod_mat, nmod_poly

from . import linalg as la
from .gradmod import (FreeModule, ModuleMap, Presentation, Resolution, minimal_resolution,
                      minimize, mult_matrix, ring_dim, rmul, elem_add, truncation)


# -- cochains ------------------------------------------------------------------------


def _blocks(N: Presentation, degrees: Sequence[int], t: int):
    pieces = [N.piece(d + t) for d in degrees]
    offs = [0]
    for pc in pieces:
        offs.append(offs[-1] + pc.dim)
    return pieces, offs


def cochain_matrix(d: ModuleMap, N: Presentation, t: int) -> np.ndarray:
    """Matrix of x ↦ x∘d from Hom(target, N)_t to Hom(source, N)_t (row vectors)."""
    ring = N.ring
    P, po = _blocks(N, d.target.degrees, t)
    Q, qo = _blocks(N, d.source.degrees, t)
    A = la.zeros(po[-1], qo[-1])
    for k, col in enumerate(d.columns):
        for j, f in enumerate(col):
            if f and P[j].dim and Q[k].dim:
                A[po[j]:po[j + 1], qo[k]:qo[k + 1]] = mult_matrix(ring, f, P[j], Q[k])
    return A


def _lift_blocks(N: Presentation, degrees, t: int, x) -> list:
    pieces, offs = _blocks(N, degrees, t)
    return [pc.lift(x[offs[j]:offs[j + 1]]) for j, pc in enumerate(pieces)]


def map_coordinates(N: Presentation, degrees, t: int, images: Sequence[list]) -> np.ndarray:
    """Coordinates of a map given by generator images (elements of G0(N))."""
    pieces, _ = _blocks(N, degrees, t)
    parts = [pc.coordinates([v])[0] if pc.dim else la.zeros(1, 0)[0]
             for pc, v in zip(pieces, images)]
    return np.concatenate(parts) if parts else la.zeros(1, 0)[0]


# -- Hom --------------------------------------------------------------------------------


@dataclass
class HomSpace:
    source: Presentation
    target: Presentation
    degree: int
    vectors: np.ndarray  # basis rows in map coordinates

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def images(self, x) -> list:
        """Generator images of the map with coordinates x."""
        return _lift_blocks(self.target, self.source.generator_degrees, self.degree, x)

    def basis(self) -> list:
        return [self.images(x) for x in self.vectors]

    def as_map(self, x) -> ModuleMap:
        """The matrix on generators, G0(M) -> G0(N) twisted by the degree."""
        src = self.source.gens.shift(-self.degree)
        return ModuleMap(src, self.target.gens, self.images(x), check=False)

    def coordinates(self, images: Sequence[list]) -> np.ndarray:
        return map_coordinates(self.target, self.source.generator_degrees, self.degree, images)

    def verify(self) -> bool:
        """Every basis map sends relations into relations."""
        A = cochain_matrix(self.source.rels, self.target, self.degree)
        return not la.matmul(self.vectors, A, self.target.ring.p).any()


def hom_space(M: Presentation, N: Presentation, t: int = 0) -> HomSpace:
    if not M.ring.same_ambient(N.ring) or M.ring.ideal != N.ring.ideal:
        raise ValueError("modules live over different rings")
    A = cochain_matrix(M.rels, N, t)
    H = la.nullspace(np.ascontiguousarray(A.T), M.ring.p)
    return HomSpace(M, N, t, H)


def compose_images(g_images: Sequence[list], f_images: Sequence[list], ring) -> list:
    """Generator images of g∘f, f: M -> N and g: N -> P both as generator images."""
    out = []
    for v in f_images:
        acc = [{} for _ in g_images[0]] if g_images else []
        for i, f in enumerate(v):
            if f:
                acc = elem_add(ring, acc, [rmul(ring, f, a) for a in g_images[i]])
        out.append(acc)
    return out


# -- Ext --------------------------------------------------------------------------------


class BoundTooSmall(ValueError):
    pass


def resolution_of(M: Presentation, bound: int) -> Resolution:
    """Minimal resolution with at least ``bound`` maps (cached on the presentation)."""
    res = M.meta.get("_res")
    if res is None or (len(res.maps) < bound and not res.complete):
        res = minimal_resolution(M, bound)
        M.meta["_res"] = res
    return res


def minimal_form(M: Presentation) -> Presentation:
    """Cached minimal presentation; Ext cocycles always refer to this one."""
    if M.meta.get("_minimal"):
        return M
    mm = M.meta.get("_min")
    if mm is None:
        mm = minimize(M) if not M.is_minimal() else M
        mm.meta["_minimal"] = True
        M.meta["_min"] = mm
    return mm


@dataclass
class ExtResult:
    i: int
    t: int
    dim: int
    cocycles: np.ndarray  # rows, in Hom(F_i, N)_t coordinates
    resolution: Resolution
    target: Presentation

    def cocycle_images(self, k: int) -> list:
        """Cocycle k as a map F_i -> G0(N): images of the generators of F_i."""
        F = self.resolution.frees[self.i]
        return _lift_blocks(self.target, F.degrees, self.t, self.cocycles[k])


def _cochain_space(res: Resolution, N, i: int, t: int):
    maps = res.maps
    F = res.frees

    def delta(k):  # C^k -> C^{k+1}
        if k < len(maps):
            return cochain_matrix(maps[k], N, t)
        src = F[k] if k < len(F) else FreeModule(N.ring, [])
        dim = sum(N.piece(d + t).dim for d in src.degrees)
        return la.zeros(dim, 0)
    return delta


def ext(M: Presentation, N: Presentation, i: int, t: int = 0,
        length_bound: int | None = None) -> ExtResult:
    """Degree-t piece of Ext^i_R(M, N) with a cocycle basis of a complement."""
    if i < 0:
        raise ValueError("i must be non-negative")
    if length_bound is None:
        length_bound = i + 1
    if length_bound < i + 1:
        raise BoundTooSmall(f"Ext^{i} needs length_bound >= {i + 1}")
    p = M.ring.p
    M = minimal_form(M)
    res = resolution_of(M, i + 1)
    F = res.frees
    if i >= len(F):
        return ExtResult(i, t, 0, la.zeros(0, 0), res, N)
    delta = _cochain_space(res, N, i, t)
    D = delta(i)
    Z = la.nullspace(np.ascontiguousarray(D.T), p) if D.shape[1] else np.eye(D.shape[0], dtype=np.int64)
    if i == 0:
        B = la.zeros(0, Z.shape[1] if Z.size else D.shape[0])
    else:
        B = delta(i - 1)
    Rb, pb = la.rref(B, p)
    Zr = la.reduce_rows(Rb, pb, Z, p) if Z.shape[0] else Z
    if Zr.shape[0] == 0 or not Zr.any():
        return ExtResult(i, t, 0, la.zeros(0, D.shape[0]), res, N)
    _, sel = la.rref(np.ascontiguousarray(Zr.T), p)
    return ExtResult(i, t, len(sel), Z[sel], res, N)


def ext_table(M, N, indices: Sequence[int], degrees: Sequence[int], seed: int = 0) -> dict:
    rows = []
    for i in indices:
        for t in degrees:
            rows.append([i, t, ext(M, N, i, t).dim])
    return {"ext": rows, "seed": seed}


def sheaf_ext_dim(M: Presentation, N: Presentation, i: int, start: int | None = None,
                  max_steps: int = 6) -> tuple[int, int]:
    """dim Ext^i of the associated sheaves as lim_k Ext^i_R(M_{≥k}, N)_0.

    Stops once two consecutive truncations agree; returns (dim, k).
    """
    if start is None:
        start = max(minimal_form(M).generator_degrees, default=0)
    prev = None
    for k in range(start, start + max_steps):
        d = ext(truncation(M, k), N, i, 0).dim
        if d == prev:
            return d, k
        prev = d
    return prev, start + max_steps - 1


class Unsupported(ValueError):
    pass


def euler_chi(M: Presentation, N: Presentation, length_bound: int | None = None) -> int:
    """χ(M~, N~) on a curve: dim Hom - dim Ext^1 of sheaves, via truncations."""
    dim = ring_dim(M.ring)
    if dim > 2:
        raise Unsupported("euler_chi is implemented for curves (Krull dimension <= 2)")
    total = 0
    for i in range(dim):
        d, _ = sheaf_ext_dim(M, N, i)
        total += (-1) ** i * d
    return total


# -- stable Hom -------------------------------------------------------------------------


@dataclass
class StableHom:
    dim: int
    hom_dim: int
    free_rank: int
    complement: np.ndarray


def stable_hom(M: Presentation, N: Presentation) -> StableHom:
    """Hom(M,N)_0 modulo maps factoring through the minimal free cover of N."""
    p = M.ring.p
    N = minimal_form(N)
    H = hom_space(M, N, 0)
    G0 = Presentation.free(N.ring, N.gens.twists)
    HF = hom_space(M, G0, 0)
    imgs = [H.coordinates(HF.images(x)) for x in HF.vectors]
    I = np.array(imgs, dtype=np.int64).reshape(len(imgs), H.vectors.shape[1] if H.dim else 0)
    if H.dim == 0:
        return StableHom(0, 0, 0, la.zeros(0, 0))
    Ri, pi = la.rref(I, p)
    Hr = la.reduce_rows(Ri, pi, H.vectors, p)
    if not Hr.any():
        return StableHom(0, H.dim, len(pi), la.zeros(0, H.vectors.shape[1]))
    _, sel = la.rref(np.ascontiguousarray(Hr.T), p)
    return StableHom(len(sel), H.dim, len(pi), H.vectors[sel])


# -- endomorphism algebras ---------------------------------------------------------


def action_on_pieces(M: Presentation, N: Presentation, images: Sequence[list],
                     degrees: Sequence[int]) -> np.ndarray:
    """Block-diagonal matrix of a degree-0 map M -> N on ⊕_d M_d -> ⊕_d N_d."""
    ring = M.ring
    blocks = []
    for d in degrees:
        Pm, Pn = M.piece(d), N.piece(d)
        rows = []
        for v in Pm.basis_elements():
            acc = N.gens.zero()
            for i, f in enumerate(v):
                if f:
                    acc = elem_add(ring, acc, [rmul(ring, f, a) for a in images[i]])
            rows.append(acc)
        blocks.append(Pn.coordinates(rows) if rows else la.zeros(0, Pn.dim))
    m = sum(b.shape[0] for b in blocks)
    n = sum(b.shape[1] for b in blocks)
    out = la.zeros(m, n)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


@dataclass
class EndoAlgebra:
    """End(M)_0 acting faithfully on M in its generator degrees (row vectors)."""

    module: Presentation
    hom: HomSpace
    mats: list  # one matrix per basis element
    p: int

    @property
    def dim(self) -> int:
        return len(self.mats)

    def element(self, coeffs) -> np.ndarray:
        n = self.mats[0].shape[0]
        out = la.zeros(n, n)
        for c, A in zip(coeffs, self.mats):
            if c:
                out = (out + int(c) * A) % self.p
        return out

    def coefficients(self, A: np.ndarray) -> np.ndarray | None:
        basis = np.array([m.ravel() for m in self.mats], dtype=np.int64)
        return la.solve(np.ascontiguousarray(basis.T), A.ravel(), self.p)

    def radical(self) -> np.ndarray:
        """Basis (coefficient rows) of the radical via the trace form."""
        return trace_radical(self.mats, self.p)

    def is_nilpotent(self, A: np.ndarray) -> bool:
        n = A.shape[0]
        P = A.copy()
        k = 1
        while k < n:
            P = la.matmul(P, P, self.p)
            k *= 2
        return not P.any()


def endomorphism_algebra(M: Presentation) -> EndoAlgebra:
    M = minimal_form(M)
    H = hom_space(M, M, 0)
    degs = sorted(set(M.generator_degrees))
    mats = [action_on_pieces(M, M, H.images(x), degs) for x in H.vectors]
    return EndoAlgebra(M, H, mats, M.ring.p)


def _to_flint(A, p):
    n = A.shape[0]
    return nmod_mat(n, n, [int(v) for v in A.ravel()], p)


def _poly_at(poly: nmod_poly, A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    out = la.zeros(n, n)
    for c in reversed([int(x) for x in poly.coeffs()]):
        out = la.matmul(out, A, p)
        if c:
            out = (out + c * np.eye(n, dtype=np.int64)) % p
    return out


@dataclass
class Decomposition:
    status: str  # "indecomposable" | "decomposable" | "unknown"
    idempotent: np.ndarray | None = None
    seed: int = 0
    trials: int = 0
    note: str = ""
    end_dim: int = 0
    radical_dim: int = 0

    def __bool__(self):
        return self.status == "indecomposable"


def is_simple(M: Presentation) -> bool:
    return hom_space(M, M, 0).dim == 1


def trace_radical(mats: Sequence[np.ndarray], p: int) -> np.ndarray:
    """Radical of a matrix algebra with the given basis, via the trace form (p > size)."""
    r = len(mats)
    T = la.zeros(r, r)
    for a in range(r):
        for b in range(r):
            T[a, b] = int(np.trace(la.matmul(mats[a], mats[b], p))) % p
    return la.nullspace(T, p)


def split_algebra(mats: Sequence[np.ndarray], p: int, seed: int = 0,
                  trials: int = 40) -> Decomposition:
    """Look for a nontrivial idempotent in the algebra spanned by ``mats``.

    Random elements whose minimal polynomial has two coprime factors give an
    idempotent by the Chinese remainder theorem.  Otherwise the algebra is
    certified local when it is one-dimensional modulo its radical, or when
    End/rad is a field (squarefree minimal polynomial of full degree).
    """
    dim = len(mats)
    if dim == 0:
        return Decomposition("unknown", note="zero algebra", seed=seed)
    if dim == 1:
        return Decomposition("indecomposable", seed=seed, note="End = k", end_dim=1)
    rng = random.Random(seed)
    rad = trace_radical(mats, p)
    k = dim - rad.shape[0]
    basis = np.array([m.ravel() for m in mats], dtype=np.int64)
    sqfree_deg = None
    for trial in range(1, trials + 1):
        coeffs = [rng.randrange(p) for _ in range(dim)]
        A = la.zeros(*mats[0].shape)
        for c, m in zip(coeffs, mats):
            A = (A + c * m) % p
        mu = _to_flint(A, p).minpoly()
        _, facs = mu.factor()
        if len(facs) > 1:
            f1, e1 = facs[0]
            q1 = f1 ** e1
            q2 = mu // q1
            _, _, v = q1.xgcd(q2)
            e = _poly_at(v * q2, A, p)
            c = la.solve(np.ascontiguousarray(basis.T), e.ravel(), p)
            return Decomposition("decomposable", idempotent=c, seed=seed, trials=trial,
                                 end_dim=dim, radical_dim=rad.shape[0])
        sqfree_deg = facs[0][0].degree()
    if k == 1:
        return Decomposition("indecomposable", seed=seed, trials=trials, note="End local",
                             end_dim=dim, radical_dim=rad.shape[0])
    if sqfree_deg == k:
        return Decomposition("indecomposable", seed=seed, trials=trials,
                             note=f"End/rad is a field of degree {k} over the base field",
                             end_dim=dim, radical_dim=rad.shape[0])
    return Decomposition("unknown", seed=seed, trials=trials, end_dim=dim,
                         radical_dim=rad.shape[0], note=f"dim End/rad = {k}")


def is_indecomposable(M: Presentation, seed: int = 0, trials: int = 40) -> Decomposition:
    """Split End(M)_0 by random minimal polynomials, else certify it is local."""
    E = endomorphism_algebra(M)
    return split_algebra(E.mats, E.p, seed, trials)


def nilpotent_endomorphism(M: Presentation) -> np.ndarray | None:
    """Coefficients of a nonzero nilpotent endomorphism, if End is not reduced."""
    E = endomorphism_algebra(M)
    rad = E.radical()
    for c in rad:
        A = E.element(c)
        if A.any() and E.is_nilpotent(A):
            return c
    return None


# -- isomorphism -------------------------------------------------------------------


@dataclass
class IsoResult:
    status: str  # "isomorphic" | "non-isomorphic" | "unknown"
    reason: str = ""
    seed: int = 0
    certificate: list | None = None

    def __bool__(self):
        return self.status == "isomorphic"


def is_surjective_map(M: Presentation, N: Presentation, images) -> bool:
    N = minimal_form(N)
    for d in sorted(set(N.generator_degrees)):
        A = action_on_pieces(M, N, images, [d])
        if la.rank(A, N.ring.p) < N.piece(d).dim:
            return False
    return True


def is_isomorphic(M: Presentation, N: Presentation, seed: int = 0, trials: int = 20) -> IsoResult:
    """Certain rejections first, then random degree-0 maps tested for surjectivity."""
    M = minimal_form(M)
    N = minimal_form(N)
    if M.hilbert_series() != N.hilbert_series():
        return IsoResult("non-isomorphic", "Hilbert series differ", seed)
    if sorted(M.generator_degrees) != sorted(N.generator_degrees):
        return IsoResult("non-isomorphic", "generator degrees differ", seed)
    H = hom_space(M, N, 0)
    Hb = hom_space(N, M, 0)
    if H.dim == 0 or Hb.dim == 0:
        return IsoResult("non-isomorphic", "no degree-0 maps in one direction", seed)
    if hom_space(M, M, 0).dim != hom_space(N, N, 0).dim:
        return IsoResult("non-isomorphic", "endomorphism dimensions differ", seed)
    rng = random.Random(seed)
    p = M.ring.p
    for _ in range(trials):
        c = np.array([rng.randrange(p) for _ in range(H.dim)], dtype=np.int64)
        x = la.matmul(c.reshape(1, -1), H.vectors, p)[0]
        imgs = H.images(x)
        if is_surjective_map(M, N, imgs):
            return IsoResult("isomorphic", "surjective map between equal Hilbert series",
                             seed, imgs)
    return IsoResult("non-isomorphic", f"no isomorphism among {trials} random maps "
                     "(Monte Carlo)", seed)
