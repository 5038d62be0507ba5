"""Extension functors from Kronecker quiver representations, syzygy transport,
Serre construction, pushforward along finite maps, and wildness certificates.

Convention for Φ.  A representation with dimension vector (a, b) has arrows
m_i: k^a -> k^b (b×a matrices).  The class ξ = Σ m_i ⊗ e_i lives in
Hom(k^a, k^b) ⊗ Ext¹(B, A) = Ext¹(B^a, A^b), so Φ fits into
0 -> A^b -> Φ -> B^a -> 0.  A morphism (α, β) acts by β on the A^b part and
by α on the B^a part, which makes Φ a covariant functor on the nose.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, asdict
from typing import Sequence

import numpy as np
from flint import nmod_poly

from . import linalg as la
from .exactalg import GradedRing, monomials_of_degree
from .gradmod import (Diagnosis, FreeModule, ModuleMap, Presentation, dual, elem_add, is_mcm,
                      is_ulrich, minimal_generators, minimize, omega_section_check,
                      ring_basis, ring_degree, ring_dim, rmul, rreduce, submodule,
                      syzygy_module, image_presentation)
from .homalg import (ExtResult, Decomposition, ext, hom_space, is_simple, sheaf_ext_dim,
                     minimal_form, split_algebra)


class WildcraftError(ValueError):
    pass


# -- Kronecker quiver ----------------------------------------------------------------


@dataclass
class QuiverRep:
    """Representation of the w-arrow Kronecker quiver: m_i: k^a -> k^b."""

    w: int
    a: int
    b: int
    mats: tuple
    p: int = 32003

    def __post_init__(self):
        if self.w < 1:
            raise ValueError("w must be at least 1")
        mats = tuple(np.array(m, dtype=np.int64).reshape(self.b, self.a) % self.p
                     for m in self.mats)
        if len(mats) != self.w:
            raise ValueError(f"expected {self.w} matrices, got {len(mats)}")
        self.mats = mats

    @property
    def dims(self) -> tuple[int, int]:
        return (self.a, self.b)

    @classmethod
    def zero(cls, w, a, b, p=32003) -> "QuiverRep":
        return cls(w, a, b, tuple(np.zeros((b, a), dtype=np.int64) for _ in range(w)), p)

    def direct_sum(self, other: "QuiverRep") -> "QuiverRep":
        mats = []
        for m, n in zip(self.mats, other.mats):
            z = np.zeros((self.b + other.b, self.a + other.a), dtype=np.int64)
            z[:self.b, :self.a] = m
            z[self.b:, self.a:] = n
            mats.append(z)
        return QuiverRep(self.w, self.a + other.a, self.b + other.b, tuple(mats), self.p)

    def to_json(self) -> dict:
        return {"w": self.w, "dims": [self.a, self.b], "mats": [m.tolist() for m in self.mats]}


@dataclass
class QuiverMorphism:
    """(α, β) with α: c×a, β: d×b and n_i α = β m_i for every arrow."""

    source: QuiverRep
    target: QuiverRep
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        R, S = self.source, self.target
        p = R.p
        self.alpha = np.array(self.alpha, dtype=np.int64).reshape(S.a, R.a) % p
        self.beta = np.array(self.beta, dtype=np.int64).reshape(S.b, R.b) % p
        for m, n in zip(R.mats, S.mats):
            if not np.array_equal(la.matmul(n, self.alpha, p), la.matmul(self.beta, m, p)):
                raise WildcraftError("morphism does not intertwine the arrows (n_i α ≠ β m_i)")

    def compose(self, other: "QuiverMorphism") -> "QuiverMorphism":
        """self ∘ other."""
        p = self.source.p
        return QuiverMorphism(other.source, self.target, la.matmul(self.alpha, other.alpha, p),
                              la.matmul(self.beta, other.beta, p))


def quiver_hom(R: QuiverRep, S: QuiverRep) -> list[QuiverMorphism]:
    """Basis of Hom(R, S) by solving n_i α - β m_i = 0."""
    p = R.p
    na, nb = S.a * R.a, S.b * R.b
    rows = []
    for m, n in zip(R.mats, S.mats):
        # entry (r, s) of n α - β m, r < S.b, s < R.a
        for r in range(S.b):
            for s in range(R.a):
                row = np.zeros(na + nb, dtype=np.int64)
                for k in range(S.a):
                    row[k * R.a + s] += n[r, k]
                for k in range(R.b):
                    row[na + r * R.b + k] -= m[k, s]
                rows.append(row % p)
    A = np.array(rows, dtype=np.int64).reshape(len(rows), na + nb)
    N = la.nullspace(A, p) if na + nb else la.zeros(0, 0)
    out = []
    for v in N:
        out.append(QuiverMorphism(R, S, v[:na].reshape(S.a, R.a), v[na:].reshape(S.b, R.b)))
    return out


def quiver_end_mats(R: QuiverRep) -> list[np.ndarray]:
    """End(R) acting on k^a ⊕ k^b (row vectors), one matrix per basis element."""
    mats = []
    for lam in quiver_hom(R, R):
        M = la.zeros(R.a + R.b, R.a + R.b)
        M[:R.a, :R.a] = lam.alpha.T
        M[R.a:, R.a:] = lam.beta.T
        mats.append(M)
    return mats


def quiver_decomposition(R: QuiverRep, seed: int = 0) -> Decomposition:
    return split_algebra(quiver_end_mats(R), R.p, seed)


def quiver_isomorphic(R: QuiverRep, S: QuiverRep, seed: int = 0, trials: int = 20) -> bool:
    if R.dims != S.dims:
        return False
    H = quiver_hom(R, S)
    if not H:
        return False
    rng = random.Random(seed)
    p = R.p
    for _ in range(trials):
        al = la.zeros(S.a, R.a)
        be = la.zeros(S.b, R.b)
        for lam in H:
            c = rng.randrange(p)
            al = (al + c * lam.alpha) % p
            be = (be + c * lam.beta) % p
        if la.is_unit_matrix(al, p) and la.is_unit_matrix(be, p):
            return True
    return False


def random_rep(w: int, a: int, b: int, rng: random.Random, p: int = 32003) -> QuiverRep:
    return QuiverRep(w, a, b, tuple(np.array([[rng.randrange(p) for _ in range(a)]
                                              for _ in range(b)], dtype=np.int64).reshape(b, a)
                                    for _ in range(w)), p)


# -- extension bases and the functor Φ ---------------------------------------------------


@dataclass
class ExtBasis:
    """Cocycles e_1..e_w spanning Ext¹(B, A)_0, as maps F1(B) -> P0(A)."""

    B: Presentation
    A: Presentation
    ext1: ExtResult

    @property
    def w(self) -> int:
        return self.ext1.dim

    def lift(self, k: int) -> list:
        return self.ext1.cocycle_images(k)

    def verify(self) -> bool:
        """Cocycle condition and independence modulo coboundaries."""
        res = self.ext1.resolution
        p = self.A.ring.p
        if len(res.maps) > 1:
            from .homalg import cochain_matrix
            D = cochain_matrix(res.maps[1], self.A, 0)
            if la.matmul(self.ext1.cocycles, D, p).any():
                return False
        from .homalg import cochain_matrix
        B0 = cochain_matrix(res.maps[0], self.A, 0)
        stack = np.concatenate([B0, self.ext1.cocycles], axis=0)
        return la.rank(stack, p) == la.rank(B0, p) + self.w


def ext_basis(B: Presentation, A: Presentation) -> ExtBasis:
    B = minimal_form(B)
    return ExtBasis(B, A, ext(B, A, 1, 0))


def universal_extension(basis: ExtBasis, rep: QuiverRep) -> Presentation:
    """Presentation of Φ(rep): 0 -> A^b -> Φ -> B^a -> 0."""
    if rep.w != basis.w:
        raise WildcraftError(f"representation has {rep.w} arrows but Ext¹ has dimension {basis.w}")
    A = basis.A
    ring = A.ring
    d1 = basis.ext1.resolution.maps[0]
    F0, F1 = d1.target, d1.source
    P0, Q1 = A.gens, A.rels.source
    a, b = rep.a, rep.b
    gens = FreeModule(ring, P0.twists * b + F0.twists * a)
    src = FreeModule(ring, Q1.twists * b + F1.twists * a)
    nP, nF = P0.rank, F0.rank
    lifts = [basis.lift(k) for k in range(basis.w)]
    cols = []
    for q in range(b):
        for col in A.rels.columns:
            v = gens.zero()
            v[q * nP:(q + 1) * nP] = col
            cols.append(v)
    for q in range(a):
        for k, col in enumerate(d1.columns):
            v = gens.zero()
            for pp in range(b):
                acc = [{} for _ in range(nP)]
                for i in range(rep.w):
                    c = int(rep.mats[i][pp, q])
                    if c:
                        acc = elem_add(ring, acc, lifts[i][k], c)
                v[pp * nP:(pp + 1) * nP] = acc
            v[b * nP + q * nF: b * nP + (q + 1) * nF] = col
            cols.append(v)
    out = Presentation(ModuleMap(src, gens, cols, check=False))
    out.meta["sequence"] = {"a": a, "b": b, "sub_gens": b * nP, "quotient_gens": a * nF}
    out.meta["rep"] = rep
    return out


def phi_on_morphism(basis: ExtBasis, lam: QuiverMorphism) -> list:
    """Generator images of Φ(λ): Φ(R) -> Φ(S) (elements of the generators of Φ(S))."""
    R, S = lam.source, lam.target
    nP, nF = basis.A.gens.rank, basis.ext1.resolution.maps[0].target.rank
    total = S.b * nP + S.a * nF
    z = (0,) * basis.A.ring.nvars
    images = []
    for q in range(R.b):
        for g in range(nP):
            v = [{} for _ in range(total)]
            for q2 in range(S.b):
                c = int(lam.beta[q2, q])
                if c:
                    v[q2 * nP + g] = {z: c}
            images.append(v)
    for q in range(R.a):
        for h in range(nF):
            v = [{} for _ in range(total)]
            for q2 in range(S.a):
                c = int(lam.alpha[q2, q])
                if c:
                    v[S.b * nP + q2 * nF + h] = {z: c}
            images.append(v)
    return images


def functor_hom_check(basis: ExtBasis, R: QuiverRep, S: QuiverRep,
                      PR: Presentation | None = None, PS: Presentation | None = None) -> dict:
    """Compare dim Hom_Υ(R,S) with dim Hom(Φ(R), Φ(S))_0 and test injectivity of Φ."""
    PR = PR or universal_extension(basis, R)
    PS = PS or universal_extension(basis, S)
    HQ = quiver_hom(R, S)
    H = hom_space(PR, PS, 0)
    if HQ:
        coords = np.array([H.coordinates(phi_on_morphism(basis, lam)) for lam in HQ],
                          dtype=np.int64)
        rk = la.rank(coords, PR.ring.p) if H.dim else 0
    else:
        rk = 0
    return {"hom_quiver": len(HQ), "hom_phi": H.dim, "image_rank": rk,
            "injective": rk == len(HQ), "equal": len(HQ) == H.dim}


# -- syzygy transport ------------------------------------------------------------------


@dataclass
class FreeSummandScan:
    has_free_summand: bool
    witness: dict | None = None


def free_summand_scan(M: Presentation) -> FreeSummandScan:
    """M has a summand R(-a) iff some φ ∈ Hom(M, R)_{-a} sends a degree-a generator to a unit."""
    M = minimal_form(M)
    Rfree = Presentation.free(M.ring, [0])
    z = (0,) * M.ring.nvars
    for a in sorted(set(M.generator_degrees)):
        H = hom_space(M, Rfree, -a)
        for k, x in enumerate(H.vectors):
            imgs = H.images(x)
            for j, dg in enumerate(M.generator_degrees):
                if dg == a and z in imgs[j][0]:
                    return FreeSummandScan(True, {"degree": a, "generator": j, "map": k})
    return FreeSummandScan(False)


@dataclass
class Transport:
    module: Presentation
    c: int
    ulrich_source: bool
    mcm: Diagnosis
    free_summand: FreeSummandScan
    warnings: list = field(default_factory=list)


def syzygy_transport(L: Presentation, ringR: GradedRing, c: int, check: bool = True) -> Transport:
    """M = Ω^c_R(L) for a module L over a linear section T of R."""
    warnings = []
    ul = is_ulrich(L).value if check else True
    if not ul:
        warnings.append("source module is not Ulrich: full faithfulness is not guaranteed")
    M = syzygy_module(L, c, over=ringR)
    M.meta["provenance"] = {"c": c}
    mcm = is_mcm(M) if check else Diagnosis(True)
    scan = free_summand_scan(M) if check else FreeSummandScan(False)
    if check and not mcm:
        warnings.append(f"Ω^{c} is not MCM: {mcm.details}")
    return Transport(M, c, ul, mcm, scan, warnings)


@dataclass
class TruncationReport:
    ok: bool
    rows: list  # (t, dim M*_t, dim sub_t, dim quotient_t, dim Hom_T(L, T(c))_t)
    sub_generators: int
    notes: list = field(default_factory=list)


def degree_truncation_sequence(M: Presentation, c: int, L: Presentation,
                               span: int = 4) -> TruncationReport:
    """Check 0 -> <M*_{≤1-c}> -> M* -> Hom_T(L, T(c)) -> 0 degree by degree."""
    Mstar = minimal_form(dual(M))
    low = [i for i, d in enumerate(Mstar.generator_degrees) if d <= 1 - c]
    sub = submodule(Mstar, [Mstar.gens.basis_vector(i) for i in low]) if low else None
    Tc = Presentation.free(L.ring, [c])
    start = min(Mstar.generator_degrees, default=0)
    rows = []
    ok = True
    notes = []
    for t in range(start, 1 - c + span + 1):
        dm = Mstar.hf(t)
        ds = sub.hf(t) if sub is not None else 0
        dh = hom_space(L, Tc, t).dim
        rows.append((t, dm, ds, dm - ds, dh))
        if dm - ds != dh:
            ok = False
            notes.append(f"degree {t}: quotient {dm - ds} vs Hom {dh}")
        if t <= 1 - c and dm - ds != 0:
            ok = False
            notes.append(f"degree {t}: quotient nonzero at or below {1 - c}")
    return TruncationReport(ok, rows, len(low), notes)


# -- the embedding Ψ ---------------------------------------------------------------------


class HypothesisError(WildcraftError):
    pass


def embedding_hypotheses(basis: ExtBasis, ringR: GradedRing, c: int,
                         minimal_degree: bool = False) -> dict:
    A, B = basis.A, basis.B
    T = A.ring
    m = ring_dim(ringR) - 1
    flags = {
        "simple_A": is_simple(A),
        "simple_B": is_simple(B),
        "hom_AB_zero": hom_space(A, B, 0).dim == 0,
        "hom_BA_zero": hom_space(B, A, 0).dim == 0,
        "ulrich_A": is_ulrich(A).value,
        "ulrich_B": is_ulrich(B).value,
    }
    om = omega_section_check(T, m, c)
    flags["omega_section_ok"] = om.value or minimal_degree
    flags["omega_detail"] = om.details
    return flags


_REQUIRED = ("simple_A", "simple_B", "hom_AB_zero", "hom_BA_zero", "ulrich_A", "ulrich_B",
             "omega_section_ok")


def psi_pipeline(basis: ExtBasis, rep: QuiverRep, ringR: GradedRing, c: int,
                 hypotheses: dict | None = None, check: bool = False) -> Transport:
    """Ψ(rep) = Ω^c_R(Φ(rep)); refuses when a hypothesis of the embedding theorem fails."""
    hyp = hypotheses if hypotheses is not None else embedding_hypotheses(basis, ringR, c)
    missing = [k for k in _REQUIRED if not hyp.get(k)]
    if missing:
        raise HypothesisError("missing hypothesis: " + ", ".join(missing))
    E = universal_extension(basis, rep)
    return syzygy_transport(E, ringR, c, check=check)


# -- certificates ------------------------------------------------------------------------


@dataclass
class WildnessCertificate:
    ring: str
    A_hash: str
    B_hash: str
    simple_A: bool
    simple_B: bool
    hom_AB_zero: bool
    hom_BA_zero: bool
    w: int
    w_reverse: int
    acm_A: bool
    acm_B: bool
    ulrich_A: bool
    ulrich_B: bool
    omega_section_ok: bool | None
    verdict: str
    failing: list
    seed: int = 0

    def to_json(self) -> dict:
        return asdict(self)


def verdict_from_flags(flags: dict) -> tuple[str, list]:
    """The logic table of the extension theorem, its corollary and the embedding theorem."""
    failing = [k for k in ("simple_A", "simple_B", "hom_AB_zero", "hom_BA_zero")
               if not flags[k]]
    if flags["w"] < 3:
        failing.append("w>=3")
    if flags.get("omega_section_ok") is not None:
        if not flags["omega_section_ok"]:
            failing.append("omega_section_ok")
        for k in ("ulrich_A", "ulrich_B"):
            if not flags[k]:
                failing.append(k)
        return ("CM-wild-via-section" if not failing else "insufficient"), failing
    if not (flags["acm_A"] and flags["acm_B"]):
        failing += [k for k in ("acm_A", "acm_B") if not flags[k]]
    if failing:
        return "insufficient", failing
    if flags["ulrich_A"] and flags["ulrich_B"]:
        return "strictly-Ulrich-wild", []
    return "strictly-CM-wild", []


def certify_wildness(ring: GradedRing, A: Presentation, B: Presentation,
                     section: dict | None = None, seed: int = 0) -> WildnessCertificate:
    """Run the checks behind the wildness theorems.

    ``section`` (optional) is ``{"ringX": R, "c": c}`` when A, B live on a
    linear section of X; then the ω-section hypothesis is checked too.
    """
    if ring_dim(ring) <= 2:  # on curves graded Ext^1 only injects into the sheaf Ext^1
        w, w_rev = sheaf_ext_dim(B, A, 1)[0], sheaf_ext_dim(A, B, 1)[0]
    else:
        w, w_rev = ext(B, A, 1, 0).dim, ext(A, B, 1, 0).dim
    flags = {
        "simple_A": is_simple(A),
        "simple_B": is_simple(B),
        "hom_AB_zero": hom_space(A, B, 0).dim == 0,
        "hom_BA_zero": hom_space(B, A, 0).dim == 0,
        "w": w,
        "w_reverse": w_rev,
        "acm_A": is_mcm(A).value,
        "acm_B": is_mcm(B).value,
        "ulrich_A": is_ulrich(A).value,
        "ulrich_B": is_ulrich(B).value,
        "omega_section_ok": None,
    }
    if section is not None:
        m = ring_dim(section["ringX"]) - 1
        flags["omega_section_ok"] = omega_section_check(ring, m, section["c"]).value
    verdict, failing = verdict_from_flags(flags)
    return WildnessCertificate(repr(ring), A.digest(), B.digest(), verdict=verdict,
                               failing=failing, seed=seed, **flags)


# -- points, Serre construction ------------------------------------------------------------


def _eval_int(f: dict, pt, p: int) -> int:
    total = 0
    for e, c in f.items():
        term = c
        for x, k in zip(pt, e):
            if k:
                term = term * pow(x, k, p) % p
        total += term
    return total % p


def _eval_univariate(f: dict, comps: list, p: int) -> nmod_poly:
    out = nmod_poly([], p)
    powers: dict = {}
    for e, c in f.items():
        term = nmod_poly([c], p)
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = comps[i] ** k
                term = term * powers[key]
        out = out + term
    return out


def _normalize_point(pt, p):
    for x in pt:
        if x % p:
            inv = pow(x, -1, p)
            return tuple(v * inv % p for v in pt)
    return None


def _line_points(f: dict, P, Q, p) -> list:
    comps = [nmod_poly([P[i], Q[i]], p) for i in range(len(P))]
    g = _eval_univariate(f, comps, p)
    if g.is_zero():
        return []
    return [tuple((P[i] + int(r) * Q[i]) % p for i in range(len(P))) for r, _ in g.roots()]


def random_points_on(ring: GradedRing, count: int, seed: int = 0,
                     max_tries: int = 20000) -> list[tuple]:
    """Seeded random F_p-points of the projective scheme of ``ring``.

    Hypersurfaces: roots along random lines.  Codimension two with a quadric
    among the generators: rational parametrisation of the quadric from one of
    its points, then roots along a random line of directions.
    """
    p, n = ring.p, ring.nvars
    rng = random.Random(seed)
    gens = [g.terms for g in ring.ideal]
    quad = [g for g in gens if sum(next(iter(g))) == 2]
    if len(gens) != 1 and not (ring_dim(ring) == n - 2 and quad):
        raise WildcraftError("point search supports hypersurfaces and codimension-2 "
                             "schemes cut out with a quadric")
    found: list = []
    seen = set()

    def accept(pt):
        pt = _normalize_point(pt, p)
        if pt is None or pt in seen:
            return
        if all(_eval_int(g, pt, p) == 0 for g in gens):
            seen.add(pt)
            found.append(pt)

    rvec = lambda: [rng.randrange(p) for _ in range(n)]
    tries = 0
    if len(gens) == 1:
        while len(found) < count and tries < max_tries:
            tries += 1
            pts = _line_points(gens[0], rvec(), rvec(), p)
            if pts:  # one point per line keeps the sample in general position
                accept(rng.choice(pts))
        return found[:count] if len(found) >= count else _fail(count, found)
    q1 = quad[0]
    others = [g for g in gens if g is not q1]
    P = None
    while P is None and tries < max_tries:
        tries += 1
        pts = _line_points(q1, rvec(), rvec(), p)
        if pts:
            P = pts[0]
    if P is None:
        return _fail(count, found)

    def polar(u, v):  # B(u, v) as a univariate when v is
        return (_eval_univariate(q1, [u[i] + v[i] for i in range(n)], p)
                - _eval_univariate(q1, u, p) - _eval_univariate(q1, v, p))

    Pc = [nmod_poly([x], p) for x in P]
    while len(found) < count and tries < max_tries:
        tries += 1
        v0, v1 = rvec(), rvec()
        vc = [nmod_poly([v0[i], v1[i]], p) for i in range(n)]
        qv = _eval_univariate(q1, vc, p)
        bpv = polar(Pc, vc)
        comps = [qv * Pc[i] - bpv * vc[i] for i in range(n)]
        g = None
        for f in others:
            h = _eval_univariate(f, comps, p)
            g = h if g is None else g.gcd(h)
        if g is None or g.is_zero():
            continue
        roots = g.roots()
        if roots:
            r = int(rng.choice(roots)[0])
            accept(tuple(int(c(r)) for c in comps))
    return found[:count] if len(found) >= count else _fail(count, found)


def _fail(count, found):
    raise WildcraftError(f"found only {len(found)} of {count} points")


def ideal_of_points(S: GradedRing, points: Sequence[tuple], max_degree: int = 3) -> list[dict]:
    """Minimal homogeneous generators (degree ≤ max_degree) of the ideal of the points."""
    p = S.p
    cands = []
    for d in range(1, max_degree + 1):
        monos = monomials_of_degree(S.nvars, d)
        E = np.array([[_eval_int({e: 1}, pt, p) for pt in points] for e in monos],
                     dtype=np.int64).reshape(len(monos), len(points))
        K = la.nullspace(np.ascontiguousarray(E.T), p)
        for row in K:
            cands.append([{monos[k]: int(row[k]) for k in np.flatnonzero(row)}])
    F = FreeModule(S, [0])
    return [v[0] for v in minimal_generators(F, cands)]


def serre_construct(ringY: GradedRing, Z: Sequence[tuple], check: bool = True) -> Presentation:
    """Rank-2 F_Z with 0 -> O_Y -> F_Z -> I_{Z|Y}(2) -> 0 (unique nonsplit extension)."""
    p, n = ringY.p, ringY.nvars
    pts = []
    for pt in Z:
        q = _normalize_point(tuple(int(x) % p for x in pt), p)
        if q is None:
            raise WildcraftError("zero vector is not a point")
        if any(_eval_int(g.terms, q, p) for g in ringY.ideal):
            raise WildcraftError(f"point {q} does not lie on Y")
        pts.append(q)
    deg = ring_degree(ringY)
    if len(set(pts)) != deg + 2:
        raise WildcraftError(f"need deg(Y)+2 = {deg + 2} distinct points, got {len(set(pts))}")
    k = min(len(pts), n)
    for sub in itertools.combinations(pts, k):
        if la.rank(np.array(sub, dtype=np.int64), p) < k:
            raise WildcraftError(f"points {sub} are linearly dependent: "
                                 "not in general linear position")
    S = ringY.ambient
    IZ = ideal_of_points(S, pts)
    F = FreeModule(ringY, [0])
    gens = [[rreduce(ringY, g)] for g in IZ]
    I2 = minimize(image_presentation(F, gens)).twist(2)
    A = Presentation.free(ringY, [0])
    basis = ext_basis(I2, A)
    if basis.w != 1:
        raise WildcraftError(f"dim Ext^1(I_Z(2), O_Y) = {basis.w}, expected 1: points not general")
    E = minimize(universal_extension(basis, QuiverRep(1, 1, 1, (np.array([[1]]),), p)))
    E.meta["points"] = pts
    E.name = "F_Z"
    if check:
        u = is_ulrich(E)
        E.meta["ulrich"] = u.value
    return E


# -- pushforward along a finite map ---------------------------------------------------------


@dataclass
class RingMap:
    """Graded map T -> Tbar sending the i-th variable of T to images[i] (linear forms)."""

    source: GradedRing
    target: GradedRing
    images: list

    def __post_init__(self):
        from .gradmod import to_raw
        self.images = [to_raw(self.target, g) for g in self.images]
        if len(self.images) != self.source.nvars:
            raise ValueError("one image per source variable is required")
        for g in self.images:
            if g and any(sum(e) != 1 for e in g):
                raise ValueError("images must be linear forms")
        self._cache: dict = {}

    def monomial(self, u: tuple) -> dict:
        hit = self._cache.get(u)
        if hit is not None:
            return hit
        if sum(u) == 0:
            out = {(0,) * self.target.nvars: 1}
        else:
            i = next(k for k, x in enumerate(u) if x)
            v = tuple(x - (k == i) for k, x in enumerate(u))
            out = rmul(self.target, self.images[i], self.monomial(v))
        self._cache[u] = out
        return out

    def check_well_defined(self) -> bool:
        for g in self.source.ideal:
            acc: dict = {}
            for e, c in g.terms.items():
                from .gradmod import radd
                acc = radd(self.target, acc, self.monomial(e), c)
            if acc:
                return False
        return True

    @classmethod
    def identity(cls, ring: GradedRing) -> "RingMap":
        return cls(ring, ring, [ring.var(i).terms for i in range(ring.nvars)])


def pushforward_module(phi: RingMap, Mbar: Presentation, degree_bound: int) -> Presentation:
    """Restriction of scalars of Mbar along phi, verified by equal Hilbert series."""
    T, Tb = phi.source, phi.target
    p = T.p
    if not phi.check_well_defined():
        raise WildcraftError("ring map does not respect the ideal of the source")
    Mbar = minimal_form(Mbar)
    lo = min(Mbar.generator_degrees)
    gens: list = []  # (degree, element of G0(Mbar))

    def images_in(t):
        rows = []
        for dj, g in gens:
            for u in ring_basis(T, t - dj)[0]:
                f = phi.monomial(u)
                rows.append([rmul(Tb, f, a) if a else {} for a in g])
        pc = Mbar.piece(t)
        return pc.coordinates(rows) if rows else la.zeros(0, pc.dim)

    for t in range(lo, degree_bound + 1):
        pc = Mbar.piece(t)
        V = images_in(t)
        Rv, pv = la.rref(V, p)
        C = la.reduce_rows(Rv, pv, np.eye(pc.dim, dtype=np.int64), p)
        if C.any():
            _, sel = la.rref(np.ascontiguousarray(C.T), p)
            for k in sel:
                q = np.zeros(pc.dim, dtype=np.int64)
                q[k] = 1
                gens.append((t, pc.lift(q)))
    F0 = FreeModule(T, [-d for d, _ in gens])
    rels = []
    for t in range(lo, degree_bound + 1):
        V = images_in(t)
        if V.shape[0] == 0:
            continue
        K = la.nullspace(np.ascontiguousarray(V.T), p)
        rels.extend(F0.element(t, row) for row in K)
    rels = minimal_generators(F0, rels)
    src = FreeModule(T, [-F0.elem_degree(v) for v in rels])
    out = Presentation(ModuleMap(src, F0, rels, check=False))
    if out.hilbert_series().reduced() != Mbar.hilbert_series().reduced():
        raise WildcraftError(f"pushforward not complete at degree bound {degree_bound}; "
                             "raise the bound")
    out.meta["pushforward_generators"] = gens
    return out


def kernel_ideal(S: GradedRing, target: GradedRing, images, max_degree: int) -> list[dict]:
    """Minimal generators, up to max_degree, of the kernel of S -> target."""
    phi = RingMap(S, target, images)
    p = S.p
    cands = []
    for d in range(1, max_degree + 1):
        monos = monomials_of_degree(S.nvars, d)
        basis, index = ring_basis(target, d)
        A = la.zeros(len(monos), len(basis))
        for r, e in enumerate(monos):
            for t, c in phi.monomial(e).items():
                A[r, index[t]] = c
        for row in la.nullspace(np.ascontiguousarray(A.T), p):
            cands.append([{monos[k]: int(row[k]) for k in np.flatnonzero(row)}])
    return [v[0] for v in minimal_generators(FreeModule(S, [0]), cands)]
