"""Graded modules over R = S/I given by presentations.

A module is the cokernel of a homogeneous map ``F1 -> F0`` of twisted free
modules.  Everything degree-wise (graded pieces, Hom, Ext) is linear algebra
over F_p on standard-monomial bases; kernels come from module Gröbner bases
over the ambient polynomial ring.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg as la
from .exactalg import GradedRing, Poly, format_poly, monomials_of_degree, parse_poly, pmul
from .groebner import (HilbertSeries, module_buchberger, module_hilbert_series,
                       hilbert_series)

# -- ring-level helpers ---------------------------------------------------------


def ring_basis(ring: GradedRing, d: int) -> tuple[list, dict]:
    """Standard monomials of R_d and their positions."""
    key = ("basis", d)
    hit = ring._cache.get(key)
    if hit is not None:
        return hit
    if d < 0:
        out = ([], {})
    else:
        monos = monomials_of_degree(ring.nvars, d)
        if ring.ideal:
            gb = ring.groebner()
            monos = [e for e in monos if gb.is_standard(e)]
        out = (monos, {e: k for k, e in enumerate(monos)})
    ring._cache[key] = out
    return out


def ring_hf(ring: GradedRing, d: int) -> int:
    return len(ring_basis(ring, d)[0])


def nf_mono(ring: GradedRing, e: tuple) -> dict:
    """Normal form of a monomial modulo the ideal (cached)."""
    if not ring.ideal:
        return {e: 1}
    cache = ring._cache.setdefault("nf", {})
    r = cache.get(e)
    if r is None:
        r = ring.groebner().reduce({e: 1})
        cache[e] = r
    return r


def rreduce(ring: GradedRing, f: dict) -> dict:
    if not ring.ideal or not f:
        return {e: c % ring.p for e, c in f.items() if c % ring.p}
    p = ring.p
    out: dict = {}
    for e, c in f.items():
        for e2, c2 in nf_mono(ring, e).items():
            out[e2] = (out.get(e2, 0) + c * c2) % p
    return {e: c for e, c in out.items() if c}


def rmul(ring: GradedRing, f: dict, g: dict) -> dict:
    """Reduced product of two reduced polynomials."""
    if not f or not g:
        return {}
    p = ring.p
    out: dict = {}
    for a, x in f.items():
        for b, y in g.items():
            e = tuple(i + j for i, j in zip(a, b))
            xy = x * y
            for e2, c2 in nf_mono(ring, e).items():
                out[e2] = (out.get(e2, 0) + xy * c2) % p
    return {e: c for e, c in out.items() if c}


def radd(ring: GradedRing, f: dict, g: dict, c: int = 1) -> dict:
    """f + c*g."""
    p = ring.p
    out = dict(f)
    for e, v in g.items():
        w = (out.get(e, 0) + c * v) % p
        if w:
            out[e] = w
        else:
            out.pop(e, None)
    return out


def rscale(ring: GradedRing, f: dict, c: int) -> dict:
    c %= ring.p
    if not c:
        return {}
    return {e: v * c % ring.p for e, v in f.items()}


def pdeg(f: dict) -> int:
    return sum(next(iter(f)))


def to_raw(ring: GradedRing, x) -> dict:
    """Coerce a Poly, string, int or dict into a reduced coefficient dict."""
    if isinstance(x, Poly):
        f = x.terms
    elif isinstance(x, str):
        f = parse_poly(x, ring.ambient).terms
    elif isinstance(x, int):
        f = {(0,) * ring.nvars: x} if x % ring.p else {}
    else:
        f = dict(x)
    return rreduce(ring, f)


def elem_add(ring, u: list, v: list, c: int = 1) -> list:
    return [radd(ring, a, b, c) for a, b in zip(u, v)]


def elem_scale(ring, u: list, f: dict) -> list:
    return [rmul(ring, f, a) for a in u]


def elem_is_zero(u: list) -> bool:
    return not any(u)


# -- free modules and maps ----------------------------------------------------------


@dataclass(frozen=True)
class FreeModule:
    """⊕ R(a_i); the i-th basis vector has degree -a_i."""

    ring: GradedRing
    twists: tuple

    def __init__(self, ring: GradedRing, twists: Sequence[int]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "twists", tuple(int(a) for a in twists))

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def degrees(self) -> list[int]:
        return [-a for a in self.twists]

    def __add__(self, other: "FreeModule") -> "FreeModule":
        return FreeModule(self.ring, self.twists + other.twists)

    def shift(self, k: int) -> "FreeModule":
        return FreeModule(self.ring, [a + k for a in self.twists])

    def zero(self) -> list:
        return [{} for _ in self.twists]

    def basis_vector(self, i: int) -> list:
        v = self.zero()
        v[i] = {(0,) * self.ring.nvars: 1}
        return v

    def elem_degree(self, v: list) -> int | None:
        for i, f in enumerate(v):
            if f:
                return pdeg(f) - self.twists[i]
        return None

    def coords(self, d: int) -> tuple[list, dict]:
        """Monomial coordinates (i, e) of the degree-d piece."""
        key = ("free", self.twists, d)
        hit = self.ring._cache.get(key)
        if hit is not None:
            return hit
        coords = []
        for i, a in enumerate(self.twists):
            for e in ring_basis(self.ring, d + a)[0]:
                coords.append((i, e))
        out = (coords, {c: k for k, c in enumerate(coords)})
        self.ring._cache[key] = out
        return out

    def dim(self, d: int) -> int:
        return sum(ring_hf(self.ring, d + a) for a in self.twists)

    def vectors(self, d: int, elems: Sequence[list]) -> np.ndarray:
        """Rows of coordinates in the degree-d piece for reduced homogeneous elements."""
        coords, index = self.coords(d)
        V = la.zeros(len(elems), len(coords))
        for r, v in enumerate(elems):
            for i, f in enumerate(v):
                for e, c in f.items():
                    V[r, index[(i, e)]] = c
        return V

    def element(self, d: int, row) -> list:
        coords, _ = self.coords(d)
        v = self.zero()
        for k in np.flatnonzero(row):
            i, e = coords[k]
            v[i][e] = int(row[k])
        return v

    def multiples(self, d: int, elems: Sequence[list]) -> list:
        """All standard-monomial multiples of elems landing in degree d."""
        out = []
        for v in elems:
            dv = self.elem_degree(v)
            if dv is None or dv > d:
                continue
            for m in ring_basis(self.ring, d - dv)[0]:
                mono = {m: 1}
                out.append([rmul(self.ring, mono, f) if f else {} for f in v])
        return out


class ModuleMap:
    """Homogeneous map source -> target; ``columns[j]`` is the image of e_j."""

    def __init__(self, source: FreeModule, target: FreeModule, columns, check: bool = True):
        ring = target.ring
        self.source = source
        self.target = target
        self.ring = ring
        cols = []
        for col in columns:
            col = [to_raw(ring, x) for x in col] if check else list(col)
            if len(col) != target.rank:
                raise ValueError("column length does not match target rank")
            cols.append(col)
        if len(cols) != source.rank:
            raise ValueError("column count does not match source rank")
        self.columns = cols
        if check:
            for j, col in enumerate(cols):
                for i, f in enumerate(col):
                    want = target.twists[i] - source.twists[j]
                    for e in f:
                        if sum(e) != want:
                            raise ValueError(f"entry ({i},{j}) is not homogeneous of degree {want}")

    @property
    def nrows(self) -> int:
        return self.target.rank

    @property
    def ncols(self) -> int:
        return self.source.rank

    def entry(self, i: int, j: int) -> dict:
        return self.columns[j][i]

    def apply(self, v: list) -> list:
        out = self.target.zero()
        for j, f in enumerate(v):
            if f:
                out = elem_add(self.ring, out, elem_scale(self.ring, self.columns[j], f))
        return out

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self ∘ other."""
        return ModuleMap(other.source, self.target, [self.apply(c) for c in other.columns],
                         check=False)

    def is_zero(self) -> bool:
        return all(not f for col in self.columns for f in col)

    def constant_positions(self) -> list[tuple[int, int]]:
        z = (0,) * self.ring.nvars
        return [(i, j) for j, col in enumerate(self.columns) for i, f in enumerate(col)
                if z in f]

    def is_minimal(self) -> bool:
        return not self.constant_positions()

    def transpose(self) -> "ModuleMap":
        src = FreeModule(self.ring, [-a for a in self.target.twists])
        tgt = FreeModule(self.ring, [-a for a in self.source.twists])
        cols = [[self.columns[j][i] for j in range(self.ncols)] for i in range(self.nrows)]
        return ModuleMap(src, tgt, cols, check=False)

    def rows_text(self) -> list[list[str]]:
        names, p = self.ring.variables, self.ring.p
        return [[format_poly(self.columns[j][i], names, p) for j in range(self.ncols)]
                for i in range(self.nrows)]

    def __eq__(self, other):
        return (isinstance(other, ModuleMap) and self.source == other.source
                and self.target == other.target and self.columns == other.columns)

    def __repr__(self):
        return f"ModuleMap({self.source.twists} -> {self.target.twists})"

    @classmethod
    def from_rows(cls, ring: GradedRing, rows, target_twists, source_twists=None):
        """Build from a row-major matrix; source twists are inferred when omitted."""
        rows = [[to_raw(ring, x) for x in r] for r in rows]
        nr = len(target_twists)
        if len(rows) != nr:
            raise ValueError("row count does not match twists")
        nc = len(rows[0]) if rows else (len(source_twists) if source_twists else 0)
        if any(len(r) != nc for r in rows):
            raise ValueError("ragged matrix")
        if source_twists is None:
            source_twists = []
            for j in range(nc):
                for i in range(nr):
                    if rows[i][j]:
                        source_twists.append(target_twists[i] - pdeg(rows[i][j]))
                        break
                else:
                    raise ValueError(f"column {j} is zero; give source twists explicitly")
        cols = [[rows[i][j] for i in range(nr)] for j in range(nc)]
        return cls(FreeModule(ring, source_twists), FreeModule(ring, target_twists), cols)

    @classmethod
    def zero_map(cls, source: FreeModule, target: FreeModule) -> "ModuleMap":
        return cls(source, target, [target.zero() for _ in range(source.rank)], check=False)

    @classmethod
    def identity(cls, F: FreeModule) -> "ModuleMap":
        return cls(F, F, [F.basis_vector(i) for i in range(F.rank)], check=False)


def block_map(ring, source: FreeModule, target: FreeModule, blocks) -> ModuleMap:
    """Assemble a map from a 2D list of ModuleMaps (None for zero blocks)."""
    cols = []
    for bj in range(len(blocks[0])):
        width = next(b.ncols for b in (row[bj] for row in blocks) if b is not None)
        for j in range(width):
            col = []
            for row in blocks:
                b = row[bj]
                if b is None:
                    h = next(x.nrows for x in row if x is not None)
                    col.extend({} for _ in range(h))
                else:
                    col.extend(b.columns[j])
            cols.append(col)
    return ModuleMap(source, target, cols, check=False)


def direct_sum_map(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    cols = [c + g.target.zero() for c in f.columns] + [f.target.zero() + c for c in g.columns]
    return ModuleMap(f.source + g.source, f.target + g.target, cols, check=False)


# -- graded pieces ------------------------------------------------------------------


class Piece:
    """The degree-d piece M_d = F0_d / (image of the relations)_d."""

    def __init__(self, pres: "Presentation", d: int):
        self.degree = d
        F0 = pres.gens
        p = pres.ring.p
        self.p = p
        self.free_module = F0
        self.coords, self.index = F0.coords(d)
        mults = F0.multiples(d, pres.rels.columns)
        V = F0.vectors(d, mults)
        self.R, self.pivots = la.rref(V, p)
        piv = set(self.pivots)
        self.basis_idx = [k for k in range(len(self.coords)) if k not in piv]
        self.dim = len(self.basis_idx)

    def quotient(self, V: np.ndarray) -> np.ndarray:
        """Quotient coordinates of rows of ambient coordinates."""
        if V.shape[0] == 0:
            return la.zeros(0, self.dim)
        W = la.reduce_rows(self.R, self.pivots, V, self.p)
        return W[:, self.basis_idx]

    def coordinates(self, elems: Sequence[list]) -> np.ndarray:
        return self.quotient(self.free_module.vectors(self.degree, elems))

    def lift(self, q) -> list:
        """Element of F0 representing quotient coordinates q."""
        row = la.zeros(1, len(self.coords))[0]
        for k, c in enumerate(q):
            if c:
                row[self.basis_idx[k]] = int(c)
        return self.free_module.element(self.degree, row)

    def basis_elements(self) -> list:
        out = []
        for k in self.basis_idx:
            i, e = self.coords[k]
            v = self.free_module.zero()
            v[i] = {e: 1}
            out.append(v)
        return out


def mult_matrix(ring, f: dict, src: Piece, dst: Piece) -> np.ndarray:
    """Matrix (rows = basis of src) of multiplication by f from src to dst."""
    if src.dim == 0 or dst.dim == 0:
        return la.zeros(src.dim, dst.dim)
    rows = []
    for k in src.basis_idx:
        i, e = src.coords[k]
        v = src.free_module.zero()
        v[i] = rmul(ring, {e: 1}, f) if f else {}
        rows.append(v)
    return dst.coordinates(rows)


# -- presentations ---------------------------------------------------------------------


class Presentation:
    """The graded module coker(rels: F1 -> F0)."""

    def __init__(self, rels: ModuleMap, name: str | None = None):
        self.rels = rels
        self.ring = rels.ring
        self.gens = rels.target
        self.name = name
        self._pieces: dict[int, Piece] = {}
        self.meta: dict = {}

    # construction
    @classmethod
    def free(cls, ring: GradedRing, twists: Sequence[int] = (0,)) -> "Presentation":
        F = FreeModule(ring, twists)
        return cls(ModuleMap.zero_map(FreeModule(ring, []), F))

    @classmethod
    def from_matrix(cls, ring, rows, twists, source_twists=None, name=None) -> "Presentation":
        return cls(ModuleMap.from_rows(ring, rows, twists, source_twists), name=name)

    @classmethod
    def quotient_ring(cls, ring: GradedRing, gens) -> "Presentation":
        """R/J as a cyclic module, J generated by homogeneous polynomials."""
        row = [to_raw(ring, g) for g in gens]
        row = [g for g in row if g]
        if not row:
            return cls.free(ring)
        return cls.from_matrix(ring, [row], [0])

    @property
    def generator_degrees(self) -> list[int]:
        return self.gens.degrees

    @property
    def ngens(self) -> int:
        return self.gens.rank

    def twist(self, k: int) -> "Presentation":
        """M(k)."""
        src = self.rels.source.shift(k)
        tgt = self.gens.shift(k)
        return Presentation(ModuleMap(src, tgt, self.rels.columns, check=False))

    def __add__(self, other: "Presentation") -> "Presentation":
        return Presentation(direct_sum_map(self.rels, other.rels))

    def is_minimal(self) -> bool:
        return self.rels.is_minimal()

    # degree-wise data
    def piece(self, d: int) -> Piece:
        pc = self._pieces.get(d)
        if pc is None:
            pc = Piece(self, d)
            self._pieces[d] = pc
        return pc

    def hf(self, d: int) -> int:
        return self.piece(d).dim

    def hilbert_series(self) -> HilbertSeries:
        """Hilbert series of the module, via a module Gröbner basis over S."""
        hs = self._pieces.get("hs")
        if hs is None:
            hs = module_hilbert_series(_relation_gb(self), self.gens.rank)
            self._pieces["hs"] = hs
        return hs

    def text(self) -> str:
        rows = self.rels.rows_text()
        head = (f"module rows={self.gens.rank} cols={self.rels.source.rank} "
                f"twists={','.join(str(a) for a in self.gens.twists)}")
        lines = [head]
        if self.rels.source.rank:
            lines.append("source " + ",".join(str(a) for a in self.rels.source.twists))
        lines += [", ".join(r) for r in rows]
        return "\n".join(lines)

    def digest(self) -> str:
        import hashlib
        return hashlib.sha256(self.text().encode()).hexdigest()[:16]

    def __repr__(self):
        nm = f" {self.name}" if self.name else ""
        return (f"<Presentation{nm}: gens twists {self.gens.twists}, "
                f"{self.rels.source.rank} relations>")


def _relation_gb(pres: Presentation):
    """Gröbner basis over S of rels + I·F0 (so S-module F0/U equals M)."""
    ring = pres.ring
    F0 = pres.gens
    shifts = F0.degrees
    gens = []
    for col in pres.rels.columns:
        v = {(i, e): c for i, f in enumerate(col) for e, c in f.items()}
        if v:
            gens.append(v)
    known = []
    if ring.ideal:
        for g in ring.groebner().polys:
            for i in range(F0.rank):
                known.append({(i, e): c for e, c in g.items()})
    return module_buchberger(gens, ring.nvars, ring.p, shifts, known=known,
                            interreduce=False)


# -- kernels, minimal generators, pruning ---------------------------------------------


def kernel_generators(phi: ModuleMap) -> list:
    """Homogeneous generators (not minimal) of ker(phi) over R."""
    ring = phi.ring
    r0, r1 = phi.nrows, phi.ncols
    if r1 == 0:
        return []
    if r0 == 0:
        return [phi.source.basis_vector(j) for j in range(r1)]
    zero = (0,) * ring.nvars
    shifts = phi.target.degrees + phi.source.degrees
    posrank = [r0 + r1 - k for k in range(r0 + r1)]
    gens = []
    for j, col in enumerate(phi.columns):
        v = {(i, e): c for i, f in enumerate(col) for e, c in f.items()}
        v[(r0 + j, zero)] = 1
        gens.append(v)
    known = []
    if ring.ideal:
        for g in ring.groebner().polys:
            for i in range(r0):
                known.append({(i, e): c for e, c in g.items()})
    gb = module_buchberger(gens, ring.nvars, ring.p, shifts, posrank,
                           interreduce=False, known=known)
    out = []
    for f, lt in zip(gb.elements, gb.leads):
        if lt[0] < r0:
            continue
        v = [{} for _ in range(r1)]
        for (pos, e), c in f.items():
            v[pos - r0][e] = c
        v = [rreduce(ring, g) for g in v]
        if any(v):
            out.append(v)
    return out


def _ideal_multiples(ring: GradedRing, rank: int) -> list:
    known = []
    if ring.ideal:
        for g in ring.groebner().polys:
            for i in range(rank):
                known.append({(i, e): c for e, c in g.items()})
    return known


def minimal_generators(F: FreeModule, elems: Sequence[list]) -> list:
    """A minimal homogeneous generating subset of the submodule spanned by elems.

    Runs Buchberger with S-pairs ahead of inputs in each degree; an input that
    survives reduction is needed.
    """
    ring = F.ring
    items = [v for v in elems if any(v)]
    if not items:
        return []
    gens = [{(i, e): c for i, f in enumerate(v) for e, c in f.items()} for v in items]
    gb = module_buchberger(gens, ring.nvars, ring.p, F.degrees, interreduce=False,
                           known=_ideal_multiples(ring, F.rank), track=True)
    return [items[k] for k in gb.minimal_inputs]


def prune(phi: ModuleMap, extra: Sequence[list] = ()) -> tuple[ModuleMap, list]:
    """Remove unit entries of a presentation matrix by invertible row/column steps.

    Returns the pruned map and the images of ``extra`` (elements of the old
    target) in the new target; the induced map on cokernels is an isomorphism.
    """
    ring = phi.ring
    p = ring.p
    z = (0,) * ring.nvars
    cols = [list(c) for c in phi.columns]
    ext = [list(c) for c in extra]
    tw = list(phi.target.twists)
    stw = list(phi.source.twists)
    while True:
        found = None
        for j, col in enumerate(cols):
            for i, f in enumerate(col):
                if z in f:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i, j = found
        inv = pow(cols[j][i][z], -1, p)
        pivot = cols[j]
        for group in (cols, ext):
            for k, col in enumerate(group):
                if (group is cols and k == j) or not col[i]:
                    continue
                fac = rscale(ring, col[i], -inv)
                group[k] = [radd(ring, a, rmul(ring, fac, b)) for a, b in zip(col, pivot)]
        del cols[j]
        del stw[j]
        for group in (cols, ext):
            for col in group:
                del col[i]
        del tw[i]
    keep = [k for k in range(len(cols)) if any(cols[k])]
    F0 = FreeModule(ring, tw)
    new = ModuleMap(FreeModule(ring, [stw[k] for k in keep]), F0, [cols[k] for k in keep],
                    check=False)
    return new, ext


def minimize(pres: Presentation, track: bool = False):
    """Minimal presentation of the same module.

    With ``track`` also return the images of the old generators, i.e. the
    isomorphism old -> new on generators.
    """
    F0 = pres.gens
    extra = [F0.basis_vector(i) for i in range(F0.rank)] if track else []
    phi, images = prune(pres.rels, extra)
    cols = minimal_generators(phi.target, phi.columns)
    src = FreeModule(pres.ring, [-phi.target.elem_degree(c) for c in cols])
    out = Presentation(ModuleMap(src, phi.target, cols, check=False), name=pres.name)
    out.meta.update(pres.meta)
    if track:
        return out, images
    return out


# -- resolutions and Betti tables ---------------------------------------------------


@dataclass
class BettiTable:
    """Multiplicities: (l, j) -> number of summands R(-j) in F_l."""

    entries: dict = field(default_factory=dict)

    @classmethod
    def from_frees(cls, frees: Sequence[FreeModule]) -> "BettiTable":
        d: dict = {}
        for l, F in enumerate(frees):
            for a in F.twists:
                d[(l, -a)] = d.get((l, -a), 0) + 1
        return cls(d)

    @property
    def length(self) -> int:
        return max((l for l, _ in self.entries), default=-1)

    def ranks(self) -> list[int]:
        out = [0] * (self.length + 1)
        for (l, _), m in self.entries.items():
            out[l] += m
        return out

    def column(self, l: int) -> dict:
        return {j: m for (ll, j), m in sorted(self.entries.items()) if ll == l}

    def numerator(self) -> dict:
        """Σ (-1)^l m t^j, the K-polynomial over the ambient ring."""
        out: dict = {}
        for (l, j), m in self.entries.items():
            out[j] = out.get(j, 0) + (-1) ** l * m
        return {j: c for j, c in out.items() if c}

    def to_json(self) -> dict:
        return {"betti": [[l, j, m] for (l, j), m in sorted(self.entries.items())]}

    @classmethod
    def from_json(cls, obj) -> "BettiTable":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls({(int(l), int(j)): int(m) for l, j, m in obj["betti"]})

    def __str__(self) -> str:
        if not self.entries:
            return "(zero)"
        L = self.length
        rows = sorted({j - l for l, j in self.entries})
        width = max(len(str(m)) for m in self.entries.values())
        width = max(width, len(str(L)), len(str(max(self.ranks()))))
        lab = max(len(f"{r}:") for r in rows + [0])
        lab = max(lab, len("total:"))
        head = " " * lab + " " + " ".join(str(l).rjust(width) for l in range(L + 1))
        lines = [head, "total:".rjust(lab) + " " +
                 " ".join(str(r).rjust(width) for r in self.ranks())]
        for r in range(rows[0], rows[-1] + 1):
            cells = []
            for l in range(L + 1):
                m = self.entries.get((l, l + r), 0)
                cells.append((str(m) if m else ".").rjust(width))
            lines.append(f"{r}:".rjust(lab) + " " + " ".join(cells))
        return "\n".join(lines)


@dataclass
class Resolution:
    """Differentials d_1, d_2, … with d_l: F_l -> F_{l-1}."""

    maps: list
    base: FreeModule
    complete: bool = False

    @property
    def frees(self) -> list[FreeModule]:
        return [self.base] + [d.source for d in self.maps]

    @property
    def length(self) -> int:
        n = len(self.maps)
        while n and self.maps[n - 1].source.rank == 0:
            n -= 1
        return n

    def betti(self) -> BettiTable:
        return BettiTable.from_frees([F for F in self.frees])

    def is_complex(self) -> bool:
        return all(self.maps[l].compose(self.maps[l + 1]).is_zero()
                   for l in range(len(self.maps) - 1))

    def is_minimal(self) -> bool:
        return all(d.is_minimal() for d in self.maps)


def next_syzygy(d: ModuleMap) -> ModuleMap:
    """Minimal map onto ker(d)."""
    K = minimal_generators(d.source, kernel_generators(d))
    src = FreeModule(d.ring, [-d.source.elem_degree(v) for v in K])
    return ModuleMap(src, d.source, K, check=False)


def minimal_resolution(pres: Presentation, length_bound: int) -> Resolution:
    """Minimal graded free resolution up to ``length_bound`` differentials."""
    if length_bound < 0:
        raise ValueError("length_bound must be non-negative")
    M = minimize(pres)
    res = Resolution([], M.gens)
    if length_bound == 0:
        return res
    d = M.rels
    res.maps.append(d)
    while True:
        if d.source.rank == 0:
            res.complete = True
            break
        if len(res.maps) >= length_bound:
            break
        d = next_syzygy(d)
        res.maps.append(d)
    return res


def restrict_scalars(pres: Presentation, ring: GradedRing) -> Presentation:
    """View a module over R/J as a module over R (same variables, J ⊇ ideal of R)."""
    if not pres.ring.same_ambient(ring):
        raise ValueError("rings have different ambient polynomial rings")
    extra = []
    F0 = FreeModule(ring, pres.gens.twists)
    for g in pres.ring.ideal:
        f = rreduce(ring, g.terms)
        if not f:
            continue
        for i in range(F0.rank):
            v = F0.zero()
            v[i] = f
            extra.append(v)
    cols = [[rreduce(ring, f) for f in col] for col in pres.rels.columns] + extra
    cols = [c for c in cols if any(c)]
    src = FreeModule(ring, [-F0.elem_degree(c) for c in cols])
    out = Presentation(ModuleMap(src, F0, cols, check=False), name=pres.name)
    return out


def change_ring(pres: Presentation, ring: GradedRing) -> Presentation:
    """Tensor with a quotient ring R/J (same ambient)."""
    F0 = FreeModule(ring, pres.gens.twists)
    cols = [[rreduce(ring, f) for f in col] for col in pres.rels.columns]
    src = FreeModule(ring, pres.rels.source.twists)
    return Presentation(ModuleMap(src, F0, cols, check=False), name=pres.name)


def betti_over_ambient(pres: Presentation) -> BettiTable:
    S = pres.ring.ambient
    return minimal_resolution(restrict_scalars(pres, S), S.nvars + 1).betti()


# -- syzygy modules, numerical invariants, predicates ------------------------------------


@dataclass
class Diagnosis:
    """A boolean verdict with the numbers behind it."""

    value: bool
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.value


def syzygy_module(pres: Presentation, ell: int, over: GradedRing | None = None) -> Presentation:
    """Ω^ell of the module over ``over`` (default: its own ring), minimally presented."""
    if ell < 1:
        raise ValueError("ell must be at least 1")
    if over is not None and over != pres.ring:
        pres = restrict_scalars(pres, over)
    res = minimal_resolution(pres, ell + 1)
    ring = pres.ring
    if len(res.maps) < ell:
        return Presentation.free(ring, [])
    F = res.maps[ell - 1].source
    if len(res.maps) > ell:
        d = res.maps[ell]
    else:
        d = ModuleMap.zero_map(FreeModule(ring, []), F)
    return Presentation(d)


@dataclass(frozen=True)
class DegreeRank:
    degree: int
    rank: Fraction
    integral: bool
    torsion: bool
    dim: int


def degree_and_rank(pres: Presentation) -> DegreeRank:
    hm = pres.hilbert_series()
    hr = hilbert_series(pres.ring)
    dm, dr = hm.dim, hr.dim
    e = hm.multiplicity if pres.gens.rank else 0
    if pres.gens.rank == 0 or dm < dr:
        return DegreeRank(e, Fraction(0), True, True, dm)
    r = Fraction(e, hr.multiplicity)
    return DegreeRank(e, r, r.denominator == 1, False, dm)


def ring_dim(ring: GradedRing) -> int:
    return hilbert_series(ring).dim


def ring_degree(ring: GradedRing) -> int:
    return hilbert_series(ring).multiplicity


def _restrict_to_subspace(n: int, m: int, p: int, rng):
    """Substitution x = B u for a random n x m matrix B, as a function on polynomials."""
    B = [[rng.randrange(p) for _ in range(m)] for _ in range(n)]
    lin = [{tuple(int(j == k) for j in range(m)): B[i][k] for k in range(m) if B[i][k]}
           for i in range(n)]
    cache: dict = {(0,) * n: {(0,) * m: 1}}

    def mono(e):
        hit = cache.get(e)
        if hit is None:
            i = next(k for k, x in enumerate(e) if x)
            rest = tuple(x - (k == i) for k, x in enumerate(e))
            hit = cache[e] = pmul(lin[i], mono(rest), p)
        return hit

    def sub(f):
        out: dict = {}
        for e, c in f.items():
            for t, v in mono(e).items():
                w = (out.get(t, 0) + c * v) % p
                if w:
                    out[t] = w
                else:
                    out.pop(t, None)
        return out

    return sub


def sop_length(pres: Presentation, seed: int = 0) -> int | None:
    """Length of M/(l_1..l_d)M for d = dim R random linear forms (None if infinite)."""
    ring = pres.ring
    n, d = ring.nvars, ring_dim(ring)
    m = n - d
    rng = random.Random(seed)
    sub = _restrict_to_subspace(n, m, ring.p, rng)
    F0 = pres.gens
    gens = []
    for col in pres.rels.columns:
        v: dict = {}
        for i, f in enumerate(col):
            for e, c in sub(f).items():
                v[(i, e)] = c
        if v:
            gens.append(v)
    for g in ring.ideal:
        h = sub(g.terms)
        if h:
            for i in range(F0.rank):
                gens.append({(i, e): c for e, c in h.items()})
    gb = module_buchberger(gens, m, ring.p, F0.degrees, interreduce=False)
    hs = module_hilbert_series(gb, F0.rank)
    h, _, dim = hs.reduced()
    return sum(h) if dim == 0 else None


def is_mcm(pres: Presentation, attempts: int = 3) -> Diagnosis:
    """Maximal Cohen-Macaulay test.

    Fast path: for a system of parameters of general linear forms,
    length(M/lM) = e(M) exactly when M is Cohen-Macaulay; equality is a proof.
    Otherwise fall back to Auslander-Buchsbaum over S (pd_S equals codim R).
    """
    ring = pres.ring
    S = ring.ambient
    if pres.gens.rank == 0:
        return Diagnosis(False, {"reason": "zero module"})
    want = S.nvars - ring_dim(ring)
    hm = pres.hilbert_series()
    if hm.dim < ring_dim(ring):
        return Diagnosis(False, {"reason": "dimension below dim R", "codim": want})
    if want >= 1:
        for a in range(attempts):
            L = sop_length(pres, seed=a)
            if L == hm.multiplicity:
                return Diagnosis(True, {"method": "sop-length", "length": L,
                                        "multiplicity": hm.multiplicity, "codim": want})
    res = minimal_resolution(restrict_scalars(pres, S), S.nvars + 1)
    pd = res.length
    return Diagnosis(pd == want, {"method": "resolution", "pd_S": pd, "codim": want,
                                  "betti_S": res.betti().to_json()["betti"]})


def is_ulrich(pres: Presentation) -> Diagnosis:
    M = minimize(pres)
    degs = set(M.generator_degrees)
    info: dict = {"generators": M.ngens}
    if len(degs) != 1:
        info["reason"] = "not single-degree"
        return Diagnosis(False, info)
    mcm = is_mcm(M)
    info["mcm"] = mcm.value
    if not mcm:
        info["reason"] = "not MCM"
        return Diagnosis(False, info)
    dr = degree_and_rank(M)
    e = ring_degree(M.ring)
    info.update(rank=str(dr.rank), ring_degree=e)
    if not dr.integral or dr.rank == 0:
        info["reason"] = "rank not a positive integer"
        return Diagnosis(False, info)
    return Diagnosis(M.ngens == e * dr.rank, info)


class NotACM(ValueError):
    pass


def ambient_resolution(ring: GradedRing) -> Resolution:
    S = ring.ambient
    return minimal_resolution(Presentation.quotient_ring(S, list(ring.ideal)), S.nvars + 1)


def canonical_module(ring: GradedRing) -> Presentation:
    """ω_R = Ext^c_S(R, S(-n)) presented over R."""
    if not ring.ideal:
        raise ValueError("canonical_module expects a proper quotient ring")
    cached = ring._cache.get("omega")
    if cached is not None:
        return cached
    res = ambient_resolution(ring)
    c = res.length
    if c != ring.nvars - ring_dim(ring):
        raise NotACM(f"resolution length {c} exceeds the codimension; ring is not ACM")
    dc = res.maps[c - 1]
    dual = dc.transpose().columns
    n = ring.nvars
    src = FreeModule(ring, [-a - n for a in dc.target.twists])
    tgt = FreeModule(ring, [-a - n for a in dc.source.twists])
    cols = [[rreduce(ring, f) for f in col] for col in dual]
    omega = minimize(Presentation(ModuleMap(src, tgt, cols, check=False), name="omega"))
    ring._cache["omega"] = omega
    return omega


def omega_section_check(ring: GradedRing, m: int, c: int) -> Diagnosis:
    """Is H^0(ω(m-c-1)) nonzero, read as a graded piece of ω_R."""
    omega = canonical_module(ring)
    t = m - c - 1
    dim = omega.hf(t)
    return Diagnosis(dim > 0, {"degree": t, "dim": dim})


# -- submodules, duals, truncations ----------------------------------------------------


def image_presentation(F: FreeModule, elems: Sequence[list]) -> Presentation:
    """The submodule of a free module generated by elems."""
    gens = minimal_generators(F, elems)
    G = FreeModule(F.ring, [-F.elem_degree(v) for v in gens])
    phi = ModuleMap(G, F, gens, check=False)
    rel = next_syzygy(phi)
    out = Presentation(rel)
    out.meta["embedding"] = phi
    return out


def submodule(pres: Presentation, elems: Sequence[list]) -> Presentation:
    """Submodule of coker(φ) generated by elems (elements of F0)."""
    ring = pres.ring
    F0 = pres.gens
    elems = [v for v in elems if any(v)]
    g = len(elems)
    G = FreeModule(ring, [-F0.elem_degree(v) for v in elems])
    big = ModuleMap(G + pres.rels.source, F0, list(elems) + list(pres.rels.columns), check=False)
    K = kernel_generators(big)
    cols = [v[:g] for v in K if any(v[:g])]
    cols = minimal_generators(G, cols)
    src = FreeModule(ring, [-G.elem_degree(v) for v in cols])
    out = minimize(Presentation(ModuleMap(src, G, cols, check=False)))
    return out


def truncation(pres: Presentation, k: int) -> Presentation:
    """M_{≥k}, generated by a basis of M_k and any generators of degree > k."""
    M = minimize(pres)
    pc = M.piece(k)
    elems = pc.basis_elements()
    for i, dg in enumerate(M.generator_degrees):
        if dg > k:
            elems.append(M.gens.basis_vector(i))
    return submodule(M, elems)


def dual(pres: Presentation) -> Presentation:
    """M* = Hom_R(M, R) = ker(φ^T), presented minimally."""
    M = minimize(pres)
    phiT = M.rels.transpose()
    if M.rels.source.rank == 0:
        return Presentation.free(M.ring, [-a for a in M.gens.twists])
    K = minimal_generators(phiT.source, kernel_generators(phiT))
    if not K:
        return Presentation.free(M.ring, [])
    return image_presentation(phiT.source, K)


def is_zero_module(pres: Presentation) -> bool:
    return minimize(pres).ngens == 0
