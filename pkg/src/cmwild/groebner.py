"""Homogeneous Buchberger algorithm for ideals and graded submodules.

Module elements are dicts ``{(position, exponents): coeff}``.  The order is
position-over-term with grevlex inside a position; positions with a larger
``posrank`` are bigger.  Ideals are the one-position special case.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

from .exactalg import GradedRing, mono_divides, mono_lcm

# -- term order ---------------------------------------------------------------


class _Order:
    def __init__(self, posrank: Sequence[int]):
        self.posrank = tuple(posrank)
        self._neg: dict = {}

    def negkey(self, t):
        k = self._neg.get(t)
        if k is None:
            pos, e = t
            k = (-self.posrank[pos], -sum(e), e[::-1])
            self._neg[t] = k
        return k

    def lead(self, f: dict):
        return min(f, key=self.negkey)


def _inv(c, p):
    return pow(c, -1, p) if p else 1 / c


def _monic(f: dict, lt, p):
    c = f[lt]
    if c == 1:
        return f
    ic = _inv(c, p)
    if p:
        return {t: v * ic % p for t, v in f.items()}
    return {t: v * ic for t, v in f.items()}


class _Codec:
    """Packs a term (pos, exps) into one int whose order matches the term order.

    Smaller code means bigger term.  Layout from the top: position rank,
    (DMAX - degree), then the exponents with the last variable most significant.
    Each exponent field carries a guard bit for divisibility tests.
    """

    B = 12
    DB = 16

    def __init__(self, nvars: int, posrank: Sequence[int]):
        self.n = nvars
        B = self.B
        self.s1 = B * nvars
        self.s2 = self.s1 + self.DB
        self.dmax = (1 << (self.DB - 1))
        self.expmask = (1 << self.s1) - 1
        self.guard = sum(1 << (B * i + B - 1) for i in range(nvars))
        ranked = sorted(range(len(posrank)), key=lambda k: -posrank[k])
        self.rank_of = {pos: r for r, pos in enumerate(ranked)}
        self.pos_of = ranked
        self._enc: dict = {}

    def pack(self, e) -> int:
        B = self.B
        v = 0
        for i, x in enumerate(e):
            v |= x << (B * i)
        return v

    def encode(self, t) -> int:
        k = self._enc.get(t)
        if k is None:
            pos, e = t
            k = ((self.rank_of[pos] << self.s2) | ((self.dmax - sum(e)) << self.s1)
                 | self.pack(e))
            self._enc[t] = k
        return k

    def decode(self, k: int):
        B = self.B
        m = (1 << B) - 1
        e = tuple((k >> (B * i)) & m for i in range(self.n))
        return self.pos_of[k >> self.s2], e

    def delta(self, q) -> int:
        """Added to a code, multiplies the term by the monomial q."""
        return self.pack(q) - (sum(q) << self.s1)


class GroebnerBasis:
    """A Gröbner basis of a graded submodule of a free module over k[x]."""

    def __init__(self, elements, nvars, p, shifts, posrank, reduced=False):
        self.nvars = nvars
        self.p = p
        self.shifts = tuple(shifts)
        self.order = _Order(posrank)
        self.codec = _Codec(nvars, posrank)
        self.elements = []
        self.leads = []
        self._enc: list = []  # (lead code, [(code, coeff), ...] tail, full code dict)
        self._by_rank: dict[int, list] = {}
        self._hits: dict = {}
        self._misses: dict = {}  # code -> number of same-position leads already checked
        for f in elements:
            self._append(f)
        self.reduced = reduced

    def _append(self, f):
        return self._append_enc({self.codec.encode(t): c for t, c in f.items()})

    def _append_enc(self, h: dict) -> dict:
        cd = self.codec
        lk = min(h)
        c = h[lk]
        if c != 1:
            ic = _inv(c, self.p)
            h = {k: v * ic % self.p for k, v in h.items()} if self.p else \
                {k: v * ic for k, v in h.items()}
        f = {cd.decode(k): v for k, v in h.items()}
        lt = cd.decode(lk)
        self.elements.append(f)
        self.leads.append(lt)
        tail = [(k, v) for k, v in h.items() if k != lk]
        self._enc.append((lk, tail, h))
        self._by_rank.setdefault(lk >> cd.s2, []).append((lk & cd.expmask, lk, tail))
        return f

    def degree_of(self, f) -> int:
        pos, e = next(iter(f))
        return sum(e) + self.shifts[pos]

    def lead_monomials(self, pos=0) -> list[tuple]:
        return [lt[1] for lt in self.leads if lt[0] == pos]

    def _divisor(self, t: int):
        hit = self._hits.get(t)
        if hit is not None:
            return hit
        cd = self.codec
        cands = self._by_rank.get(t >> cd.s2, ())
        start = self._misses.get(t, 0)
        te = (t & cd.expmask) | cd.guard
        g = cd.guard
        for k in range(start, len(cands)):
            le = cands[k][0]
            if (te - le) & g == g:
                self._hits[t] = cands[k]
                self._misses.pop(t, None)
                return cands[k]
        self._misses[t] = len(cands)
        return None

    def reduce_enc(self, f: dict, full: bool = True) -> dict:
        if not f:
            return {}
        p = self.p
        f = dict(f)
        heap = list(f)
        heapq.heapify(heap)
        rem = {}
        pop, push = heapq.heappop, heapq.heappush
        divisor = self._divisor
        while heap:
            t = pop(heap)
            c = f.pop(t, None)
            if c is None:
                continue
            d = divisor(t)
            if d is None:
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            le, lk, tail = d
            delta = t - lk  # same position: the code difference multiplies by q
            for gk, gc in tail:
                nt = gk + delta
                old = f.get(nt)
                if old is None:
                    v = (-c * gc) % p if p else -c * gc
                    if v:
                        f[nt] = v
                        push(heap, nt)
                else:
                    v = (old - c * gc) % p if p else old - c * gc
                    if v:
                        f[nt] = v
                    else:
                        del f[nt]
        return rem

    def reduce(self, f: dict, full: bool = True) -> dict:
        """Normal form of f (full reduction by default)."""
        if not f:
            return {}
        cd = self.codec
        r = self.reduce_enc({cd.encode(t): c for t, c in f.items()}, full)
        return {cd.decode(k): c for k, c in r.items()}

    def spoly_enc(self, i: int, j: int) -> dict:
        cd = self.codec
        p = self.p
        (_, ef), (_, eg) = self.leads[i], self.leads[j]
        lcm = mono_lcm(ef, eg)
        df = cd.delta(tuple(a - b for a, b in zip(lcm, ef)))
        dg = cd.delta(tuple(a - b for a, b in zip(lcm, eg)))
        h = {k + df: c for k, c in self._enc[i][1]}
        for k, c in self._enc[j][1]:
            t = k + dg
            v = h.get(t, 0) - c
            if p:
                v %= p
            if v:
                h[t] = v
            else:
                h.pop(t, None)
        return h

    def contains(self, f: dict) -> bool:
        return not self.reduce(f, full=False)

    def __len__(self):
        return len(self.elements)


def _degree(f, shifts):
    pos, e = next(iter(f))
    return sum(e) + shifts[pos]


def module_buchberger(gens: Sequence[dict], nvars: int, p: int, shifts: Sequence[int],
                      posrank: Sequence[int] | None = None,
                      interreduce: bool = True, known: Sequence[dict] = (),
                      track: bool = False) -> GroebnerBasis:
    """Reduced Gröbner basis of the submodule generated by homogeneous ``gens``.

    ``shifts[pos]`` is the degree of the basis vector at ``pos``.  Pairs are
    processed degree by degree (normal strategy) with Gebauer-Möller pruning.
    ``known`` elements must already form a Gröbner basis of what they generate;
    no pairs are formed among them.

    Within one degree all S-pairs are reduced before the input generators, so
    an input that survives reduction is not in the submodule generated by
    lower-degree data.  With ``track`` the indices of those inputs are stored
    in ``basis.minimal_inputs``: they form a minimal generating set.
    """
    shifts = tuple(shifts)
    if posrank is None:
        posrank = [-i for i in range(len(shifts))]
    ideal_case = len(shifts) == 1
    order_in = [k for k, g in enumerate(gens) if g]
    gens = [gens[k] for k in order_in]
    for g in gens:
        if len({sum(e) + shifts[pos] for pos, e in g}) != 1:
            raise ValueError("module_buchberger needs homogeneous input")
    basis = GroebnerBasis([], nvars, p, shifts, posrank)
    pending = sorted(range(len(gens)), key=lambda k: _degree(gens[k], shifts))
    pairs: list = []  # heap of (degree, seq, i, j)
    lcms: dict = {}
    active: list[int] = []
    seq = 0

    def add(h):
        nonlocal seq, pairs, active
        basis._append_enc(h)
        k = len(basis.elements) - 1
        lk = basis.leads[k]
        C = []
        for i in active:
            li = basis.leads[i]
            if li[0] != lk[0]:
                continue
            C.append((i, mono_lcm(li[1], lk[1])))
        D = []
        while C:
            i, lc = C.pop(0)
            li = basis.leads[i]
            coprime = ideal_case and all(a == 0 or b == 0 for a, b in zip(li[1], lk[1]))
            if coprime or (not any(mono_divides(l2, lc) for _, l2 in C)
                           and not any(mono_divides(l2, lc) for _, l2 in D)):
                D.append((i, lc))
        E = []
        for i, lc in D:
            li = basis.leads[i]
            if ideal_case and all(a == 0 or b == 0 for a, b in zip(li[1], lk[1])):
                continue
            E.append((i, lc))
        kept = []
        for item in pairs:
            d, _, s, i, j = item
            if j is None:
                kept.append(item)
                continue
            lc = lcms[(i, j)]
            li, lj = basis.leads[i], basis.leads[j]
            if (li[0] == lk[0] and mono_divides(lk[1], lc)
                    and mono_lcm(li[1], lk[1]) != lc and mono_lcm(lj[1], lk[1]) != lc):
                continue
            kept.append(item)
        for i, lc in E:
            lcms[(i, k)] = lc
            d = sum(lc) + shifts[lk[0]]
            kept.append((d, 0, seq, i, k))
            seq += 1
        heapq.heapify(kept)
        pairs = kept
        active = [i for i in active
                  if not (basis.leads[i][0] == lk[0] and mono_divides(lk[1], basis.leads[i][1]))]
        active.append(k)

    for g in known:
        basis._append(dict(g))
        active.append(len(basis.elements) - 1)
    for k in pending:
        heapq.heappush(pairs, (_degree(gens[k], shifts), 1, seq, k, None))
        seq += 1
    minimal_inputs = []
    while pairs:
        d, _, _, i, j = heapq.heappop(pairs)
        if j is None:
            h = {basis.codec.encode(t): c for t, c in gens[i].items()}
        else:
            del_key = (i, j)
            h = basis.spoly_enc(i, j)
            lcms.pop(del_key, None)
        h = basis.reduce_enc(h)
        if h:
            if j is None:
                minimal_inputs.append(order_in[i])
            add(h)
    if interreduce:
        basis = _interreduce(basis)
    if track:
        basis.minimal_inputs = sorted(minimal_inputs)
    return basis


def _interreduce(basis: GroebnerBasis) -> GroebnerBasis:
    items = list(zip(basis.leads, basis.elements))
    keep = []
    for n, (lt, f) in enumerate(items):
        redundant = False
        for m, (lt2, _) in enumerate(items):
            if m == n or lt2[0] != lt[0] or not mono_divides(lt2[1], lt[1]):
                continue
            if lt2[1] != lt[1] or m < n:
                redundant = True
                break
        if not redundant:
            keep.append((lt, f))
    keep.sort(key=lambda item: basis.order.negkey(item[0]))
    out = GroebnerBasis([f for _, f in keep], basis.nvars, basis.p, basis.shifts,
                        basis.order.posrank)
    final = []
    for idx, f in enumerate(out.elements):
        lt = out.leads[idx]
        tail = {t: c for t, c in f.items() if t != lt}
        tail = out.reduce(tail)
        g = dict(tail)
        g[lt] = 1
        final.append(g)
    return GroebnerBasis(final, basis.nvars, basis.p, basis.shifts, basis.order.posrank,
                         reduced=True)


class IdealGB:
    """Gröbner basis of a homogeneous ideal; polynomials are plain dicts."""

    def __init__(self, mgb: GroebnerBasis):
        self.mgb = mgb
        self.nvars = mgb.nvars
        self.p = mgb.p
        self.polys = [{e: c for (_, e), c in f.items()} for f in mgb.elements]
        self.leads = [lt[1] for lt in mgb.leads]
        self.reduced = mgb.reduced

    def reduce(self, f: dict) -> dict:
        if not self.polys:
            return dict(f)
        r = self.mgb.reduce({(0, e): c for e, c in f.items()})
        return {e: c for (_, e), c in r.items()}

    def is_standard(self, e: tuple) -> bool:
        return not any(all(a <= b for a, b in zip(le, e)) for le in self.leads)

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


def buchberger(gens: Sequence[dict], nvars: int, p: int) -> IdealGB:
    """Reduced grevlex Gröbner basis of the ideal generated by ``gens``."""
    return IdealGB(module_buchberger([{(0, e): c for e, c in g.items()} for g in gens if g],
                                     nvars, p, [0]))


def groebner_basis(ring: GradedRing, gens) -> IdealGB:
    raw = [g.terms if hasattr(g, "terms") else g for g in gens]
    return buchberger(raw, ring.nvars, ring.p)


def normal_form(f, gb: IdealGB):
    """Canonical coset representative of f modulo the ideal of ``gb``."""
    from .exactalg import Poly
    if isinstance(f, Poly):
        return Poly._raw(f.ring, gb.reduce(f.terms))
    return gb.reduce(f)


# -- Hilbert series -------------------------------------------------------------

def _pmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


@lru_cache(maxsize=20000)
def _numer(gens: frozenset) -> tuple:
    gens = _minimalize(gens)
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    n = len(gens[0])
    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    if all(c <= 1 for c in counts):
        out = [1]
        for g in gens:
            f = [0] * (sum(g) + 1)
            f[0] = 1
            f[-1] -= 1
            out = _pmul(out, f)
        return tuple(_trim(out))
    x = max(range(n), key=lambda i: counts[i])
    unit = tuple(1 if i == x else 0 for i in range(n))
    plus = [g for g in gens if g[x] == 0] + [unit]
    colon = [tuple(a - 1 if i == x and a > 0 else a for i, a in enumerate(g)) for g in gens]
    a = list(_numer(frozenset(plus)))
    b = [0] + list(_numer(frozenset(colon)))
    return tuple(_trim(_padd(a, b)))


def monomial_numerator(monos, nvars: int) -> list[int]:
    """K(t) with HS(k[x]/J) = K(t)/(1-t)^nvars for the monomial ideal J."""
    if not monos:
        return [1]
    return list(_numer(frozenset(tuple(m) for m in monos)))


@dataclass(frozen=True)
class HilbertSeries:
    """HS(t) = numerator(t) / (1-t)^nvars, numerator a Laurent polynomial."""

    numerator: tuple  # pairs (power, coeff), sorted, nonzero
    nvars: int

    @classmethod
    def from_dict(cls, d: dict, nvars: int) -> "HilbertSeries":
        return cls(tuple(sorted((k, v) for k, v in d.items() if v)), nvars)

    def as_dict(self) -> dict:
        return dict(self.numerator)

    def __call__(self, t: int) -> int:
        """Value of the Hilbert function in degree t."""
        n = self.nvars
        total = 0
        for k, c in self.numerator:
            if t - k >= 0:
                total += c * comb(t - k + n - 1, n - 1) if n > 0 else (c if t == k else 0)
        return total

    def reduced(self) -> tuple[list[int], int, int]:
        """(h, shift, dim): HS = t^shift h(t) / (1-t)^dim with h(1) != 0."""
        if not self.numerator:
            return [0], 0, 0
        lo = self.numerator[0][0]
        hi = self.numerator[-1][0]
        h = [0] * (hi - lo + 1)
        for k, c in self.numerator:
            h[k - lo] = c
        dim = self.nvars
        while dim > 0 and sum(h) == 0:
            # divide by (1 - t)
            q = []
            acc = 0
            for c in h[:-1]:
                acc += c
                q.append(acc)
            h = q
            dim -= 1
        return _trim(h), lo, dim

    @property
    def dim(self) -> int:
        return self.reduced()[2]

    @property
    def multiplicity(self) -> int:
        h, _, _ = self.reduced()
        return sum(h)

    def __mul__(self, other: "HilbertSeries") -> "HilbertSeries":
        d = {}
        for a, x in self.numerator:
            for b, y in other.numerator:
                d[a + b] = d.get(a + b, 0) + x * y
        return HilbertSeries.from_dict(d, self.nvars + other.nvars)


def module_hilbert_series(gb: GroebnerBasis, rank: int) -> HilbertSeries:
    """Hilbert series of F/U where gb is a Gröbner basis of U inside F = ⊕ S(-shift)."""
    d: dict = {}
    for pos in range(rank):
        num = monomial_numerator(gb.lead_monomials(pos), gb.nvars)
        s = gb.shifts[pos]
        for k, c in enumerate(num):
            if c:
                d[k + s] = d.get(k + s, 0) + c
    return HilbertSeries.from_dict(d, gb.nvars)


def hilbert_series(ring: GradedRing) -> HilbertSeries:
    gb = ring.groebner()
    num = monomial_numerator(gb.leads, ring.nvars)
    return HilbertSeries.from_dict(dict(enumerate(num)), ring.nvars)


def krull_dim(ring: GradedRing) -> int:
    return hilbert_series(ring).dim


# -- h-vectors ------------------------------------------------------------------

class NotACMError(ValueError):
    pass


@dataclass(frozen=True)
class HVector:
    entries: tuple

    def __post_init__(self):
        if not self.entries or self.entries[0] != 1:
            raise ValueError("an h-vector starts with 1")

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def __str__(self):
        return "(" + ", ".join(str(h) for h in self.entries) + ")"


def hilbert_hvector(ring: GradedRing) -> HVector:
    """Numerator of the Hilbert series over (1-t)^dim."""
    h, shift, _ = hilbert_series(ring).reduced()
    if shift != 0 or any(c < 0 for c in h):
        raise NotACMError(f"Hilbert numerator {h} has negative entries: not ACM at this dimension")
    return HVector(tuple(h))


def artinian_reduction_hvector(ring: GradedRing, seed: int = 0, retries: int = 5) -> HVector:
    """h-vector from the Hilbert function of a random linear Artinian reduction.

    Agreement with :func:`hilbert_hvector` certifies that the random linear
    forms form a regular sequence, i.e. that the ring is Cohen-Macaulay.
    """
    if ring.p == 0:
        raise ValueError("random linear sections need a prime field")
    target = hilbert_hvector(ring)
    dim = krull_dim(ring)
    rng = random.Random(seed)
    last = None
    for _ in range(retries):
        forms = []
        for _ in range(dim):
            f = {}
            for i in range(ring.nvars):
                c = rng.randrange(ring.p)
                if c:
                    e = [0] * ring.nvars
                    e[i] = 1
                    f[tuple(e)] = c
            forms.append(f)
        art = ring.quotient([_as_poly(ring, f) for f in forms])
        hs = hilbert_series(art)
        vals = []
        t = 0
        while True:
            v = hs(t)
            if v == 0 and t > 0:
                break
            vals.append(v)
            t += 1
            if t > 200:
                break
        last = tuple(vals)
        if last == target.entries:
            return HVector(last)
    raise NotACMError(f"Artinian reduction gives {last}, Hilbert numerator gives {target}")


def _as_poly(ring, f):
    from .exactalg import Poly
    return Poly(ring.ambient, f)


def sectional_genus(h) -> int:
    entries = h.entries if isinstance(h, HVector) else tuple(h)
    return sum((i - 1) * hi for i, hi in enumerate(entries) if i >= 2)
