"""Exact coefficients, graded polynomials and the text format for rings.

Polynomials are stored sparsely as ``{exponent_tuple: coefficient}``.
Coefficients live in F_p (plain ints reduced mod p) or, when the
characteristic is 0, in Q (``fractions.Fraction``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

DEFAULT_CHAR = 32003


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    characteristic: int = DEFAULT_CHAR

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not (2 < p < 2**31 and is_prime(p)):
            raise ValueError(f"characteristic must be 0 or an odd prime below 2^31, got {p}")

    def __call__(self, c):
        p = self.characteristic
        if p:
            if isinstance(c, Fraction):
                return c.numerator * pow(c.denominator, -1, p) % p
            return int(c) % p
        return Fraction(c)

    def inv(self, c):
        p = self.characteristic
        if p:
            return pow(c, -1, p)
        return 1 / Fraction(c)


# -- monomial order -----------------------------------------------------------

def grevlex_key(e: tuple) -> tuple:
    """Sort key for graded reverse lexicographic order (bigger key = bigger monomial)."""
    return (sum(e), tuple(-x for x in reversed(e)))


def mono_divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n and total degree d, in descending grevlex order."""
    if d < 0:
        return []
    out = []

    def rec(i, left, acc):
        if i == n - 1:
            out.append(tuple(acc + [left]))
            return
        for k in range(left, -1, -1):
            rec(i + 1, left - k, acc + [k])

    if n == 0:
        return [()] if d == 0 else []
    rec(0, d, [])
    out.sort(key=grevlex_key, reverse=True)
    return out


# -- raw dict arithmetic (used by the engines) --------------------------------

def padd(f: dict, g: dict, p: int) -> dict:
    h = dict(f)
    for e, c in g.items():
        v = h.get(e, 0) + c
        if p:
            v %= p
        if v:
            h[e] = v
        else:
            h.pop(e, None)
    return h


def pscale(f: dict, c, p: int) -> dict:
    if not c:
        return {}
    if p:
        return {e: v * c % p for e, v in f.items()}
    return {e: v * c for e, v in f.items()}


def pmul(f: dict, g: dict, p: int) -> dict:
    h: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            h[e] = h.get(e, 0) + c1 * c2
    if p:
        return {e: c % p for e, c in h.items() if c % p}
    return {e: c for e, c in h.items() if c}


def pmul_term(f: dict, m: tuple, c, p: int) -> dict:
    if p:
        return {tuple(x + y for x, y in zip(e, m)): v * c % p for e, v in f.items()}
    return {tuple(x + y for x, y in zip(e, m)): v * c for e, v in f.items()}


def pdegree(f: dict) -> int | None:
    if not f:
        return None
    return max(sum(e) for e in f)


def is_homogeneous_raw(f: dict) -> bool:
    return len({sum(e) for e in f}) <= 1


# -- rings and polynomials ----------------------------------------------------

class GradedRing:
    """S = k[x_0..x_n] modulo a homogeneous ideal (possibly zero)."""

    def __init__(self, variables: Iterable[str], characteristic: int = DEFAULT_CHAR,
                 ideal: Iterable = ()):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.field = FieldSpec(characteristic)
        self.p = characteristic
        self.nvars = len(self.variables)
        self._cache: dict = {}
        self.ideal = ()
        ideal = list(ideal)
        if ideal:
            self._cache["ambient"] = GradedRing(self.variables, characteristic)
        gens = []
        for g in ideal:
            if isinstance(g, str):
                g = self.poly(g)
            elif isinstance(g, Poly):
                g = Poly(self.ambient, g.terms)
            else:
                g = Poly(self.ambient, g)
            if not g.is_homogeneous():
                raise ValueError(f"ideal generator {g} is not homogeneous")
            if g.terms:
                gens.append(g)
        self.ideal = tuple(gens)
        self._gb = None

    @property
    def ambient(self) -> "GradedRing":
        if not self.ideal:
            return self
        amb = self._cache.get("ambient")
        if amb is None:
            amb = GradedRing(self.variables, self.p)
            self._cache["ambient"] = amb
        return amb

    def quotient(self, extra) -> "GradedRing":
        extra = [self.poly(g) if isinstance(g, str) else g for g in extra]
        return GradedRing(self.variables, self.p,
                          [g.terms for g in self.ideal] + [g.terms for g in extra])

    def same_ambient(self, other: "GradedRing") -> bool:
        return self.variables == other.variables and self.p == other.p

    def groebner(self):
        """Reduced grevlex Gröbner basis of the defining ideal (cached, write-once)."""
        if self._gb is None:
            from .groebner import buchberger
            self._gb = buchberger([g.terms for g in self.ideal], self.nvars, self.p)
        return self._gb

    def var(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.variables.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    @property
    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def poly(self, text: str) -> "Poly":
        return parse_poly(text, self)

    def reduce(self, f: dict) -> dict:
        """Canonical representative of f modulo the defining ideal."""
        if not self.ideal or not f:
            return f
        return self.groebner().reduce(f)

    def __repr__(self):
        s = f"ring p={self.p} vars {','.join(self.variables)}"
        if self.ideal:
            s += "; ideal " + ", ".join(str(g) for g in self.ideal)
        return s

    def __eq__(self, other):
        return (isinstance(other, GradedRing) and self.variables == other.variables
                and self.p == other.p and self.ideal == other.ideal)

    def __hash__(self):
        return hash((self.variables, self.p, self.ideal))


class Poly:
    """Immutable polynomial in the ambient ring of ``ring`` (no automatic reduction)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: GradedRing, terms: Mapping):
        self.ring = ring
        norm = ring.field
        t = {}
        for e, c in terms.items():
            c = norm(c)
            if c:
                t[tuple(e)] = c
        self.terms = t
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.ring.same_ambient(other.ring):
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly(self.ring, {(0,) * self.ring.nvars: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.ring, padd(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ring, pscale(self.terms, self.ring.field(-1), self.ring.p))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly._raw(self.ring, pmul(self.terms, other.terms, self.ring.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        return pdegree(self.terms)

    def is_homogeneous(self) -> bool:
        return is_homogeneous_raw(self.terms)

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def lead(self):
        return self.sorted_terms()[0] if self.terms else None

    def reduce(self) -> "Poly":
        return Poly._raw(self.ring, self.ring.reduce(self.terms))

    def __str__(self):
        return format_poly(self.terms, self.ring.variables, self.ring.p)

    __repr__ = __str__


def _fmt_coeff(c, p):
    if p and c > p // 2:
        return c - p
    return c


def format_poly(terms: dict, names, p: int) -> str:
    if not terms:
        return "0"
    parts = []
    for e, c in sorted(terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True):
        c = _fmt_coeff(c, p)
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{a}*{mono}"
        else:
            body = str(a)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _PolyParser:
    def __init__(self, text: str, ring: GradedRing, line: int = 1, col0: int = 1):
        self.ring = ring
        self.line = line
        self.col0 = col0
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            pos = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group(1):
                self.toks.append(("num", int(m.group(1)), pos))
            elif m.group(2):
                self.toks.append(("name", m.group(2), pos))
            else:
                self.toks.append(("op", m.group(3), pos))
        self.i = 0
        self.end = len(text)

    def err(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2] if self.i < len(self.toks) else self.end
        raise ParseError(msg, self.line, self.col0 + pos)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Poly:
        if not self.toks:
            self.err("empty expression")
        f = self.expr()
        if self.peek() is not None:
            self.err(f"unexpected token {self.peek()[1]!r}")
        return f

    def expr(self):
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                g = self.term()
                f = f + g if t[1] == "+" else f - g
            else:
                return f

    def term(self):
        f = self.power()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] == "*":
                self.take()
                f = f * self.power()
            else:
                return f

    def power(self):
        f = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            n = self.take()
            if n is None or n[0] != "num":
                self.err("exponent must be a non-negative integer")
            f = f ** n[1]
        return f

    def atom(self):
        t = self.take()
        if t is None:
            self.err("unexpected end of expression")
        kind, val, pos = t
        if kind == "num":
            return Poly(self.ring, {(0,) * self.ring.nvars: val})
        if kind == "name":
            if val not in self.ring.variables:
                self.err(f"unknown variable {val!r}", pos)
            return self.ring.var(val)
        if val == "(":
            f = self.expr()
            t = self.take()
            if t is None or t[1] != ")":
                self.err("expected ')'")
            return f
        if val == "-":
            return -self.atom()
        self.err(f"unexpected token {val!r}", pos)


def parse_poly(text: str, ring: GradedRing, line: int = 1, col: int = 1) -> Poly:
    return _PolyParser(text, ring, line, col).parse()


def _split_top(text: str) -> list[tuple[str, int]]:
    """Split on commas outside parentheses, keeping the offset of each piece."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


@dataclass
class RingText:
    ring: GradedRing
    rest: list[tuple[int, str]] = field(default_factory=list)


def parse_ring_text(text: str) -> RingText:
    """Parse ``ring p=<char> vars a,b,...`` and ``ideal g1, g2, ...``.

    Statements are separated by newlines or ``;``.  Lines after the ideal
    statement (for example a ``module`` block) are returned unparsed.
    """
    stmts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0]
        off = 0
        for piece in stripped.split(";"):
            if piece.strip():
                lead = len(piece) - len(piece.lstrip())
                stmts.append((lineno, off + lead + 1, piece.strip()))
            off += len(piece) + 1
    if not stmts:
        raise ParseError("empty ring description")
    lineno, col, head = stmts[0]
    m = re.fullmatch(r"ring\s+p\s*=\s*(\d+)\s+vars\s+(.+)", head)
    if not m:
        raise ParseError("expected 'ring p=<char> vars <v1>,<v2>,...'", lineno, col)
    p = int(m.group(1))
    if p != 0 and not (2 < p < 2**31 and is_prime(p)):
        raise ParseError(f"characteristic {p} is not an odd prime below 2^31 (or 0)",
                         lineno, col + m.start(1))
    names = [v.strip() for v in m.group(2).split(",")]
    for v in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
            raise ParseError(f"bad variable name {v!r}", lineno, col + m.start(2))
    amb = GradedRing(names, p)
    gens = []
    rest = []
    i = 1
    if i < len(stmts) and re.match(r"ideal\b", stmts[i][2]):
        lineno, col, st = stmts[i]
        body = st[len("ideal"):]
        if body.strip():
            for piece, off in _split_top(body):
                if not piece.strip():
                    raise ParseError("empty ideal generator", lineno, col + len("ideal") + off)
                g = parse_poly(piece, amb, lineno, col + len("ideal") + off)
                if not g.is_homogeneous():
                    raise ParseError(f"inhomogeneous generator {g}", lineno,
                                     col + len("ideal") + off)
                gens.append(g.terms)
        i += 1
    for lineno, col, st in stmts[i:]:
        rest.append((lineno, st))
    return RingText(GradedRing(names, p, gens), rest)


def parse_ring(text: str) -> GradedRing:
    rt = parse_ring_text(text)
    if rt.rest:
        lineno, st = rt.rest[0]
        raise ParseError(f"unexpected statement {st.split()[0]!r}", lineno, 1)
    return rt.ring


def format_ring(ring: GradedRing) -> str:
    out = f"ring p={ring.p} vars {','.join(ring.variables)}\nideal"
    if ring.ideal:
        out += " " + ", ".join(str(g) for g in ring.ideal)
    return out + "\n"
