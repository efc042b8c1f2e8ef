"""Exact multivariate polynomials over QQ with pluggable monomial orders."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Exponent = tuple  # tuple[int, ...]

__all__ = [
    "ParseError",
    "Ring",
    "MonomialOrder",
    "lex",
    "degrevlex",
    "block",
    "weighted",
    "DEGREVLEX",
    "LEX",
    "Polynomial",
    "parse_polynomial",
    "poly_ops",
    "leading_term",
    "as_coefficient",
]


class ParseError(ValueError):
    """Raised for malformed polynomial text."""


def as_coefficient(c) -> mpq:
    if isinstance(c, str):
        return mpq(Fraction(c))
    return mpq(c)


# --------------------------------------------------------------------- rings


@dataclass(frozen=True)
class Ring:
    """Polynomial ring QQ[variables]."""

    variables: tuple

    def __post_init__(self):
        names = tuple(self.variables)
        object.__setattr__(self, "variables", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in names:
            if not _VAR_RE.fullmatch(v):
                raise ValueError(f"invalid variable name {v!r}")

    @property
    def ngens(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def gen(self, name: str) -> "Polynomial":
        e = [0] * self.ngens
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.gen(v) for v in self.variables]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {(0,) * self.ngens: c})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def fresh_name(self, stem: str = "t") -> str:
        name, i = stem, 0
        while name in self.variables:
            i += 1
            name = f"{stem}{i}"
        return name

    def extend(self, names: Iterable[str]) -> "Ring":
        return Ring(self.variables + tuple(names))

    def __call__(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __str__(self):
        return "QQ[" + ", ".join(self.variables) + "]"


_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9']*")


# -------------------------------------------------------------------- orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, represented by a sort key on exponent vectors.

    ``key(a) < key(b)`` iff ``a`` precedes ``b``. Kinds: ``lex``,
    ``degrevlex``, ``block`` (``split`` plus two inner orders) and
    ``weighted`` (weight vector plus tie order).
    """

    kind: str
    split: int = 0
    inner: tuple = ()
    weights: tuple = ()

    def key(self, e: Exponent):
        k = self.kind
        if k == "degrevlex":
            return (sum(e), tuple(-a for a in reversed(e)))
        if k == "lex":
            return tuple(e)
        if k == "block":
            s = self.split
            return (self.inner[0].key(e[:s]), self.inner[1].key(e[s:]))
        if k == "weighted":
            return (sum(w * a for w, a in zip(self.weights, e)), self.inner[0].key(e))
        raise ValueError(f"unknown order kind {k!r}")

    def compare(self, a: Exponent, b: Exponent) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def keyfunc(self) -> Callable:
        """Memoized key function for hot loops."""
        cache: dict = {}
        key = self.key

        def k(e):
            try:
                return cache[e]
            except KeyError:
                v = cache[e] = key(e)
                return v

        return k

    def __str__(self):
        if self.kind == "block":
            return f"block({self.split}; {self.inner[0]}, {self.inner[1]})"
        if self.kind == "weighted":
            return f"weighted({list(self.weights)}; {self.inner[0]})"
        return self.kind


def lex() -> MonomialOrder:
    return MonomialOrder("lex")


def degrevlex() -> MonomialOrder:
    return MonomialOrder("degrevlex")


def block(split: int, first: MonomialOrder | None = None, second: MonomialOrder | None = None) -> MonomialOrder:
    """Product order: compare the first ``split`` variables, then the rest."""
    if split < 0:
        raise ValueError("split must be non-negative")
    return MonomialOrder("block", split=split, inner=(first or degrevlex(), second or degrevlex()))


def weighted(weights: Sequence[int], tie: MonomialOrder | None = None) -> MonomialOrder:
    if any(w < 0 for w in weights):
        raise ValueError("weights must be non-negative")
    return MonomialOrder("weighted", weights=tuple(weights), inner=(tie or degrevlex(),))


DEGREVLEX = degrevlex()
LEX = lex()


# --------------------------------------------------------------- polynomials


class Polynomial:
    """Immutable polynomial: a map exponent tuple -> nonzero rational."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, object] | None = None):
        self.ring = ring
        clean = {}
        n = ring.ngens
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match {n} variables")
            if any(a < 0 for a in e):
                raise ValueError(f"negative exponent in {e}")
            c = as_coefficient(c)
            if c:
                clean[e] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring: Ring, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_linear(self) -> bool:
        return bool(self.terms) and self.total_degree() == 1

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support(self) -> set:
        """Indices of variables occurring in the polynomial."""
        out = set()
        for e in self.terms:
            out.update(i for i, a in enumerate(e) if a)
        return out

    def variables(self) -> list:
        return [self.ring.variables[i] for i in sorted(self.support())]

    def constant_coefficient(self) -> mpq:
        return self.terms.get((0,) * self.ring.ngens, mpq(0))

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, type(mpq(0)))):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self.terms.items()})

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
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        c = as_coefficient(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: c * a for e, a in self.terms.items()})

    def mul_monomial(self, m: Exponent, c=1) -> "Polynomial":
        c = as_coefficient(c)
        return Polynomial._raw(
            self.ring, {tuple(a + b for a, b in zip(e, m)): c * a_ for e, a_ in self.terms.items()}
        )

    def __truediv__(self, c):
        return self.scale(1 / as_coefficient(c))

    def monic(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    def primitive(self, order: MonomialOrder = DEGREVLEX) -> "Polynomial":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        if not self.terms:
            return self
        from math import gcd, lcm

        den = lcm(*(int(c.denominator) for c in self.terms.values()))
        nums = [int(c * den) for c in self.terms.values()]
        g = gcd(*nums)
        _, lc = self.leading_term(order)
        s = den // g if lc > 0 else -den // g
        return self.scale(s)

    # -- orders
    def sorted_terms(self, order: MonomialOrder = DEGREVLEX) -> list:
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def leading_monomial(self, order: MonomialOrder = DEGREVLEX) -> Exponent:
        return self.leading_term(order)[0]

    # -- substitution and ring changes
    def evaluate(self, values: Mapping[str, object]) -> "Polynomial":
        """Substitute constants for some variables (result stays in the same ring)."""
        idx = {self.ring.index(v): as_coefficient(c) for v, c in values.items()}
        out: dict = {}
        for e, c in self.terms.items():
            e2 = list(e)
            for i, val in idx.items():
                if e2[i]:
                    c = c * val ** e2[i]
                    e2[i] = 0
            if c:
                t = tuple(e2)
                v = out.get(t, 0) + c
                if v:
                    out[t] = v
                else:
                    out.pop(t, None)
        return Polynomial._raw(self.ring, out)

    def substitute(self, images: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Ring-homomorphic substitution of polynomials (same ring) for variables."""
        result = self.ring.zero()
        idx = [(self.ring.index(v), p) for v, p in images.items()]
        for e, c in self.terms.items():
            rest = list(e)
            term = self.ring.const(c)
            for i, p in idx:
                if rest[i]:
                    term = term * p ** rest[i]
                    rest[i] = 0
            result = result + term.mul_monomial(tuple(rest))
        return result

    def to_ring(self, ring: Ring) -> "Polynomial":
        """Map into a ring sharing variable names; missing variables must not occur."""
        if ring == self.ring:
            return self
        pos = []
        for i, v in enumerate(self.ring.variables):
            pos.append(ring.variables.index(v) if v in ring.variables else None)
        n = ring.ngens
        out = {}
        for e, c in self.terms.items():
            e2 = [0] * n
            for i, a in enumerate(e):
                if a:
                    if pos[i] is None:
                        raise ValueError(
                            f"variable {self.ring.variables[i]} not in target ring {ring}"
                        )
                    e2[pos[i]] = a
            out[tuple(e2)] = c
        return Polynomial._raw(ring, out)

    def rename(self, ring: Ring) -> "Polynomial":
        """Positional relabeling into a ring with the same number of variables."""
        if ring.ngens != self.ring.ngens:
            raise ValueError("positional relabeling needs equal variable counts")
        return Polynomial._raw(ring, dict(self.terms))

    # -- identity
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _format_monomial(e: Exponent, names: Sequence[str]) -> str:
    parts = []
    for a, v in zip(e, names):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts)


def format_polynomial(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> str:
    if not f.terms:
        return "0"
    out = []
    for e, c in f.sorted_terms(order):
        mono = _format_monomial(e, f.ring.variables)
        neg = c < 0
        a = -c if neg else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ------------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        elif sym is not None:
            if sym not in "+-*^()":
                raise ParseError(f"unexpected character {sym!r} at position {m.start(3)}")
            tokens.append(("op", sym))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, sym):
        tok = self.take()
        if tok != ("op", sym):
            raise ParseError(f"expected {sym!r}, got {tok[1]!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty expression")
        f = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek() in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            f = f * self.factor()
        return f

    def factor(self) -> Polynomial:
        kind, val = self.take()
        if kind == "num":
            try:
                base = self.ring.const(Fraction(val))
            except ZeroDivisionError:
                raise ParseError(f"zero denominator in {val!r}") from None
        elif kind == "var":
            if val not in self.ring.variables:
                raise ParseError(f"unknown variable {val!r}")
            base = self.ring.gen(val)
        elif (kind, val) == ("op", "("):
            base = self.expr()
            self.expect(")")
        elif (kind, val) == ("op", "-"):
            return -self.factor()
        else:
            raise ParseError(f"unexpected token {val!r}")
        if self.peek() == ("op", "^"):
            self.take()
            if self.peek() == ("op", "-"):
                raise ParseError("negative exponent")
            k, v = self.take()
            if k != "num" or "/" in v:
                raise ParseError(f"exponent must be a natural number, got {v!r}")
            base = base ** int(v)
        return base


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse ``text`` in the grammar ``expr := term (('+'|'-') term)*``."""
    return _Parser(text, ring).parse()


# ----------------------------------------------------------------- functions


def poly_ops(op: str, f: Polynomial, g) -> Polynomial:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "pow":
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def leading_term(f: Polynomial, order: MonomialOrder = DEGREVLEX):
    return f.leading_term(order)
