"""Buchberger's algorithm and the ideal calculus built on it."""

from __future__ import annotations

import threading
from itertools import combinations
from typing import Iterable, Sequence

from gmpy2 import mpq

from .polycore import DEGREVLEX, MonomialOrder, Polynomial, Ring, block, degrevlex

__all__ = [
    "Ideal",
    "UNIT_DIMENSION",
    "groebner_basis",
    "normal_form",
    "eliminate",
    "combine",
    "intersect",
    "quotient",
    "saturate",
    "saturate_ideal",
    "krull_dimension",
    "hilbert_data",
    "degree",
    "radical_membership",
    "leading_ideal",
    "divide_exact",
]

UNIT_DIMENSION = -1


# ---------------------------------------------------------------- buchberger


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _reduce(p: dict, basis: list, key, full: bool = True) -> dict:
    """Remainder of ``p`` by monic ``basis`` entries ``(lm, terms)``."""
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, terms in basis:
            if _divides(lm, m):
                q = tuple(x - y for x, y in zip(m, lm))
                for e, a in terms.items():
                    t = tuple(x + y for x, y in zip(e, q))
                    v = p.get(t, 0) - c * a
                    if v:
                        p[t] = v
                    else:
                        del p[t]
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = p.pop(m)
    return rem


def _monic(p: dict, key) -> tuple:
    lm = max(p, key=key)
    inv = 1 / p[lm]
    return lm, {e: c * inv for e, c in p.items()}


def _spoly(f, g):
    (lf, tf), (lg, tg) = f, g
    L = _lcm(lf, lg)
    qf = tuple(x - y for x, y in zip(L, lf))
    qg = tuple(x - y for x, y in zip(L, lg))
    out = {}
    for e, c in tf.items():
        out[tuple(x + y for x, y in zip(e, qf))] = c
    for e, c in tg.items():
        t = tuple(x + y for x, y in zip(e, qg))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(polys: Sequence[dict], order: MonomialOrder) -> list:
    """Reduced Groebner basis of dict-polynomials; returns list of (lm, terms)."""
    key = order.keyfunc()

    def pair_key(i, j):
        L = _lcm(G[i][0], G[j][0])
        return (sum(L), key(L), i, j)

    G: list = []
    pairs: dict = {}

    def update(f):
        # Gebauer-Moeller installation of f as G[len(G)]
        lf = f[0]
        new = len(G)
        for (i, j) in list(pairs):
            Lij = _lcm(G[i][0], G[j][0])
            if (
                _divides(lf, Lij)
                and Lij != _lcm(G[i][0], lf)
                and Lij != _lcm(G[j][0], lf)
            ):
                del pairs[(i, j)]
        by_lcm: dict = {}
        for i, g in enumerate(G):
            if g is None:
                continue
            by_lcm.setdefault(_lcm(g[0], lf), []).append(i)
        kept = []
        for L in sorted(by_lcm, key=lambda e: (sum(e), key(e))):
            if any(_divides(K, L) and K != L for K in kept):
                continue
            kept.append(L)
        for L in kept:
            idx = by_lcm[L]
            # chain and coprime criteria
            if any(all(a == 0 or b == 0 for a, b in zip(G[i][0], lf)) for i in idx):
                continue
            i = min(idx)
            pairs[(i, new)] = None
        G.append(f)

    gens = []
    for p in polys:
        if p:
            gens.append(_monic(p, key))
    gens.sort(key=lambda f: (sum(f[0]), key(f[0])))
    for f in gens:
        r = _reduce(f[1], [g for g in G if g is not None], key)
        if r:
            update(_monic(r, key))

    while pairs:
        i, j = min(pairs, key=lambda ij: pair_key(*ij))
        del pairs[(i, j)]
        s = _spoly(G[i], G[j])
        if not s:
            continue
        r = _reduce(s, [g for g in G if g is not None], key)
        if r:
            update(_monic(r, key))

    # minimalize
    live = [g for g in G if g is not None]
    live.sort(key=lambda f: key(f[0]))
    minimal = []
    for f in live:
        if not any(_divides(g[0], f[0]) for g in minimal):
            minimal.append(f)
    # interreduce
    reduced = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        lm, terms = f
        tail = {e: c for e, c in terms.items() if e != lm}
        r = _reduce(tail, others, key) if tail else {}
        r[lm] = mpq(1)
        reduced.append((lm, r))
    reduced.sort(key=lambda f: key(f[0]), reverse=True)
    return reduced


# --------------------------------------------------------------------- ideal


class Ideal:
    """An ideal of a polynomial ring, with a per-order Groebner basis cache."""

    def __init__(self, ring: Ring, generators: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = []
        seen = set()
        for g in generators:
            if isinstance(g, str):
                g = ring(g)
            if g.ring != ring:
                g = g.to_ring(ring)
            if g and g not in seen:
                seen.add(g)
                gens.append(g)
        self.gens = tuple(gens)
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: Ring, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring(t) for t in texts])

    def groebner_basis(self, order: MonomialOrder = DEGREVLEX) -> tuple:
        gb = self._cache.get(order)
        if gb is not None:
            return gb
        raw = _buchberger([g.terms for g in self.gens], order)
        gb = tuple(Polynomial._raw(self.ring, terms) for _, terms in raw)
        with self._lock:
            # concurrent fills compute identical bases; first writer wins
            return self._cache.setdefault(order, gb)

    def normal_form(self, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if f.ring != self.ring:
            f = f.to_ring(self.ring)
        key = order.keyfunc()
        basis = [(g.leading_monomial(order), g.terms) for g in self.groebner_basis(order)]
        return Polynomial._raw(self.ring, _reduce(f.terms, basis, key))

    def contains(self, f: Polynomial) -> bool:
        return self.normal_form(f).is_zero()

    def __contains__(self, f) -> bool:
        if isinstance(f, str):
            f = self.ring(f)
        return self.contains(f)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self) -> bool:
        return not self.gens

    def is_monomial(self) -> bool:
        return all(g.is_monomial() for g in self.gens)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.groebner_basis())

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self.groebner_basis() == other.groebner_basis()

    def __hash__(self):
        return hash((self.ring, self.groebner_basis()))

    def __add__(self, other):
        return combine("sum", self, other)

    def __mul__(self, other):
        return combine("product", self, other)

    def __pow__(self, n):
        return combine("power", self, None, n)

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return Ideal(self.ring, list(self.gens) + list(extra))

    def to_ring(self, ring: Ring) -> "Ideal":
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def reduced(self) -> "Ideal":
        """Same ideal, generated by its reduced degrevlex basis."""
        J = Ideal(self.ring, self.groebner_basis())
        J._cache[DEGREVLEX] = self.groebner_basis()
        return J

    def dimension(self) -> int:
        return krull_dimension(self)

    def generator_strings(self) -> list:
        return [str(g) for g in self.groebner_basis()]

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self):
        return f"Ideal({self.ring}, {str(self)})"


# ---------------------------------------------------------------- operations


def groebner_basis(I: Ideal, order: MonomialOrder = DEGREVLEX) -> list:
    return list(I.groebner_basis(order))


def normal_form(f: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    return I.normal_form(f, order)


def leading_ideal(I: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    return Ideal(I.ring, [I.ring.monomial(g.leading_monomial(order)) for g in I.groebner_basis(order)])


def eliminate(I: Ideal, drop: Iterable[str]) -> Ideal:
    """I intersected with the subring in the remaining variables."""
    drop = list(dict.fromkeys(drop))
    ring = I.ring
    for v in drop:
        ring.index(v)
    keep = [v for v in ring.variables if v not in drop]
    if not keep:
        raise ValueError("cannot eliminate every variable")
    sub = Ring(tuple(keep))
    if not drop:
        return Ideal(sub, [g.to_ring(sub) for g in I.gens])
    work = Ring(tuple(drop) + tuple(keep))
    order = block(len(drop), degrevlex(), degrevlex())
    J = Ideal(work, [g.to_ring(work) for g in I.gens])
    k = len(drop)
    out = []
    for g in J.groebner_basis(order):
        if all(not any(e[:k]) for e in g.terms):
            out.append(g.to_ring(sub))
    return Ideal(sub, out)


def combine(op: str, I: Ideal, J: Ideal | None = None, n: int = 1) -> Ideal:
    if op == "sum":
        _same_ring(I, J)
        return Ideal(I.ring, I.gens + J.gens)
    if op == "product":
        _same_ring(I, J)
        return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])
    if op == "power":
        if n < 1:
            raise ValueError("power must be at least 1")
        P = I
        for _ in range(n - 1):
            P = Ideal(I.ring, [f * g for f in P.gens for g in I.gens])
        return P
    raise ValueError(f"unknown combination {op!r}")


def _same_ring(I: Ideal, J: Ideal):
    if J is None or I.ring != J.ring:
        raise ValueError("ideals live in different rings")


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as (t*I + (1-t)*J) ∩ R."""
    _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring)
    t = I.ring.fresh_name("_t")
    big = I.ring.extend([t])
    T = big.gen(t)
    gens = [T * f.to_ring(big) for f in I.gens] + [(1 - T) * g.to_ring(big) for g in J.gens]
    out = eliminate(Ideal(big, gens), [t])
    return Ideal(I.ring, [g.to_ring(I.ring) for g in out.gens])


def intersect_all(ideals: Sequence[Ideal]) -> Ideal:
    if not ideals:
        raise ValueError("empty intersection")
    acc = ideals[0]
    for J in ideals[1:]:
        acc = intersect(acc, J)
    return acc


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """f / g, raising ValueError unless g divides f."""
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    key = DEGREVLEX.keyfunc()
    lg = max(g.terms, key=key)
    cg = g.terms[lg]
    p = dict(f.terms)
    q: dict = {}
    while p:
        m = max(p, key=key)
        if not _divides(lg, m):
            raise ValueError(f"{g} does not divide {f}")
        d = tuple(x - y for x, y in zip(m, lg))
        c = p[m] / cg
        q[d] = c
        for e, a in g.terms.items():
            t = tuple(x + y for x, y in zip(e, d))
            v = p.get(t, 0) - c * a
            if v:
                p[t] = v
            else:
                del p[t]
    return Polynomial._raw(f.ring, q)


def quotient(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = (I ∩ (f)) / f."""
    if f.is_zero():
        return Ideal(I.ring, [I.ring.one()])
    K = intersect(I, Ideal(I.ring, [f]))
    return Ideal(I.ring, [divide_exact(g, f) for g in K.groebner_basis()])


def _saturation(I: Ideal, f: Polynomial) -> Ideal:
    y = I.ring.fresh_name("_y")
    big = I.ring.extend([y])
    Y = big.gen(y)
    gens = [g.to_ring(big) for g in I.gens] + [1 - Y * f.to_ring(big)]
    out = eliminate(Ideal(big, gens), [y])
    return Ideal(I.ring, [g.to_ring(I.ring) for g in out.gens])


def saturate(I: Ideal, f: Polynomial, exponent: bool = True):
    """I : f^∞ and the least k with I : f^k = I : f^∞.

    Returns ``(ideal, k)``; with ``exponent=False`` k is reported as None and
    the iterated quotients are skipped.
    """
    if f.is_zero():
        raise ValueError("cannot saturate by the zero polynomial")
    sat = _saturation(I, f)
    if not exponent:
        return sat, None
    k, J = 0, I
    while J != sat:
        J = quotient(J, f)
        k += 1
    return sat, k


def saturate_ideal(I: Ideal, J: Ideal) -> Ideal:
    """I : J^∞ as the intersection of I : g^∞ over generators g of J."""
    parts = [_saturation(I, g) for g in J.gens]
    if not parts:
        return I
    return intersect_all(parts)


def radical_membership(I: Ideal, f: Polynomial) -> bool:
    """f ∈ √I via 1 ∈ I + (1 - y f)."""
    if f.is_zero():
        return True
    y = I.ring.fresh_name("_y")
    big = I.ring.extend([y])
    Y = big.gen(y)
    J = Ideal(big, [g.to_ring(big) for g in I.gens] + [1 - Y * f.to_ring(big)])
    return J.is_unit()


# ----------------------------------------------------------------- dimension


def _max_independent_size(supports: list, n: int) -> int:
    """n minus a minimum hitting set of the given variable supports."""
    supports = [s for s in supports]
    if not supports:
        return n
    minimal = []
    for s in sorted(set(supports), key=len):
        if not any(m <= s for m in minimal):
            minimal.append(s)
    for size in range(0, n + 1):
        for cover in combinations(range(n), size):
            c = frozenset(cover)
            if all(s & c for s in minimal):
                return n - size
    return 0


def krull_dimension(I: Ideal) -> int:
    """dim R/I from the leading-term ideal; UNIT_DIMENSION for the unit ideal."""
    if I.is_unit():
        return UNIT_DIMENSION
    sups = []
    for g in I.groebner_basis(DEGREVLEX):
        lm = g.leading_monomial(DEGREVLEX)
        sups.append(frozenset(i for i, a in enumerate(lm) if a))
    return _max_independent_size(sups, I.ring.ngens)


def _hs_numerator(gens: list, n: int) -> dict:
    """Hilbert series numerator of R/(gens) as {power: coeff}."""
    gens = _minimalize(gens)
    if not gens:
        return {0: 1}
    if any(not any(g) for g in gens):
        return {}
    # pairwise coprime generators: product of (1 - t^deg)
    counts = [0] * n
    for g in gens:
        for i, a in enumerate(g):
            if a:
                counts[i] += 1
    pivot = max(range(n), key=lambda i: (counts[i], -i))
    if counts[pivot] <= 1:
        num = {0: 1}
        for g in gens:
            d = sum(g)
            nxt: dict = {}
            for k, c in num.items():
                nxt[k] = nxt.get(k, 0) + c
                nxt[k + d] = nxt.get(k + d, 0) - c
            num = {k: c for k, c in nxt.items() if c}
        return num
    p = tuple(1 if i == pivot else 0 for i in range(n))
    plus = gens + [p]
    colon = [tuple(a - 1 if (i == pivot and a > 0) else a for i, a in enumerate(g)) for g in gens]
    n1 = _hs_numerator(plus, n)
    n2 = _hs_numerator(colon, n)
    out = dict(n1)
    for k, c in n2.items():
        out[k + 1] = out.get(k + 1, 0) + c
    return {k: c for k, c in out.items() if c}


def _minimalize(gens: list) -> list:
    gens = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens: Sequence[Sequence[int]], n: int) -> dict:
    return _hs_numerator([tuple(g) for g in gens], n)


def _dim_degree_from_numerator(num: dict, n: int):
    if not num:
        return UNIT_DIMENSION, 0
    # divide by (1 - t) while possible
    coeffs = [0] * (max(num) + 1)
    for k, c in num.items():
        coeffs[k] = c
    d = n
    while d > 0 and sum(coeffs) == 0:
        # synthetic division by (1 - t): q_k = sum_{j<=k} c_j
        q, acc = [], 0
        for c in coeffs[:-1]:
            acc += c
            q.append(acc)
        coeffs = q or [0]
        d -= 1
    return d, sum(coeffs)


def hilbert_data(M: Ideal):
    """(dimension, degree) of R/M for a monomial ideal M."""
    if not M.is_monomial():
        raise ValueError("hilbert_data needs a monomial ideal")
    exps = [next(iter(g.terms)) for g in M.gens]
    num = _hs_numerator(exps, M.ring.ngens)
    return _dim_degree_from_numerator(num, M.ring.ngens)


def degree(I: Ideal):
    """(dimension, degree) of R/I via the degrevlex leading-term ideal."""
    return hilbert_data(leading_ideal(I, DEGREVLEX))
