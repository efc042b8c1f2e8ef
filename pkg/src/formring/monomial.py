"""Combinatorial algorithms for monomial ideals.

Exponent vectors are plain tuples of ints. Integral closures come from the
Newton polyhedron conv(generators) + R^n_{>=0}; membership is an exact
rational feasibility problem decided by vertex enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil
from typing import Iterable, Sequence

from .gbengine import Ideal
from .polycore import Polynomial, Ring

__all__ = [
    "MonomialIdeal",
    "primary_decomposition_monomial",
    "minimal_primes_monomial",
    "symbolic_power_monomial",
    "closure_member",
    "integral_closure_monomial",
    "associated_primes_monomial",
    "asymptotic_primes",
    "AsymptoticPrimes",
]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens: Iterable[tuple]) -> tuple:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out: list = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    # canonical: descending lex
    return tuple(sorted(out, reverse=True))


class MonomialIdeal:
    """A monomial ideal with minimal generators (exponent tuples)."""

    __slots__ = ("ring", "gens")

    def __init__(self, ring: Ring, gens: Iterable[Sequence[int]] = ()):
        self.ring = ring
        gs = []
        for g in gens:
            g = tuple(int(a) for a in g)
            if len(g) != ring.ngens or any(a < 0 for a in g):
                raise ValueError(f"bad exponent vector {g} for {ring}")
            gs.append(g)
        self.gens = _minimalize(gs)

    @classmethod
    def from_ideal(cls, I: Ideal) -> "MonomialIdeal":
        if not I.is_monomial():
            raise ValueError(f"{I} is not generated by monomials")
        return cls(I.ring, [next(iter(g.terms)) for g in I.gens])

    @classmethod
    def from_strings(cls, ring: Ring, texts: Iterable[str]) -> "MonomialIdeal":
        return cls.from_ideal(Ideal(ring, [ring(t) for t in texts]))

    @classmethod
    def prime(cls, ring: Ring, names: Iterable[str]) -> "MonomialIdeal":
        gens = []
        for v in names:
            e = [0] * ring.ngens
            e[ring.index(v)] = 1
            gens.append(e)
        return cls(ring, gens)

    def to_ideal(self) -> Ideal:
        return Ideal(self.ring, [self.ring.monomial(g) for g in self.gens])

    def contains(self, a: Sequence[int]) -> bool:
        return any(_divides(g, a) for g in self.gens)

    def issubset(self, other: "MonomialIdeal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.ring == other.ring and self.gens == other.gens

    def __hash__(self):
        return hash((self.ring, self.gens))

    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.ring, [tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens]
        )

    def __pow__(self, n: int) -> "MonomialIdeal":
        if n < 0:
            raise ValueError("negative power")
        out = MonomialIdeal(self.ring, [(0,) * self.ring.ngens])
        for _ in range(n):
            out = out * self
        return out

    def intersect(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(
            self.ring, [tuple(max(a, b) for a, b in zip(g, h)) for g in self.gens for h in other.gens]
        )

    def radical(self) -> "MonomialIdeal":
        return MonomialIdeal(self.ring, [tuple(1 if a else 0 for a in g) for g in self.gens])

    def support(self) -> tuple:
        """Variable names occurring in the generators (for primes: the generators)."""
        idx = sorted({i for g in self.gens for i, a in enumerate(g) if a})
        return tuple(self.ring.variables[i] for i in idx)

    def is_primary(self) -> bool:
        """Primary iff every variable dividing a generator has a pure power in the ideal."""
        sup = {i for g in self.gens for i, a in enumerate(g) if a}
        pure = {i for g in self.gens for i, a in enumerate(g) if a and sum(g) == a}
        return sup <= pure

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def __str__(self):
        if not self.gens:
            return "(0)"
        return "(" + ", ".join(str(self.ring.monomial(g)) for g in self.gens) + ")"

    __repr__ = __str__


def intersect_all(ideals: Sequence[MonomialIdeal]) -> MonomialIdeal:
    acc = ideals[0]
    for J in ideals[1:]:
        acc = acc.intersect(J)
    return acc


# ----------------------------------------------------------- decompositions


def _split_pivot(gens: tuple):
    # first generator (descending lex) involving at least two variables
    for g in gens:
        sup = [i for i, a in enumerate(g) if a]
        if len(sup) >= 2:
            i = sup[0]
            u = tuple(a if j == i else 0 for j, a in enumerate(g))
            v = tuple(0 if j == i else a for j, a in enumerate(g))
            return u, v
    return None


def _irreducible_components(I: MonomialIdeal) -> list:
    stack, leaves = [I], []
    while stack:
        J = stack.pop()
        if J.is_unit():
            continue
        piv = _split_pivot(J.gens)
        if piv is None:
            leaves.append(J)
            continue
        u, v = piv
        stack.append(MonomialIdeal(J.ring, J.gens + (u,)))
        stack.append(MonomialIdeal(J.ring, J.gens + (v,)))
    return leaves


def _component_sort_key(Q: MonomialIdeal):
    return tuple(Q.radical().gens), Q.gens


def primary_decomposition_monomial(I: MonomialIdeal) -> list:
    """Irredundant primary decomposition with distinct radicals, sorted."""
    if I.is_unit():
        return []
    if not I.gens:
        return [I]
    leaves = list(dict.fromkeys(_irreducible_components(I)))
    # drop leaves containing another leaf
    leaves = [Q for Q in leaves if not any(P != Q and P.issubset(Q) for P in leaves)]
    by_radical: dict = {}
    for Q in leaves:
        by_radical.setdefault(Q.radical(), []).append(Q)
    comps = [intersect_all(qs) for qs in by_radical.values()]
    comps.sort(key=_component_sort_key, reverse=True)
    # greedy irredundancy, embedded (larger radical) candidates first
    changed = True
    while changed and len(comps) > 1:
        changed = False
        for Q in sorted(comps, key=lambda c: -len(c.radical().gens)):
            rest = [c for c in comps if c is not Q]
            if intersect_all(rest) == I:
                comps = rest
                changed = True
                break
    return comps


def _minimal_by_inclusion(primes: Iterable[MonomialIdeal]) -> list:
    primes = list(dict.fromkeys(primes))
    return [P for P in primes if not any(Q != P and Q.issubset(P) for Q in primes)]


def minimal_primes_monomial(I: MonomialIdeal) -> list:
    """Minimal primes as tuples of variable names."""
    rads = [Q.radical() for Q in primary_decomposition_monomial(I)]
    mins = _minimal_by_inclusion(rads)
    mins.sort(key=lambda P: P.gens, reverse=True)
    return [P.support() for P in mins]


def associated_primes_monomial(I: MonomialIdeal) -> list:
    rads = [Q.radical() for Q in primary_decomposition_monomial(I)]
    rads.sort(key=lambda P: (len(P.gens), P.gens), reverse=False)
    return [P.support() for P in rads]


def symbolic_power_monomial(I: MonomialIdeal, n: int) -> MonomialIdeal:
    """Intersection of the components of I^n at the minimal primes of I."""
    if n < 1:
        raise ValueError("symbolic power needs n >= 1")
    mins = {MonomialIdeal.prime(I.ring, p) for p in minimal_primes_monomial(I)}
    In = I ** n
    comps = [Q for Q in primary_decomposition_monomial(In) if Q.radical() in mins]
    if len(comps) != len(mins):
        raise AssertionError("every minimal prime must carry exactly one component")
    S = intersect_all(comps)
    if not In.issubset(S):
        raise AssertionError("I^n must lie in its symbolic power")
    return S


# --------------------------------------------------------- newton polyhedra


def _solve(rows: list, rhs: list):
    """Unique solution of a square rational system, or None if singular."""
    n = len(rows)
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def closure_member(a: Sequence[int], I: MonomialIdeal, n: int = 1) -> bool:
    """Is x^a integral over I^n, i.e. is a in n * NP(I)?

    Feasibility of {lam >= 0, sum lam = 1, n * sum lam_i e_i <= a} is decided
    by enumerating candidate vertices: support sets S of size <= dim+1 and
    |S|-1 tight coordinate rows, solved exactly.
    """
    if n < 1:
        raise ValueError("power must be >= 1")
    E = [tuple(n * x for x in g) for g in I.gens]
    if not E:
        return False
    a = tuple(Fraction(x) for x in a)
    # fast accept: dominates a generator of I^n's point set
    if any(_divides(e, a) for e in E):
        return True
    dim = len(a)
    for size in range(1, min(len(E), dim + 1) + 1):
        for S in combinations(range(len(E)), size):
            for T in combinations(range(dim), size - 1):
                rows = [[Fraction(1)] * size] + [[Fraction(E[i][t]) for i in S] for t in T]
                rhs = [Fraction(1)] + [a[t] for t in T]
                lam = _solve(rows, rhs)
                if lam is None or any(x < 0 for x in lam):
                    continue
                point = [sum(l * E[i][t] for l, i in zip(lam, S)) for t in range(dim)]
                if all(p <= x for p, x in zip(point, a)):
                    return True
    return False


def integral_closure_monomial(I: MonomialIdeal, n: int = 1) -> MonomialIdeal:
    """Integral closure of I^n: lattice points of n * NP(I), minimalized.

    Minimal generators lie in the box [0, max_i n*e_i[t]] per coordinate t:
    lowering a coordinate above every generator's value keeps the point in
    the polyhedron.
    """
    if not I.gens:
        return I
    if I.is_unit():
        return I
    box = [max(n * g[t] for g in I.gens) for t in range(I.ring.ngens)]
    pts = [a for a in product(*(range(b + 1) for b in box)) if closure_member(a, I, n)]
    C = MonomialIdeal(I.ring, pts)
    for g in C.gens:
        if any(x > b for x, b in zip(g, box)):
            raise AssertionError(f"closure generator {g} outside the search box {box}")
    if not (I ** n).issubset(C):
        raise AssertionError("I^n must lie in its integral closure")
    return C


@dataclass
class AsymptoticPrimes:
    union: list
    stable: list
    per_n: dict = field(default_factory=dict)
    stabilized_at: int | None = None
    n_max: int = 1

    @property
    def caveat(self) -> str:
        return f"stabilization checked only for 1 <= n <= {self.n_max}"


def asymptotic_primes(I: MonomialIdeal, n_max: int) -> AsymptoticPrimes:
    """Ass(R / closure(I^n)) for n = 1..n_max and the window stabilization index."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    per_n = {}
    for k in range(1, n_max + 1):
        per_n[k] = associated_primes_monomial(integral_closure_monomial(I, k))
    last = set(per_n[n_max])
    start = n_max
    while start > 1 and set(per_n[start - 1]) == last:
        start -= 1
    stabilized = start if (start < n_max or n_max == 1) else None
    union: list = []
    for k in range(1, n_max + 1):
        for p in per_n[k]:
            if p not in union:
                union.append(p)
    return AsymptoticPrimes(union=union, stable=list(per_n[n_max]), per_n=per_n,
                            stabilized_at=stabilized, n_max=n_max)


def condition_window(n_max: int) -> range:
    """Tail window used as evidence for statements about all large n."""
    return range(max(1, ceil(n_max / 2)), n_max + 1)


def monomial_from_exponent(ring: Ring, a: Sequence[int]) -> Polynomial:
    return ring.monomial(a)
