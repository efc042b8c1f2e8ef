"""Rees algebras, associated graded rings and their minimal primes.

Every ring here is an affine QQ-algebra R/a with R a polynomial ring. The
associated graded ring G_I(A) is presented as a quotient of R[T_1..T_s]
with deg T_i = 1 and deg x_j = 0. Local dimensions use the catenary
difference formulas valid for affine algebras over a field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .gbengine import (
    Ideal,
    UNIT_DIMENSION,
    eliminate,
    krull_dimension,
)
from .monomial import MonomialIdeal, minimal_primes_monomial
from .polycore import DEGREVLEX, Polynomial, Ring

__all__ = [
    "Unresolved",
    "DegenerateGenerator",
    "PresentedAlgebra",
    "GradedPresentation",
    "PrimeWitness",
    "Spread",
    "rees_presentation",
    "assoc_graded",
    "minimal_primes",
    "graded_minimal_primes",
    "local_dimension",
    "analytic_spread",
    "contract_degree_zero",
    "localized_graded_dimension",
    "factor_polynomial",
    "is_equidimensional",
]

VARIABLE_GENERATED = "variable-generated"
VARIABLES_PLUS_IRREDUCIBLE = "variables-plus-irreducible"
ASSERTED = "asserted-by-split-exhaustion"


class Unresolved(Exception):
    """Decomposition left the supported fragment; ``leaf`` names the stuck ideal."""

    def __init__(self, message: str, leaf: Ideal | None = None):
        super().__init__(message)
        self.leaf = leaf


class DegenerateGenerator(ValueError):
    """An ideal generator vanishes in the presented algebra."""


@dataclass
class PresentedAlgebra:
    """A = R / ambient."""

    ring: Ring
    ambient: Ideal = None

    def __post_init__(self):
        if self.ambient is None:
            self.ambient = Ideal(self.ring)
        if self.ambient.ring != self.ring:
            raise ValueError("ambient ideal must live in the algebra's ring")
        if self.ambient.is_unit():
            raise ValueError("the ambient ideal must be proper")

    def dimension(self) -> int:
        return krull_dimension(self.ambient)

    def ideal(self, gens: Iterable) -> Ideal:
        """Preimage in R of the ideal of A generated by ``gens``."""
        return Ideal(self.ring, list(self.ambient.gens) + [self._poly(g) for g in gens])

    def _poly(self, g) -> Polynomial:
        return self.ring(g) if isinstance(g, str) else g

    def __str__(self):
        if self.ambient.is_zero():
            return str(self.ring)
        return f"{self.ring}/{self.ambient}"


@dataclass
class PrimeWitness:
    ideal: Ideal
    certificate: str
    contraction0: Ideal | None = None

    @property
    def certified(self) -> bool:
        return self.certificate != ASSERTED

    def dimension(self) -> int:
        return krull_dimension(self.ideal)

    def __str__(self):
        return "(" + ", ".join(self.ideal.generator_strings()) + ")"


@dataclass
class GradedPresentation:
    """G = R[T] / defining_ideal, graded by T-degree."""

    ring: Ring
    base: PresentedAlgebra
    generators: tuple
    t_names: tuple
    rees_ideal: Ideal
    defining_ideal: Ideal
    zero_part: PresentedAlgebra = field(default=None)

    def dimension(self) -> int:
        return krull_dimension(self.defining_ideal)


@dataclass(frozen=True)
class Spread:
    value: int
    mode: str  # "maximal", "contracted-components" or "heuristic"

    @property
    def exact(self) -> bool:
        return self.mode != "heuristic"

    def __int__(self):
        return self.value


# ------------------------------------------------------------- presentations


def _t_names(ring: Ring, s: int, stem: str = "T") -> tuple:
    names, i = [], 0
    while len(names) < s:
        name = f"{stem}{i}"
        if name not in ring.variables:
            names.append(name)
        i += 1
    return tuple(names)


def _as_polys(A: PresentedAlgebra, gens) -> list:
    return [A._poly(g) for g in gens]


def rees_presentation(A: PresentedAlgebra, I_gens: Sequence, t_stem: str = "T"):
    """Kernel J of R[T] -> A[t], T_i -> f_i t, by eliminating t.

    Returns ``(J, t_names)``.
    """
    fs = _as_polys(A, I_gens)
    if not fs:
        raise ValueError("need at least one ideal generator")
    for f in fs:
        if A.ambient.contains(f):
            raise DegenerateGenerator(f"generator {f} vanishes in {A}")
    names = _t_names(A.ring, len(fs), t_stem)
    RT = A.ring.extend(names)
    t = RT.fresh_name("_t")
    big = RT.extend([t])
    tt = big.gen(t)
    gens = [g.to_ring(big) for g in A.ambient.gens]
    gens += [big.gen(T) - tt * f.to_ring(big) for T, f in zip(names, fs)]
    J = eliminate(Ideal(big, gens), [t])
    return Ideal(RT, [g.to_ring(RT) for g in J.gens]), names


def assoc_graded(A: PresentedAlgebra, I_gens: Sequence, t_stem: str = "T") -> GradedPresentation:
    fs = _as_polys(A, I_gens)
    J, names = rees_presentation(A, fs, t_stem)
    RT = J.ring
    D = Ideal(RT, list(J.gens) + [f.to_ring(RT) for f in fs]).reduced()
    zero = PresentedAlgebra(A.ring, A.ideal(fs))
    return GradedPresentation(
        ring=RT,
        base=A,
        generators=tuple(fs),
        t_names=names,
        rees_ideal=J,
        defining_ideal=D,
        zero_part=zero,
    )


def contract_degree_zero(P, G: GradedPresentation) -> Ideal:
    """[P]_0 = P ∩ G_0 as an ideal of R containing a + I."""
    ideal = P.ideal if isinstance(P, PrimeWitness) else P
    if ideal.ring != G.ring:
        ideal = ideal.to_ring(G.ring)
    out = eliminate(ideal, G.t_names)
    return Ideal(G.base.ring, [g.to_ring(G.base.ring) for g in out.gens]).reduced()


# ----------------------------------------------------------- factorization


@lru_cache(maxsize=4096)
def factor_polynomial(f: Polynomial) -> tuple:
    """Distinct non-constant irreducible factors over QQ with multiplicities."""
    if f.is_constant():
        return ()
    if f.is_monomial():
        e = next(iter(f.terms))
        return tuple(
            (f.ring.monomial(tuple(1 if j == i else 0 for j in range(len(e)))), a)
            for i, a in enumerate(e) if a
        )
    import sympy

    syms = sympy.symbols(" ".join(_safe(v) for v in f.ring.variables) + " ", seq=True)
    expr = sympy.Poly.from_dict(
        {e: sympy.Rational(int(c.numerator), int(c.denominator)) for e, c in f.terms.items()},
        *syms, domain="QQ",
    )
    _, facs = expr.factor_list()
    out = []
    for p, m in facs:
        terms = {tuple(e): sympy.Rational(c) for e, c in p.as_dict().items()}
        poly = Polynomial(f.ring, {e: _frac(c) for e, c in terms.items()})
        out.append((poly.monic(DEGREVLEX), m))
    out.sort(key=lambda t: str(t[0]))
    return tuple(out)


def _safe(name: str) -> str:
    return "v_" + name.replace("'", "_p")


def _frac(c):
    from fractions import Fraction

    return Fraction(int(c.p), int(c.q))


# ----------------------------------------------------------- minimal primes


def _prime_from_variables(ring: Ring, names: Sequence[str]) -> Ideal:
    return Ideal(ring, [ring.gen(v) for v in names]).reduced()


def _certify(I: Ideal) -> PrimeWitness:
    gb = I.groebner_basis()
    nonlinear = [g for g in gb if g.total_degree() > 1]
    if not nonlinear:
        return PrimeWitness(I.reduced(), VARIABLE_GENERATED)
    if len(nonlinear) == 1:
        h = nonlinear[0]
        facs = factor_polynomial(h)
        if len(facs) == 1 and facs[0][1] == 1:
            return PrimeWitness(I.reduced(), VARIABLES_PLUS_IRREDUCIBLE)
    return PrimeWitness(I.reduced(), ASSERTED)


def _split_candidate(I: Ideal):
    seen = set()
    for g in list(I.groebner_basis()) + list(I.gens):
        if g in seen or g.total_degree() < 2:
            continue
        seen.add(g)
        facs = factor_polynomial(g)
        if not facs:
            continue
        if len(facs) == 1 and facs[0][1] == 1:
            continue
        fs = [f for f, _ in facs]
        if any(I.contains(f) for f in fs):
            continue
        return fs
    return None


def minimal_primes(I: Ideal, strict: bool = False, max_leaves: int = 2000) -> list:
    """Minimal primes by recursive factor splitting.

    Raises Unresolved when a leaf cannot be certified prime (strict mode) or
    when the split tree exceeds ``max_leaves``.
    """
    if I.is_unit():
        raise ValueError("the unit ideal has no minimal primes")
    leaves: list = []
    stack = [I]
    count = 0
    while stack:
        J = stack.pop()
        if J.is_unit():
            continue
        count += 1
        if count > max_leaves:
            raise Unresolved(f"split tree exceeded {max_leaves} nodes", J)
        gb = J.groebner_basis()
        if all(g.is_monomial() for g in gb):
            M = MonomialIdeal(J.ring, [next(iter(g.terms)) for g in gb])
            for names in minimal_primes_monomial(M):
                leaves.append(PrimeWitness(_prime_from_variables(J.ring, names), VARIABLE_GENERATED))
            continue
        fs = _split_candidate(J)
        if fs is None:
            w = _certify(J)
            if strict and not w.certified:
                raise Unresolved(f"cannot certify primality of {J.reduced()}", J)
            leaves.append(w)
            continue
        for f in reversed(fs):
            stack.append(J.with_generators([f]))
    return _prune(leaves)


def _prune(leaves: list) -> list:
    unique: list = []
    for w in leaves:
        if not any(u.ideal == w.ideal for u in unique):
            unique.append(w)
    out = [
        w for w in unique
        if not any(u is not w and u.ideal.issubset(w.ideal) for u in unique)
    ]
    out.sort(key=lambda w: _prime_sort_key(w.ideal))
    return out


def _prime_sort_key(P: Ideal):
    return (krull_dimension(P), P.generator_strings())


# ------------------------------------------------------------- dimensions


def is_equidimensional(I: Ideal, within: Ideal | None = None) -> bool:
    """Do all minimal primes of I (contained in ``within``) share one dimension?"""
    mins = [w.ideal for w in minimal_primes(I)]
    if within is not None:
        mins = [P for P in mins if P.issubset(within)]
    return len({krull_dimension(P) for P in mins}) <= 1


def _check_prime_over(A: PresentedAlgebra, p: Ideal):
    if p.ring != A.ring:
        raise ValueError("prime must live in the algebra's ring")
    if not A.ambient.issubset(p):
        raise ValueError(f"{p} does not contain the ambient ideal {A.ambient}")
    if p.is_unit():
        raise ValueError("the unit ideal is not prime")


def local_dimension(A: PresentedAlgebra, p) -> int:
    """dim A_p = max over minimal primes P ⊆ p of a of dim R/P - dim R/p."""
    p = _ideal_of(A.ring, p)
    _check_prime_over(A, p)
    dp = krull_dimension(p)
    best = UNIT_DIMENSION
    for w in minimal_primes(A.ambient if not A.ambient.is_zero() else Ideal(A.ring)):
        if w.ideal.issubset(p):
            best = max(best, krull_dimension(w.ideal) - dp)
    return best


def _ideal_of(ring: Ring, p) -> Ideal:
    if isinstance(p, Ideal):
        return p
    if isinstance(p, PrimeWitness):
        return p.ideal
    return Ideal(ring, [ring(g) if isinstance(g, str) else g for g in p])


def analytic_spread(A: PresentedAlgebra, I_gens: Sequence, q, G: GradedPresentation | None = None) -> Spread:
    """ℓ(I_q) = dim of the fiber G ⊗ κ(q).

    For maximal q the fiber ring R[T]/(G + q) is computed directly. For a
    non-maximal prime q, only minimal primes of G + q contracting to q are
    kept; if that decomposition is unavailable the difference formula
    dim(G + q) - dim(R/q) is returned flagged heuristic.
    """
    q = _ideal_of(A.ring, q)
    if G is None:
        G = assoc_graded(A, I_gens)
    if not G.zero_part.ambient.issubset(q):
        raise ValueError(f"{q} does not contain I + a")
    fiber = Ideal(G.ring, list(G.defining_ideal.gens) + [g.to_ring(G.ring) for g in q.gens])
    dq = krull_dimension(q)
    if dq == 0:
        return Spread(krull_dimension(fiber), "maximal")
    try:
        comps = minimal_primes(fiber, strict=True)
    except Unresolved:
        return Spread(krull_dimension(fiber) - dq, "heuristic")
    best = None
    for w in comps:
        if contract_degree_zero(w, G) == q.reduced():
            d = krull_dimension(w.ideal) - dq
            best = d if best is None else max(best, d)
    if best is None:
        return Spread(krull_dimension(fiber) - dq, "heuristic")
    return Spread(best, "contracted-components")


def graded_minimal_primes(G: GradedPresentation, strict: bool = False) -> list:
    """Minimal primes of G with their degree-zero contractions filled in."""
    out = []
    for w in minimal_primes(G.defining_ideal, strict=strict):
        out.append(PrimeWitness(w.ideal, w.certificate, contract_degree_zero(w, G)))
    return out


def localized_graded_dimension(D: Ideal, p, G: GradedPresentation, primes: list | None = None) -> int:
    """dim (R[T]/D) ⊗ A_p: max over minimal primes Q of D with [Q]_0 ⊆ p."""
    p = _ideal_of(G.base.ring, p)
    dp = krull_dimension(p)
    if primes is None:
        primes = minimal_primes(D)
    best = UNIT_DIMENSION
    for w in primes:
        c = w.contraction0 if w.contraction0 is not None else contract_degree_zero(w, G)
        if c.issubset(p):
            best = max(best, krull_dimension(w.ideal) - dp)
    return best
