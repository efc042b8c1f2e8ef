"""Stückrad-Vogel intersection cycles on products of affine cones.

For cones X, Y in A^{n+1} the product X x Y lives in A^{2n+2} with
coordinates x_0..x_n, y_0..y_n. Starting from beta_0 = X x Y, each step cuts
with a random combination H_k of the diagonal forms x_j - y_j, harvests the
top-dimensional components lying in the diagonal as v_{k+1}, and saturates
them away to obtain beta_{k+1}. Random integers from a seeded xorshift64*
stream stand in for generic coefficients.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .gbengine import Ideal, degree, krull_dimension, saturate, saturate_ideal
from .graded import (
    PresentedAlgebra,
    PrimeWitness,
    Unresolved,
    assoc_graded,
    graded_minimal_primes,
    minimal_primes,
)
from .polycore import Polynomial, Ring
from .prng import XorShift64Star

__all__ = [
    "JoinSetup",
    "CycleComponent",
    "SVTrace",
    "build_product_join",
    "product_diagonal",
    "sv_cycle",
    "cycle_of_top_components",
    "distinguished_varieties",
    "bezout_check",
    "cycle_signature",
    "DEFAULT_BOUND",
]

DEFAULT_BOUND = 10_000


@dataclass
class JoinSetup:
    base_ring: Ring
    x_ideal: Ideal
    y_ideal: Ideal
    ring: Ring
    product_ideal: Ideal
    diagonal_forms: tuple
    u: list
    seed: int
    bound: int

    def hyperplane(self, k: int) -> Polynomial:
        h = self.ring.zero()
        for c, d in zip(self.u[k], self.diagonal_forms):
            h = h + d.scale(c)
        return h

    def diagonal_ideal(self) -> Ideal:
        return Ideal(self.ring, self.diagonal_forms)


@dataclass
class CycleComponent:
    prime: PrimeWitness
    multiplicity: int
    dimension: int
    degree: int

    def to_dict(self) -> dict:
        return {
            "prime": self.prime.ideal.generator_strings(),
            "certificate": self.prime.certificate,
            "multiplicity": self.multiplicity,
            "dimension": self.dimension,
            "degree": self.degree,
        }


@dataclass
class SVTrace:
    setup: JoinSetup
    beta_chain: list = field(default_factory=list)
    v_cycles: list = field(default_factory=list)  # (k, [CycleComponent])
    top_dimensions: list = field(default_factory=list)
    expected: int = 0
    total: int = 0

    @property
    def bezout(self) -> tuple:
        return self.expected, self.total

    def components(self) -> list:
        return [c for _, cs in self.v_cycles for c in cs]

    def to_dict(self) -> dict:
        return {
            "seed": self.setup.seed,
            "bound": self.setup.bound,
            "u": self.setup.u,
            "product_dimension": len(self.setup.u),
            "beta_chain": [b.generator_strings() for b in self.beta_chain],
            "top_dimensions": self.top_dimensions,
            "v_cycles": [
                {"k": k, "components": [c.to_dict() for c in cs]} for k, cs in self.v_cycles
            ],
            "bezout": {"expected": self.expected, "total": self.total},
        }


# --------------------------------------------------------------------- setup


def _product_ring(base: Ring) -> Ring:
    m = base.ngens
    return Ring(tuple(f"x{j}" for j in range(m)) + tuple(f"y{j}" for j in range(m)))


def _embed(f: Polynomial, ring: Ring, offset: int) -> Polynomial:
    n = f.ring.ngens
    pad = ring.ngens - n
    terms = {}
    for e, c in f.terms.items():
        terms[(0,) * offset + tuple(e) + (0,) * (pad - offset)] = c
    return Polynomial._raw(ring, terms)


def build_product_join(X: Ideal, Y: Ideal, seed: int = 1, bound: int = DEFAULT_BOUND) -> JoinSetup:
    """Product of the cones of X and Y with seeded diagonal hyperplanes."""
    if X.ring != Y.ring:
        raise ValueError("X and Y must be given in the same coordinate ring")
    for name, I in (("X", X), ("Y", Y)):
        if not all(g.is_homogeneous() for g in I.gens):
            raise ValueError(f"{name} ideal is not homogeneous: {I}")
    if bound < 1:
        raise ValueError("bound must be positive")
    base = X.ring
    m = base.ngens
    ring = _product_ring(base)
    gens = [_embed(g, ring, 0) for g in X.gens] + [_embed(g, ring, m) for g in Y.gens]
    product = Ideal(ring, gens)
    diag = tuple(ring.gen(f"x{j}") - ring.gen(f"y{j}") for j in range(m))
    rows = krull_dimension(product)
    rng = XorShift64Star(seed)
    u = []
    while len(u) < rows:
        row = [rng.uniform_int(-bound, bound) for _ in range(m)]
        if any(row):
            u.append(row)
    return JoinSetup(base, X, Y, ring, product, diag, u, seed, bound)


def product_diagonal(X: Ideal, Y: Ideal):
    """(A, I) with A the coordinate ring of X x Y and I the diagonal ideal."""
    setup = build_product_join(X, Y, seed=0, bound=1)
    A = PresentedAlgebra(setup.ring, setup.product_ideal)
    return A, list(setup.diagonal_forms)


# --------------------------------------------------------------------- cycles


def _in_prime(f: Polynomial, P: Ideal) -> bool:
    return P.contains(f)


def cycle_of_top_components(B: Ideal) -> list:
    """Top-dimensional components of B with multiplicities (lengths)."""
    d = krull_dimension(B)
    if d < 0:
        return []
    primes = minimal_primes(B, strict=True)
    top = [w for w in primes if krull_dimension(w.ideal) == d]
    out = []
    for w in top:
        s = B.ring.one()
        for other in top:
            if other is w:
                continue
            g = next(g for g in other.ideal.groebner_basis() if not _in_prime(g, w.ideal))
            s = s * g
        Q = B if s.is_constant() else saturate(B, s, exponent=False)[0]
        dq, degq = degree(Q)
        dp, degp = degree(w.ideal)
        if dq != d or dp != d:
            raise RuntimeError(f"dimension bookkeeping failed for component {w}")
        mult = Fraction(degq, degp)
        if mult.denominator != 1:
            raise RuntimeError(f"non-integral multiplicity {mult} at {w}")
        out.append(CycleComponent(w, int(mult), d, degp))
    return out


def sv_cycle(setup: JoinSetup) -> SVTrace:
    """Run the intersection algorithm until beta becomes the unit ideal."""
    degX = degree(setup.x_ideal)[1]
    degY = degree(setup.y_ideal)[1]
    trace = SVTrace(setup=setup, expected=degX * degY)
    diag = setup.diagonal_ideal()
    beta = setup.product_ideal
    trace.beta_chain.append(beta)
    for k in range(len(setup.u)):
        if beta.is_unit():
            break
        trace.top_dimensions.append(krull_dimension(beta))
        B = beta.with_generators([setup.hyperplane(k)])
        try:
            top = cycle_of_top_components(B)
        except Unresolved as exc:
            raise Unresolved(f"cycle extraction failed at step {k}: {exc}", exc.leaf) from exc
        v = [c for c in top if all(_in_prime(f, c.prime.ideal) for f in setup.diagonal_forms)]
        trace.v_cycles.append((k + 1, v))
        beta = saturate_ideal(B, diag).reduced()
        trace.beta_chain.append(beta)
    if not beta.is_unit():
        raise RuntimeError("beta chain did not terminate within dim(product) steps")
    trace.total = sum(c.multiplicity * c.degree for c in trace.components())
    return trace


def cycle_signature(trace: SVTrace) -> Counter:
    """Multiset of (dimension, multiplicity, degree) over all v-components."""
    return Counter((c.dimension, c.multiplicity, c.degree) for c in trace.components())


@dataclass
class BezoutReport:
    expected: int
    total: int
    per_step: list

    @property
    def ok(self) -> bool:
        return self.expected == self.total

    def to_dict(self) -> dict:
        return {"expected": self.expected, "total": self.total, "ok": self.ok,
                "per_step": self.per_step}


def bezout_check(trace: SVTrace) -> BezoutReport:
    if not trace.beta_chain or not trace.beta_chain[-1].is_unit():
        raise ValueError("trace is incomplete: beta not exhausted")
    per_step = [[k, sum(c.multiplicity * c.degree for c in cs)] for k, cs in trace.v_cycles]
    total = sum(s for _, s in per_step)
    return BezoutReport(trace.expected, total, per_step)


# ------------------------------------------------------ distinguished varieties


def distinguished_varieties(A: PresentedAlgebra, I_gens) -> list:
    """Contractions of the minimal primes of G_I(A), flagged embedded when not minimal over I."""
    G = assoc_graded(A, I_gens)
    base_mins = [w.ideal for w in minimal_primes(G.zero_part.ambient)]
    out = []
    for w in graded_minimal_primes(G):
        c = w.contraction0
        embedded = not any(c == m for m in base_mins)
        out.append((c, embedded))
    return out
