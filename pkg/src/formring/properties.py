"""Property suites run by ``formring corpus`` and the test-suite.

Each check returns a list of failure messages; an empty list means pass.
"""

from __future__ import annotations

from itertools import combinations_with_replacement

from .gbengine import Ideal, krull_dimension, leading_ideal
from .graded import Unresolved, assoc_graded, graded_minimal_primes, minimal_primes
from .monomial import MonomialIdeal, integral_closure_monomial, symbolic_power_monomial
from .polycore import LEX

__all__ = ["SUITES", "run_properties"]


def gb_idempotence(ideal: Ideal) -> list:
    G = ideal.groebner_basis()
    again = Ideal(ideal.ring, G).groebner_basis()
    return [] if list(G) == list(again) else [f"GB not idempotent for {ideal}"]


def _probe_polynomials(ideal: Ideal) -> list:
    R = ideal.ring
    gens = list(ideal.gens)
    probes = [a * b for a, b in combinations_with_replacement(gens + list(R.gens()), 2)]
    probes += [g + R.gen(v) for g in gens for v in R.variables[:2]]
    return probes


def membership_consistency(ideal: Ideal) -> list:
    bad = []
    for f in _probe_polynomials(ideal):
        r = ideal.normal_form(f)
        if ideal.contains(f) != r.is_zero():
            bad.append(f"membership and normal form disagree on {f}")
        if not ideal.contains(f - r):
            bad.append(f"f - NF(f) not in the ideal for {f}")
    return bad


def order_independent_dimension(ideal: Ideal) -> list:
    d1 = krull_dimension(ideal)
    d2 = krull_dimension(leading_ideal(ideal, LEX))
    return [] if d1 == d2 else [f"dimension {d1} (degrevlex) != {d2} (lex) for {ideal}"]


def minimal_prime_count(A, fs) -> list:
    G = assoc_graded(A, fs)
    nG = len(graded_minimal_primes(G))
    nI = len(minimal_primes(G.zero_part.ambient))
    return [] if nG >= nI else [f"|Min(G)| = {nG} < |Min(A/I)| = {nI}"]


def equidimensional_transfer(A, fs) -> list | None:
    """If A is equidimensional, every minimal prime of G has dimension dim A (None otherwise)."""
    mins = minimal_primes(A.ambient)
    if len({krull_dimension(P.ideal) for P in mins}) > 1:
        return None
    G = assoc_graded(A, fs)
    dims = {P.dimension() for P in graded_minimal_primes(G)}
    return [] if dims <= {A.dimension()} else [f"G has components of dimension {sorted(dims)}, dim A = {A.dimension()}"]


def monomial_chains(M: MonomialIdeal, n_max: int = 3) -> list:
    bad = []
    C = integral_closure_monomial(M)
    if integral_closure_monomial(C) != C:
        bad.append(f"closure not idempotent on {M}")
    for n in range(1, n_max + 1):
        P = M ** n
        if not P.issubset(symbolic_power_monomial(M, n)):
            bad.append(f"I^{n} not inside I^({n})")
        if not P.issubset(integral_closure_monomial(M, n)):
            bad.append(f"I^{n} not inside closure(I^{n})")
    return bad


SUITES = (
    "gb-idempotence",
    "membership-normal-form",
    "min-prime-count",
    "equidimensional-transfer",
    "closure-and-power-chains",
    "order-independent-dimension",
)


def run_properties(A, fs, n_max: int = 3) -> dict:
    """Run every suite on one (A, I) pair: suite -> {status, failures}."""
    J = A.ideal(fs)
    G = assoc_graded(A, fs)
    out = {}

    def record(name, thunk):
        try:
            fails = thunk()
            if fails is None:
                out[name] = {"status": "not-applicable", "failures": []}
                return
            out[name] = {"status": "pass" if not fails else "fail", "failures": fails}
        except Unresolved as exc:
            out[name] = {"status": "unverified", "failures": [str(exc)]}

    record("gb-idempotence", lambda: gb_idempotence(J) + gb_idempotence(G.defining_ideal))
    record("membership-normal-form", lambda: membership_consistency(J))
    record("min-prime-count", lambda: minimal_prime_count(A, fs))
    record("equidimensional-transfer", lambda: equidimensional_transfer(A, fs))
    if A.ambient.is_zero() and all(f.is_monomial() for f in fs):
        M = MonomialIdeal.from_ideal(Ideal(A.ring, fs))
        record("closure-and-power-chains", lambda: monomial_chains(M, n_max))
    else:
        out["closure-and-power-chains"] = {"status": "not-applicable", "failures": []}
    record("order-independent-dimension",
           lambda: order_independent_dimension(J) + order_independent_dimension(G.defining_ideal))
    return out
