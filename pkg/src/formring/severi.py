"""Checker for the equivalent conditions characterizing when every minimal
prime of G_I(A) contracts to a minimal prime of A/I.

Conditions checked:

* (i)   every minimal prime P of G has [P]_0 minimal over I;
* (i')  G and I have the same number of minimal primes (with the side
        hypothesis that each localization at a minimal prime of I has a
        domain as reduced associated graded ring);
* (ii)  ℓ(I_q) < dim A_q for primes q strictly above a minimal prime of I,
        evaluated on a finite candidate set;
* (iii) I^(n) ⊆ closure(I^n) for n <= n_max (monomial ideals only);
* (iv)  the same containment on the tail window of [1, n_max].

Quasi-unmixedness is not decided; equidimensionality of A_p at every tested
prime p serves as the proxy hypothesis for the audit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .gbengine import Ideal, eliminate, krull_dimension, saturate
from .graded import (
    GradedPresentation,
    PresentedAlgebra,
    Unresolved,
    analytic_spread,
    assoc_graded,
    graded_minimal_primes,
    local_dimension,
    minimal_primes,
)
from .monomial import (
    MonomialIdeal,
    closure_member,
    condition_window,
    integral_closure_monomial,
    symbolic_power_monomial,
)

__all__ = [
    "HOLDS",
    "FAILS",
    "NOT_APPLICABLE",
    "UNVERIFIED",
    "Verdict",
    "ConditionReport",
    "Analysis",
    "analyze",
    "check_condition_i",
    "check_condition_i_prime",
    "check_condition_ii",
    "check_condition_iii_iv",
    "check_equality_symbolic_closure",
    "equidimensionality_proxy",
    "audit_equivalences",
    "check_instance",
    "recheck_witness",
]

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"
UNVERIFIED = "unverified"

FIELD_NOTE = "computed over QQ"
CATEGORY_NOTE = "affine QQ-algebras; local dimensions by catenary difference formulas"
WINDOW_NOTE = "window-bounded evidence for n >> 0, not a proof"


@dataclass
class Verdict:
    status: str
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    table: list = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {"status": self.status, "witnesses": self.witnesses, "notes": self.notes}
        if self.table:
            d["table"] = self.table
        return d


def _gens(I: Ideal) -> list:
    return I.generator_strings()


# ------------------------------------------------------------------ analysis


@dataclass
class Analysis:
    """Shared computations for one (A, I) pair."""

    A: PresentedAlgebra
    fs: list
    G: GradedPresentation
    graded_primes: list | None
    base_primes: list | None
    error: str | None = None

    @property
    def resolved(self) -> bool:
        return self.graded_primes is not None and self.base_primes is not None

    def asserted(self) -> bool:
        ws = (self.graded_primes or []) + (self.base_primes or [])
        return any(not w.certified for w in ws)


def analyze(A: PresentedAlgebra, I_gens) -> Analysis:
    fs = [A._poly(g) for g in I_gens]
    G = assoc_graded(A, fs)
    try:
        gp = graded_minimal_primes(G)
        bp = minimal_primes(G.zero_part.ambient)
        return Analysis(A, fs, G, gp, bp)
    except Unresolved as exc:
        return Analysis(A, fs, G, None, None, error=str(exc))


def _ensure(A, I_gens, ctx):
    return ctx if ctx is not None else analyze(A, I_gens)


def _is_minimal(c: Ideal, mins: list) -> bool:
    return any(c == m.ideal for m in mins)


# -------------------------------------------------------------- conditions


def check_condition_i(A: PresentedAlgebra, I_gens, ctx: Analysis | None = None) -> Verdict:
    ctx = _ensure(A, I_gens, ctx)
    if not ctx.resolved:
        return Verdict(UNVERIFIED, notes=[ctx.error])
    v = Verdict(HOLDS)
    for P in ctx.graded_primes:
        c = P.contraction0
        if _is_minimal(c, ctx.base_primes):
            continue
        below = next(m for m in ctx.base_primes if m.ideal.issubset(c))
        v.status = FAILS
        v.witnesses.append({
            "prime": _gens(P.ideal),
            "contraction": _gens(c),
            "contains_minimal_prime": _gens(below.ideal),
        })
    if ctx.asserted():
        v.notes.append("some primality certificates are asserted by split exhaustion")
    return v


def _hypothesis_table(ctx: Analysis) -> list:
    rows = []
    for p in ctx.base_primes:
        over = [P for P in ctx.graded_primes if P.contraction0.issubset(p.ideal)]
        certified = all(P.certified for P in over)
        rows.append({
            "prime": _gens(p.ideal),
            "graded_primes_over": len(over),
            "reduced_domain": len(over) == 1 and certified,
            "certified": certified,
        })
    return rows


def check_condition_i_prime(A: PresentedAlgebra, I_gens, ctx: Analysis | None = None) -> Verdict:
    ctx = _ensure(A, I_gens, ctx)
    if not ctx.resolved:
        return Verdict(UNVERIFIED, notes=[ctx.error])
    nG, nI = len(ctx.graded_primes), len(ctx.base_primes)
    table = _hypothesis_table(ctx)
    v = Verdict(HOLDS if nG == nI else FAILS, table=table)
    if nG == nI:
        v.notes.append("bijection: " + "; ".join(
            f"{_gens(P.ideal)} -> {_gens(P.contraction0)}" for P in ctx.graded_primes))
    else:
        v.witnesses.append({"graded_minimal_primes": nG, "minimal_primes_of_I": nI})
    if not all(r["reduced_domain"] for r in table):
        v.notes.append("hypothesis unverified: reduced localized graded ring not a certified domain")
    return v


def _pairwise_candidates(ctx: Analysis) -> list:
    out = []
    R = ctx.A.ring
    for p, q in combinations(ctx.base_primes, 2):
        S = p.ideal + q.ideal
        if S.is_unit():
            continue
        out.extend(w.ideal for w in minimal_primes(S))
    maximal = Ideal(R, R.gens())
    if ctx.G.zero_part.ambient.issubset(maximal):
        out.append(maximal)
    return out


def candidate_primes(ctx: Analysis, extra: list | None = None) -> list:
    """Auto candidates plus user primes, keeping those strictly above a minimal prime of I."""
    J = ctx.G.zero_part.ambient
    cands = []
    for q in _pairwise_candidates(ctx) + list(extra or []):
        q = q.reduced()
        if q.is_unit() or not J.issubset(q):
            continue
        if not any(m.ideal.issubset(q) and m.ideal != q for m in ctx.base_primes):
            continue
        if any(q == c for c in cands):
            continue
        cands.append(q)
    cands.sort(key=lambda q: (krull_dimension(q), _gens(q)), reverse=True)
    return cands


def check_condition_ii(A: PresentedAlgebra, I_gens, candidates: list | None = None,
                       ctx: Analysis | None = None) -> Verdict:
    ctx = _ensure(A, I_gens, ctx)
    if not ctx.resolved:
        return Verdict(UNVERIFIED, notes=[ctx.error])
    cands = candidate_primes(ctx, candidates)
    v = Verdict(HOLDS)
    v.notes.append("evaluated on a finite candidate set only")
    for q in cands:
        try:
            spread = analytic_spread(A, ctx.fs, q, ctx.G)
            dim = local_dimension(A, q)
        except Unresolved as exc:
            v.table.append({"prime": _gens(q), "error": str(exc)})
            if v.status == HOLDS:
                v.status = UNVERIFIED
            continue
        ok = spread.value < dim
        row = {"prime": _gens(q), "analytic_spread": spread.value, "local_dimension": dim,
               "mode": spread.mode, "holds": ok}
        if spread.mode == "heuristic":
            row["flag"] = "heuristic under equidimensional-fiber hypothesis"
        v.table.append(row)
        if not ok:
            v.status = FAILS
            v.witnesses.append({"prime": _gens(q), "analytic_spread": spread.value,
                                "local_dimension": dim})
    if not cands:
        v.notes.append("no candidate prime strictly contains a minimal prime of I: vacuous")
    return v


def check_condition_iii_iv(I: MonomialIdeal, n_max: int):
    """(iii) for n <= n_max and (iv) on the tail window; returns two verdicts."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    v3 = Verdict(HOLDS)
    failing = set()
    for n in range(1, n_max + 1):
        S = symbolic_power_monomial(I, n)
        bad = [g for g in S.gens if not closure_member(g, I, n)]
        v3.table.append({"n": n, "symbolic_in_closure": not bad})
        if bad:
            failing.add(n)
            if v3.status == HOLDS:
                v3.status = FAILS
                v3.witnesses.append({"n": n, "element": str(I.ring.monomial(bad[0])),
                                     "exponent": list(bad[0])})
    v3.notes.append(f"checked for 1 <= n <= {n_max}")
    window = condition_window(n_max)
    v4 = Verdict(FAILS if failing & set(window) else HOLDS)
    v4.notes.append(f"{WINDOW_NOTE}; window [{window.start}, {window.stop - 1}]")
    for n in sorted(failing & set(window)):
        v4.witnesses.append({"n": n})
    return v3, v4


def check_equality_symbolic_closure(I: MonomialIdeal, n_max: int) -> Verdict:
    v = Verdict(HOLDS)
    for n in range(1, n_max + 1):
        S = symbolic_power_monomial(I, n)
        C = integral_closure_monomial(I, n)
        row = {"n": n, "symbolic_in_closure": S.issubset(C), "closure_in_symbolic": C.issubset(S)}
        v.table.append(row)
        if not (row["symbolic_in_closure"] and row["closure_in_symbolic"]):
            if v.status == HOLDS:
                failed = "symbolic ⊆ closure" if not row["symbolic_in_closure"] else "closure ⊆ symbolic"
                v.witnesses.append({"n": n, "failed_inclusion": failed,
                                    "symbolic": str(S), "closure": str(C)})
            v.status = FAILS
    return v


# ----------------------------------------------------------------- proxies


def equidimensionality_proxy(A: PresentedAlgebra, primes: list) -> dict:
    """A_p equidimensional at each tested prime p (string key -> bool)."""
    mins = minimal_primes(A.ambient)
    out = {}
    for p in primes:
        dims = {krull_dimension(P.ideal) for P in mins if P.ideal.issubset(p)}
        out[", ".join(_gens(p))] = len(dims) <= 1
    return out


# ------------------------------------------------------------------- report


@dataclass
class ConditionReport:
    instance: str
    verdict_i: Verdict
    verdict_i_prime: Verdict
    verdict_ii: Verdict
    verdict_iii: Verdict
    verdict_iv: Verdict
    equality: Verdict
    proxies: dict
    n_max: int
    notes: list = field(default_factory=list)
    audit: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def verdicts(self) -> dict:
        return {
            "i": self.verdict_i.to_dict(),
            "i_prime": self.verdict_i_prime.to_dict(),
            "ii": self.verdict_ii.to_dict(),
            "iii": self.verdict_iii.to_dict(),
            "iv": self.verdict_iv.to_dict(),
            "symbolic_equals_closure": self.equality.to_dict(),
        }

    def witnesses(self) -> list:
        out = []
        for name, v in (("i", self.verdict_i), ("i_prime", self.verdict_i_prime),
                        ("ii", self.verdict_ii), ("iii", self.verdict_iii), ("iv", self.verdict_iv)):
            for w in v.witnesses:
                out.append({"condition": name, **w})
        return out


def audit_equivalences(report: ConditionReport) -> dict:
    """Check the equivalence pattern; divergence is only tolerated when the proxy fails."""
    proxy = report.proxies.get("equidimensional", True)
    pattern = {k: v.status for k, v in (("i", report.verdict_i), ("ii", report.verdict_ii),
                                         ("iii", report.verdict_iii))}
    decided = {k: s for k, s in pattern.items() if s in (HOLDS, FAILS)}
    agree = len(set(decided.values())) <= 1
    problems = []
    if report.verdict_iii.status == HOLDS and report.verdict_iv.status == FAILS:
        problems.append("(iii) holds but (iv) fails inside the window")
    if proxy and not agree:
        problems.append(f"BUILD FAILURE: verdicts diverge under the proxy hypothesis: {pattern}")
    hyp = report.proxies.get("reduced_domain_at_minimal_primes", False)
    ip = report.verdict_i_prime.status
    if proxy and hyp and ip in (HOLDS, FAILS) and pattern["i"] in (HOLDS, FAILS) and ip != pattern["i"]:
        problems.append("BUILD FAILURE: (i) and (i') disagree although the side hypothesis holds")
    if problems:
        status = "fail"
    elif not proxy and not agree:
        status = "pass"
        problems.append("recorded divergence: equidimensionality proxy fails, "
                        "the dimension hypothesis is necessary for the implication")
    else:
        status = "pass"
    return {"status": status, "pattern": pattern, "proxy_holds": proxy,
            "divergence": not agree, "messages": problems}


def check_instance(A: PresentedAlgebra, I_gens, name: str = "instance", n_max: int = 3,
                   candidates: list | None = None) -> ConditionReport:
    ctx = analyze(A, I_gens)
    v1 = check_condition_i(A, I_gens, ctx)
    v1p = check_condition_i_prime(A, I_gens, ctx)
    v2 = check_condition_ii(A, I_gens, candidates, ctx)
    monomial_case = A.ambient.is_zero() and all(f.is_monomial() for f in ctx.fs)
    if monomial_case:
        M = MonomialIdeal.from_ideal(Ideal(A.ring, ctx.fs))
        v3, v4 = check_condition_iii_iv(M, n_max)
        veq = check_equality_symbolic_closure(M, n_max)
    else:
        reason = "symbolic/closure conditions need a monomial ideal of a polynomial ring"
        v3, v4, veq = (Verdict(NOT_APPLICABLE, notes=[reason]) for _ in range(3))

    proxies: dict = {"field": FIELD_NOTE, "ambient_category": CATEGORY_NOTE}
    if ctx.resolved:
        tested = [m.ideal for m in ctx.base_primes] + [P.contraction0 for P in ctx.graded_primes]
        tested += candidate_primes(ctx, candidates)
        uniq = []
        for p in tested:
            if not any(p == q for q in uniq):
                uniq.append(p)
        eq = equidimensionality_proxy(A, uniq)
        proxies["equidimensional_at"] = eq
        proxies["equidimensional"] = all(eq.values())
        hyp_rows = v1p.table
        proxies["reduced_domain_at"] = {", ".join(r["prime"]): r["reduced_domain"] for r in hyp_rows}
        proxies["reduced_domain_at_minimal_primes"] = all(r["reduced_domain"] for r in hyp_rows)
        proxies["asserted_primality"] = ctx.asserted()
    else:
        proxies["equidimensional"] = False
        proxies["equidimensional_at"] = {}
        proxies["reduced_domain_at"] = {}
        proxies["reduced_domain_at_minimal_primes"] = False
        proxies["asserted_primality"] = True
    proxies["quasi_unmixed"] = "not decided; equidimensionality proxy used"

    report = ConditionReport(
        instance=name, verdict_i=v1, verdict_i_prime=v1p, verdict_ii=v2,
        verdict_iii=v3, verdict_iv=v4, equality=veq, proxies=proxies, n_max=n_max,
    )
    if ctx.resolved:
        report.summary = {
            "graded_ring": _gens(ctx.G.defining_ideal),
            "graded_variables": list(ctx.G.ring.variables),
            "graded_minimal_primes": [
                {"prime": _gens(P.ideal), "certificate": P.certificate,
                 "contraction": _gens(P.contraction0)} for P in ctx.graded_primes],
            "minimal_primes_of_I": [_gens(m.ideal) for m in ctx.base_primes],
        }
    report.audit = audit_equivalences(report)
    return report


# ------------------------------------------------------------------ witnesses


def recheck_witness(A: PresentedAlgebra, I_gens, condition: str, witness: dict) -> bool:
    """Re-verify a failure witness from Groebner/monomial primitives alone."""
    R = A.ring
    fs = [A._poly(g) for g in I_gens]
    J = A.ideal(fs)
    if condition == "i":
        G = assoc_graded(A, fs)
        P = Ideal(G.ring, [G.ring(t) for t in witness["prime"]])
        c = Ideal(R, [R(t) for t in witness["contraction"]])
        m = Ideal(R, [R(t) for t in witness["contains_minimal_prime"]])
        contracted = eliminate(P, G.t_names).to_ring(R)
        return (G.defining_ideal.issubset(P) and contracted == c
                and J.issubset(m) and m.issubset(c) and not c.issubset(m))
    if condition == "ii":
        q = Ideal(R, [R(t) for t in witness["prime"]])
        G = assoc_graded(A, fs)
        fiber = Ideal(G.ring, list(G.defining_ideal.gens) + [g.to_ring(G.ring) for g in q.gens])
        if krull_dimension(q) == 0:
            spread = krull_dimension(fiber)
            dim = local_dimension(A, q)
            return spread == witness["analytic_spread"] and spread >= dim == witness["local_dimension"]
        spread = analytic_spread(A, fs, q, G).value
        dim = local_dimension(A, q)
        return (spread, dim) == (witness["analytic_spread"], witness["local_dimension"]) and spread >= dim
    if condition == "iii":
        M = MonomialIdeal.from_ideal(Ideal(R, fs))
        n = witness["n"]
        a = tuple(witness["exponent"])
        f = R.monomial(a)
        In = (M ** n).to_ideal()
        for names in _monomial_minimal_primes(M):
            outside = R.one()
            for v in R.variables:
                if v not in names:
                    outside = outside * R.gen(v)
            comp = In if outside.is_constant() else saturate(In, outside, exponent=False)[0]
            if not comp.contains(f):
                return False
        return not closure_member(a, M, n)
    raise ValueError(f"no re-check for condition {condition!r}")


def _monomial_minimal_primes(M: MonomialIdeal) -> list:
    from .monomial import minimal_primes_monomial

    return minimal_primes_monomial(M)
