"""Command-line front end: instance files in, JSON reports out.

Exit codes: 0 all audits pass, 1 audit or conservation failure,
2 unresolved decomposition or unverified verdict, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .gbengine import Ideal, krull_dimension
from .graded import (
    DegenerateGenerator,
    Unresolved,
    analytic_spread,
    assoc_graded,
    graded_minimal_primes,
    local_dimension,
    localized_graded_dimension,
    minimal_primes,
    rees_presentation,
)
from .instances import Instance, InstanceError, corpus_paths, load_instance
from .monomial import MonomialIdeal, integral_closure_monomial, symbolic_power_monomial
from .polycore import DEGREVLEX, LEX, ParseError, format_polynomial
from .properties import run_properties
from .severi import UNVERIFIED, check_instance
from .svcycle import DEFAULT_BOUND, bezout_check, build_product_join, distinguished_varieties, sv_cycle

EXIT_OK, EXIT_FAIL, EXIT_UNRESOLVED, EXIT_INPUT = 0, 1, 2, 3
STATUS = {EXIT_OK: "ok", EXIT_FAIL: "failure", EXIT_UNRESOLVED: "unresolved", EXIT_INPUT: "input-error"}

COMMANDS = ("gb", "dim", "minprimes", "rees", "assocgraded", "spread", "symbolic",
            "closure", "check", "svcycle", "distinguished", "corpus")


class InputError(Exception):
    pass


def load_schema() -> dict:
    return json.loads(resources.files("formring").joinpath("schema.json").read_text(encoding="utf-8"))


# --------------------------------------------------------------- helpers


class Timer:
    def __init__(self):
        self.data = {}

    @contextmanager
    def __call__(self, name):
        t = time.perf_counter()
        yield
        self.data[name] = round(time.perf_counter() - t, 6)


def _gens(I: Ideal) -> list:
    return I.generator_strings()


def _prime_arg(text: str | None, inst: Instance, ring):
    if text is None:
        return Ideal(ring, ring.gens())
    try:
        return Ideal(ring, [ring(t) for t in text.split(",") if t.strip()])
    except ParseError as exc:
        raise InputError(f"--prime: {exc}") from exc


def _monomial(inst: Instance) -> MonomialIdeal:
    A, fs = inst.pair()
    if not A.ambient.is_zero() or not all(f.is_monomial() for f in fs):
        raise InputError("this command needs a monomial ideal in a polynomial ring")
    return MonomialIdeal.from_ideal(Ideal(A.ring, fs))


def resolve_seeds(cli_seeds, inst: Instance | None) -> list:
    if cli_seeds:
        return list(cli_seeds)
    env = os.environ.get("FORMRING_SEED")
    if env:
        try:
            return [int(s) for s in env.split(",") if s.strip()]
        except ValueError:
            raise InputError("FORMRING_SEED must be a comma separated list of integers") from None
    if inst is not None and inst.seed is not None:
        return [inst.seed]
    return [1]


def _empty(inst_name: str, command: str) -> dict:
    return {
        "toolkit-version": __version__,
        "instance": inst_name,
        "command": command,
        "status": "ok",
        "exit_code": EXIT_OK,
        "reason": None,
        "result": {},
        "verdicts": {},
        "witnesses": [],
        "proxies": {},
        "timings": {},
        "seeds": [],
    }


# --------------------------------------------------------------- commands


def cmd_gb(inst, args, rep, timer):
    A, fs = inst.pair()
    order = LEX if args.order == "lex" else DEGREVLEX
    J = A.ideal(fs)
    with timer("gb"):
        G = J.groebner_basis(order)
    rep["result"] = {"order": args.order, "ring": list(J.ring.variables),
                     "basis": [format_polynomial(g, order) for g in G]}
    return EXIT_OK


def cmd_dim(inst, args, rep, timer):
    A, fs = inst.pair()
    with timer("dim"):
        rep["result"] = {"dim_A": A.dimension(), "dim_A_mod_I": krull_dimension(A.ideal(fs)),
                         "dim_G": assoc_graded(A, fs).dimension()}
    return EXIT_OK


def _witness_rows(ws):
    return [{"prime": _gens(w.ideal), "certificate": w.certificate, "dimension": w.dimension()} for w in ws]


def cmd_minprimes(inst, args, rep, timer):
    A, fs = inst.pair()
    with timer("minprimes"):
        rows = _witness_rows(minimal_primes(A.ideal(fs)))
    rep["result"] = {"ideal": _gens(A.ideal(fs)), "minimal_primes": rows}
    return EXIT_OK


def cmd_rees(inst, args, rep, timer):
    A, fs = inst.pair()
    with timer("rees"):
        J, names = rees_presentation(A, fs)
    rep["result"] = {"ring": list(J.ring.variables), "t_variables": list(names),
                     "rees_ideal": _gens(J.reduced())}
    return EXIT_OK


def cmd_assocgraded(inst, args, rep, timer):
    A, fs = inst.pair()
    with timer("assocgraded"):
        G = assoc_graded(A, fs)
        primes = graded_minimal_primes(G)
    rows = []
    for w in primes:
        rows.append({"prime": _gens(w.ideal), "certificate": w.certificate,
                     "dimension": w.dimension(), "contraction": _gens(w.contraction0)})
    tested = [w.ideal for w in minimal_primes(G.zero_part.ambient)]
    maximal = Ideal(A.ring, A.ring.gens())
    if G.zero_part.ambient.issubset(maximal) and not any(maximal == p for p in tested):
        tested.append(maximal)
    localized = []
    for p in tested:
        row = {"prime": _gens(p),
               "localized_dimension": localized_graded_dimension(G.defining_ideal, p, G, primes),
               "components": []}
        for w in primes:
            if w.contraction0.issubset(p):
                row["components"].append({
                    "prime": _gens(w.ideal),
                    "localized_dimension": localized_graded_dimension(w.ideal, p, G, [w]),
                })
        localized.append(row)
    rep["result"] = {"ring": list(G.ring.variables), "defining_ideal": _gens(G.defining_ideal),
                     "dimension": G.dimension(), "minimal_primes": rows,
                     "localized_dimensions": localized}
    return EXIT_OK


def cmd_spread(inst, args, rep, timer):
    A, fs = inst.pair()
    q = _prime_arg(args.prime, inst, A.ring)
    with timer("spread"):
        try:
            s = analytic_spread(A, fs, q)
            d = local_dimension(A, q)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    rep["result"] = {"prime": _gens(q), "analytic_spread": s.value, "mode": s.mode,
                     "local_dimension": d}
    return EXIT_OK


def _powers(args, inst):
    n = args.power if args.power is not None else (args.nmax or inst.n_max)
    if n < 1:
        raise InputError("power must be >= 1")
    return n


def cmd_symbolic(inst, args, rep, timer):
    M = _monomial(inst)
    n = _powers(args, inst)
    with timer("symbolic"):
        rep["result"] = {"powers": [{"n": k, "symbolic": [str(M.ring.monomial(g)) for g in
                                                           symbolic_power_monomial(M, k).gens]}
                                    for k in range(1, n + 1)]}
    return EXIT_OK


def cmd_closure(inst, args, rep, timer):
    M = _monomial(inst)
    n = _powers(args, inst)
    with timer("closure"):
        rep["result"] = {"powers": [{"n": k, "closure": [str(M.ring.monomial(g)) for g in
                                                          integral_closure_monomial(M, k).gens]}
                                    for k in range(1, n + 1)]}
    return EXIT_OK


def cmd_check(inst, args, rep, timer):
    A, fs = inst.pair()
    n_max = args.nmax or inst.n_max
    try:
        cands = inst.candidate_ideals(A.ring)
    except ParseError as exc:
        raise InputError(f"candidates: {exc}") from exc
    with timer("check"):
        report = check_instance(A, fs, inst.name, n_max, cands)
    rep["verdicts"] = report.verdicts()
    rep["witnesses"] = report.witnesses()
    rep["proxies"] = report.proxies
    rep["result"] = {"n_max": n_max, "audit": report.audit, "summary": report.summary}
    if report.audit["status"] != "pass":
        rep["reason"] = {"code": "audit-failure", "message": "; ".join(report.audit["messages"])}
        return EXIT_FAIL
    if any(v["status"] == UNVERIFIED for v in rep["verdicts"].values()):
        rep["reason"] = {"code": "unverified", "message": "some verdicts could not be decided"}
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_svcycle(inst, args, rep, timer):
    if not inst.has_sv:
        raise InputError("instance has no X/Y block")
    X, Y = inst.sv_ideals()
    bound = args.bound if args.bound is not None else (inst.bound or DEFAULT_BOUND)
    seeds = resolve_seeds(args.seed, inst)
    rep["seeds"] = seeds
    traces = []
    code = EXIT_OK
    for seed in seeds:
        try:
            setup = build_product_join(X, Y, seed=seed, bound=bound)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        with timer(f"seed-{seed}"):
            trace = sv_cycle(setup)
        b = bezout_check(trace)
        d = trace.to_dict()
        d["bezout"] = b.to_dict()
        traces.append(d)
        if not b.ok:
            code = EXIT_FAIL
            rep["witnesses"].append({"seed": seed, "expected": b.expected, "total": b.total})
    rep["result"] = {"traces": traces}
    rep["verdicts"] = {"bezout": {"status": "holds" if code == EXIT_OK else "fails"}}
    if code != EXIT_OK:
        rep["reason"] = {"code": "bezout-mismatch", "message": "cycle total differs from deg X * deg Y"}
    return code


def cmd_distinguished(inst, args, rep, timer):
    A, fs = inst.pair()
    with timer("distinguished"):
        rows = [{"contraction": _gens(c), "embedded": e} for c, e in distinguished_varieties(A, fs)]
    rep["result"] = {"distinguished": rows, "has_embedded": any(r["embedded"] for r in rows)}
    return EXIT_OK


HANDLERS = {
    "gb": cmd_gb, "dim": cmd_dim, "minprimes": cmd_minprimes, "rees": cmd_rees,
    "assocgraded": cmd_assocgraded, "spread": cmd_spread, "symbolic": cmd_symbolic,
    "closure": cmd_closure, "check": cmd_check, "svcycle": cmd_svcycle,
    "distinguished": cmd_distinguished,
}


def run_command(command: str, path, args) -> dict:
    """Run one command on one instance file; always returns a report."""
    name = Path(path).stem if path else "?"
    rep = _empty(name, command)
    timer = Timer()
    try:
        inst = load_instance(path)
        rep["instance"] = inst.name
        code = HANDLERS[command](inst, args, rep, timer)
    except (InstanceError, InputError, ParseError, DegenerateGenerator) as exc:
        code = EXIT_INPUT
        rep["reason"] = {"code": "input-error", "message": str(exc)}
    except Unresolved as exc:
        code = EXIT_UNRESOLVED
        leaf = _gens(exc.leaf) if exc.leaf is not None else None
        rep["reason"] = {"code": "unresolved", "message": str(exc), "leaf": leaf}
    rep["exit_code"] = code
    rep["status"] = STATUS[code]
    rep["timings"] = {} if args.no_timings else timer.data
    return rep


def _corpus_item(path, args) -> tuple:
    inst = load_instance(path)
    out = {"file": Path(path).name}
    if Path(path).suffix == ".ideal":
        out["check"] = run_command("check", path, args)
        try:
            A, fs = inst.pair()
            out["properties"] = run_properties(A, fs, args.nmax or inst.n_max)
        except Unresolved as exc:
            out["properties"] = {"error": {"status": "unverified", "failures": [str(exc)]}}
    if Path(path).suffix == ".sv":
        out["svcycle"] = run_command("svcycle", path, args)
    return inst.name, out


def cmd_corpus(args) -> dict:
    paths = [Path(p) for p in args.files] if args.files else corpus_paths()
    rep = _empty("corpus", "corpus")
    t = time.perf_counter()
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                items = list(pool.map(_corpus_item, paths, [args] * len(paths)))
        else:
            items = [_corpus_item(p, args) for p in paths]
    except InstanceError as exc:
        rep["exit_code"] = EXIT_INPUT
        rep["status"] = STATUS[EXIT_INPUT]
        rep["reason"] = {"code": "input-error", "message": str(exc)}
        return rep
    merged = {}
    for name, item in sorted(items, key=lambda kv: kv[0]):
        merged[name] = item
    code = EXIT_OK
    failures = []
    for name, item in merged.items():
        for key in ("check", "svcycle"):
            if key in item:
                c = item[key]["exit_code"]
                code = max(code, c)
                if c:
                    failures.append(f"{name}:{key}:{item[key]['status']}")
        for suite, res in item.get("properties", {}).items():
            if res["status"] == "fail":
                code = max(code, EXIT_FAIL)
                failures.append(f"{name}:property:{suite}")
            elif res["status"] == "unverified" and code == EXIT_OK:
                code = EXIT_UNRESOLVED
                failures.append(f"{name}:property:{suite}:unverified")
        row = {}
        for key in ("check", "svcycle"):
            for k, v in item.get(key, {}).get("verdicts", {}).items():
                row[k] = v["status"]
        rep["verdicts"][name] = row
    rep["result"] = {"instances": merged}
    rep["exit_code"] = code
    rep["status"] = STATUS[code]
    if failures:
        rep["reason"] = {"code": STATUS[code], "message": ", ".join(failures)}
    if not args.no_timings:
        rep["timings"] = {"total": round(time.perf_counter() - t, 6)}
    return rep


# ------------------------------------------------------------------ output


def dump(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _summary(rep: dict) -> str:
    lines = [f"{rep['command']} {rep['instance']}: {rep['status']} (exit {rep['exit_code']})"]
    if rep["reason"]:
        lines.append(f"  reason: {rep['reason']['message']}")
    if rep["command"] == "corpus":
        for name, verdicts in rep["verdicts"].items():
            lines.append(f"  {name}: " + " ".join(f"{k}={v}" for k, v in verdicts.items()))
        return "\n".join(lines) + "\n"
    for k, v in rep["verdicts"].items():
        lines.append(f"  {k}: {v['status']}")
    for k, v in rep["result"].items():
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True, ensure_ascii=False)}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="formring", description="Form-ring toolkit over QQ.")
    p.add_argument("--version", action="version", version=f"formring {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("files", nargs="*", help="instance files (corpus: default bundled)")
    p.add_argument("--order", choices=("lex", "degrevlex"), default="degrevlex")
    p.add_argument("--nmax", type=int, default=None, help="largest power for (iii)/(iv), default 3")
    p.add_argument("--seed", type=int, action="append", help="SV seed, repeatable")
    p.add_argument("--bound", type=int, default=None, help=f"coefficient bound, default {DEFAULT_BOUND}")
    p.add_argument("--prime", help="comma separated generators of a prime (spread)")
    p.add_argument("--power", type=int, help="largest power (symbolic, closure)")
    p.add_argument("--out", type=Path, help="directory for JSON reports")
    p.add_argument("--json", action="store_true", help="print JSON to stdout")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for corpus")
    p.add_argument("--no-timings", action="store_true", help="omit timings (byte-stable output)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.nmax is not None and args.nmax < 1:
        parser.print_usage(sys.stderr)
        print("formring: --nmax must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    if args.command == "corpus":
        reports = [cmd_corpus(args)]
    else:
        if not args.files:
            print(f"formring: {args.command} needs an instance file", file=sys.stderr)
            return EXIT_INPUT
        reports = [run_command(args.command, f, args) for f in args.files]
    schema = load_schema()
    for rep in reports:
        jsonschema.validate(rep, schema)
        text = dump(rep)
        if args.out:
            write_atomic(args.out / f"{rep['instance']}.{rep['command']}.json", text)
        sys.stdout.write(text if args.json else _summary(rep))
    return max(r["exit_code"] for r in reports)


if __name__ == "__main__":
    sys.exit(main())
