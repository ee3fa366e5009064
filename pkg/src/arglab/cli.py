"""Command-line front end. Every answer is printed as one JSON record on stdout.

Exit status: 0 ran to completion (the answer is in the payload), 2 input or
format error, 3 resource cap or search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import decisions, encodings, generators, realisable, reduction, semantics
from .af import is_admissible, is_conflict_free, is_stable, read_af, serialize_af
from .errors import CapExceeded, FormatError, InvalidAlpha

EXIT_INPUT = 2
EXIT_CAP = 3


def emit(record, out=None):
    out = out or sys.stdout
    out.write(json.dumps(record, sort_keys=True) + "\n")


def _read(path):
    with open(path) as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w") as fh:
        fh.write(text)


def cmd_check(a):
    H = read_af(a.af)
    S = H.parse_set(a.set)
    test = {
        "preferred": semantics.is_preferred,
        "stable": is_stable,
        "admissible": is_admissible,
        "conflict-free": is_conflict_free,
    }[a.semantics]
    emit({"answer": test(H, S), "semantics": a.semantics})


def cmd_enumerate(a):
    H = read_af(a.af)
    if a.method == "oracle":
        fam = semantics.oracle_extensions(H, a.semantics)
    else:
        fam = semantics.enumerate_extensions(H, a.semantics, a.budget)
    emit({"count": len(fam), "extensions": fam.named(H), "semantics": a.semantics})


def cmd_accept(a):
    H = read_af(a.af)
    x = H.index(a.arg)
    fn = semantics.credulous if a.mode == "credulous" else semantics.sceptical
    emit({"answer": fn(H, x, a.budget), "mode": a.mode})


def cmd_coherent(a):
    emit({"answer": semantics.is_coherent(read_af(a.af), a.budget)})


def cmd_alpha(a):
    H = read_af(a.af)
    text = decisions.format_alpha(H, decisions.compute_alpha(H, a.budget))
    if a.out:
        _write(a.out, text)
    else:
        sys.stdout.write(text)


def cmd_decide(a):
    H = read_af(a.af)
    S = H.parse_set(a.set)
    fn = decisions.decide_pref_ext if a.problem == "pref-ext" else decisions.decide_stab_ext
    emit({"answer": fn(H, S, a.budget), "problem": a.problem})


def cmd_decide_inf(a):
    H = read_af(a.af)
    S = H.parse_set(a.set)
    alpha = decisions.parse_alpha(H, _read(a.alpha))
    fn = decisions.pref_ext_inf if a.problem == "pref-ext-inf" else decisions.stab_ext_inf
    answer, path = fn(H, S, alpha, a.trust, a.budget)
    emit({"answer": answer, "path": path})


def cmd_reduce(a):
    phi = reduction.parse_dimacs(_read(a.cnf))
    inst = reduction.build_h_psi(phi, a.reversed)
    _write(a.out_af, serialize_af(inst.system))
    _write(a.out_alpha, decisions.format_alpha(inst.system, inst.alpha))
    _write(a.out_query, ",".join(inst.query_names()) + "\n")
    emit({"arguments": inst.system.n, "attacks": len(inst.system.attacks),
          "query": inst.query_names()})


def cmd_verify_reduction(a):
    if a.cnf:
        formulas = [reduction.parse_dimacs(_read(a.cnf))]
    else:
        formulas = reduction.random_corpus(*reduction.parse_corpus_spec(a.corpus))
    reports = reduction.verify_many(formulas, a.reversed, a.threads)
    if a.records:
        for r in reports:
            sys.stdout.write(reduction.report_record(r) + "\n")
    passed = sum(r.passed for r in reports)
    emit({"pass": passed, "fail": len(reports) - passed})


def cmd_encode(a):
    H = read_af(a.af)
    if a.scheme == "tab":
        e = encodings.encode_tab(H, a.semantics, a.budget)
    elif a.scheme == "truthtable":
        e = encodings.truth_table(H, a.semantics, a.budget)
    else:
        e = encodings.encode_adjacency(H)
    with open(a.out, "wb") as fh:
        fh.write(e.to_bytes())
    emit({"bits": e.size, "rows": e.row_count, "scheme": e.scheme, "semantics": e.semantics})


def cmd_encode_query(a):
    with open(a.enc, "rb") as fh:
        e = encodings.Encoding.from_bytes(fh.read())
    if a.af:
        H = read_af(a.af)
        if H.n != e.n:
            raise FormatError(f"encoding has n={e.n}, system has n={H.n}")
    else:
        H = generators.gen_isolated(e.n)
    emit({"answer": encodings.decide(e, H.parse_set(a.set)), "scheme": e.scheme})


def cmd_minlen(a):
    if a.af:
        H = read_af(a.af)
        n = H.n
        table = encodings.table_int(encodings.truth_table(H, a.semantics, a.budget))
    else:
        try:
            table = int(a.table, 16)
        except ValueError:
            raise FormatError(f"bad hex table {a.table!r}") from None
        n = a.vars
    length = encodings.min_formula_length(table, n, a.cap)
    emit({"length": length, "representable": length is not None, "vars": n})


def cmd_realisable(a):
    fam = realisable.parse_family(_read(a.sets))
    if a.method == "brute":
        H = realisable.realise_bruteforce(fam, allow_n5=a.allow_n5)
        emit({"answer": H is not None, "witness": serialize_af(H) if H else None})
    else:
        check = realisable.condition_literal if a.method == "literal" else realisable.condition_existential
        holds, witness = check(fam)
        emit({"answer": holds, "witness": _witness_record(witness)})


def _witness_record(w):
    if w is None:
        return None
    rec = {"T": [f"x{j + 1}" for j in range(64) if w.T >> j & 1]}
    if w.pair is not None:
        rec["pair"] = [f"x{j + 1}" for j in w.pair]
        rec["member"] = [f"x{j + 1}" for j in range(64) if w.member >> j & 1]
    return rec


def cmd_survey(a):
    rep = realisable.survey(a.n, workers=a.threads, allow_n5=a.allow_n5)
    emit(realisable.survey_record(rep))


def _generate(a):
    if a.family == "k3":
        return generators.gen_k3(a.t)
    if a.family == "isolated":
        return generators.gen_isolated(a.n)
    if a.family == "cycle":
        return generators.gen_cycle(a.n)
    return generators.gen_random(a.n, a.p, a.seed)


def cmd_gen(a):
    text = serialize_af(_generate(a))
    if a.out:
        _write(a.out, text)
    else:
        sys.stdout.write(text)


def cmd_bench(a):
    if a.family == "k3":
        systems = [(f"k3_{t}", generators.gen_k3(t)) for t in range(1, a.max + 1)]
    elif a.family == "isolated":
        systems = [(f"isolated_{k}", generators.gen_isolated(k)) for k in range(0, a.max + 1)]
    elif a.family == "cycle":
        systems = [(f"cycle_{k}", generators.gen_cycle(k)) for k in range(2, a.max + 1)]
    else:
        systems = [(f"random_{k}", generators.gen_random(k, a.p, a.seed)) for k in range(0, a.max + 1)]
    for rec in encodings.size_report(systems, a.budget):
        emit(rec)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes for batch runs")
    common.add_argument("--budget", type=int, default=None, help="search node budget")
    p = argparse.ArgumentParser(prog="arglab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=fn)
        return sp

    sp = add("check", cmd_check)
    sp.add_argument("--af", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--semantics", required=True,
                    choices=["preferred", "stable", "admissible", "conflict-free"])

    sp = add("enumerate", cmd_enumerate)
    sp.add_argument("--af", required=True)
    sp.add_argument("--semantics", default="preferred", choices=["preferred", "stable", "admissible"])
    sp.add_argument("--method", default="search", choices=["search", "oracle"])

    sp = add("accept", cmd_accept)
    sp.add_argument("--af", required=True)
    sp.add_argument("--arg", required=True)
    sp.add_argument("--mode", default="credulous", choices=["credulous", "sceptical"])

    sp = add("coherent", cmd_coherent)
    sp.add_argument("--af", required=True)

    sp = add("alpha", cmd_alpha)
    sp.add_argument("--af", required=True)
    sp.add_argument("--out")

    sp = add("decide", cmd_decide)
    sp.add_argument("--af", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--problem", required=True, choices=["pref-ext", "stab-ext"])

    sp = add("decide-inf", cmd_decide_inf)
    sp.add_argument("--af", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--trust", action="store_true")
    sp.add_argument("--problem", default="pref-ext-inf", choices=["pref-ext-inf", "stab-ext-inf"])

    sp = add("reduce", cmd_reduce)
    sp.add_argument("--cnf", required=True)
    sp.add_argument("--out-af", required=True)
    sp.add_argument("--out-alpha", required=True)
    sp.add_argument("--out-query", required=True)
    sp.add_argument("--reversed", action="store_true", help="read tuples as (attacked, attacker)")

    sp = add("verify-reduction", cmd_verify_reduction)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--cnf")
    g.add_argument("--corpus", help="count,vars,clauses,seed")
    sp.add_argument("--reversed", action="store_true")
    sp.add_argument("--records", action="store_true", help="also print one record per formula")

    sp = add("encode", cmd_encode)
    sp.add_argument("--af", required=True)
    sp.add_argument("--scheme", required=True, choices=["tab", "truthtable", "adjacency"])
    sp.add_argument("--semantics", default="preferred", choices=["preferred", "stable"])
    sp.add_argument("--out", required=True)

    sp = add("encode-query", cmd_encode_query)
    sp.add_argument("--enc", required=True)
    sp.add_argument("--set", required=True)
    sp.add_argument("--af", help="system supplying argument names (default x1..xn)")

    sp = add("minlen", cmd_minlen)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--af")
    g.add_argument("--table", help="hex truth table; bit i is the value at index i")
    sp.add_argument("--vars", type=int, default=None, help="variable count for --table")
    sp.add_argument("--semantics", default="preferred", choices=["preferred", "stable"])
    sp.add_argument("--cap", type=int, default=encodings.DEFAULT_LITERAL_CAP)

    sp = add("realisable", cmd_realisable)
    sp.add_argument("--sets", required=True)
    sp.add_argument("--method", default="brute", choices=["brute", "literal", "existential"])
    sp.add_argument("--allow-n5", action="store_true")

    sp = add("survey", cmd_survey)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--allow-n5", action="store_true")

    sp = add("gen", cmd_gen)
    sp.add_argument("--family", required=True, choices=["k3", "isolated", "cycle", "random"])
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = add("bench", cmd_bench)
    sp.add_argument("--family", default="k3", choices=["k3", "isolated", "cycle", "random"])
    sp.add_argument("--max", type=int, default=4)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.command == "minlen" and a.table is not None and a.vars is None:
        parser.error("--table needs --vars")
    try:
        a.func(a)
    except (FormatError, InvalidAlpha, OSError, IndexError) as exc:
        print(f"arglab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"arglab: {exc}", file=sys.stderr)
        return EXIT_CAP
    return 0


if __name__ == "__main__":
    sys.exit(main())
