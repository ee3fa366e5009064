"""3-CNF -> argument system reduction for PREF-EXT-INF, with a brute-force
verification harness.

From Φ over x1..xn with m clauses we build Ψ over x1..x(n+2) and the system
H_Ψ on 2(m+n+3) arguments. The query {x(n+1), ¬x(n+2)} is a preferred
extension of H_Ψ iff Φ is unsatisfiable, and can be grown to a stable
extension iff Φ is satisfiable.
"""
from __future__ import annotations

import json
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from .af import MAX_ARGS, ArgumentSystem
from .decisions import compute_alpha, decide_pref_ext, decide_stab_ext
from .errors import CapExceeded, FormatError
from .generators import SplitMix64

SAT_CAP = 24


@dataclass(frozen=True)
class CnfFormula:
    """Clauses of DIMACS-style signed variable indices (``-3`` is ¬x3)."""

    var_count: int
    clauses: tuple[tuple[int, ...], ...]
    width: int = 3

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        if self.var_count < 1:
            raise FormatError("formula needs at least one variable")
        if not self.clauses:
            raise FormatError("formula needs at least one clause")
        for c in self.clauses:
            if len(c) != self.width:
                raise FormatError(f"clause {c} has width {len(c)}, expected {self.width}")
            for lit in c:
                if lit == 0 or abs(lit) > self.var_count:
                    raise FormatError(f"literal {lit} outside 1..{self.var_count}")

    @property
    def m(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[abs(l) - 1] == (l > 0) for l in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    header = None
    tokens: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise FormatError("second problem line", lineno)
            m = re.fullmatch(r"p\s+cnf\s+(\d+)\s+(\d+)", line)
            if not m:
                raise FormatError(f"bad problem line {line!r}", lineno)
            header = int(m.group(1)), int(m.group(2))
            continue
        if header is None:
            raise FormatError("clause before problem line", lineno)
        for tok in line.split():
            try:
                tokens.append((int(tok), lineno))
            except ValueError:
                raise FormatError(f"bad literal {tok!r}", lineno) from None
    if header is None:
        raise FormatError("missing 'p cnf' line")
    nvars, nclauses = header
    clauses, current = [], []
    for lit, lineno in tokens:
        if lit == 0:
            if len(current) != 3:
                raise FormatError(f"clause width {len(current)}, expected 3", lineno)
            clauses.append(tuple(current))
            current = []
        elif abs(lit) > nvars:
            raise FormatError(f"variable {abs(lit)} exceeds declared {nvars}", lineno)
        else:
            current.append(lit)
    if current:
        raise FormatError("last clause not terminated by 0")
    if len(clauses) != nclauses:
        raise FormatError(f"header declares {nclauses} clauses, found {len(clauses)}")
    return CnfFormula(nvars, tuple(clauses))


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.var_count} {phi.m}"]
    lines += [" ".join(str(l) for l in c) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def build_psi(phi: CnfFormula) -> CnfFormula:
    """For each clause C emit C ∨ ¬x(n+1) ∨ x(n+2) and C ∨ x(n+1) ∨ ¬x(n+2).

    The result has width 5, so it is tagged ``width=5``.
    """
    a, b = phi.var_count + 1, phi.var_count + 2
    clauses = []
    for c in phi.clauses:
        clauses.append(c + (-a, b))
        clauses.append(c + (a, -b))
    return CnfFormula(phi.var_count + 2, tuple(clauses), width=phi.width + 2)


def _assignments(n):
    """All assignments of n variables in lexicographic order of x1..xn (x1 most significant)."""
    for k in range(1 << n):
        yield tuple(bool(k >> (n - 1 - j) & 1) for j in range(n))


def brute_sat(phi: CnfFormula) -> Optional[tuple[bool, ...]]:
    """Lexicographically first satisfying assignment, or None."""
    if phi.var_count > SAT_CAP:
        raise CapExceeded(f"brute_sat needs at most {SAT_CAP} variables")
    for a in _assignments(phi.var_count):
        if phi.evaluate(a):
            return a
    return None


@dataclass
class PsiReport:
    every_var_true_somewhere: bool
    every_var_false_somewhere: bool
    tagged_assignment_exists: bool
    phi_satisfiable: bool

    @property
    def ok(self) -> bool:
        return (self.every_var_true_somewhere and self.every_var_false_somewhere
                and self.tagged_assignment_exists == self.phi_satisfiable)


def check_psi_properties(phi: CnfFormula) -> PsiReport:
    """Brute-force the three properties of Ψ over all 2^(n+2) assignments."""
    psi = build_psi(phi)
    n2 = psi.var_count
    if n2 > SAT_CAP:
        raise CapExceeded(f"check_psi_properties needs n + 2 <= {SAT_CAP}")
    seen_true = [False] * n2
    seen_false = [False] * n2
    tagged = False
    for a in _assignments(n2):
        if psi.evaluate(a):
            for j, v in enumerate(a):
                if v:
                    seen_true[j] = True
                else:
                    seen_false[j] = True
            if a[n2 - 2] and not a[n2 - 1]:
                tagged = True
    return PsiReport(all(seen_true), all(seen_false), tagged, brute_sat(phi) is not None)


@dataclass(frozen=True)
class ReductionInstance:
    system: ArgumentSystem
    query: int
    alpha: tuple[bool, ...]
    name_map: dict = field(compare=False)
    phi: CnfFormula

    def query_names(self) -> list[str]:
        return self.system.names(self.query)


def literal_name(lit: int) -> str:
    return f"p{lit}" if lit > 0 else f"n{-lit}"


def build_h_psi(phi: CnfFormula, reversed_orientation: bool = False) -> ReductionInstance:
    """Build H_Ψ with attacks read attacker-first.

    ``reversed_orientation`` flips every pair, i.e. reads the construction's
    tuples as (attacked, attacker); kept to show that reading breaks the claims.
    """
    n, m = phi.var_count, phi.m
    size = 2 * (m + n + 3)
    if size > MAX_ARGS:
        raise CapExceeded(f"H_Psi would have {size} arguments (cap {MAX_ARGS})")
    names = ["PSI", "CHI"]
    roles = {"PSI": "Psi", "CHI": "chi"}
    for i in range(1, n + 3):
        names += [f"p{i}", f"n{i}"]
        roles[f"p{i}"] = f"x{i}"
        roles[f"n{i}"] = f"not x{i}"
    for j in range(1, m + 1):
        for k in (1, 2):
            names.append(f"c{j}_{k}")
            roles[f"c{j}_{k}"] = f"C{j}^({k})"
    a, b = n + 1, n + 2
    pairs = set()
    for i in range(1, n + 3):
        pairs |= {(f"p{i}", f"n{i}"), (f"n{i}", f"p{i}")}
    for i in range(1, n + 1):
        pairs |= {("CHI", f"n{i}"), ("CHI", f"p{i}")}
    for j, clause in enumerate(phi.clauses, start=1):
        c1, c2 = f"c{j}_1", f"c{j}_2"
        for lit in clause:
            pairs |= {(literal_name(lit), c1), (literal_name(lit), c2)}
        pairs |= {(c1, "PSI"), (c2, "PSI")}
        pairs |= {(f"n{a}", c1), (f"p{b}", c1)}
        pairs |= {(f"p{a}", c2), (f"n{b}", c2)}
    pairs.add(("PSI", "CHI"))
    if reversed_orientation:
        pairs = {(y, x) for x, y in pairs}
    H = ArgumentSystem.from_names(names, pairs)
    unaccepted = {"CHI"} | {f"c{j}_{k}" for j in range(1, m + 1) for k in (1, 2)}
    alpha = tuple(name not in unaccepted for name in names)
    query = H.set_of([f"p{a}", f"n{b}"])
    return ReductionInstance(H, query, alpha, roles, phi)


def induced_extension(inst: ReductionInstance, assignment: Sequence[bool]) -> int:
    """S_α = query ∪ {Ψ} ∪ {x_i : α_i} ∪ {¬x_i : not α_i} for an assignment of x1..xn."""
    n = inst.phi.var_count
    if len(assignment) < n:
        raise FormatError(f"assignment covers {len(assignment)} of {n} variables")
    names = ["PSI"] + [f"p{i + 1}" if assignment[i] else f"n{i + 1}" for i in range(n)]
    return inst.query | inst.system.set_of(names)


@dataclass
class VerifyReport:
    n: int
    m: int
    arguments: int
    attacks: int
    sat: bool
    pref: bool
    stab: bool
    alpha_ok: bool
    s_alpha_preferred: Optional[bool]
    passed: bool


def verify_reduction(phi: CnfFormula, reversed_orientation: bool = False,
                     budget: Optional[int] = None) -> VerifyReport:
    inst = build_h_psi(phi, reversed_orientation)
    H = inst.system
    assignment = brute_sat(phi)
    sat = assignment is not None
    pref = decide_pref_ext(H, inst.query, budget)
    stab = decide_stab_ext(H, inst.query, budget)
    alpha_ok = compute_alpha(H, budget) == inst.alpha
    s_alpha = None
    if sat:
        s_alpha = decide_pref_ext(H, induced_extension(inst, assignment), budget)
    passed = (pref == (not sat)) and (stab == sat) and alpha_ok and (not sat or bool(s_alpha))
    return VerifyReport(phi.var_count, phi.m, H.n, len(H.attacks), sat, pref, stab,
                        alpha_ok, s_alpha, passed)


def report_record(report) -> str:
    """One JSON object per line, fields in declaration order."""
    return json.dumps(asdict(report))


def random_3cnf(rng: SplitMix64, max_vars: int, max_clauses: int) -> CnfFormula:
    n = 1 + rng.below(max_vars)
    m = 1 + rng.below(max_clauses)
    clauses = []
    for _ in range(m):
        clause = []
        for _ in range(3):
            var = 1 + rng.below(n)
            clause.append(var if rng.next() >> 63 else -var)
        clauses.append(tuple(clause))
    return CnfFormula(n, tuple(clauses))


def parse_corpus_spec(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise FormatError(f"corpus spec must be 'count,vars,clauses,seed', got {text!r}")
    try:
        count, nv, nc, seed = (int(p) for p in parts)
    except ValueError:
        raise FormatError(f"corpus spec must be integers, got {text!r}") from None
    if count < 0 or nv < 1 or nc < 1:
        raise FormatError(f"bad corpus spec {text!r}")
    return count, nv, nc, seed


def random_corpus(count: int, max_vars: int, max_clauses: int, seed: int) -> list[CnfFormula]:
    """Seeded corpus; one splitmix64 stream drives every formula in order."""
    rng = SplitMix64(seed)
    return [random_3cnf(rng, max_vars, max_clauses) for _ in range(count)]


FIXTURE_SAT = CnfFormula(3, ((1, 2, 3),))
FIXTURE_UNSAT = CnfFormula(1, ((1, 1, 1), (-1, -1, -1)))


def verify_many(formulas: Sequence[CnfFormula], reversed_orientation: bool = False,
                workers: int = 1) -> list[VerifyReport]:
    if workers <= 1:
        return [verify_reduction(phi, reversed_orientation) for phi in formulas]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(verify_reduction, formulas,
                             [reversed_orientation] * len(formulas), chunksize=8))
