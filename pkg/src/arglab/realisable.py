"""REALISABLE: is a given family of subsets the preferred extensions of some system?

Brute-force realisation over every attack relation, cheap necessary-condition
prefilters, the two quantifier readings of the conjectured polynomial test,
and a survey harness that tabulates both readings against ground truth.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .af import ArgumentSystem, ExtensionFamily, canonical_sort, is_antichain, members
from .errors import CapExceeded, FormatError
from .semantics import enumerate_preferred, oracle_masks

log = logging.getLogger(__name__)

REALISE_CAP = 4
SURVEY_CAP = 4


def prefilter(S: ExtensionFamily) -> tuple[bool, list[str]]:
    reasons = []
    if not len(S):
        reasons.append("empty family: every system has a preferred extension")
    if not is_antichain(S.members):
        reasons.append("members are not pairwise incomparable")
    if 0 in S and len(S) > 1:
        reasons.append("the empty set is preferred only when it is the sole extension")
    return not reasons, reasons


@dataclass(frozen=True)
class ConditionWitness:
    T: int
    pair: Optional[tuple[int, int]] = None
    member: Optional[int] = None


def _one_step_supersets(S: ExtensionFamily):
    for Si in S:
        for z in range(S.n):
            if not Si >> z & 1:
                yield Si | 1 << z


def condition_literal(S: ExtensionFamily) -> tuple[bool, Optional[ConditionWitness]]:
    """For each T = S_i + {z} and each pair {x, y} in T: no member contains {x, y}.

    Returns the first violation (T, pair, member) in scan order.
    """
    for T in _one_step_supersets(S):
        for x, y in combinations(members(T), 2):
            pair = 1 << x | 1 << y
            for Sj in S:
                if Sj & pair == pair:
                    return False, ConditionWitness(T, (x, y), Sj)
    return True, None


def condition_existential(S: ExtensionFamily) -> tuple[bool, Optional[ConditionWitness]]:
    """For each T = S_i + {z}: some pair {x, y} in T lies in no member.

    Returns the first T with no such pair.
    """
    for T in _one_step_supersets(S):
        for x, y in combinations(members(T), 2):
            pair = 1 << x | 1 << y
            if not any(Sj & pair == pair for Sj in S):
                break
        else:
            return False, ConditionWitness(T)
    return True, None


def _relation_count(n: int) -> int:
    return 1 << (n * (n - 1))


def realise_bruteforce(S: ExtensionFamily, cap_n: int = REALISE_CAP,
                       allow_n5: bool = False) -> Optional[ArgumentSystem]:
    """First system (in relation-index order) whose preferred extensions are exactly S.

    Relation index r includes pair k of :func:`pair_list` iff bit k of r is set.
    """
    n = S.n
    limit = 5 if allow_n5 else cap_n
    if n > limit:
        raise CapExceeded(f"brute-force realisation needs n <= {limit}")
    if n == 5:
        log.warning("scanning 2^20 attack relations on 5 arguments; expect a long run")
    target = S.as_set()
    for r in range(_relation_count(n)):
        H = ArgumentSystem.from_mask_pairs(n, r)
        if enumerate_preferred(H).as_set() == target:
            if set(oracle_masks(H, "preferred")) != target:
                raise AssertionError(f"search and oracle disagree on relation {r}")
            return H
    return None


def antichains(n: int):
    """All antichains of subsets of an n-set (the empty family included), as sorted tuples."""
    universe = list(range(1 << n))

    def rec(start, chosen):
        yield tuple(chosen)
        for k in range(start, len(universe)):
            s = universe[k]
            if all(s & c not in (s, c) for c in chosen):
                chosen.append(s)
                yield from rec(k + 1, chosen)
                chosen.pop()

    yield from rec(0, [])


def _realized_chunk(args):
    n, lo, hi = args
    found = {}
    for r in range(lo, hi):
        fam = tuple(canonical_sort(oracle_masks(ArgumentSystem.from_mask_pairs(n, r), "preferred"), n))
        found.setdefault(fam, r)
    return found


def realized_families(n: int, workers: int = 1, chunks: int = 1) -> dict[tuple[int, ...], int]:
    """Every preferred family realized on n arguments -> smallest realizing relation index."""
    total = _relation_count(n)
    parts = max(1, chunks, workers)
    bounds = [(n, total * i // parts, total * (i + 1) // parts) for i in range(parts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_realized_chunk, bounds))
    else:
        results = [_realized_chunk(b) for b in bounds]
    merged: dict[tuple[int, ...], int] = {}
    for part in results:
        for fam, r in part.items():
            if fam not in merged or r < merged[fam]:
                merged[fam] = r
    return dict(sorted(merged.items(), key=lambda kv: _family_key(kv[0], n)))


def _family_key(fam, n):
    return (len(fam), [format(m, f"0{n}b")[::-1] for m in fam])


@dataclass
class ConditionTally:
    realized_true: int = 0
    realized_false: int = 0
    unrealized_true: int = 0
    unrealized_false: int = 0
    necessity_counterexamples: list = field(default_factory=list)
    sufficiency_counterexamples: list = field(default_factory=list)

    @property
    def necessary(self) -> bool:
        return self.realized_false == 0

    @property
    def sufficient(self) -> bool:
        return self.unrealized_true == 0


@dataclass
class SurveyReport:
    n: int
    systems: int
    candidates: int
    realized: list
    prefilter_failures_realized: int
    literal: ConditionTally
    existential: ConditionTally


def survey(n: int, workers: int = 1, chunks: int = 1, allow_n5: bool = False) -> SurveyReport:
    limit = 5 if allow_n5 else SURVEY_CAP
    if not 0 <= n <= limit:
        raise CapExceeded(f"survey needs n <= {limit}")
    if n == 5:
        log.warning("surveying 2^20 systems on 5 arguments; expect a long run")
    realized = realized_families(n, workers, chunks)
    tallies = {"literal": ConditionTally(), "existential": ConditionTally()}
    checks = {"literal": condition_literal, "existential": condition_existential}
    bad_prefilter = 0
    candidates = sorted(antichains(n), key=lambda fam: _family_key(canonical_sort(fam, n), n))
    for fam in candidates:
        family = ExtensionFamily(n, fam)
        is_real = family.members in realized
        if is_real and not prefilter(family)[0]:
            bad_prefilter += 1
        for name, check in checks.items():
            holds = check(family)[0]
            tally = tallies[name]
            if is_real and holds:
                tally.realized_true += 1
            elif is_real:
                tally.realized_false += 1
                tally.necessity_counterexamples.append(family.members)
            elif holds:
                tally.unrealized_true += 1
                tally.sufficiency_counterexamples.append(family.members)
            else:
                tally.unrealized_false += 1
    return SurveyReport(n, _relation_count(n), len(candidates), list(realized),
                        bad_prefilter, tallies["literal"], tallies["existential"])


def format_family(fam, n: int) -> list[list[str]]:
    return [[f"x{j + 1}" for j in members(m)] for m in canonical_sort(fam, n)]


def survey_record(report: SurveyReport) -> dict:
    def tally(t: ConditionTally):
        return {
            "realized_true": t.realized_true,
            "realized_false": t.realized_false,
            "unrealized_true": t.unrealized_true,
            "unrealized_false": t.unrealized_false,
            "necessary": t.necessary,
            "sufficient": t.sufficient,
            "necessity_counterexamples": [format_family(f, report.n) for f in t.necessity_counterexamples],
            "sufficiency_counterexamples": [format_family(f, report.n) for f in t.sufficiency_counterexamples],
        }

    return {
        "n": report.n,
        "systems": report.systems,
        "candidates": report.candidates,
        "realized_count": len(report.realized),
        "realized": [format_family(f, report.n) for f in report.realized],
        "prefilter_failures_realized": report.prefilter_failures_realized,
        "condition_literal": tally(report.literal),
        "condition_existential": tally(report.existential),
    }


def parse_family(text: str) -> ExtensionFamily:
    """Header ``universe n``, then one extension per line as names over x1..xn.

    ``{}`` denotes the empty set.
    """
    lines = [(i, l.split("#", 1)[0].strip()) for i, l in enumerate(text.splitlines(), start=1)]
    lines = [(i, l) for i, l in lines if l]
    if not lines:
        raise FormatError("missing 'universe n' header")
    lineno, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "universe" or not parts[1].isdigit():
        raise FormatError(f"expected 'universe n', got {head!r}", lineno)
    n = int(parts[1])
    if n > 64:
        raise FormatError(f"universe of {n} exceeds the cap of 64", lineno)
    index = {f"x{j + 1}": j for j in range(n)}
    sets = []
    for lineno, line in lines[1:]:
        mask = 0
        if line != "{}":
            for tok in line.split(","):
                tok = tok.strip()
                if tok not in index:
                    raise FormatError(f"unknown argument {tok!r}", lineno)
                mask |= 1 << index[tok]
        if mask in sets:
            raise FormatError("duplicate extension", lineno)
        sets.append(mask)
    return ExtensionFamily(n, tuple(sets))


def format_family_file(S: ExtensionFamily) -> str:
    lines = [f"universe {S.n}"]
    for m in S:
        lines.append(",".join(f"x{j + 1}" for j in members(m)) or "{}")
    return "\n".join(lines) + "\n"
