"""Extension enumeration and acceptance queries.

Two independent routes: :func:`oracle_extensions` scans every subset (vectorised
with numpy), while the search functions run a depth-first search over
conflict-free supersets with pruning. Tests hold the second to the first.
"""
from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .af import (
    ArgumentSystem,
    ExtensionFamily,
    _check_index,
    _check_set,
    full_mask,
    is_admissible,
    is_conflict_free,
    members,
)
from .errors import BudgetExceeded, CapExceeded, FormatError

ORACLE_CAP = 22


def _subset_unions(vectors, n):
    """out[S] = OR of vectors[j] over j in S, for every S < 2^n."""
    out = np.zeros(1 << n, dtype=np.uint64)
    for j in range(n):
        half = 1 << j
        out[half:2 * half] = out[:half] | np.uint64(vectors[j])
    return out


def oracle_masks(H: ArgumentSystem, semantics: str) -> list[int]:
    n = H.n
    if n > ORACLE_CAP:
        raise CapExceeded(f"oracle needs n <= {ORACLE_CAP}, got {n}")
    size = 1 << n
    S = np.arange(size, dtype=np.uint64)
    defeated = _subset_unions(H.targets, n)
    attackers = _subset_unions(H.attackers, n)
    cf = (defeated & S) == 0
    if semantics == "stable":
        keep = cf & ((S | defeated) == np.uint64(full_mask(n)))
    else:
        adm = cf & ((attackers & ~defeated) == 0)
        if semantics == "admissible":
            keep = adm
        elif semantics == "preferred":
            # up[m]: some admissible set contains m (zeta transform over supersets)
            up = adm.copy()
            for j in range(n):
                view = up.reshape(-1, 2, 1 << j)
                view[:, 0, :] |= view[:, 1, :]
            strict = np.zeros(size, dtype=bool)
            for j in range(n):
                sv = strict.reshape(-1, 2, 1 << j)
                uv = up.reshape(-1, 2, 1 << j)
                sv[:, 0, :] |= uv[:, 1, :]
            keep = adm & ~strict
        else:
            raise FormatError(f"unknown semantics {semantics!r}")
    return [int(m) for m in np.flatnonzero(keep)]


def oracle_extensions(H: ArgumentSystem, semantics: str) -> ExtensionFamily:
    """Exact family by exhaustive scan of all 2^n subsets (n <= 22)."""
    return ExtensionFamily(H.n, tuple(oracle_masks(H, semantics)), semantics)


class _Budget:
    def __init__(self, limit: Optional[int]):
        self.limit = limit
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.limit is not None and self.nodes > self.limit:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


def admissible_supersets(H: ArgumentSystem, base: int = 0,
                         budget: Optional[int] = None) -> Iterator[int]:
    """Yield every admissible superset of ``base`` exactly once.

    ``base`` must be conflict-free. Arguments outside ``base`` are decided in
    index order, "in" before "out". A branch is cut once some undefeated
    attacker of the current set has no remaining possible counter-attacker.
    """
    if not is_conflict_free(H, base):
        return
    order = [j for j in range(H.n) if not base >> j & 1]
    rest_after = [0] * (len(order) + 1)
    for k in range(len(order) - 1, -1, -1):
        rest_after[k] = rest_after[k + 1] | 1 << order[k]
    targets, attackers = H.targets, H.attackers
    counter = _Budget(budget)

    def rec(k, IN, defeated, threats):
        counter.tick()
        open_threats = threats & ~defeated
        if open_threats:
            possible = IN | (rest_after[k] & ~(defeated | threats))
            for y in members(open_threats):
                if not attackers[y] & possible:
                    return
        if k == len(order):
            if not open_threats:
                yield IN
            return
        x = order[k]
        bit = 1 << x
        if not (defeated | threats) & bit:
            yield from rec(k + 1, IN | bit, defeated | targets[x], threats | attackers[x])
        yield from rec(k + 1, IN, defeated, threats)

    yield from rec(0, base, H.attacked_by(base), H.attackers_of(base))


def stable_supersets(H: ArgumentSystem, base: int = 0,
                     budget: Optional[int] = None) -> Iterator[int]:
    """Yield every stable extension containing ``base`` exactly once.

    In/out labelling search: an "out" argument must end up attacked by an "in"
    argument, so a branch dies once some out argument has no possible attacker.
    """
    if not is_conflict_free(H, base):
        return
    order = [j for j in range(H.n) if not base >> j & 1]
    rest_after = [0] * (len(order) + 1)
    for k in range(len(order) - 1, -1, -1):
        rest_after[k] = rest_after[k + 1] | 1 << order[k]
    targets, attackers = H.targets, H.attackers
    full = H.full
    counter = _Budget(budget)

    def rec(k, IN, defeated, threats):
        counter.tick()
        rest = rest_after[k]
        pending = (full & ~IN & ~rest) & ~defeated
        if pending:
            possible = IN | (rest & ~(defeated | threats))
            for y in members(pending):
                if not attackers[y] & possible:
                    return
        if k == len(order):
            if (IN | defeated) == full:
                yield IN
            return
        x = order[k]
        bit = 1 << x
        if not (defeated | threats) & bit:
            yield from rec(k + 1, IN | bit, defeated | targets[x], threats | attackers[x])
        yield from rec(k + 1, IN, defeated, threats)

    yield from rec(0, base, H.attacked_by(base), H.attackers_of(base))


def maximal_only(masks, n: int) -> list[int]:
    """Keep the ⊆-maximal members of a collection of subsets."""
    by_size: dict[int, list[int]] = {}
    for m in set(masks):
        by_size.setdefault(bin(m).count("1"), []).append(m)
    kept: list[int] = []
    kept_arr = np.zeros(0, dtype=np.uint64)
    for size in sorted(by_size, reverse=True):
        level = by_size[size]
        if kept_arr.size:
            cand = np.array(level, dtype=np.uint64)
            covered = np.zeros(len(level), dtype=bool)
            neg = ~kept_arr
            for start in range(0, len(cand), 256):
                block = cand[start:start + 256, None] & neg[None, :]
                covered[start:start + 256] = (block == 0).any(axis=1)
            level = [m for m, c in zip(level, covered) if not c]
        kept.extend(level)
        kept_arr = np.array(kept, dtype=np.uint64)
    return kept


def enumerate_admissible(H: ArgumentSystem, budget: Optional[int] = None) -> ExtensionFamily:
    return ExtensionFamily(H.n, tuple(admissible_supersets(H, 0, budget)), "admissible")


def enumerate_preferred(H: ArgumentSystem, budget: Optional[int] = None) -> ExtensionFamily:
    adm = list(admissible_supersets(H, 0, budget))
    return ExtensionFamily(H.n, tuple(maximal_only(adm, H.n)), "preferred")


def enumerate_stable(H: ArgumentSystem, budget: Optional[int] = None) -> ExtensionFamily:
    return ExtensionFamily(H.n, tuple(stable_supersets(H, 0, budget)), "stable")


def enumerate_extensions(H: ArgumentSystem, semantics: str,
                         budget: Optional[int] = None) -> ExtensionFamily:
    if semantics == "preferred":
        return enumerate_preferred(H, budget)
    if semantics == "stable":
        return enumerate_stable(H, budget)
    if semantics == "admissible":
        return enumerate_admissible(H, budget)
    raise FormatError(f"unknown semantics {semantics!r}")


def is_preferred(H: ArgumentSystem, S: int, budget: Optional[int] = None) -> bool:
    """S is admissible and no admissible strict superset exists.

    Maximality is checked by a complete superset search; adding one argument
    at a time is not enough, since two arguments may only defend each other.
    """
    _check_set(H, S)
    if not is_admissible(H, S):
        return False
    for T in admissible_supersets(H, S, budget):
        if T != S:
            return False
    return True


def credulous(H: ArgumentSystem, x: int, budget: Optional[int] = None) -> bool:
    """Some preferred extension contains x, i.e. some admissible set does."""
    _check_index(H, x)
    return next(admissible_supersets(H, 1 << x, budget), None) is not None


def sceptical(H: ArgumentSystem, x: int, budget: Optional[int] = None) -> bool:
    _check_index(H, x)
    return all(S >> x & 1 for S in enumerate_preferred(H, budget))


def is_coherent(H: ArgumentSystem, budget: Optional[int] = None) -> bool:
    return enumerate_preferred(H, budget).as_set() == enumerate_stable(H, budget).as_set()
