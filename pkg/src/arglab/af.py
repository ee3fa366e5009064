"""Argument systems, subsets as bitmasks, and the basic acceptability predicates.

A subset of arguments is a plain ``int``: bit ``j`` is set iff argument ``j``
(0-based, i.e. ``x_{j+1}``) is a member. Attacks are stored attacker-first, so
``(a, b)`` always means "a attacks b".
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FormatError

MAX_ARGS = 64
NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")
SEMANTICS = ("preferred", "stable", "admissible")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def members(mask: int):
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def char_string(mask: int, n: int) -> str:
    """Characteristic string b_1...b_n of a subset."""
    return "".join("1" if mask >> j & 1 else "0" for j in range(n))


def canonical_sort(masks: Iterable[int], n: int) -> list[int]:
    return sorted(masks, key=lambda m: char_string(m, n))


@dataclass(frozen=True)
class ArgumentSystem:
    args: tuple[str, ...]
    attacks: frozenset[tuple[int, int]]
    attackers: tuple[int, ...] = field(init=False, repr=False, compare=False)
    targets: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        args = tuple(self.args)
        attacks = frozenset((int(a), int(b)) for a, b in self.attacks)
        n = len(args)
        if n > MAX_ARGS:
            raise FormatError(f"{n} arguments exceeds the cap of {MAX_ARGS}")
        if len(set(args)) != n:
            raise FormatError("argument names must be unique")
        for name in args:
            if not NAME_RE.match(name):
                raise FormatError(f"bad argument name {name!r}")
        attackers = [0] * n
        targets = [0] * n
        for a, b in attacks:
            if not (0 <= a < n and 0 <= b < n):
                raise FormatError(f"attack ({a},{b}) out of range for n={n}")
            if a == b:
                raise FormatError(f"self-attack on {args[a]!r}")
            attackers[b] |= 1 << a
            targets[a] |= 1 << b
        object.__setattr__(self, "args", args)
        object.__setattr__(self, "attacks", attacks)
        object.__setattr__(self, "attackers", tuple(attackers))
        object.__setattr__(self, "targets", tuple(targets))

    @property
    def n(self) -> int:
        return len(self.args)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @classmethod
    def from_names(cls, args: Sequence[str], attacks: Iterable[tuple[str, str]]):
        index = {name: i for i, name in enumerate(args)}
        return cls(tuple(args), frozenset((index[a], index[b]) for a, b in attacks))

    @classmethod
    def from_mask_pairs(cls, n: int, relation: int, prefix: str = "x"):
        """System on ``x1..xn`` whose attacks are the set bits of ``relation``
        over :func:`pair_list` order."""
        pairs = pair_list(n)
        attacks = frozenset(pairs[k] for k in members(relation))
        return cls(tuple(f"{prefix}{i + 1}" for i in range(n)), attacks)

    def index(self, name: str) -> int:
        try:
            return self.args.index(name)
        except ValueError:
            raise FormatError(f"unknown argument {name!r}") from None

    def set_of(self, names: Iterable[str]) -> int:
        mask = 0
        for name in names:
            mask |= 1 << self.index(name)
        return mask

    def parse_set(self, text: str) -> int:
        """Parse a comma-separated name list; the empty string is the empty set."""
        names = [t.strip() for t in text.split(",")] if text.strip() else []
        if any(not t for t in names):
            raise FormatError(f"empty name in set {text!r}")
        return self.set_of(names)

    def names(self, mask: int) -> list[str]:
        return [self.args[j] for j in members(mask)]

    def attacked_by(self, R: int) -> int:
        """Mask of all arguments attacked by some member of ``R``."""
        out = 0
        for r in members(R):
            out |= self.targets[r]
        return out

    def attackers_of(self, S: int) -> int:
        out = 0
        for s in members(S):
            out |= self.attackers[s]
        return out

    def reversed(self) -> "ArgumentSystem":
        return ArgumentSystem(self.args, frozenset((b, a) for a, b in self.attacks))


def pair_list(n: int) -> list[tuple[int, int]]:
    """Ordered pairs (i, j), i != j, sorted by (i, j): the fixed relation scan order."""
    return [(i, j) for i in range(n) for j in range(n) if i != j]


def _check_set(H: ArgumentSystem, S: int):
    if S < 0 or S >> H.n:
        raise FormatError(f"subset {S:#x} is wider than n={H.n}")


def _check_index(H: ArgumentSystem, x: int):
    if not 0 <= x < H.n:
        raise IndexError(f"argument index {x} out of range for n={H.n}")


def is_attacked(H: ArgumentSystem, R: int, s: int) -> bool:
    _check_index(H, s)
    _check_set(H, R)
    return bool(H.attackers[s] & R)


def is_acceptable(H: ArgumentSystem, x: int, S: int) -> bool:
    _check_index(H, x)
    _check_set(H, S)
    return H.attackers[x] & ~H.attacked_by(S) == 0


def is_conflict_free(H: ArgumentSystem, S: int) -> bool:
    _check_set(H, S)
    return H.attacked_by(S) & S == 0


def is_admissible(H: ArgumentSystem, S: int) -> bool:
    _check_set(H, S)
    defeated = H.attacked_by(S)
    return defeated & S == 0 and H.attackers_of(S) & ~defeated == 0


def is_stable(H: ArgumentSystem, S: int) -> bool:
    _check_set(H, S)
    defeated = H.attacked_by(S)
    return defeated & S == 0 and (S | defeated) == H.full


@dataclass(frozen=True)
class ExtensionFamily:
    """A canonically ordered, duplicate-free list of subsets of an n-argument universe.

    ``semantics`` is one of ``SEMANTICS`` or ``None`` for an arbitrary candidate
    family (e.g. a REALISABLE instance). Preferred families are checked to be
    non-empty antichains on construction.
    """

    n: int
    members: tuple[int, ...]
    semantics: Optional[str] = None

    def __post_init__(self):
        ms = list(self.members)
        for m in ms:
            if m < 0 or m >> self.n:
                raise FormatError(f"member {m:#x} is wider than n={self.n}")
        if len(set(ms)) != len(ms):
            raise FormatError("duplicate family member")
        if self.semantics is not None and self.semantics not in SEMANTICS:
            raise FormatError(f"unknown semantics {self.semantics!r}")
        object.__setattr__(self, "members", tuple(canonical_sort(ms, self.n)))
        if self.semantics == "preferred":
            if not ms:
                raise FormatError("a preferred family is never empty")
            if not is_antichain(ms):
                raise FormatError("preferred extensions must be pairwise incomparable")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, S):
        return S in self.members

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def strings(self) -> list[str]:
        return [char_string(m, self.n) for m in self.members]

    def named(self, H: ArgumentSystem) -> list[list[str]]:
        return [H.names(m) for m in self.members]


def is_antichain(masks: Sequence[int]) -> bool:
    ms = list(dict.fromkeys(masks))
    if len(ms) < 64:
        return not any(a & b in (a, b) for i, a in enumerate(ms) for b in ms[i + 1:])
    arr = np.array(ms, dtype=np.uint64)
    for start in range(0, len(arr), 256):
        chunk = arr[start:start + 256, None]
        subset = (chunk & ~arr[None, :]) == 0
        # each member is a subset of itself; anything more is a comparable pair
        if (subset.sum(axis=1) > 1).any():
            return False
    return True


_STMT_RE = re.compile(r"\s*(arg|att)\s*\(([^()]*)\)\s*\.")


def parse_af(text: str) -> ArgumentSystem:
    """Parse the ``arg(a). att(a,b).`` text format.

    Statements may share a line; ``#`` starts a comment. Argument order is
    first-declaration order, and attacks may name arguments declared later.
    """
    args: list[str] = []
    seen: dict[str, int] = {}
    raw_attacks: list[tuple[str, str, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        pos = 0
        while pos < len(body):
            m = _STMT_RE.match(body, pos)
            if not m:
                raise FormatError(f"malformed statement {body[pos:].strip()!r}", lineno)
            kind, inner = m.group(1), [t.strip() for t in m.group(2).split(",")]
            pos = m.end()
            if kind == "arg":
                if len(inner) != 1 or not NAME_RE.match(inner[0]):
                    raise FormatError(f"bad arg declaration {m.group(0).strip()!r}", lineno)
                if inner[0] in seen:
                    raise FormatError(f"duplicate argument {inner[0]!r}", lineno)
                seen[inner[0]] = len(args)
                args.append(inner[0])
            else:
                if len(inner) != 2 or not all(NAME_RE.match(t) for t in inner):
                    raise FormatError(f"bad att declaration {m.group(0).strip()!r}", lineno)
                if inner[0] == inner[1]:
                    raise FormatError(f"self-attack on {inner[0]!r}", lineno)
                raw_attacks.append((inner[0], inner[1], lineno))
            if len(args) > MAX_ARGS:
                raise FormatError(f"more than {MAX_ARGS} arguments", lineno)
    attacks = set()
    for a, b, lineno in raw_attacks:
        for name in (a, b):
            if name not in seen:
                raise FormatError(f"attack references undeclared argument {name!r}", lineno)
        attacks.add((seen[a], seen[b]))
    return ArgumentSystem(tuple(args), frozenset(attacks))


def serialize_af(H: ArgumentSystem) -> str:
    lines = [f"arg({name})." for name in H.args]
    pairs = sorted((H.args[a], H.args[b]) for a, b in H.attacks)
    lines += [f"att({a},{b})." for a, b in pairs]
    return "".join(line + "\n" for line in lines)


def read_af(path) -> ArgumentSystem:
    with open(path) as fh:
        return parse_af(fh.read())
