"""Encodings of an extension family and the membership procedures that read them.

Schemes: ``tab`` (one n-bit row per extension), ``truthtable`` (2^n bits of
f_H), ``adjacency`` (n^2-bit attack matrix, stable semantics) and ``dnf``
(a formula of full minterms). Also the exact minimal formula length of tiny
boolean functions over {and, or, not}.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Optional, Union

import numpy as np

from .af import ArgumentSystem, ExtensionFamily, char_string, is_stable, pair_list
from .errors import CapExceeded, FormatError
from .semantics import enumerate_extensions, oracle_masks

MAGIC = b"PEENC"
VERSION = 1
SCHEME_CODES = {"tab": 1, "truthtable": 2, "adjacency": 3}
SEMANTICS_CODES = {"preferred": 1, "stable": 2}
TRUTHTABLE_CAP = 20
MINLEN_CAP_N = 4
DEFAULT_LITERAL_CAP = 16


@dataclass(frozen=True)
class Encoding:
    scheme: str
    semantics: str
    n: int
    bits: str
    row_count: int = 0

    def __post_init__(self):
        if self.scheme not in SCHEME_CODES:
            raise FormatError(f"unknown scheme {self.scheme!r}")
        if self.semantics not in SEMANTICS_CODES:
            raise FormatError(f"unknown semantics {self.semantics!r}")
        if set(self.bits) - {"0", "1"}:
            raise FormatError("payload must be a string of 0/1")
        expected = {
            "tab": self.n * self.row_count,
            "truthtable": 1 << self.n,
            "adjacency": self.n * self.n,
        }[self.scheme]
        if len(self.bits) != expected:
            raise FormatError(f"{self.scheme} payload has {len(self.bits)} bits, expected {expected}")
        if self.scheme != "tab" and self.row_count:
            raise FormatError("row_count is only used by tab")

    @property
    def size(self) -> int:
        return len(self.bits)

    def to_bytes(self) -> bytes:
        header = MAGIC + bytes([VERSION, SCHEME_CODES[self.scheme], SEMANTICS_CODES[self.semantics]])
        header += struct.pack(">II", self.n, self.row_count)
        padded = self.bits + "0" * (-len(self.bits) % 8)
        payload = bytes(int(padded[i:i + 8], 2) for i in range(0, len(padded), 8))
        return header + payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "Encoding":
        if len(data) < 16 or data[:5] != MAGIC:
            raise FormatError("not an encoding container")
        if data[5] != VERSION:
            raise FormatError(f"unsupported container version {data[5]}")
        scheme = {v: k for k, v in SCHEME_CODES.items()}.get(data[6])
        semantics = {v: k for k, v in SEMANTICS_CODES.items()}.get(data[7])
        if scheme is None or semantics is None:
            raise FormatError("bad scheme or semantics byte")
        n, r = struct.unpack(">II", data[8:16])
        length = {"tab": n * r, "truthtable": 1 << n, "adjacency": n * n}[scheme]
        payload = data[16:]
        if len(payload) != (length + 7) // 8:
            raise FormatError(f"payload has {len(payload)} bytes, expected {(length + 7) // 8}")
        bits = "".join(f"{b:08b}" for b in payload)
        if set(bits[length:]) - {"0"}:
            raise FormatError("nonzero padding bits")
        return cls(scheme, semantics, n, bits[:length], r)


def _check_scheme(e: Encoding, scheme: str):
    if e.scheme != scheme:
        raise FormatError(f"expected a {scheme} encoding, got {e.scheme}")


def _check_width(e: Encoding, S: int):
    if S < 0 or S >> e.n:
        raise FormatError(f"subset {S:#x} is wider than n={e.n}")


def encode_tab(H: ArgumentSystem, semantics: str = "preferred",
               budget: Optional[int] = None) -> Encoding:
    """Row i is the characteristic string of the i-th extension in canonical order."""
    family = enumerate_extensions(H, semantics, budget)
    return Encoding("tab", semantics, H.n, "".join(family.strings()), len(family))


def tab_lookup(e: Encoding, S: int) -> tuple[bool, int]:
    """Row scan; returns the answer and the number of bit comparisons made."""
    _check_scheme(e, "tab")
    _check_width(e, S)
    row = char_string(S, e.n)
    steps = 0
    for i in range(e.row_count):
        candidate = e.bits[i * e.n:(i + 1) * e.n]
        for a, b in zip(candidate, row):
            steps += 1
            if a != b:
                break
        else:
            return True, steps
    return False, steps


def decide_tab(e: Encoding, S: int) -> bool:
    return tab_lookup(e, S)[0]


def verify_tab(e: Encoding, H: ArgumentSystem) -> bool:
    """Deterministic verifier: re-encode and compare bit for bit."""
    if e.scheme != "tab" or e.n != H.n:
        return False
    return e == encode_tab(H, e.semantics)


def encode_adjacency(H: ArgumentSystem) -> Encoding:
    """Row-major n x n matrix; bit n*i + j is set iff argument i attacks argument j."""
    n = H.n
    bits = "".join("1" if H.targets[i] >> j & 1 else "0" for i in range(n) for j in range(n))
    return Encoding("adjacency", "stable", n, bits)


def adjacency_system(e: Encoding) -> ArgumentSystem:
    _check_scheme(e, "adjacency")
    n = e.n
    attacks = frozenset((i, j) for i in range(n) for j in range(n) if e.bits[n * i + j] == "1")
    return ArgumentSystem(tuple(f"x{i + 1}" for i in range(n)), attacks)


def decide_stable_member(e: Encoding, S: int) -> bool:
    """Rebuild the attack relation (n^2 bit reads) and test stability directly."""
    _check_width(e, S)
    return is_stable(adjacency_system(e), S)


def truth_table(H: ArgumentSystem, semantics: str = "preferred",
                budget: Optional[int] = None) -> Encoding:
    """Bit at index sum(2^(j-1) for x_j in S), i.e. at index S itself, is 1 iff S is in the family."""
    if H.n > TRUTHTABLE_CAP:
        raise CapExceeded(f"truth table needs n <= {TRUTHTABLE_CAP}")
    family = enumerate_extensions(H, semantics, budget)
    table = bytearray(b"0" * (1 << H.n))
    for S in family:
        table[S] = ord("1")
    return Encoding("truthtable", semantics, H.n, table.decode())


def decide_truthtable(e: Encoding, S: int) -> bool:
    _check_scheme(e, "truthtable")
    _check_width(e, S)
    return e.bits[S] == "1"


def table_int(e: Encoding) -> int:
    """Truth table as an int whose bit i is f at index i."""
    _check_scheme(e, "truthtable")
    return int(e.bits[::-1], 2) if e.bits else 0


def decide(e: Encoding, S: int) -> bool:
    if e.scheme == "tab":
        return decide_tab(e, S)
    if e.scheme == "adjacency":
        return decide_stable_member(e, S)
    return decide_truthtable(e, S)


# Formulas in negation-normal form


@dataclass(frozen=True)
class Lit:
    var: int  # 1-based
    positive: bool = True

    def evaluate(self, mask):
        return bool(mask >> (self.var - 1) & 1) == self.positive

    def leaves(self):
        return 1

    def __str__(self):
        return f"x{self.var}" if self.positive else f"¬x{self.var}"


@dataclass(frozen=True)
class Const:
    value: bool

    def evaluate(self, mask):
        return self.value

    def leaves(self):
        return 0

    def __str__(self):
        return "⊤" if self.value else "⊥"


@dataclass(frozen=True)
class And:
    left: "Node"
    right: "Node"

    def evaluate(self, mask):
        return self.left.evaluate(mask) and self.right.evaluate(mask)

    def leaves(self):
        return self.left.leaves() + self.right.leaves()

    def __str__(self):
        return f"({self.left} ∧ {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Node"
    right: "Node"

    def evaluate(self, mask):
        return self.left.evaluate(mask) or self.right.evaluate(mask)

    def leaves(self):
        return self.left.leaves() + self.right.leaves()

    def __str__(self):
        return f"({self.left} ∨ {self.right})"


Node = Union[Lit, Const, And, Or]


@dataclass(frozen=True)
class Formula:
    n: int
    root: Node

    @property
    def literal_count(self) -> int:
        return self.root.leaves()

    def evaluate(self, mask: int) -> bool:
        return self.root.evaluate(mask)

    def table(self) -> int:
        return sum(1 << S for S in range(1 << self.n) if self.evaluate(S))

    def __str__(self):
        return str(self.root)


def _fold(op, nodes: list, empty: Node) -> Node:
    return reduce(op, nodes) if nodes else empty


def dnf_formula(H: ArgumentSystem, semantics: str = "preferred",
                budget: Optional[int] = None) -> Formula:
    """Disjunction of full minterms, one per extension; an empty family gives constant false."""
    family = enumerate_extensions(H, semantics, budget)
    terms = [
        _fold(And, [Lit(j + 1, bool(S >> j & 1)) for j in range(H.n)], Const(True))
        for S in family
    ]
    return Formula(H.n, _fold(Or, terms, Const(False)))


def family_table(family: ExtensionFamily) -> int:
    return sum(1 << S for S in family)


class _MinLengthDP:
    """Functions reachable with exactly k literal occurrences, grown lazily.

    A function with minimal length k is g∧h or g∨h where g and h have minimal
    lengths i and k-i, so combining exact levels is enough.
    """

    def __init__(self, n: int):
        self.n = n
        self.size = 1 << (1 << n)
        self.length = np.zeros(self.size, dtype=np.int16)  # 0 = not reached yet
        self.levels: list[np.ndarray] = [np.zeros(0, dtype=np.int64)]
        points = range(1 << n)
        lits = set()
        for j in range(n):
            pos = sum(1 << S for S in points if S >> j & 1)
            lits |= {pos, (self.size - 1) ^ pos}
        first = np.array(sorted(lits), dtype=np.int64)
        self.length[first] = 1
        self.levels.append(first)
        self.found = len(first)

    def grow(self):
        k = len(self.levels)
        hit = np.zeros(self.size, dtype=bool)
        for i in range(1, k // 2 + 1):
            A, B = self.levels[i], self.levels[k - i]
            for g in A:
                hit[g & B] = True
                hit[g | B] = True
        hit &= self.length == 0
        cand = np.flatnonzero(hit).astype(np.int64)
        self.length[cand] = k
        self.found += len(cand)
        self.levels.append(cand)

    def lookup(self, table: int, cap: int) -> Optional[int]:
        while self.length[table] == 0 and len(self.levels) <= cap and self.found < self.size:
            self.grow()
        k = int(self.length[table])
        return k if 0 < k <= cap else None


_dp_cache: dict[int, _MinLengthDP] = {}


def min_formula_length(table: int, n: int, cap: int = DEFAULT_LITERAL_CAP) -> Optional[int]:
    """Exact minimal number of literal occurrences of a formula over {∧, ∨, ¬}.

    ``table`` has bit S set iff f is true at the point whose set bits are the
    true variables. Returns None if no formula of length <= cap exists.
    """
    if not 0 <= n <= MINLEN_CAP_N:
        raise CapExceeded(f"minimal formula length needs n <= {MINLEN_CAP_N}")
    if table < 0 or table >> (1 << n):
        raise FormatError(f"table {table:#x} too wide for {n} variables")
    if n == 0:
        return None
    if n not in _dp_cache:
        _dp_cache[n] = _MinLengthDP(n)
    return _dp_cache[n].lookup(table, cap)


def preferred_tables(n: int, semantics: str = "preferred") -> dict[int, int]:
    """Distinct f_H over all 2^(n(n-1)) systems on n arguments -> first relation index."""
    out: dict[int, int] = {}
    for r in range(1 << len(pair_list(n))):
        H = ArgumentSystem.from_mask_pairs(n, r)
        t = sum(1 << S for S in oracle_masks(H, semantics))
        out.setdefault(t, r)
    return out


def compute_L_of_n(n: int, semantics: str = "preferred", cap: int = DEFAULT_LITERAL_CAP) -> int:
    if not 1 <= n <= 3:
        raise CapExceeded("L(n) is only computed for 1 <= n <= 3")
    lengths = [min_formula_length(t, n, cap) for t in preferred_tables(n, semantics)]
    if any(k is None for k in lengths):
        raise CapExceeded(f"some f_H needs more than {cap} literals")
    return max(lengths)


def size_report(systems: Iterable[tuple[str, ArgumentSystem]],
                budget: Optional[int] = None) -> list[dict]:
    """Encoding size and membership-decision cost per system and scheme.

    The query workload is ∅, the full set and every singleton.
    """
    records = []
    for name, H in systems:
        queries = [0, H.full] + [1 << j for j in range(H.n)]
        tab = encode_tab(H, "preferred", budget)
        steps = sum(tab_lookup(tab, S)[1] for S in queries)
        records.append(dict(system=name, n=H.n, scheme="tab", semantics="preferred",
                            rows=tab.row_count, bits=tab.size, steps=steps))
        adj = encode_adjacency(H)
        records.append(dict(system=name, n=H.n, scheme="adjacency", semantics="stable",
                            rows=0, bits=adj.size, steps=len(queries) * H.n * H.n))
        if H.n <= TRUTHTABLE_CAP:
            tt = truth_table(H, "preferred", budget)
            records.append(dict(system=name, n=H.n, scheme="truthtable", semantics="preferred",
                                rows=0, bits=tt.size, steps=len(queries) * H.n))
    return records
