"""Deterministic system families: extremal cases, fixtures and seeded random graphs."""
from __future__ import annotations

from .af import MAX_ARGS, ArgumentSystem, pair_list
from .errors import CapExceeded, FormatError

MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64; fixed so corpora are bit-identical across platforms."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound) by modulo reduction."""
        return self.next() % bound


def probability_threshold(p: float) -> int:
    if not 0.0 <= p <= 1.0:
        raise FormatError(f"probability {p} outside [0, 1]")
    # p * 2^64 is exact in binary floating point; p = 1 saturates to "always"
    return int(p * 2.0 ** 64)


def _names(n):
    return tuple(f"x{i + 1}" for i in range(n))


def _cap(n):
    if n > MAX_ARGS:
        raise CapExceeded(f"{n} arguments exceeds the cap of {MAX_ARGS}")


def gen_k3(t: int) -> ArgumentSystem:
    """t disjoint triangles, every pair inside a triangle attacking both ways: 3^t preferred extensions."""
    if t < 1:
        raise FormatError("gen_k3 needs t >= 1")
    _cap(3 * t)
    attacks = set()
    for b in range(0, 3 * t, 3):
        for i in range(b, b + 3):
            for j in range(b, b + 3):
                if i != j:
                    attacks.add((i, j))
    return ArgumentSystem(_names(3 * t), frozenset(attacks))


def gen_isolated(k: int) -> ArgumentSystem:
    if k < 0:
        raise FormatError("gen_isolated needs k >= 0")
    _cap(k)
    return ArgumentSystem(_names(k), frozenset())


def gen_cycle(n: int) -> ArgumentSystem:
    """Directed cycle x1 -> x2 -> ... -> xn -> x1."""
    if n < 2:
        raise FormatError("gen_cycle needs n >= 2")
    _cap(n)
    return ArgumentSystem(_names(n), frozenset((i, (i + 1) % n) for i in range(n)))


def gen_random(n: int, p: float, seed: int) -> ArgumentSystem:
    """Each ordered pair (i, j), i != j, in (i, j) order, attacks with probability p."""
    if n < 0:
        raise FormatError("gen_random needs n >= 0")
    _cap(n)
    threshold = probability_threshold(p)
    rng = SplitMix64(seed)
    attacks = frozenset(pair for pair in pair_list(n) if rng.next() < threshold)
    return ArgumentSystem(_names(n), attacks)
