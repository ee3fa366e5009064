"""The four decision problems PREF-EXT, STAB-EXT and their variants that come
with an acceptance vector (which arguments are credulously accepted).

An acceptance vector is a tuple of bools in argument order.
"""
from __future__ import annotations

from typing import Optional, Sequence

from .af import ArgumentSystem, _check_set
from .errors import FormatError, InvalidAlpha
from .semantics import credulous, is_preferred, stable_supersets

AcceptanceVector = tuple


def decide_pref_ext(H: ArgumentSystem, S: int, budget: Optional[int] = None) -> bool:
    return is_preferred(H, S, budget)


def decide_stab_ext(H: ArgumentSystem, S: int, budget: Optional[int] = None) -> bool:
    """Can S be expanded (possibly trivially) to a stable extension?"""
    _check_set(H, S)
    return next(stable_supersets(H, S, budget), None) is not None


def compute_alpha(H: ArgumentSystem, budget: Optional[int] = None) -> AcceptanceVector:
    return tuple(credulous(H, i, budget) for i in range(H.n))


def _check_width(H, alpha):
    if len(alpha) != H.n:
        raise FormatError(f"acceptance vector has {len(alpha)} entries, system has {H.n}")


def validate_alpha(H: ArgumentSystem, alpha: Sequence[bool]) -> bool:
    _check_width(H, alpha)
    return tuple(bool(a) for a in alpha) == compute_alpha(H)


def _unaccepted(alpha) -> int:
    return sum(1 << i for i, a in enumerate(alpha) if not a)


def _prepare(H, S, alpha, trust):
    _check_set(H, S)
    _check_width(H, alpha)
    if not trust and not validate_alpha(H, alpha):
        raise InvalidAlpha("acceptance vector does not match the credulously accepted arguments")


def pref_ext_inf(H: ArgumentSystem, S: int, alpha: Sequence[bool], trust: bool = True,
                 budget: Optional[int] = None) -> tuple[bool, str]:
    """PREF-EXT-INF answer together with the route that produced it."""
    _prepare(H, S, alpha, trust)
    if S == 0:
        # ∅ is preferred iff no argument is credulously accepted
        return not any(alpha), "empty-set-fast-path"
    if S & _unaccepted(alpha):
        return False, "unaccepted-member-fast-path"
    return decide_pref_ext(H, S, budget), "search"


def stab_ext_inf(H: ArgumentSystem, S: int, alpha: Sequence[bool], trust: bool = True,
                 budget: Optional[int] = None) -> tuple[bool, str]:
    _prepare(H, S, alpha, trust)
    if H.n and not any(alpha):
        # PE = {∅} and ∅ is not stable when n >= 1
        return False, "all-false-fast-path"
    if S & _unaccepted(alpha):
        return False, "unaccepted-member-fast-path"
    return decide_stab_ext(H, S, budget), "search"


def decide_pref_ext_inf(H: ArgumentSystem, S: int, alpha: Sequence[bool], trust: bool = True,
                        budget: Optional[int] = None) -> bool:
    return pref_ext_inf(H, S, alpha, trust, budget)[0]


def decide_stab_ext_inf(H: ArgumentSystem, S: int, alpha: Sequence[bool], trust: bool = True,
                        budget: Optional[int] = None) -> bool:
    return stab_ext_inf(H, S, alpha, trust, budget)[0]


def parse_alpha(H: ArgumentSystem, text: str) -> AcceptanceVector:
    """Parse ``name=true|false`` lines; they must cover every argument exactly once."""
    values: dict[str, bool] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = (t.strip() for t in line.partition("="))
        if not sep or value not in ("true", "false"):
            raise FormatError(f"expected name=true|false, got {line!r}", lineno)
        if name in values:
            raise FormatError(f"duplicate entry for {name!r}", lineno)
        if name not in H.args:
            raise FormatError(f"unknown argument {name!r}", lineno)
        values[name] = value == "true"
    missing = [a for a in H.args if a not in values]
    if missing:
        raise FormatError(f"acceptance vector missing {', '.join(missing)}")
    return tuple(values[a] for a in H.args)


def format_alpha(H: ArgumentSystem, alpha: Sequence[bool]) -> str:
    _check_width(H, alpha)
    pairs = sorted(zip(H.args, alpha))
    return "".join(f"{name}={'true' if a else 'false'}\n" for name, a in pairs)
