"""Dung-style argument systems: semantics, decision problems, encodings,
a 3-CNF reduction harness and a REALISABLE survey."""
from .af import (
    ArgumentSystem,
    ExtensionFamily,
    is_acceptable,
    is_admissible,
    is_attacked,
    is_conflict_free,
    is_stable,
    parse_af,
    serialize_af,
)
from .decisions import (
    compute_alpha,
    decide_pref_ext,
    decide_pref_ext_inf,
    decide_stab_ext,
    decide_stab_ext_inf,
    validate_alpha,
)
from .errors import BudgetExceeded, CapExceeded, FormatError, InvalidAlpha
from .semantics import (
    credulous,
    enumerate_preferred,
    enumerate_stable,
    is_coherent,
    is_preferred,
    oracle_extensions,
    sceptical,
)

__all__ = [
    "ArgumentSystem", "ExtensionFamily", "parse_af", "serialize_af",
    "is_attacked", "is_acceptable", "is_conflict_free", "is_admissible", "is_stable",
    "oracle_extensions", "enumerate_preferred", "enumerate_stable", "is_preferred",
    "credulous", "sceptical", "is_coherent",
    "decide_pref_ext", "decide_stab_ext", "compute_alpha", "validate_alpha",
    "decide_pref_ext_inf", "decide_stab_ext_inf",
    "FormatError", "CapExceeded", "BudgetExceeded", "InvalidAlpha",
]
__version__ = "0.1.0"
