"""Type-directed partial evaluation for a simply typed lambda calculus with
sums and the delimited control operators shift and reset.

The public entry points are :func:`tdpe_cbv`, :func:`tdpe_cbn` and
:func:`extract_disjunct`; terms are built with :mod:`tdpe.syntax` and
checked with :func:`check`.
"""

from .normalizer import (
    Left,
    NormalizationError,
    OpenTermError,
    Right,
    TdpeResult,
    extract_disjunct,
    reflect,
    reify,
    tdpe,
    tdpe_cbn,
    tdpe_cbv,
)
from .semantics import Strategy
from .typecheck import Derivation, Judgment, TypeCheckError, check, synth

__all__ = [
    "Derivation",
    "Judgment",
    "Left",
    "NormalizationError",
    "OpenTermError",
    "Right",
    "Strategy",
    "TdpeResult",
    "TypeCheckError",
    "check",
    "extract_disjunct",
    "reflect",
    "reify",
    "synth",
    "tdpe",
    "tdpe_cbn",
    "tdpe_cbv",
]
