"""Exact coefficient fields and dense matrix kernels.

Supported fields: prime fields GF(p), finite extensions GF(p^e) presented as
GF(p)[s]/(f) with a deterministic modulus, and rational function fields
GF(p)(t1..tm).  Everything downstream consumes these through `field_make` and
the Matrix type.
"""

from __future__ import annotations

from .finite import FiniteField, get_finite_field
from .function import FunctionField, RatFunc
from .matrix import (
    JordanType,
    Matrix,
    bareiss_rank,
    embedded,
    fraction_rank,
    jordan_type,
    lincomb,
    mat_nullspace,
    mat_rank,
    pencil_singular_scan,
)

__all__ = [
    "FiniteField",
    "FunctionField",
    "RatFunc",
    "JordanType",
    "Matrix",
    "field_make",
    "get_finite_field",
    "bareiss_rank",
    "embedded",
    "fraction_rank",
    "jordan_type",
    "lincomb",
    "mat_nullspace",
    "mat_rank",
    "pencil_singular_scan",
]


def field_make(p: int, kind: str = "prime", *, degree: int | None = None,
               modulus=None, variables=None):
    """Build a coefficient field descriptor.

    kind = "prime":          GF(p)
    kind = "extension":      GF(p^degree) as GF(p)[s]/(f); f may be supplied,
                             otherwise the deterministic least irreducible of
                             that degree is chosen
    kind = "function-field": GF(p)(variables...)

    Extensions always sit directly over the prime field; no towers.
    """
    if kind == "prime":
        return get_finite_field(p, 1)
    if kind == "extension":
        if degree is None and modulus is not None:
            degree = len(modulus) - 1
        if degree is None or degree < 1:
            raise ValueError("extension fields need a positive degree")
        if modulus is None:
            if degree == 1:
                return get_finite_field(p, 1)
            return get_finite_field(p, degree)
        return FiniteField(p, degree, modulus=list(modulus))
    if kind == "function-field":
        if not variables:
            raise ValueError("function fields need variable names")
        return FunctionField(p, variables)
    raise ValueError(f"unknown field kind {kind!r}")
