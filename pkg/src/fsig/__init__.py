"""Exact F-signature functions and covariant-module multiplicities of quotient singularities."""

from __future__ import annotations

from .cyclic import (
    CyclicSingularity,
    all_multiplicities,
    brute_force_mult,
    fsignature,
    multiplicity_qpoly,
    validate,
)
from .errors import CapExceeded, FsigError, InconsistentGroupData, InvalidInput
from .exactnum import Cyclotomic, Rational
from .group import GroupSpec, cyclic_to_group, fsignature_qpoly_general, load_spec, multiplicity_general
from .qpoly import QuasiPolynomial

__all__ = [
    "CapExceeded",
    "Cyclotomic",
    "CyclicSingularity",
    "FsigError",
    "GroupSpec",
    "InconsistentGroupData",
    "InvalidInput",
    "QuasiPolynomial",
    "Rational",
    "all_multiplicities",
    "brute_force_mult",
    "cyclic_to_group",
    "fsignature",
    "fsignature_qpoly_general",
    "load_spec",
    "multiplicity_general",
    "multiplicity_qpoly",
    "validate",
]
