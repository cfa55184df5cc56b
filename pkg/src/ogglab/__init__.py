"""Exact computations with Brandt modules, Hecke algebras and Ogg's conjecture."""

from .brandt import BrandtModule, eichler_mass
from .hecke import build_hecke_algebra, eisenstein_quotient, generation_check, sturm_bound
from .linalg import IntMatrix, Lattice, charpoly, det, hnf, kernel_lattice, snf
from .moduleiso import (
    IsoCertificate,
    Obstruction,
    conjugacy_check,
    find_unimodular,
    freeness_test,
    hom_lattice,
    module_isomorphism,
    verify_certificate,
)

__all__ = [
    "BrandtModule",
    "IntMatrix",
    "IsoCertificate",
    "Lattice",
    "Obstruction",
    "build_hecke_algebra",
    "charpoly",
    "conjugacy_check",
    "det",
    "eichler_mass",
    "eisenstein_quotient",
    "find_unimodular",
    "freeness_test",
    "generation_check",
    "hnf",
    "hom_lattice",
    "kernel_lattice",
    "module_isomorphism",
    "snf",
    "sturm_bound",
    "verify_certificate",
]
