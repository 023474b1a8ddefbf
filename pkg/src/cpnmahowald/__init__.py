"""Exact computations for C_{p^n}-equivariant stable stems in representation
degrees: Burnside rings, Adams-fixed K-theory lattices, and Mahowald invariants."""

from .burnside import BurnsideElement
from .errors import CpnError
from .exactint import INFINITE, Lattice
from .ktheory import GradedKUClass, oracle_complex_fixed
from .mahowald import f_value, mahowald_invariant
from .repring import GroupSpec, RUElement

__all__ = [
    "BurnsideElement",
    "CpnError",
    "GradedKUClass",
    "GroupSpec",
    "INFINITE",
    "Lattice",
    "RUElement",
    "f_value",
    "mahowald_invariant",
    "oracle_complex_fixed",
]
