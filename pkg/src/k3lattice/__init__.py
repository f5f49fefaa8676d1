"""Exact arithmetic for even lattices, discriminant forms and the K3
degeneration tables built on them."""

from .kernels import BACKEND
from .lattice import (
    Lattice,
    LatticeError,
    Sublattice,
    direct_sum,
    discriminant_group,
    orthogonal_complement,
    primitive_closure,
    signature,
)
from .linalg import IntMatrix, hermite_normal_form, left_kernel, saturate, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "IntMatrix",
    "hermite_normal_form",
    "smith_normal_form",
    "saturate",
    "left_kernel",
    "Lattice",
    "LatticeError",
    "Sublattice",
    "direct_sum",
    "discriminant_group",
    "orthogonal_complement",
    "primitive_closure",
    "signature",
]
