"""Exact finite-dimensional Hopf algebra computations: corings, Doi-Koppinen
Hopf modules, Galois maps, the structure-theorem functors and H^1."""

from .exactla import GF, QQ, Field, Matrix
from .algebra import Algebra, Bimodule, tensor_over
from .coalg import Bialgebra, Coalgebra, ComoduleAlgebra, HopfAlgebra, ModuleCoalgebra, NoAntipode, antipode
from .coring import Coring, CoringComodule, conjugate_coring, sweedler_coring, universal_factor
from .hopfmod import DKHopfModule, BCBimodule, canonical_map, fthm_report, functor_A, functor_B
from .hilbert90 import Cocycle, GroupAction, h1_classes
from .library import builtin, BUILTINS

__all__ = [
    "GF", "QQ", "Field", "Matrix", "Algebra", "Bimodule", "tensor_over",
    "Bialgebra", "Coalgebra", "ComoduleAlgebra", "HopfAlgebra", "ModuleCoalgebra", "NoAntipode", "antipode",
    "Coring", "CoringComodule", "conjugate_coring", "sweedler_coring", "universal_factor",
    "DKHopfModule", "BCBimodule", "canonical_map", "fthm_report", "functor_A", "functor_B",
    "Cocycle", "GroupAction", "h1_classes", "builtin", "BUILTINS",
]
