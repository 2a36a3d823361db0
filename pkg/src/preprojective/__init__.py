"""Derived preprojective algebras of acyclic quivers: twisted complexes,
Hom cohomology, the ideals I_i, braid group actions and silting mutation."""

__version__ = "0.1.0"

from .field import Field, QQ
from .quiver import Quiver, QuiverError, parse_quiver
from .algebra import Element, Gamma
from .complexes import (ComplexError, FiniteModule, Gen, TwistedComplex, build_simple_resolution,
                        cone, direct_sum, reduce, shift)
from .homs import HomComplex, HomTable, hom_cohomology, simples_table
from .tensor import WindowInsufficient, dual_twist_direct, tensor_ideal
from .iso import Verdict, equal_upto_iso
from .ideals import (DgIdeal, braid_relation_check, ideal_equal_upto, ideal_I, ideal_product,
                     ideal_slice, verify_simple_resolution)
from .braids import BraidWord
from .silting import (SiltingObject, braid_to_silting, enumerate_interval, mutate,
                      order_reversal_test, silting_geq, word_equality)

__all__ = [
    "Field", "QQ", "Quiver", "QuiverError", "parse_quiver", "Element", "Gamma",
    "ComplexError", "FiniteModule", "Gen", "TwistedComplex", "build_simple_resolution",
    "cone", "direct_sum", "reduce", "shift", "HomComplex", "HomTable", "hom_cohomology",
    "simples_table", "WindowInsufficient", "dual_twist_direct", "tensor_ideal", "Verdict",
    "equal_upto_iso", "DgIdeal", "braid_relation_check", "ideal_equal_upto", "ideal_I",
    "ideal_product", "ideal_slice", "verify_simple_resolution", "BraidWord", "SiltingObject",
    "braid_to_silting", "enumerate_interval", "mutate", "order_reversal_test", "silting_geq",
    "word_equality",
]
