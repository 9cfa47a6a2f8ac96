"""Exact enumeration of alternating sign matrix symmetry classes and the
square-ice partition functions that certify their product formulas."""

from .asm import (Asm, CenterPattern, FullIceState, asm_from_ice, center_pattern,
                  classify_symmetries, ice_orientation, quarter_rotate, validate)
from .counting import (CountCache, CountRecord, SymClass, cached_count,
                       count_class, enumerate_class)
from .cyclo import CycloRational, I_SQRT3, OMEGA, cyclo_arith
from .grids import GridSpec, build_grid, partition_function
from .laurent import (LaurentPoly, poly_eval, poly_half_width, poly_parity_split,
                      reduce_generic_a, sigma)

__all__ = [
    "Asm", "CenterPattern", "CountCache", "CountRecord", "CycloRational",
    "FullIceState", "GridSpec", "I_SQRT3", "LaurentPoly", "OMEGA", "SymClass",
    "asm_from_ice", "build_grid", "cached_count", "center_pattern",
    "classify_symmetries", "count_class", "cyclo_arith", "enumerate_class",
    "ice_orientation", "partition_function", "poly_eval", "poly_half_width",
    "poly_parity_split", "quarter_rotate", "reduce_generic_a", "sigma", "validate",
]

__version__ = "0.1.0"
