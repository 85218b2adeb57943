"""Exact-arithmetic alcove walks for affine flag cells.

Layers, bottom up:

  cartan     finite-type Cartan data, roots, the finite Weyl group
  affine     affine roots, the affine Weyl group, words, alcoves
  folding    folded path enumeration and q-point count polynomials
  ratfunc    exact scalars and rational functions in t
  loopgroup  SL_n matrices over rational functions; the folding executor
  render     deterministic SVG pictures of rank <= 2 arrangements
  cli        command line front end
"""

from .cartan import (
    CartanDatum,
    CartanError,
    Coweight,
    FiniteRoot,
    FiniteWeylElement,
    from_label,
    validate_cartan,
)
from .affine import (
    AffineRoot,
    AffineWeylElement,
    AffineWeylGroup,
    is_iwahori_positive,
    is_uminus_positive,
)
from .folding import (
    Cell,
    CountPolynomial,
    FoldedPath,
    StepKind,
    StepOptions,
    cells_by_endpoint,
    count_polynomial,
    enumerate_folded_paths,
    step_options,
)
from .ratfunc import FpElement, Polynomial, PrimeField, QQ, RationalFunction
from .loopgroup import (
    ExecutorState,
    GroupMatrix,
    LoopSL,
    brute_force_cells,
    in_iwahori,
    in_uminus,
    is_monomial,
)

__all__ = [
    "AffineRoot",
    "AffineWeylElement",
    "AffineWeylGroup",
    "CartanDatum",
    "CartanError",
    "Cell",
    "CountPolynomial",
    "Coweight",
    "ExecutorState",
    "FiniteRoot",
    "FiniteWeylElement",
    "FoldedPath",
    "FpElement",
    "GroupMatrix",
    "LoopSL",
    "Polynomial",
    "PrimeField",
    "QQ",
    "RationalFunction",
    "StepKind",
    "StepOptions",
    "brute_force_cells",
    "cells_by_endpoint",
    "count_polynomial",
    "enumerate_folded_paths",
    "from_label",
    "in_iwahori",
    "in_uminus",
    "is_iwahori_positive",
    "is_monomial",
    "is_uminus_positive",
    "step_options",
    "validate_cartan",
]
