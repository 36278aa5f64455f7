"""Structured matrices mapped to qubitized linear combinations."""

from .build import BuildResult, build, predicted_count, summand_count, table_one_count
from .counting import fusc
from .diagonals import (
    anti_adder,
    anticirculant,
    circulant,
    corner_embed,
    grid,
    hankel_antidiag,
    recursion_step,
    shift_strings,
    toeplitz_diag,
)
from .gram import (
    density_matrix,
    line_column,
    outer_product,
    projector_evolution,
    pseudo_covariance,
)
from .oracle import dense_oracle
from .permutations import (
    CircularPermutation,
    PermutationSpec,
    circular_permutation,
    permutation_circuit,
    permutation_from_table,
)
from .spec import StructuredSpec, load_spec, spec_from_dict

__all__ = [
    "BuildResult",
    "CircularPermutation",
    "PermutationSpec",
    "StructuredSpec",
    "anti_adder",
    "anticirculant",
    "build",
    "circulant",
    "circular_permutation",
    "corner_embed",
    "dense_oracle",
    "density_matrix",
    "fusc",
    "grid",
    "hankel_antidiag",
    "line_column",
    "load_spec",
    "outer_product",
    "permutation_circuit",
    "permutation_from_table",
    "predicted_count",
    "projector_evolution",
    "pseudo_covariance",
    "recursion_step",
    "shift_strings",
    "spec_from_dict",
    "summand_count",
    "table_one_count",
    "toeplitz_diag",
]
