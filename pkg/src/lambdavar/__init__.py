"""Waterman-type Λ-variation of multivariate grid functions and Fourier partial sums.

The library computes certified brackets for sharp, partial, index-set,
total and star variations, evaluates rectangular partial sums of
multiple Fourier series, builds the separable divergence construction and
runs seeded numerical studies that tie the two together.
"""

from .grid import (
    Box,
    FunctionSource,
    GridError,
    GridFunction,
    IndexSet,
    corner_sum,
    mixed_difference,
    restrict,
    sample,
)
from .sequences import (
    LambdaSeq,
    lambda_constant,
    lambda_harmonic,
    lambda_paper,
    lambda_table,
    lambda_xi,
    parse_lambda,
    tail_shift,
)
from .variation import (
    VariationBracket,
    hardy_index_variation,
    lambda_variation_axis,
    partial_variation,
    sharp_variation,
    star_variation_2d,
    total_variation,
    v_sharp,
)
from .fourier import (
    CoeffTensor,
    cubical_partial_sum,
    dirichlet_kernel,
    f_star,
    fourier_coefficients,
    rectangular_partial_sum,
)
from .counterexample import divergence_value, exact_coeffs_gN, g_N_source, sharp_norm_gN

__version__ = "0.1.0"
