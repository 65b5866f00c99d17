"""Variation functionals on grid functions."""

from .functionals import (
    EXACT_CAP_INDEX,
    EXACT_CAP_STAR,
    continuity_profile,
    hardy_index_variation,
    interval_weight_sharp,
    local_box_sharp_variation,
    local_sharp_variation,
    partial_variation,
    partial_variation_axis,
    rectangle_packings,
    sharp_variation,
    sharp_variation_axis,
    sharp_weights,
    slice_weights,
    star_variation_2d,
    total_variation,
    v_sharp,
    v_sharp_profile,
)
from .kernel import (
    EXACT_CAP_1D,
    AxisWeights,
    IntervalFamily,
    VariationBracket,
    VariationError,
    abel_upper_bound,
    best_disjoint_sum,
    disjoint_sum_table,
    exhaustive_axis,
    interval_families,
    lambda_variation_axis,
    rearranged_order,
    score_family,
    score_ordered,
)
