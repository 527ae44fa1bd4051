"""Lacunary series on the real line and on finite metric spaces."""

from .filters import (BandLimitedFilter, BumpProfile, RecoveryReport,
                      build_band_limited_filter, coefficient_bound_certificate,
                      default_filter, recover_all, recover_coefficient)
from .metric_sums import (MetricDifference, MetricLacunaryFamily,
                          metric_lacunary_difference, split_bounds)
from .series import (MAX_TERMS, BracketResult, Grid1D, LacunarySpec, TailBound,
                     default_grid, default_h_values, evaluate, lip_alpha_bracket,
                     lip_alpha_upper_bound, second_difference_kernel_bound,
                     tail_bound, zygmund_seminorm)

__all__ = [
    "BandLimitedFilter", "BumpProfile", "RecoveryReport", "build_band_limited_filter",
    "coefficient_bound_certificate", "default_filter", "recover_all",
    "recover_coefficient", "MetricDifference", "MetricLacunaryFamily",
    "metric_lacunary_difference", "split_bounds", "MAX_TERMS", "BracketResult",
    "Grid1D", "LacunarySpec", "TailBound", "default_grid", "default_h_values",
    "evaluate", "lip_alpha_bracket", "lip_alpha_upper_bound",
    "second_difference_kernel_bound", "tail_bound", "zygmund_seminorm",
]
