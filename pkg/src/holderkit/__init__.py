"""Constructive Lipschitz and Hoelder analysis on finite metric spaces.

Seminorms, extensions, inf-convolution regularisers, tent-kernel smoothing
and lacunary series, each paired with checkable :class:`BoundCertificate`
records.
"""

from .certificates import BoundCertificate
from .errors import (DomainError, FilterError, HolderkitError, InputError, MetricError,
                     NoGoodPointsError, PreconditionError, ShapeError)
from .extension import AUTO, ExtensionResult, extend, verify_sandwich
from .inf_convolution import (a_l, b_l, error_certificate, restricted_range_check,
                              truncation_certificates, truncation_decomposition)
from .lip_analysis import (SampledFunction, family_inf, family_sup, is_l_lipschitz,
                           lip_norm, lip_seminorm, maximal_function, pointwise_max,
                           pointwise_min)
from .metric_core import (FiniteMetricSpace, PointSubset, dist_to_set, dist_to_set_all,
                          snowflake, validate_metric)
from .smoothing import (MeasureWeights, approximation_certificate, build_kernel,
                        doubling_constant, lipschitz_improvement_certificate, smooth)

__version__ = "0.1.0"
