"""Extropy, weighted extropy and general weighted extropy of simple random
and ranked set samples, with closed forms, Monte Carlo estimates and
numerical checks of the comparison results."""
from .closed_forms import (ClosedFormReport, closed_form_for, exp_orderstat_moment,
                           exponential_rss_closed, linear_pair_values, pareto_rss_closed,
                           power_rss_closed)
from .distributions import (Beta, Custom, Distribution, Exponential, LinearFalling, LinearRising,
                            NegSqrtExp, Pareto, Power, Scaled, Triangular, Uniform,
                            parse_distribution)
from .errors import DivergenceError, DomainError, QuadratureError
from .extropy import (ExtropyValue, LambdaProfile, extropy, general_weighted_extropy,
                      order_statistic_extropy, weighted_extropy)
from .montecarlo import (McEstimate, RngSpec, mc_general_weighted_extropy, mc_rss_extropy,
                         sample_rss, sample_srs)
from .orders import OrderVerdict, check_irfr, check_order, delta_criterion
from .quadrature import BetaOrderKernel, QuadratureResult, integrate
from .rss import rss_coefficients, rss_extropy, rss_srs_ratio_bound, srs_extropy
from .weights import UNIT, WeightFunction, custom, exp_weight, parse_weight, power

__version__ = "0.1.0"

__all__ = [
    "Beta", "BetaOrderKernel", "ClosedFormReport", "Custom", "Distribution", "DivergenceError",
    "DomainError", "Exponential", "ExtropyValue", "LambdaProfile", "LinearFalling",
    "LinearRising", "McEstimate", "NegSqrtExp", "OrderVerdict", "Pareto", "Power",
    "QuadratureError", "QuadratureResult", "RngSpec", "Scaled", "Triangular", "UNIT", "Uniform",
    "WeightFunction", "check_irfr", "check_order", "closed_form_for", "custom",
    "delta_criterion", "exp_orderstat_moment", "exp_weight", "exponential_rss_closed",
    "extropy", "general_weighted_extropy", "integrate", "linear_pair_values",
    "mc_general_weighted_extropy", "mc_rss_extropy", "order_statistic_extropy",
    "parse_distribution", "parse_weight", "pareto_rss_closed", "power", "power_rss_closed",
    "rss_coefficients", "rss_extropy", "rss_srs_ratio_bound", "sample_rss", "sample_srs",
    "srs_extropy", "weighted_extropy",
]
