"""Truncated-variation toolkit for irregular sampled paths.

Computes truncated variation, p- and phi-variation, the threshold-variation
seminorm, greedy bounded-variation approximants with two-sided bounds, and
Riemann-Stieltjes integrals driven by irregular signals together with the
explicit variation-product bounds that guarantee their existence.
"""

__version__ = "0.1.0"

from .approx import (Approximant, GreedySkeleton, SandwichReport, greedy_skeleton,
                     linear_approx, sandwich, step_approx)
from .errors import (CommonJumpError, ConvergenceError, DomainError, SeriesError,
                     TvkitError)
from .integrate import (IntegralReport, IrregularityReport, SequencePair,
                        choose_sequences, improved_ly_check, indefinite_integral,
                        irregularity_check, irregularity_constant, ly_constant,
                        partition_deviation_bound, rs_integral, rs_sum,
                        step_integral, sum_by_parts_sides, young_bound_S)
from .paths import (NormKind, OperatorPath, SampledPath, compose, gen_alpha_stable,
                    gen_fixture, operator_norm, oscillation, read_path_csv,
                    read_path_json, vector_norm, write_path_csv, write_path_json)
from .seminorm import (SeminormReport, c_p_const, fixed_partition_seminorm,
                       p_tv_seminorm, sup_delta_single, tv_p_norm)
from .variation import (PhiSpec, TtvProfile, p_variation, phi_value, phi_variation,
                        subsequence_sup_brute, total_variation, ttv, ttv_brute,
                        ttv_profile)

__all__ = [
    "__version__",
    # paths
    "NormKind", "SampledPath", "OperatorPath", "vector_norm", "operator_norm",
    "oscillation", "gen_fixture", "gen_alpha_stable", "compose",
    "read_path_csv", "write_path_csv", "read_path_json", "write_path_json",
    # variation
    "TtvProfile", "PhiSpec", "ttv", "ttv_profile", "ttv_brute", "total_variation",
    "p_variation", "phi_variation", "phi_value", "subsequence_sup_brute",
    # seminorm
    "SeminormReport", "c_p_const", "sup_delta_single", "fixed_partition_seminorm",
    "p_tv_seminorm", "tv_p_norm",
    # approx
    "GreedySkeleton", "Approximant", "SandwichReport", "greedy_skeleton",
    "step_approx", "linear_approx", "sandwich",
    # integrate
    "SequencePair", "IntegralReport", "IrregularityReport", "rs_sum", "rs_integral",
    "step_integral", "indefinite_integral", "young_bound_S",
    "partition_deviation_bound", "choose_sequences", "ly_constant",
    "irregularity_constant", "improved_ly_check", "irregularity_check",
    "sum_by_parts_sides",
    # errors
    "TvkitError", "DomainError", "CommonJumpError", "ConvergenceError", "SeriesError",
]
