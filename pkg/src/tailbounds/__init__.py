"""Tail bounds for sums of independent geometric or exponential variables.

Closed-form and numerically optimized Chernoff-type bounds for the upper and
lower tails, a matching lower bound for the upper tail, exact oracles
(convolution and hypoexponential closed forms), and seeded Monte Carlo
estimation, all sharing immutable distribution specs.
"""

from .exact_oracle import (
    OracleMethod,
    TailEstimate,
    geom_lower_tail_exact,
    geom_pmf_convolution,
    geom_tail_exact,
    hypoexp_survival,
    iid_geom_tail,
    matrix_exp_survival,
    partial_fractions_survival,
)
from .exp_bounds import (
    exp_lower_tail_iii,
    exp_tail_lower_iv,
    exp_upper_i,
    exp_upper_ii,
)
from .geom_bounds import (
    BoundResult,
    Method,
    UnimodalityError,
    best_upper,
    lemma1_bound,
    lemma_la_check,
    lower_tail_tl1,
    optimized_chernoff,
    optimized_lemma1,
    upper_tail_cor1,
    upper_tail_cor2,
    upper_tail_lower_bound_tl,
    upper_tail_thm1,
    upper_tail_thm2,
)
from .model import (
    DomainError,
    EmptyParams,
    ExponentialSumSpec,
    GeometricSumSpec,
    KTooSmall,
    LambdaOutOfRange,
    LogProb,
    NegativeX,
    OutOfRange,
    TailBoundsError,
    TailQuery,
    log_inequality_check,
    log_pgf_geometric,
    make_exponential_spec,
    make_geometric_spec,
    make_tail_query,
    mgf_exponential,
    pgf_geometric,
    read_params_file,
)
from .montecarlo import (
    McConfig,
    SplitMix64Stream,
    mc_tail,
    sample_exponential_sum,
    sample_geometric_sum,
    uniform_block,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "DomainError",
    "EmptyParams",
    "ExponentialSumSpec",
    "GeometricSumSpec",
    "KTooSmall",
    "LambdaOutOfRange",
    "LogProb",
    "McConfig",
    "Method",
    "NegativeX",
    "OracleMethod",
    "OutOfRange",
    "SplitMix64Stream",
    "TailBoundsError",
    "TailEstimate",
    "TailQuery",
    "UnimodalityError",
    "best_upper",
    "exp_lower_tail_iii",
    "exp_tail_lower_iv",
    "exp_upper_i",
    "exp_upper_ii",
    "geom_lower_tail_exact",
    "geom_pmf_convolution",
    "geom_tail_exact",
    "hypoexp_survival",
    "iid_geom_tail",
    "lemma1_bound",
    "lemma_la_check",
    "log_inequality_check",
    "log_pgf_geometric",
    "lower_tail_tl1",
    "make_exponential_spec",
    "make_geometric_spec",
    "make_tail_query",
    "matrix_exp_survival",
    "mc_tail",
    "mgf_exponential",
    "optimized_chernoff",
    "optimized_lemma1",
    "partial_fractions_survival",
    "pgf_geometric",
    "read_params_file",
    "sample_exponential_sum",
    "sample_geometric_sum",
    "uniform_block",
    "upper_tail_cor1",
    "upper_tail_cor2",
    "upper_tail_lower_bound_tl",
    "upper_tail_thm1",
    "upper_tail_thm2",
    "wilson_interval",
]
