"""Decision support for multi-judge, multi-criteria ranking problems.

Alternatives evaluated on several criteria are ranked by the smallest
fraction of the sample each one weakly dominates along any weighting the
judge panel could agree on, and classified into recommended / non-advisable
/ neutral / indeterminate via set-valued quantiles.
"""

from .cones import (
    ConvexCone,
    Halfspace,
    conic_hull,
    contains,
    dual_cone,
    leq_cone,
    validate_acceptance_cone,
    validate_importance_cone,
)
from .distribution import (
    DirectionWitness,
    Rank,
    RankResult,
    cone_distribution,
    critical_directions,
    oracle_cone_distribution,
    oracle_strict_exceedance_sup,
    rank_alternatives,
    scalarized_cdf,
    strict_exceedance_sup,
)
from .model import (
    Alternative,
    Criterion,
    DecisionProblem,
    EvaluationMatrix,
    ImportanceVector,
    JudgePanel,
    ProblemFormatError,
    load_problem,
    parse_problem,
    parse_problem_csv,
    serialize_problem,
    validate_problem,
)
from .quantiles import (
    QuantileHalfspace,
    QuantileRegion2D,
    QuantileVerdict,
    classify,
    lower_quantile_membership,
    lower_v_quantile,
    quantile_region_2d,
    upper_quantile_membership,
    upper_v_quantile,
)

__version__ = "0.1.0"
