"""D numbers over non-exclusive frames, fuzzy linguistic payoffs and bimatrix games."""

from .dnumbers import (
    X,
    DFocalSet,
    DFrame,
    DNumber,
    NonExclusivityMatrix,
    augment_with_X,
    build_nonexcl_from_scale,
    d_bel,
    d_pl,
    d_ppt,
    ecr_combine,
    ecr_combine_with_conflict,
    ecr_table,
    extend_nonexcl,
    from_linguistic_votes,
    wac_combine,
    weighted_average,
)
from .fuzzy import (
    PiecewiseLinearCurve,
    TriangularFuzzyNumber,
    centroid_defuzzify,
    graded_mean,
    intersection_area,
    membership,
    non_exclusive_degree,
    union_area,
    weighted_sum,
)
from .game import (
    BimatrixGame,
    best_response_frequency,
    best_responses,
    pure_nash_equilibria,
    strategy_rankings,
)
from .kernels import BACKEND
from .pipeline import (
    CriterionWeights,
    EvaluationCase,
    LinguisticScale,
    Report,
    ScenarioSpec,
    build_game,
    build_payoff_column,
    case_to_dnumber_matrix,
    dnumber_to_payoff,
    fuse_strategy,
    normalize_weights,
    run_scenario,
)

__version__ = "0.1.0"
