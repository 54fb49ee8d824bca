"""Combinatorial group testing where the tested elements themselves learn from the answers."""

from .adaptive import (
    HalvingState,
    Transcript,
    baseline_find_defectives,
    run_session,
    singletons_strategy,
    strategy_find_then_announce,
    strategy_halving_model3,
    verify_transcript,
)
from .errors import (
    BadParameter,
    BadScenario,
    BudgetExceeded,
    ConstructionFailure,
    EmptyEdge,
    EmptyMemberSet,
    GroupTestError,
    IncompleteTranscript,
    InsufficientNoPool,
    StrategyError,
)
from .family import (
    PropertyReport,
    SetFamily,
    complement_family,
    covering_number,
    d_fold_unions,
    dual_family,
    is_cancellative,
    is_intersection_cancellative,
    is_intersection_closed,
    is_sperner,
    restricted_star,
)
from .generators import SweepSpec, enumerate_families, random_family, search_cover_free
from .hypergraph import berge_girth, construct_girth_hypergraph, model3_construction, validate_hypergraph
from .knowledge import (
    Evidence,
    KnowledgeView,
    answer_vector,
    coalition_view,
    consistent_scenarios,
    identifies_no_defective,
    identifies_set,
    knows_own_status,
)
from .models import (
    ModelVerdict,
    circle_condition,
    model1_characterization,
    model2dbl_characterization_dual,
    model2dbl_characterization_primal,
    model2prime_necessary,
    model2prime_sufficient,
    solves_model1_semantic,
    solves_model2_semantic,
    solves_model2dbl_semantic,
    solves_model2prime_semantic,
    solves_model3_semantic,
    solves_model4_semantic,
    triple_circle_profile,
)
from .separation import (
    binary_separating_family,
    is_d_cover_free,
    is_d_separating,
    is_d_union_free,
    is_r_d_cover_free,
)
from .sweeps import SweepResult, run_sweep

__version__ = "0.1.0"
