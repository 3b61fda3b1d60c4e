"""Hat-guessing games on sight graphs.

Build, verify, and search guessing strategies: exhaustive q-solvability
decision, affine strategies over finite fields, saturated guess matrices,
Hamming-ball centers, and the adversary constructions that defeat them.
"""

from .core import BACKEND, available_backends
from .errors import (
    FormatError,
    NotReducibleError,
    ParameterError,
    StrategyMismatchError,
    UnsupportedModeError,
    WorkBudgetError,
)
from .graphs import (
    DIRECTED,
    UNDIRECTED,
    GraphSpec,
    SightGraph,
    build_graph,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    cycle_minus_edge,
    degeneracy,
    directed_cycle_blowup,
    from_edges,
    induced_subgraph,
    load_graph,
    parse_graph_spec,
    path_graph,
    save_graph,
    star_graph,
)
from .hamming import BallCertificate, find_center, hamming_distance
from .saturated import (
    SaturatedMatrix,
    SearchResult,
    all_columns_matrix,
    is_t_saturated,
    load_matrix,
    random_saturated,
    save_matrix,
    search_saturated,
)
from .strategies import (
    TableStrategy,
    Verdict,
    correct_count_range,
    find_all_bad_colorings,
    lift_strategy,
    load_table_strategy,
    random_table_strategy,
    save_table_strategy,
    tree_reduction,
    verify_wins,
)
from .constructions import (
    PartialColoringSet,
    bipartite_from_saturated,
    c4_linear_strategy,
    complete_graph_strategy,
    defeated_set,
    directed_cycle_strategy,
    multipartite_partial,
    multipartite_strategy,
)
from .linear import (
    GF,
    LinearDecision,
    LinearStrategy,
    MinRankResult,
    cycle_minus_edge_adversary,
    decide_linear_solvable,
    linear_verify,
    load_linear_strategy,
    matrix_rank,
    min_rank_bruteforce,
    save_linear_strategy,
    to_table,
)
from .solver import (
    HatGuessingBound,
    RobustOutcome,
    SolveVerdict,
    decide_solvable,
    hat_guessing_number,
    lll_bad_coloring,
    robust_bad_coloring,
)

__version__ = "0.1.0"
