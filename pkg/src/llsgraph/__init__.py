"""Components and connectedness of two-pointed limit linear series on chains
of elliptic and rational curves."""

from .chain import (
    ChainConfig,
    LLSComponent,
    NodeStatus,
    OracleTooLarge,
    default_chain,
    enumerate_components,
    enumerate_components_bruteforce,
    is_refined,
    local_problem,
    node_status,
    rho_additivity_check,
)
from .graph import (
    ComponentGraph,
    build_graph,
    components_intersect,
    connected_component_count,
    is_connected,
)
from .moves import (
    FalsificationError,
    MoveGraphDisconnected,
    MoveKind,
    MoveStep,
    MoveUnavailable,
    NodePair,
    bump_candidates,
    find_path,
    meets_bumped_locus,
    move_release,
    move_type1,
    move_type2,
    valid_pairs,
)
from .nonemptiness import (
    is_nonempty_component,
    is_nonempty_general,
    is_nonempty_genus0,
    is_nonempty_genus1,
)
from .sequences import (
    BNProblem,
    ContextMismatch,
    InvalidSequence,
    VanishingSeq,
    all_sequences,
    complement,
    dominates,
    merge_max,
    rho,
    rho_hat,
)

__version__ = "0.1.0"
