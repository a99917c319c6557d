"""Finite turn-based safety games: solvers, orders, succinct strategies.

The package solves safety games with three interchangeable engines (a
round-based attractor fixpoint, an on-the-fly forward/backward solver,
and an antichain-pruned variant of the latter for games equipped with a
turn-based alternating simulation), represents partial strategies with
'don't care' gaps, and verifies them against plain and order-compatible
completion semantics.  Generators for the bundled game families and a
CNF reduction for minimal-strategy hardness experiments round it out.
"""

from .arena import (
    Labeling,
    Player,
    SafetyGame,
    Violation,
    emit_game,
    load_game,
    parse_game,
    reach,
    restrict_by_strategy,
    save_game,
    succ,
    succ_by_label,
    validate,
)
from .errors import (
    CapabilityError,
    DegenerateSpecError,
    IncompleteStrategyError,
    InvalidStrategyError,
    InvalidVertexError,
    InvariantError,
    OrderError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    StargameError,
    UnknownSymbolError,
)
from .gamegen import (
    VectorGameSpec,
    delta_move_table,
    gen_nim,
    gen_nim_implicit,
    gen_nonclosed_sim_game,
    gen_nontba_sim_game,
    gen_random,
    gen_vector,
    gen_vector_implicit,
)
from .minsize import (
    CnfFormula,
    MinSizeOutcome,
    ReductionOutput,
    assignment_from_strategy,
    decide_min_size,
    load_dimacs,
    min_star_strategy_size,
    parse_dimacs,
    reduce_sat,
    strategy_from_assignment,
)
from .order import (
    Antichain,
    Cmp,
    EqualityOrder,
    KeyOrder,
    PartialOrder,
    TableOrder,
    check_a_deterministic,
    check_monotonic_labeling,
    check_partial_order,
    check_simulation,
    check_tba_simulation,
    derive_tba,
    emit_order,
    equality_order,
    in_down_closure,
    in_up_closure,
    insert_max,
    insert_min,
    load_order,
    make_order,
    max_antichain,
    min_antichain,
    nim_mod3_order,
    order_from_pairs,
    parse_order,
    vector_order,
)
from .solvers import (
    AttractorResult,
    OtfurState,
    SolveResult,
    SolveStats,
    invariant_probe,
    solve_attractor,
    solve_otfur,
    solve_otfur_antichain,
)
from .strategy import (
    OrderWinningReport,
    StarStrategy,
    check_cover_conditions,
    check_order_winning,
    emit_strategy,
    enumerate_order_concretisations,
    is_order_winning_star,
    is_winning_star,
    is_winning_total,
    load_strategy,
    order_allowed_successors,
    parse_strategy,
    reachable_antichain_strategy,
    restrict,
    save_strategy,
    strategy_from_win,
)

__version__ = "0.1.0"
