"""Ordinal notations below epsilon-0, Hardy/Cichon hierarchies, exact lengths
of controlled bad sequences, and ranking-function termination checks."""

from .errors import (
    BudgetExceeded,
    IndexTooSmall,
    NonCanonicalWarning,
    NondeterminismEncountered,
    NotALimit,
    NotAWellOrder,
    OrdinalParseError,
    OrdtermError,
    PreconditionViolated,
    ProgramParseError,
    ShapeMismatch,
    ZeroHasNoPredecessor,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    OrdinalKind,
    OrdinalTerm,
    cnf_add,
    cnf_mul,
    compare,
    enumerate_below,
    from_int,
    fundamental,
    greatest_below,
    kind,
    max_below_with_norm,
    norm,
    omega_power,
    parse,
    pointwise_leq,
    predecessor,
    to_text,
)
from .hierarchy import (
    ControlFunction,
    EvalBudget,
    add_constant,
    affine,
    apply,
    cichon,
    hardy,
    hardy_fundamental_form,
    hardy_via_cichon_check,
    iterate,
    mul_constant,
    parse_control,
    premultiply,
    successor,
)
from .wqo import (
    Multiset,
    NATURALS,
    SpaceDescriptor,
    cartesian_product,
    element_order_type,
    elements_up_to,
    finite,
    finite_eq,
    is_well_order,
    leq,
    lex_product,
    multiset_space,
    nat_lex,
    nat_product,
    norm_of,
    order_type,
    parse_element,
    parse_space,
)
from .lengths import (
    ControlledSequence,
    LengthResult,
    check_product_bound,
    is_bad,
    is_controlled,
    length_search,
    length_wo_dp,
    verify_proposition,
    verify_theorem,
)
from .termination import (
    AffineExpr,
    Comparison,
    Configuration,
    DisjunctiveArgument,
    RankedRelation,
    RankingSpec,
    TransitionSystem,
    check_control,
    check_disjunctive,
    check_ranking,
    corollary_bound_holds,
    execution_length_identity,
    fig1,
    fig1_block_run,
    make_config,
    parse_program,
    parse_ranking,
    parse_relation,
    run,
    step,
)
from .classify import (
    ComplexityClass,
    MILESTONES,
    classify_bound,
    control_gamma,
    format_index,
    ordinal_add,
)

__version__ = "0.1.0"
