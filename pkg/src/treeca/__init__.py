"""Ranked tree automata: bottom-up and top-down, with determinization,
co-determinization, congruence-based and double-reversal minimization,
path-closedness, and a brute-force oracle layer for bounded checks."""

from .analysis import (
    Spine,
    bta_congruence_down,
    bta_congruence_up,
    check_gen_det_d,
    check_gen_det_u,
    gen_det_u_witness,
    is_path_closed,
    pre_context,
    root_to_pivot_equiv,
    spine_of,
)
from .automata import (
    Bta,
    Tta,
    accepts,
    is_codeterministic,
    is_deterministic,
    post_tree,
    reachable_states,
    seeded_post,
    trim_empty,
    trim_unreachable,
    tta_accepts,
    useful_states,
    wpre,
)
from .errors import (
    AddressError,
    BudgetError,
    MalformedContextError,
    NotDeterministicError,
    NotPathClosedError,
    NotWellRankedError,
    ParseError,
    TreecaError,
)
from .fileformat import parse_automaton, serialize_automaton
from .minimize import (
    Partition,
    brzozowski,
    canonical_form,
    equivalent,
    isomorphic,
    min_codbta,
    minimize_bta,
    minimize_dbta,
    separating_tree,
)
from .oracle import (
    language_upto,
    nerode_classes_down,
    nerode_classes_up,
    quotient_member_down,
    quotient_member_up,
)
from .transforms import (
    DEFAULT_STATE_BUDGET,
    codeterminize,
    complete,
    determinize,
    reverse_bta,
    reverse_tta,
    subset_construction,
    subset_name,
    tta_determinize,
    tta_determinize_direct,
)
from .trees import (
    DEFAULT_ENUM_BUDGET,
    HOLE,
    RankedAlphabet,
    Tree,
    check_well_ranked,
    enumerate_contexts,
    enumerate_trees,
    format_address,
    format_path,
    format_term,
    hole_height,
    is_context,
    is_well_ranked,
    iter_nodes,
    parse_context,
    parse_term,
    path_language,
    pivot,
    plug,
    puncture,
    subtree,
    substitute,
)

__version__ = "0.1.0"

__all__ = [
    "AddressError",
    "Bta",
    "BudgetError",
    "DEFAULT_ENUM_BUDGET",
    "DEFAULT_STATE_BUDGET",
    "HOLE",
    "MalformedContextError",
    "NotDeterministicError",
    "NotPathClosedError",
    "NotWellRankedError",
    "ParseError",
    "Partition",
    "RankedAlphabet",
    "Spine",
    "TreecaError",
    "Tree",
    "Tta",
    "accepts",
    "brzozowski",
    "bta_congruence_down",
    "bta_congruence_up",
    "canonical_form",
    "check_gen_det_d",
    "check_gen_det_u",
    "check_well_ranked",
    "codeterminize",
    "complete",
    "determinize",
    "enumerate_contexts",
    "enumerate_trees",
    "equivalent",
    "format_address",
    "format_path",
    "format_term",
    "gen_det_u_witness",
    "hole_height",
    "is_codeterministic",
    "is_context",
    "is_deterministic",
    "is_path_closed",
    "is_well_ranked",
    "isomorphic",
    "iter_nodes",
    "language_upto",
    "min_codbta",
    "minimize_bta",
    "minimize_dbta",
    "nerode_classes_down",
    "nerode_classes_up",
    "parse_automaton",
    "parse_context",
    "parse_term",
    "path_language",
    "pivot",
    "plug",
    "post_tree",
    "pre_context",
    "puncture",
    "quotient_member_down",
    "quotient_member_up",
    "reachable_states",
    "reverse_bta",
    "reverse_tta",
    "root_to_pivot_equiv",
    "seeded_post",
    "separating_tree",
    "serialize_automaton",
    "spine_of",
    "subset_construction",
    "subset_name",
    "substitute",
    "subtree",
    "trim_empty",
    "trim_unreachable",
    "tta_accepts",
    "tta_determinize",
    "tta_determinize_direct",
    "useful_states",
    "wpre",
]
