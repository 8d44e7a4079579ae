"""Closed ditrails through prescribed vertex sets in small digraphs.

Exact oracles, sufficient-condition checkers, a move-based constructor,
generators and an independent validator.
"""

__version__ = "0.1.0"

from .budget import Budget
from .connectivity import arc_strong_connectivity, is_S_strong, is_strong, strong_components
from .constructor import construct, replay_moves
from .digraph import (
    Digraph,
    UndirectedGraph,
    complete_digraph,
    directed_cycle,
    format_digraph,
    induced,
    parse_digraph,
    parse_instance,
    underlying_graph,
)
from .errors import (
    BudgetExhausted,
    DitrailError,
    InputError,
    LemmaViolation,
    ParseError,
    PreconditionError,
    TheoremViolation,
)
from .generators import GenSpec, hunt_tightness, random_digraph, sample_satisfying
from .matching import Matching, find_augmenting_path, maximum_matching
from .theorems import THEOREMS, run_check, verify_certificate
from .trails import (
    ClosedDitrail,
    Ditrail,
    closed_ditrail_through,
    dicycle_through,
    is_closed_trailable,
    is_S_strictly_strong,
    is_supereulerian,
)
from .validator import validate_certificate, validate_matching, validate_trail

__all__ = [
    "Budget", "BudgetExhausted", "ClosedDitrail", "Digraph", "Ditrail", "DitrailError",
    "GenSpec", "InputError", "LemmaViolation", "Matching", "ParseError", "PreconditionError",
    "THEOREMS", "TheoremViolation", "UndirectedGraph", "arc_strong_connectivity",
    "closed_ditrail_through", "complete_digraph", "construct", "dicycle_through",
    "directed_cycle", "find_augmenting_path", "format_digraph", "hunt_tightness", "induced",
    "is_S_strictly_strong", "is_S_strong", "is_closed_trailable", "is_strong",
    "is_supereulerian", "maximum_matching", "parse_digraph", "parse_instance",
    "random_digraph", "replay_moves", "run_check", "sample_satisfying", "strong_components",
    "underlying_graph", "validate_certificate", "validate_matching", "validate_trail",
    "verify_certificate",
]
