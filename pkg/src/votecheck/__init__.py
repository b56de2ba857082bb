"""Split Cycle and friends: margins, voting methods and bounded axiom checking."""

from votecheck.axioms import AxiomId, CloneSet, check_axiom_instance
from votecheck.checker import SearchBounds, find_counterexample, verify_method_equivalence
from votecheck.core import MarginMatrix, Profile, ProfileError, margin, margin_matrix
from votecheck.methods import MethodId, split_cycle_winners, winners

__all__ = [
    "AxiomId",
    "CloneSet",
    "MarginMatrix",
    "MethodId",
    "Profile",
    "ProfileError",
    "SearchBounds",
    "check_axiom_instance",
    "find_counterexample",
    "margin",
    "margin_matrix",
    "split_cycle_winners",
    "verify_method_equivalence",
    "winners",
]

__version__ = "0.1.0"
