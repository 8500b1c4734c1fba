"""
The one-step free quantifier construction over a Boolean doctrine
"""
from free1.generators import (
    Generator,
    exists_gen,
    forall_embed,
    forall_gen,
    free1_reindex,
    generators_of,
    shared_fixed,
)
from free1.order import ClauseOutcome, OrderResult, decide_sequent, free1_leq
from free1.sequent import MixedSequent, check_witness, transport_witness

__all__ = [
    "Generator",
    "exists_gen",
    "forall_embed",
    "forall_gen",
    "free1_reindex",
    "generators_of",
    "shared_fixed",
    "ClauseOutcome",
    "OrderResult",
    "decide_sequent",
    "free1_leq",
    "MixedSequent",
    "check_witness",
    "transport_witness",
]
