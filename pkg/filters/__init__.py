"""
Universal filters, ideals and ultrafilters with their Herbrand witness search
"""
from filters.family import AxiomReport, CheckScope, ClauseCheck, Family, FamilyKind, check_family_axioms
from filters.generated import Membership, generated_closure, generated_intersect, generated_membership
from filters.search import (
    Bounds,
    Candidate,
    DefinitelyDisjoint,
    HerbrandProblem,
    NoneUpTo,
    Outcome,
    SearchTrace,
    Side,
    Witness,
)
from filters.ultrafilter import (
    extend_to_ultrafilter,
    filter_extension_meets,
    ideal_extension_meets,
    intersection_of,
    ultrafilters_of,
    ultraideals_of,
    universal_filters_of,
    universal_ideals_of,
)

__all__ = [
    "AxiomReport",
    "CheckScope",
    "ClauseCheck",
    "Family",
    "FamilyKind",
    "check_family_axioms",
    "Membership",
    "generated_closure",
    "generated_intersect",
    "generated_membership",
    "Bounds",
    "Candidate",
    "DefinitelyDisjoint",
    "HerbrandProblem",
    "NoneUpTo",
    "Outcome",
    "SearchTrace",
    "Side",
    "Witness",
    "extend_to_ultrafilter",
    "filter_extension_meets",
    "ideal_extension_meets",
    "intersection_of",
    "ultrafilters_of",
    "ultraideals_of",
    "universal_filters_of",
    "universal_ideals_of",
]
