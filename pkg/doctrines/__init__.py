from .base_doctrine import BaseDoctrine, Tri, Verdict
from .constants import ConstantAdjoinedDoctrine, add_constant
from .elementary import (
    ConditionResult,
    ElementaryReport,
    EqualityFamily,
    check_boolean_laws,
    check_elementary,
)
from .finite import FiniteDoctrine
from .subsets import Quantifier, SubsetsDoctrine, subsets_quantifier
from .syntactic import PointedStructure, SyntacticDoctrine

__all__ = [
    "BaseDoctrine",
    "Tri",
    "Verdict",
    "ConstantAdjoinedDoctrine",
    "add_constant",
    "ConditionResult",
    "ElementaryReport",
    "EqualityFamily",
    "check_boolean_laws",
    "check_elementary",
    "FiniteDoctrine",
    "Quantifier",
    "SubsetsDoctrine",
    "subsets_quantifier",
    "PointedStructure",
    "SyntacticDoctrine",
]
