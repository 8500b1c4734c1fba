"""
Propositional models into the subsets doctrine
"""
from models.base_model import ModelAtS, PropModel, evaluate, model_at_s_eval
from models.enumeration import enumerate_models, refute_sequent
from models.families import pair_from_models, valid_universal_family
from models.kinds import HomModel, IdentityModel, InducedModel, PowerModel, StructureModel, TabularModel
from models.quotient import QuotientModel, elementary_quotient, quotient_structure
from models.rich import NotRich, rich_model

__all__ = [
    "ModelAtS",
    "PropModel",
    "evaluate",
    "model_at_s_eval",
    "enumerate_models",
    "refute_sequent",
    "pair_from_models",
    "valid_universal_family",
    "HomModel",
    "IdentityModel",
    "InducedModel",
    "PowerModel",
    "StructureModel",
    "TabularModel",
    "QuotientModel",
    "elementary_quotient",
    "quotient_structure",
    "NotRich",
    "rich_model",
]
