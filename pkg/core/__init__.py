from .boolean import BOT, TOP, And, Bot, Not, Or, Top, conj, disj, negate
from .category import (
    BaseCategory,
    Ctx,
    CtxMorphism,
    FinSet,
    FinSetArrow,
    FinSetCategory,
    KleisliArrow,
    KleisliCategory,
    PosetArrow,
    ProductCone,
    SemilatticeCategory,
)
from .normal_form import Literal, NormalForm, NormalFormKind, normal_form
from .parser import parse_formula, parse_free1, parse_term
from .sat import prop_entails, truth_table_entails
from .structures import Structure, enumerate_structures
from .terms import App, Atom, Signature, Var, substitute

__all__ = [
    "BOT",
    "TOP",
    "And",
    "Bot",
    "Not",
    "Or",
    "Top",
    "conj",
    "disj",
    "negate",
    "BaseCategory",
    "Ctx",
    "CtxMorphism",
    "FinSet",
    "FinSetArrow",
    "FinSetCategory",
    "KleisliArrow",
    "KleisliCategory",
    "PosetArrow",
    "ProductCone",
    "SemilatticeCategory",
    "Literal",
    "NormalForm",
    "NormalFormKind",
    "normal_form",
    "parse_formula",
    "parse_free1",
    "parse_term",
    "prop_entails",
    "truth_table_entails",
    "Structure",
    "enumerate_structures",
    "App",
    "Atom",
    "Signature",
    "Var",
    "substitute",
]
