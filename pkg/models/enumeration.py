"""
Exhaustive model enumeration: the semantic oracle for witness search.
"""
from itertools import combinations, product
from typing import Any, FrozenSet, Iterator, List, Optional, Sequence

from loguru import logger

from config.config import get_settings
from core.errors import DoctrineDefinitionError, NonFiniteDoctrineError
from core.structures import enumerate_structures
from doctrines.base_doctrine import BaseDoctrine
from doctrines.constants import ConstantAdjoinedDoctrine
from doctrines.finite import FiniteDoctrine
from doctrines.syntactic import SyntacticDoctrine
from filters.search import Indexed
from models.base_model import ModelAtS, PropModel, model_at_s_eval
from models.kinds import InducedModel, StructureModel, TabularModel


def _tabular_models(doctrine: FiniteDoctrine) -> Iterator[TabularModel]:
    base = doctrine.base
    others = [x for x in base.elements if x != base.terminal]
    for k in range(len(others) + 1):
        for chosen in combinations(others, k):
            inhabited = (base.terminal,) + chosen
            if any(base.meet(x, y) not in inhabited for x in inhabited for y in inhabited):
                continue
            if any(base.is_leq(x, y) and y not in inhabited for x in inhabited for y in base.elements):
                continue
            for atoms in product(*(doctrine.atoms[x] for x in inhabited)):
                try:
                    yield TabularModel(doctrine, dict(zip(inhabited, atoms)))
                except DoctrineDefinitionError:
                    continue


def enumerate_models(
    doctrine: BaseDoctrine,
    bound: Optional[int] = None,
    relevant: Optional[Sequence[Any]] = None,
) -> Iterator[PropModel]:
    """
    All models up to the carrier bound, in a deterministic order.

    Syntactic doctrines: structures of the theory (the empty carrier included
    when no constant forbids it); with relevant formulas only their symbols
    and those of the axioms are interpreted. Finite doctrines: tabular models.
    Constant-adjoined doctrines: one induced model per model and point of M(S).
    """
    bound = get_settings().model_bound if bound is None else bound
    if isinstance(doctrine, ConstantAdjoinedDoctrine):
        base_relevant = None if relevant is None else list(relevant)
        for model in enumerate_models(doctrine.base, bound, base_relevant):
            for point in model.carrier(doctrine.fixed):
                yield InducedModel(ModelAtS(model, doctrine.fixed, point), doctrine)
    elif isinstance(doctrine, SyntacticDoctrine):
        if relevant is None:
            structures = enumerate_structures(doctrine.signature, doctrine.axioms, bound)
        else:
            structures = iter(doctrine.models_of_theory(bound, relevant))
        for structure in structures:
            yield StructureModel(doctrine, structure)
    elif isinstance(doctrine, FiniteDoctrine):
        yield from _tabular_models(doctrine)
    else:
        raise NonFiniteDoctrineError(f"no model enumeration for {doctrine.name}")


def _empty_carrier(model: PropModel) -> bool:
    if isinstance(model, InducedModel):
        model = model.mas.model
    return isinstance(model, StructureModel) and model.structure.size == 0


def refute_sequent(
    doctrine: BaseDoctrine,
    fixed: Any,
    universal_premises: Sequence[Indexed] = (),
    existential_premises: Sequence[Indexed] = (),
    universal_conclusions: Sequence[Indexed] = (),
    existential_conclusions: Sequence[Indexed] = (),
    bound: Optional[int] = None,
) -> Optional[ModelAtS]:
    """
    First model at S where every universal premise is valid, every existential
    premise is inhabited, and every conclusion fails. The empty carrier is
    tried last.

    Bodies live over S x Y. fixed None means the terminal object.
    """
    fixed = doctrine.category.terminal if fixed is None else fixed
    bodies: List[Any] = [
        e for _, e in list(universal_premises) + list(existential_premises)
        + list(universal_conclusions) + list(existential_conclusions)
    ]
    relevant = bodies if isinstance(doctrine, SyntacticDoctrine) else None
    for model in sorted(enumerate_models(doctrine, bound, relevant), key=_empty_carrier):
        for point in model.carrier(fixed):
            mas = ModelAtS(model, fixed, point)

            def section(obj: Any, element: Any) -> FrozenSet[Any]:
                return model_at_s_eval(mas, obj, element)

            if not all(section(y, a) == frozenset(model.carrier(y)) for y, a in universal_premises):
                continue
            if not all(section(w, g) for w, g in existential_premises):
                continue
            if any(section(z, b) == frozenset(model.carrier(z)) for z, b in universal_conclusions):
                continue
            if any(section(v, d) for v, d in existential_conclusions):
                continue
            logger.debug(f"sequent refuted by {model.name} at {point!r}")
            return mas
    return None
