"""
Richness of an ultrafilter and the Hom(t, -) model it determines.
"""
from dataclasses import dataclass
from typing import Any, Optional, Union

from loguru import logger

from core.errors import InconsistentInputError
from doctrines.base_doctrine import BaseDoctrine
from filters.family import CheckScope, Family
from models.kinds import HomModel


@dataclass(frozen=True)
class NotRich:
    """An element outside the family that no constant refutes"""
    obj: Any
    element: Any

    def to_dict(self, doctrine: BaseDoctrine) -> dict:
        return {"object": doctrine.category.render_object(self.obj), "element": doctrine.render(self.element)}


def rich_model(
    doctrine: BaseDoctrine,
    family: Family,
    scope: Optional[CheckScope] = None,
) -> Union[HomModel, NotRich]:
    """
    Hom(t, -) model of a rich ultrafilter, or the first element showing it is not rich.

    Every alpha outside F_X needs a constant c: t -> X with c*(alpha) outside F_t.
    The model is checked to validate exactly the family on the scope.
    """
    scope = scope or CheckScope.exhaustive(doctrine)
    cat = doctrine.category
    t = cat.terminal
    for obj in scope.objects:
        constants = cat.enumerate_morphisms(t, obj, scope.depth)
        for alpha in scope.elements_of(obj):
            if family.contains(obj, alpha):
                continue
            if all(family.contains(t, doctrine.reindex(c, alpha)) for c in constants):
                logger.info(f"Not rich at {cat.render_object(obj)}: {doctrine.render(alpha)}")
                return NotRich(obj, alpha)

    model = HomModel(doctrine, family, scope.depth)
    for obj in scope.objects:
        for alpha in scope.elements_of(obj):
            if model.validates(obj, alpha) != family.contains(obj, alpha):
                raise InconsistentInputError(
                    f"Hom model disagrees with the family at {doctrine.render(alpha)}; the family is not an ultrafilter"
                )
    logger.info(f"Rich ultrafilter: Hom model over {len(scope.objects)} objects")
    return model
