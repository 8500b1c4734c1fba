"""
Validity families of a model or a class of models.
"""
from typing import Any, Optional, Sequence, Tuple, Union

from loguru import logger

from core.errors import MalformedFamilyError
from doctrines.base_doctrine import BaseDoctrine
from filters.family import AxiomReport, CheckScope, Family, FamilyKind, check_family_axioms
from models.base_model import PropModel


def valid_universal_family(
    models: Union[PropModel, Sequence[PropModel]],
    doctrine: Optional[BaseDoctrine] = None,
) -> Tuple[Family, Family]:
    """
    (F, I) with F_X the elements valid in every model and I_X those valid in none.

    Args:
        models: one model or a class of models over the same doctrine
        doctrine: required when the class is empty
    """
    if isinstance(models, PropModel):
        models = [models]
    models = list(models)
    if doctrine is None:
        if not models:
            raise MalformedFamilyError("an empty class of models needs its doctrine")
        doctrine = models[0].doctrine
    if any(m.doctrine is not doctrine for m in models):
        raise MalformedFamilyError("all models must share one doctrine")

    valid = Family(doctrine, predicate=lambda obj, e: all(m.validates(obj, e) for m in models), name="valid")
    invalid = Family(doctrine, predicate=lambda obj, e: not any(m.validates(obj, e) for m in models), name="invalid")
    return valid, invalid


def pair_from_models(
    models: Sequence[PropModel],
    doctrine: Optional[BaseDoctrine] = None,
    scope: Optional[CheckScope] = None,
) -> Tuple[Tuple[Family, Family], AxiomReport]:
    """The filter-ideal pair of a class of models with its axiom report"""
    pair = valid_universal_family(models, doctrine)
    report = check_family_axioms(FamilyKind.PAIR, pair, scope)
    if not report.passed:
        logger.warning(f"validity pair of {len(models)} models fails {[c.clause for c in report.failures()]}")
    return pair, report
