"""
Exact universal ultrafilter extension and enumeration on finite doctrines.
"""
from itertools import combinations, product
from math import prod
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence

from loguru import logger

from config.config import get_settings
from core.errors import GuardExceededError, InconsistentInputError
from doctrines.base_doctrine import BaseDoctrine, Tri
from filters.family import Family, FamilyKind, check_family_axioms
from filters.generated import generator_list, require_exhaustive, generated_closure


def _leq(doctrine: BaseDoctrine, x: Any, a: Any, b: Any) -> bool:
    return doctrine.fiber_leq(x, a, b) is Tri.TRUE


def fiber_atoms(doctrine: BaseDoctrine, obj: Any) -> List[Any]:
    """Minimal non-bottom elements of a finite fiber"""
    bottom = doctrine.bottom(obj)
    nonzero = [e for e in doctrine.elements(obj) if not _leq(doctrine, obj, e, bottom)]
    return [
        e for e in nonzero
        if not any(_leq(doctrine, obj, b, e) and not _leq(doctrine, obj, e, b) for b in nonzero)
    ]


def up_set(doctrine: BaseDoctrine, obj: Any, element: Any) -> FrozenSet[Any]:
    return frozenset(b for b in doctrine.elements(obj) if _leq(doctrine, obj, element, b))


def down_set(doctrine: BaseDoctrine, obj: Any, element: Any) -> FrozenSet[Any]:
    return frozenset(b for b in doctrine.elements(obj) if _leq(doctrine, obj, b, element))


def filter_extension_meets(doctrine: BaseDoctrine, filt: Family, ideal: Family, target: Any, alpha: Any) -> bool:
    """
    Whether the filter generated by filt and alpha over target meets ideal:
    some beta in F_X and f_1..f_n: X -> target with beta /\\ f_1*(alpha) /\\ ... in I_X.
    """
    objects = require_exhaustive(doctrine)
    cat = doctrine.category
    for x in objects:
        homs = cat.enumerate_morphisms(x, target)
        for n in range(len(homs) + 1):
            for chosen in combinations(homs, n):
                image = doctrine.conj(x, [doctrine.reindex(f, alpha) for f in chosen])
                if any(ideal.contains(x, doctrine.meet(x, beta, image)) for beta in filt.members(x)):
                    return True
    return False


def ideal_extension_meets(doctrine: BaseDoctrine, filt: Family, ideal: Family, target: Any, alpha: Any) -> bool:
    """
    Whether the ideal generated by ideal and alpha over target meets filt:
    some component already meets, or pr1*(alpha) \\/ pr2*(gamma) is in F for a gamma in I_Z.
    """
    objects = require_exhaustive(doctrine)
    if any(filt.members(x) & ideal.members(x) for x in objects):
        return True
    cat = doctrine.category
    for z in objects:
        cone = cat.product(target, z)
        first, second = cone.projections
        lifted = doctrine.reindex(first, alpha)
        for gamma in ideal.members(z):
            if filt.contains(cone.obj, doctrine.join(cone.obj, lifted, doctrine.reindex(second, gamma))):
                return True
    return False


def extend_to_ultrafilter(doctrine: BaseDoctrine, filt: Family, ideal: Family) -> Family:
    """
    Universal ultrafilter containing filt and disjoint from ideal.

    Elements are visited object by object in fiber order; each undecided one
    joins the filter unless that would meet the ideal, in which case it joins
    the ideal.
    """
    objects = require_exhaustive(doctrine)
    for kind, family in ((FamilyKind.FILTER, filt), (FamilyKind.IDEAL, ideal)):
        report = check_family_axioms(kind, family)
        if not report.passed:
            failed = [c.clause for c in report.failures()]
            raise InconsistentInputError(f"input is not a universal {kind.value}: {failed}")
    if not filt.disjoint(ideal, objects):
        raise InconsistentInputError("filter and ideal are not disjoint")

    grown = filt.materialize(objects)
    shrunk = ideal.materialize(objects)
    for x in objects:
        for alpha in doctrine.elements(x):
            if grown.contains(x, alpha) or shrunk.contains(x, alpha):
                continue
            if not filter_extension_meets(doctrine, grown, shrunk, x, alpha):
                grown = generated_closure(doctrine, FamilyKind.FILTER, generator_list(grown) + [(x, alpha)])
                logger.debug(f"extend: {doctrine.render(alpha)} joins the filter")
            else:
                if ideal_extension_meets(doctrine, grown, shrunk, x, alpha):
                    raise InconsistentInputError(
                        f"{doctrine.render(alpha)} can join neither side; inputs are not a filter-ideal pair"
                    )
                shrunk = generated_closure(doctrine, FamilyKind.IDEAL, generator_list(shrunk) + [(x, alpha)])
                logger.debug(f"extend: {doctrine.render(alpha)} joins the ideal")

    result = Family(doctrine, {x: grown.members(x) for x in objects}, name="ultrafilter")
    report = check_family_axioms(FamilyKind.ULTRAFILTER, result)
    if not report.passed:
        raise InconsistentInputError(f"extension is not an ultrafilter: {[c.clause for c in report.failures()]}")
    logger.info(f"Extended to an ultrafilter over {len(objects)} objects")
    return result


def _enumerate(
    doctrine: BaseDoctrine,
    kind: FamilyKind,
    options: Dict[Any, List[FrozenSet[Any]]],
    guard: Optional[int],
) -> List[Family]:
    objects = list(options)
    total = prod(len(o) for o in options.values())
    limit = guard if guard is not None else get_settings().ultrafilter_guard
    if total > limit:
        raise GuardExceededError(f"{total} candidate {kind.value} families exceed the guard {limit}")
    logger.debug(f"Enumerating {total} candidate {kind.value} families")

    found, seen = [], set()
    for choice in product(*(options[x] for x in objects)):
        family = Family(doctrine, dict(zip(objects, choice)), name=kind.value)
        key = family.key(objects)
        if key in seen:
            continue
        seen.add(key)
        if check_family_axioms(kind, family).passed:
            found.append(family)
    logger.info(f"{len(found)} universal {kind.value} families out of {total} candidates")
    return found


def ultrafilters_of(doctrine: BaseDoctrine, guard: Optional[int] = None) -> List[Family]:
    """
    Every universal ultrafilter of a finite doctrine.

    Each component is principal at an atom or the whole fiber; products in
    the base are idempotent, so components are prime.
    """
    objects = require_exhaustive(doctrine)
    options = {
        x: [up_set(doctrine, x, a) for a in fiber_atoms(doctrine, x)] + [frozenset(doctrine.elements(x))]
        for x in objects
    }
    return _enumerate(doctrine, FamilyKind.ULTRAFILTER, options, guard)


def universal_filters_of(doctrine: BaseDoctrine, guard: Optional[int] = None) -> List[Family]:
    objects = require_exhaustive(doctrine)
    options = {x: [up_set(doctrine, x, e) for e in doctrine.elements(x)] for x in objects}
    return _enumerate(doctrine, FamilyKind.FILTER, options, guard)


def universal_ideals_of(doctrine: BaseDoctrine, guard: Optional[int] = None) -> List[Family]:
    objects = require_exhaustive(doctrine)
    options = {x: [frozenset()] + [down_set(doctrine, x, e) for e in doctrine.elements(x)] for x in objects}
    return _enumerate(doctrine, FamilyKind.IDEAL, options, guard)


def ultraideals_of(doctrine: BaseDoctrine, guard: Optional[int] = None) -> List[Family]:
    """Complements of the universal ultrafilters"""
    return [u.complement() for u in ultrafilters_of(doctrine, guard)]


def intersection_of(
    doctrine: BaseDoctrine,
    families: Iterable[Family],
    objects: Optional[Sequence[Any]] = None,
) -> Family:
    """Componentwise intersection; the empty intersection is every element"""
    objects = list(objects) if objects is not None else require_exhaustive(doctrine)
    members = {x: frozenset(doctrine.elements(x)) for x in objects}
    for family in families:
        for x in objects:
            members[x] = members[x] & family.members(x)
    return Family(doctrine, members, name="intersection")
