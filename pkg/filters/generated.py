"""
Universal filters and ideals generated by explicit elements: bounded
membership search with certificates, intersection witnesses, and exact
closure on exhaustive backends.
"""
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional, Sequence, Set, Tuple

from loguru import logger

from core.errors import MalformedFamilyError, NonFiniteDoctrineError, UnboundedScopeError
from doctrines.base_doctrine import BaseDoctrine, Tri
from filters.family import Family, FamilyKind
from filters.search import Bounds, DefinitelyDisjoint, HerbrandProblem, Indexed, Outcome, SearchTrace, Witness


@dataclass(frozen=True)
class Membership:
    """Answer of a generated-membership query with its certificate"""
    status: Tri
    generators: Tuple[Indexed, ...] = ()
    witness: Optional[Witness] = None
    trace: SearchTrace = field(default_factory=SearchTrace, compare=False, repr=False)

    def certificate(self) -> Dict[str, Any]:
        if self.witness is None:
            return {}
        data = self.witness.to_dict()
        data["generators"] = [[str(obj), str(e)] for obj, e in self.generators]
        return data


def generator_list(generators: Any) -> List[Indexed]:
    """Accept a list of (object, element) pairs or a mapping object -> elements"""
    if isinstance(generators, Family):
        if not generators.explicit:
            raise MalformedFamilyError("generators must be listed explicitly")
        objects = generators.doctrine.category.objects() or generators.listed_objects()
        return [(obj, e) for obj in objects for e in sorted(generators.members(obj), key=generators.doctrine.render)]
    if isinstance(generators, Mapping):
        return [(obj, e) for obj, elements in generators.items() for e in elements]
    return list(generators)


def generated_intersect(
    doctrine: BaseDoctrine,
    alphas: Sequence[Indexed],
    betas: Sequence[Indexed],
    bounds: Optional[Bounds] = None,
) -> Outcome:
    """
    Least witness that the filter generated by the alphas meets the ideal generated by the betas.

    A witness gives picks l_1..l_n and g_i: Z_1 x ... x Z_m -> Y_{l_i} with
    /\\ g_i*(alpha_{l_i}) <= \\/ pr_j*(beta_j).
    """
    bounds = bounds or Bounds.from_settings()
    problem = HerbrandProblem(doctrine, None, universal_premises=alphas, universal_conclusions=betas)
    return problem.search(bounds)


def generated_membership(
    doctrine: BaseDoctrine,
    kind: FamilyKind,
    generators: Any,
    obj: Any,
    phi: Any,
    bounds: Optional[Bounds] = None,
) -> Membership:
    """
    Whether phi over obj belongs to the universal filter or ideal generated by the generators.

    Filter: some /\\ f_i*(alpha_i) <= phi with f_i: obj -> Y_i.
    Ideal: some /\\ f_j*(phi) <= \\/ pr_i*(alpha_i) with f_j: Y_1 x ... x Y_n -> obj.
    """
    kind = FamilyKind(kind)
    bounds = bounds or Bounds.from_settings()
    listed = generator_list(generators)
    doctrine.require(obj, phi)
    if kind is FamilyKind.FILTER:
        outcome = generated_intersect(doctrine, listed, [(obj, phi)], bounds)
    elif kind is FamilyKind.IDEAL:
        outcome = generated_intersect(doctrine, [(obj, phi)], listed, bounds)
    else:
        raise MalformedFamilyError(f"membership is defined for filters and ideals, not {kind.value}")

    if isinstance(outcome, Witness):
        status = Tri.TRUE
    elif isinstance(outcome, DefinitelyDisjoint):
        status = Tri.FALSE
    else:
        status = Tri.UNKNOWN
    logger.debug(f"generated {kind.value} membership of {doctrine.render(phi)}: {status.value}")
    return Membership(status, tuple(listed), outcome if status is Tri.TRUE else None, outcome.trace)


def require_exhaustive(doctrine: BaseDoctrine) -> List[Any]:
    objects = doctrine.category.objects()
    if objects is None:
        raise UnboundedScopeError(f"{doctrine.name} has infinitely many objects")
    if not doctrine.exhaustive:
        raise NonFiniteDoctrineError(f"{doctrine.name} does not support exact closures")
    return objects


def generated_closure(doctrine: BaseDoctrine, kind: FamilyKind, generators: Any) -> Family:
    """
    The universal filter or ideal generated by the generators, by saturating
    the defining clauses until nothing changes.
    """
    kind = FamilyKind(kind)
    objects = require_exhaustive(doctrine)
    cat = doctrine.category
    members: Dict[Any, Set[Any]] = {obj: set() for obj in objects}
    for obj, e in generator_list(generators):
        members[obj].add(doctrine.require(obj, e))

    def leq(x: Any, a: Any, b: Any) -> bool:
        return doctrine.fiber_leq(x, a, b) is Tri.TRUE

    homs = {(x, y): cat.enumerate_morphisms(x, y) for x in objects for y in objects}
    rounds, changed = 0, True
    while changed:
        rounds += 1
        before = sum(len(s) for s in members.values())
        if kind is FamilyKind.FILTER:
            for x in objects:
                members[x].add(doctrine.top(x))
            for (x, y), fs in homs.items():
                for f in fs:
                    members[x].update(doctrine.reindex(f, a) for a in list(members[y]))
            for x in objects:
                current = list(members[x])
                members[x].update(doctrine.meet(x, a, b) for a in current for b in current)
                members[x].update(b for a in list(members[x]) for b in doctrine.elements(x) if leq(x, a, b))
        elif kind is FamilyKind.IDEAL:
            t = cat.terminal
            members[t].add(doctrine.bottom(t))
            for (x, y), fs in homs.items():
                for m in range(len(fs) + 1):
                    for chosen in combinations(fs, m):
                        for alpha in doctrine.elements(y):
                            image = doctrine.conj(x, [doctrine.reindex(f, alpha) for f in chosen])
                            if image in members[x]:
                                members[y].add(alpha)
            for x in objects:
                members[x].update(b for a in list(members[x]) for b in doctrine.elements(x) if leq(x, b, a))
            for x1 in objects:
                for x2 in objects:
                    cone = cat.product(x1, x2)
                    p1, p2 = cone.projections
                    members[cone.obj].update(
                        doctrine.join(cone.obj, doctrine.reindex(p1, a1), doctrine.reindex(p2, a2))
                        for a1 in list(members[x1]) for a2 in list(members[x2])
                    )
        else:
            raise MalformedFamilyError(f"closure is defined for filters and ideals, not {kind.value}")
        changed = sum(len(s) for s in members.values()) != before

    logger.debug(f"generated {kind.value} closure saturated after {rounds} rounds")
    return Family(doctrine, members, name=f"generated {kind.value}")
