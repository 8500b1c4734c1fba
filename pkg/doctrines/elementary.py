"""
Fibered equality: checks that a family delta_X in P(X x X) makes a doctrine elementary.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from core.errors import UnboundedScopeError
from doctrines.base_doctrine import BaseDoctrine, Tri
from doctrines.subsets import SubsetsDoctrine


@dataclass(frozen=True)
class EqualityFamily:
    """delta_X for each object X, computed on demand"""
    at: Callable[[Any], Any]

    @classmethod
    def from_mapping(cls, table: Mapping[Any, Any]) -> "EqualityFamily":
        return cls(lambda obj: table[obj])

    @classmethod
    def diagonal(cls, doctrine: SubsetsDoctrine) -> "EqualityFamily":
        return cls(doctrine.diagonal)

    @classmethod
    def top(cls, doctrine: BaseDoctrine) -> "EqualityFamily":
        return cls(lambda obj: doctrine.top(doctrine.category.product(obj, obj).obj))


@dataclass(frozen=True)
class ConditionResult:
    name: str
    passed: bool
    counterexample: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ElementaryReport:
    conditions: Tuple[ConditionResult, ...]

    def condition(self, name: str) -> ConditionResult:
        return next(c for c in self.conditions if c.name == name)

    @property
    def passed(self) -> bool:
        """Reflexivity, substitutivity and pairing; symmetry is a consequence"""
        return all(c.passed for c in self.conditions if c.name != "symmetry")


def _holds(doctrine: BaseDoctrine, obj: Any, a: Any, b: Any) -> bool:
    return doctrine.fiber_leq(obj, a, b) is Tri.TRUE


def _reflexivity(doctrine: BaseDoctrine, delta: EqualityFamily, objects: Sequence[Any]) -> ConditionResult:
    cat = doctrine.category
    for x in objects:
        square = cat.product(x, x)
        diagonal = cat.pair(square, [cat.identity(x), cat.identity(x)], x)
        if not _holds(doctrine, x, doctrine.top(x), doctrine.reindex(diagonal, delta.at(x))):
            return ConditionResult("reflexivity", False, {"object": cat.render_object(x)})
    return ConditionResult("reflexivity", True)


def _substitutivity(doctrine: BaseDoctrine, delta: EqualityFamily, objects: Sequence[Any]) -> ConditionResult:
    cat = doctrine.category
    for x in objects:
        square = cat.product(x, x)
        first, second = square.projections
        for alpha in doctrine.elements(x):
            lhs = doctrine.meet(square.obj, doctrine.reindex(first, alpha), delta.at(x))
            if not _holds(doctrine, square.obj, lhs, doctrine.reindex(second, alpha)):
                return ConditionResult(
                    "substitutivity", False,
                    {"object": cat.render_object(x), "element": doctrine.render(alpha)},
                )
    return ConditionResult("substitutivity", True)


def _pairing(doctrine: BaseDoctrine, delta: EqualityFamily, objects: Sequence[Any]) -> ConditionResult:
    cat = doctrine.category
    for x in objects:
        for y in objects:
            w = cat.product_of([x, y, x, y])
            p1, p2, p3, p4 = w.projections
            xy = cat.product(x, y)
            left = doctrine.reindex(cat.pair(cat.product(x, x), [p1, p3], w.obj), delta.at(x))
            right = doctrine.reindex(cat.pair(cat.product(y, y), [p2, p4], w.obj), delta.at(y))
            regroup = cat.pair(
                cat.product(xy.obj, xy.obj),
                [cat.pair(xy, [p1, p2], w.obj), cat.pair(xy, [p3, p4], w.obj)],
                w.obj,
            )
            goal = doctrine.reindex(regroup, delta.at(xy.obj))
            if not _holds(doctrine, w.obj, doctrine.meet(w.obj, left, right), goal):
                return ConditionResult(
                    "pairing", False,
                    {"object": cat.render_object(x), "other": cat.render_object(y)},
                )
    return ConditionResult("pairing", True)


def _symmetry(doctrine: BaseDoctrine, delta: EqualityFamily, objects: Sequence[Any]) -> ConditionResult:
    cat = doctrine.category
    for x in objects:
        square = cat.product(x, x)
        first, second = square.projections
        swap = cat.pair(square, [second, first], square.obj)
        if not _holds(doctrine, square.obj, delta.at(x), doctrine.reindex(swap, delta.at(x))):
            return ConditionResult("symmetry", False, {"object": cat.render_object(x)})
    return ConditionResult("symmetry", True)


def check_elementary(
    doctrine: BaseDoctrine,
    delta: EqualityFamily,
    objects: Optional[Sequence[Any]] = None,
) -> ElementaryReport:
    """
    Evaluate reflexivity, substitutivity, pairing (and the symmetry consequence)
    over the given objects, or over all objects of a finite base.
    """
    if objects is None:
        objects = doctrine.category.objects()
        if objects is None:
            raise UnboundedScopeError("an explicit object scope is required for an infinite base")
    objects = list(objects)
    report = ElementaryReport((
        _reflexivity(doctrine, delta, objects),
        _substitutivity(doctrine, delta, objects),
        _pairing(doctrine, delta, objects),
        _symmetry(doctrine, delta, objects),
    ))
    logger.info(f"Elementary check on {len(objects)} objects: {[(c.name, c.passed) for c in report.conditions]}")
    return report


def check_boolean_laws(
    doctrine: BaseDoctrine,
    obj: Any,
    samples: Optional[Sequence[Any]] = None,
) -> List[ConditionResult]:
    """
    Spot-check lattice and complement laws on a fiber.

    Args:
        samples: elements to combine; defaults to the whole fiber
    """
    elements = list(samples) if samples is not None else doctrine.elements(obj)
    top, bottom = doctrine.top(obj), doctrine.bottom(obj)

    def same(a: Any, b: Any) -> bool:
        return doctrine.equivalent(obj, a, b) is Tri.TRUE

    laws: Dict[str, Callable[[Any, Any], bool]] = {
        "meet-commutative": lambda a, b: same(doctrine.meet(obj, a, b), doctrine.meet(obj, b, a)),
        "join-commutative": lambda a, b: same(doctrine.join(obj, a, b), doctrine.join(obj, b, a)),
        "absorption": lambda a, b: same(doctrine.meet(obj, a, doctrine.join(obj, a, b)), a),
        "distributive": lambda a, b: same(
            doctrine.meet(obj, a, doctrine.join(obj, b, doctrine.negate(obj, a))),
            doctrine.meet(obj, a, b),
        ),
        "complement": lambda a, b: same(doctrine.join(obj, a, doctrine.negate(obj, a)), top)
        and same(doctrine.meet(obj, a, doctrine.negate(obj, a)), bottom),
        "bounds": lambda a, b: _holds(doctrine, obj, bottom, a) and _holds(doctrine, obj, a, top),
    }
    results = []
    for name, law in laws.items():
        failure = next(((a, b) for a in elements for b in elements if not law(a, b)), None)
        if failure is None:
            results.append(ConditionResult(name, True))
        else:
            results.append(ConditionResult(
                name, False, {"left": doctrine.render(failure[0]), "right": doctrine.render(failure[1])}
            ))
    return results
