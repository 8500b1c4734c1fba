"""
Object-indexed families of fiber elements and the axiom checks of universal
filters, ideals, ultrafilters, ultraideals and filter-ideal pairs.
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from loguru import logger

from core.errors import MalformedFamilyError, UnboundedScopeError
from doctrines.base_doctrine import BaseDoctrine, Tri


class FamilyKind(Enum):
    FILTER = "filter"
    IDEAL = "ideal"
    ULTRAFILTER = "ultrafilter"
    ULTRAIDEAL = "ultraideal"
    PAIR = "pair"


class Family:
    """
    A family (F_X) with F_X a subset of the fiber over X.

    Either explicit (a finite set per object, missing objects are empty) or
    given by a membership predicate, as for validity in a model.
    """

    def __init__(
        self,
        doctrine: BaseDoctrine,
        members: Optional[Mapping[Any, Iterable[Any]]] = None,
        predicate: Optional[Callable[[Any, Any], bool]] = None,
        name: str = "",
    ):
        if (members is None) == (predicate is None):
            raise MalformedFamilyError("a family is either explicit or predicate-based")
        self.doctrine = doctrine
        self.name = name
        self._predicate = predicate
        self._members: Optional[Dict[Any, FrozenSet[Any]]] = None
        if members is not None:
            self._members = {}
            for obj, elements in members.items():
                self._members[obj] = frozenset(doctrine.require(obj, e) for e in elements)

    @property
    def explicit(self) -> bool:
        return self._members is not None

    def contains(self, obj: Any, element: Any) -> bool:
        if self._members is not None:
            return element in self._members.get(obj, frozenset())
        return bool(self._predicate(obj, element))

    def members(self, obj: Any) -> FrozenSet[Any]:
        """Component at obj; predicate families need a finite fiber"""
        if self._members is not None:
            return self._members.get(obj, frozenset())
        return frozenset(e for e in self.doctrine.elements(obj) if self._predicate(obj, e))

    def listed_objects(self) -> List[Any]:
        """Objects with an explicit component"""
        return list(self._members or {})

    def materialize(self, objects: Optional[Sequence[Any]] = None) -> "Family":
        objects = self._objects(objects)
        return Family(self.doctrine, {obj: self.members(obj) for obj in objects}, name=self.name)

    def complement(self) -> "Family":
        if self._members is None:
            predicate = self._predicate
            return Family(self.doctrine, predicate=lambda obj, e: not predicate(obj, e), name=f"~{self.name}")
        return Family(
            self.doctrine,
            {obj: [e for e in self.doctrine.elements(obj) if not self.contains(obj, e)] for obj in self._objects(None)},
            name=f"~{self.name}",
        )

    def issubset(self, other: "Family", objects: Optional[Sequence[Any]] = None) -> bool:
        return all(other.contains(obj, e) for obj in self._objects(objects) for e in self.members(obj))

    def disjoint(self, other: "Family", objects: Optional[Sequence[Any]] = None) -> bool:
        return not any(other.contains(obj, e) for obj in self._objects(objects) for e in self.members(obj))

    def _objects(self, objects: Optional[Sequence[Any]]) -> List[Any]:
        if objects is not None:
            return list(objects)
        found = self.doctrine.category.objects()
        if found is None:
            if self._members is None:
                raise UnboundedScopeError("objects must be listed for a predicate family over an infinite base")
            return list(self._members)
        return found

    def to_dict(self, objects: Optional[Sequence[Any]] = None) -> Dict[str, List[str]]:
        render = self.doctrine.render
        data = {}
        for obj in self._objects(objects):
            data[self.doctrine.category.render_object(obj)] = sorted(render(e) for e in self.members(obj))
        return data

    def key(self, objects: Optional[Sequence[Any]] = None) -> Tuple:
        return tuple((obj, self.members(obj)) for obj in self._objects(objects))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Family) or other.doctrine is not self.doctrine:
            return NotImplemented
        objects = self._objects(None)
        return self.key(objects) == other.key(objects)

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        label = self.name or ("explicit" if self.explicit else "predicate")
        return f"Family({label})"


@dataclass(frozen=True)
class CheckScope:
    """Objects, elements and morphism depth over which axiom clauses are evaluated"""
    objects: Tuple[Any, ...]
    elements: Mapping[Any, Tuple[Any, ...]]
    depth: int = 0
    max_conjuncts: Optional[int] = None

    @classmethod
    def exhaustive(cls, doctrine: BaseDoctrine) -> "CheckScope":
        objects = doctrine.category.objects()
        if objects is None:
            raise UnboundedScopeError(f"{doctrine.name} has infinitely many objects; give an explicit scope")
        return cls(tuple(objects), {obj: tuple(doctrine.elements(obj)) for obj in objects})

    def elements_of(self, obj: Any) -> Tuple[Any, ...]:
        return tuple(self.elements.get(obj, ()))


@dataclass(frozen=True)
class ClauseCheck:
    clause: str
    passed: bool
    instances: int
    counterexample: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class AxiomReport:
    kind: FamilyKind
    clauses: Tuple[ClauseCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    @property
    def instances(self) -> int:
        return sum(c.instances for c in self.clauses)

    def failures(self) -> List[ClauseCheck]:
        return [c for c in self.clauses if not c.passed]

    def clause(self, name: str) -> ClauseCheck:
        return next(c for c in self.clauses if c.clause == name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "passed": self.passed,
            "clauses": [
                {"clause": c.clause, "passed": c.passed, "instances": c.instances, "counterexample": c.counterexample}
                for c in self.clauses
            ],
        }


class _ClauseRunner:
    """Evaluates one clause over the scope, stopping at the first counterexample"""

    def __init__(self, name: str):
        self.name = name
        self.instances = 0
        self.counterexample: Optional[Dict[str, Any]] = None

    def check(self, ok: bool, **data: Any) -> bool:
        self.instances += 1
        if not ok and self.counterexample is None:
            self.counterexample = data
        return ok

    @property
    def failed(self) -> bool:
        return self.counterexample is not None

    def result(self, prefix: str = "") -> ClauseCheck:
        return ClauseCheck(prefix + self.name, not self.failed, self.instances, self.counterexample or {})


class _Checker:
    def __init__(self, doctrine: BaseDoctrine, scope: CheckScope):
        self.d = doctrine
        self.cat = doctrine.category
        self.scope = scope

    def obj(self, x: Any) -> str:
        return self.cat.render_object(x)

    def el(self, e: Any) -> str:
        return self.d.render(e)

    def leq(self, x: Any, a: Any, b: Any) -> bool:
        return self.d.fiber_leq(x, a, b, refute=False) is Tri.TRUE

    def morphisms(self, x: Any, y: Any) -> List[Any]:
        return self.cat.enumerate_morphisms(x, y, self.scope.depth)

    def morphism_sets(self, x: Any, y: Any) -> Iterator[Tuple[Any, ...]]:
        """Sets of distinct morphisms x -> y, the empty set included"""
        homs = self.morphisms(x, y)
        limit = len(homs) if self.scope.max_conjuncts is None else min(len(homs), self.scope.max_conjuncts)
        for m in range(limit + 1):
            yield from combinations(homs, m)

    def pairs(self) -> Iterator[Tuple[Any, Any]]:
        for x in self.scope.objects:
            for y in self.scope.objects:
                yield x, y

    # -- filter side --------------------------------------------------------

    def reindex_closed(self, family: Family) -> _ClauseRunner:
        run = _ClauseRunner("reindex")
        for x, y in self.pairs():
            for f in self.morphisms(x, y):
                for alpha in self.scope.elements_of(y):
                    if not family.contains(y, alpha):
                        continue
                    image = self.d.reindex(f, alpha)
                    if not run.check(family.contains(x, image), morphism=self.cat.render_morphism(f),
                                     element=self.el(alpha), object=self.obj(x)):
                        return run
        return run

    def filter_clauses(self, family: Family, negated: bool = False) -> List[_ClauseRunner]:
        """Fiberwise filter clauses; negated checks that the complement is a filter"""
        inside = (lambda x, e: not family.contains(x, e)) if negated else family.contains
        upward, meets, top = _ClauseRunner("upward"), _ClauseRunner("meet"), _ClauseRunner("top")
        for x in self.scope.objects:
            elements = self.scope.elements_of(x)
            top.check(inside(x, self.d.top(x)), object=self.obj(x))
            members = [e for e in elements if inside(x, e)]
            for a in members:
                for b in elements:
                    if not upward.failed and self.leq(x, a, b):
                        upward.check(inside(x, b), object=self.obj(x), lower=self.el(a), upper=self.el(b))
                for b in members:
                    if not meets.failed:
                        meets.check(inside(x, self.d.meet(x, a, b)), object=self.obj(x),
                                    left=self.el(a), right=self.el(b))
        return [upward, meets, top]

    def prime(self, family: Family) -> _ClauseRunner:
        run = _ClauseRunner("prime")
        for x1, x2 in self.pairs():
            cone = self.cat.product(x1, x2)
            p1, p2 = cone.projections
            for a1 in self.scope.elements_of(x1):
                if family.contains(x1, a1):
                    continue
                for a2 in self.scope.elements_of(x2):
                    if family.contains(x2, a2):
                        continue
                    joined = self.d.join(cone.obj, self.d.reindex(p1, a1), self.d.reindex(p2, a2))
                    if not run.check(not family.contains(cone.obj, joined), left=self.el(a1), right=self.el(a2),
                                     objects=[self.obj(x1), self.obj(x2)]):
                        return run
        return run

    def bottom(self, family: Family, expected: bool) -> _ClauseRunner:
        run = _ClauseRunner("bottom")
        t = self.cat.terminal
        run.check(family.contains(t, self.d.bottom(t)) == expected, object=self.obj(t))
        return run

    # -- ideal side ---------------------------------------------------------

    def conjunction_reflected(self, family: Family, name: str = "conjunction", single: bool = False) -> _ClauseRunner:
        """if /\\ f_j*(alpha) in I_X then alpha in I_Y; single restricts to one morphism"""
        run = _ClauseRunner(name)
        for x, y in self.pairs():
            sets = [(f,) for f in self.morphisms(x, y)] if single else self.morphism_sets(x, y)
            for fs in sets:
                for alpha in self.scope.elements_of(y):
                    if family.contains(y, alpha):
                        continue
                    image = self.d.conj(x, [self.d.reindex(f, alpha) for f in fs])
                    if not run.check(not family.contains(x, image), object=self.obj(x), target=self.obj(y),
                                     morphisms=[self.cat.render_morphism(f) for f in fs], element=self.el(alpha)):
                        return run
        return run

    def downward(self, family: Family) -> _ClauseRunner:
        run = _ClauseRunner("downward")
        for x in self.scope.objects:
            elements = self.scope.elements_of(x)
            for a in elements:
                if not family.contains(x, a):
                    continue
                for b in elements:
                    if self.leq(x, b, a) and not run.check(family.contains(x, b), object=self.obj(x),
                                                           upper=self.el(a), lower=self.el(b)):
                        return run
        return run

    def joins(self, family: Family) -> _ClauseRunner:
        run = _ClauseRunner("join")
        for x1, x2 in self.pairs():
            cone = self.cat.product(x1, x2)
            p1, p2 = cone.projections
            for a1 in self.scope.elements_of(x1):
                if not family.contains(x1, a1):
                    continue
                for a2 in self.scope.elements_of(x2):
                    if not family.contains(x2, a2):
                        continue
                    joined = self.d.join(cone.obj, self.d.reindex(p1, a1), self.d.reindex(p2, a2))
                    if not run.check(family.contains(cone.obj, joined), left=self.el(a1), right=self.el(a2),
                                     objects=[self.obj(x1), self.obj(x2)]):
                        return run
        return run

    # -- pairs --------------------------------------------------------------

    def connecting_one(self, filt: Family, ideal: Family) -> _ClauseRunner:
        """beta & /\\ f_i*(alpha) in I_X with beta in F_X forces alpha in I_Y"""
        run = _ClauseRunner("connecting-1")
        for x, y in self.pairs():
            betas = [b for b in self.scope.elements_of(x) if filt.contains(x, b)]
            for alpha in self.scope.elements_of(y):
                if ideal.contains(y, alpha):
                    continue
                for fs in self.morphism_sets(x, y):
                    image = self.d.conj(x, [self.d.reindex(f, alpha) for f in fs])
                    for beta in betas:
                        if not run.check(not ideal.contains(x, self.d.meet(x, beta, image)), object=self.obj(x),
                                         target=self.obj(y), element=self.el(alpha), beta=self.el(beta),
                                         morphisms=[self.cat.render_morphism(f) for f in fs]):
                            return run
        return run

    def connecting_two(self, filt: Family, ideal: Family) -> _ClauseRunner:
        """pr1*(alpha) | pr2*(gamma) in F with gamma in I_Z forces alpha in F_Y"""
        run = _ClauseRunner("connecting-2")
        for y, z in self.pairs():
            cone = self.cat.product(y, z)
            p1, p2 = cone.projections
            gammas = [g for g in self.scope.elements_of(z) if ideal.contains(z, g)]
            for alpha in self.scope.elements_of(y):
                if filt.contains(y, alpha):
                    continue
                for gamma in gammas:
                    joined = self.d.join(cone.obj, self.d.reindex(p1, alpha), self.d.reindex(p2, gamma))
                    if not run.check(not filt.contains(cone.obj, joined), element=self.el(alpha),
                                     gamma=self.el(gamma), objects=[self.obj(y), self.obj(z)]):
                        return run
        return run


def check_family_axioms(
    kind: FamilyKind,
    data: Any,
    scope: Optional[CheckScope] = None,
) -> AxiomReport:
    """
    Evaluate every clause of the named definition over the scope.

    Args:
        kind: which definition to check
        data: a Family, or a (filter, ideal) tuple for PAIR
        scope: defaults to the whole doctrine on exhaustive backends
    """
    kind = FamilyKind(kind)
    first = data[0] if kind is FamilyKind.PAIR else data
    doctrine = first.doctrine
    scope = scope or CheckScope.exhaustive(doctrine)
    checker = _Checker(doctrine, scope)

    if kind is FamilyKind.FILTER:
        runs = [checker.reindex_closed(data)] + checker.filter_clauses(data)
    elif kind is FamilyKind.ULTRAFILTER:
        runs = [checker.reindex_closed(data)] + checker.filter_clauses(data) + [
            checker.prime(data), checker.bottom(data, expected=False)
        ]
    elif kind is FamilyKind.IDEAL:
        runs = [checker.conjunction_reflected(data), checker.downward(data), checker.joins(data),
                checker.bottom(data, expected=True)]
    elif kind is FamilyKind.ULTRAIDEAL:
        runs = [checker.conjunction_reflected(data, "reflect", single=True)] + [
            _rename(r, "complement-") for r in checker.filter_clauses(data, negated=True)
        ] + [checker.joins(data), checker.bottom(data, expected=True)]
    else:
        filt, ideal = data
        filter_report = check_family_axioms(FamilyKind.FILTER, filt, scope)
        ideal_report = check_family_axioms(FamilyKind.IDEAL, ideal, scope)
        clauses = tuple(
            ClauseCheck("filter:" + c.clause, c.passed, c.instances, c.counterexample) for c in filter_report.clauses
        ) + tuple(
            ClauseCheck("ideal:" + c.clause, c.passed, c.instances, c.counterexample) for c in ideal_report.clauses
        ) + (checker.connecting_one(filt, ideal).result(), checker.connecting_two(filt, ideal).result())
        report = AxiomReport(kind, clauses)
        logger.info(f"{kind.value} check: {'pass' if report.passed else 'fail'} over {report.instances} instances")
        return report

    report = AxiomReport(kind, tuple(r.result() for r in runs))
    logger.info(f"{kind.value} check: {'pass' if report.passed else 'fail'} over {report.instances} instances")
    return report


def _rename(run: _ClauseRunner, prefix: str) -> _ClauseRunner:
    run.name = prefix + run.name
    return run
