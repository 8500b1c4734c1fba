"""
Syntactic doctrine of a universal theory.

Fibers are quantifier-free formulas in context n; the order is provable
consequence modulo the theory, approximated by Herbrand grounding plus
propositional entailment (sound) and bounded countermodel search.
"""
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from loguru import logger

from core.boolean import BOT, TOP, And, Or, negate
from core.category import Ctx, CtxMorphism
from core.errors import DoctrineError, MorphismMismatchError
from core.sat import prop_entails
from core.structures import Point, Structure, enumerate_structures
from core.terms import Signature, check_formula, context_size, formula_symbols, substitute
from doctrines.base_doctrine import BaseDoctrine, Tri, Verdict


@dataclass(frozen=True)
class PointedStructure:
    """A structure with an assignment of the context variables"""
    structure: Structure
    point: Point

    def to_dict(self) -> Dict[str, Any]:
        return {"model": self.structure.to_dict(), "point": [p + 1 for p in self.point]}


class SyntacticDoctrine(BaseDoctrine):
    """Quantifier-free formulas of a signature ordered by a universal theory"""

    def __init__(
        self,
        signature: Signature,
        axioms: Sequence[Any] = (),
        instantiation_depth: int = 2,
        model_search_bound: int = 3,
    ):
        super().__init__("syntactic", Ctx(signature))
        self.signature = signature
        for axiom in axioms:
            check_formula(signature, axiom, None)
        self.axioms: Tuple[Any, ...] = tuple(axioms)
        self.instantiation_depth = instantiation_depth
        self.model_search_bound = model_search_bound
        self._groundings: Dict[int, Tuple[Any, ...]] = {}
        self._models: Dict[Tuple[FrozenSet[str], FrozenSet[str], int], List[Structure]] = {}

    def with_bounds(self, instantiation_depth: Optional[int] = None, model_search_bound: Optional[int] = None) -> "SyntacticDoctrine":
        return SyntacticDoctrine(
            self.signature,
            self.axioms,
            self.instantiation_depth if instantiation_depth is None else instantiation_depth,
            self.model_search_bound if model_search_bound is None else model_search_bound,
        )

    def contains(self, n: int, phi: Any) -> bool:
        try:
            check_formula(self.signature, phi, n)
        except DoctrineError:
            return False
        return True

    def top(self, n: int) -> Any:
        return TOP

    def bottom(self, n: int) -> Any:
        return BOT

    def meet(self, n: int, a: Any, b: Any) -> Any:
        return And(a, b)

    def join(self, n: int, a: Any, b: Any) -> Any:
        return Or(a, b)

    def negate(self, n: int, a: Any) -> Any:
        return negate(a)

    def reindex(self, f: CtxMorphism, phi: Any) -> Any:
        if not self.contains(f.target, phi):
            raise MorphismMismatchError(f"{phi} is not a formula in context {f.target}")
        return substitute(phi, f.components, f.source)

    def ground_axioms(self, n: int) -> Tuple[Any, ...]:
        """Instances of every axiom at all term tuples over context n up to the instantiation depth"""
        if n not in self._groundings:
            instances = []
            for axiom in self.axioms:
                k = context_size(axiom)
                for sigma in self.category.enumerate_morphisms(n, k, self.instantiation_depth):
                    instances.append(substitute(axiom, sigma.components, n))
            self._groundings[n] = tuple(dict.fromkeys(instances))
            logger.debug(f"Grounded {len(self.axioms)} axioms into {len(instances)} instances over context {n}")
        return self._groundings[n]

    def decide(self, n: int, a: Any, b: Any, refute: bool = True) -> Verdict:
        if prop_entails(list(self.ground_axioms(n)) + [a], b):
            return Verdict(Tri.TRUE, reason="grounded entailment")
        if not refute:
            return Verdict(Tri.UNKNOWN, reason="not entailed at instantiation depth")
        countermodel = self.find_countermodel(n, [a], [b])
        if countermodel is not None:
            return Verdict(Tri.FALSE, countermodel, reason="countermodel")
        return Verdict(Tri.UNKNOWN, reason=f"no countermodel up to size {self.model_search_bound}")

    def models_of_theory(self, bound: Optional[int] = None, relevant: Sequence[Any] = ()) -> List[Structure]:
        """
        Models of the theory up to the carrier bound, restricted to the symbols
        of the axioms and of the relevant formulas.
        """
        bound = self.model_search_bound if bound is None else bound
        functions, predicates = set(), set()
        for phi in list(self.axioms) + list(relevant):
            f, p = formula_symbols(phi)
            functions |= f
            predicates |= p
        key = (frozenset(functions), frozenset(predicates), bound)
        if key not in self._models:
            restricted = self.signature.restrict(functions, predicates)
            self._models[key] = list(
                enumerate_structures(restricted, self.axioms, bound, require_nonempty=self.signature.has_constants)
            )
            logger.debug(f"{len(self._models[key])} models of the theory up to size {bound} on {sorted(functions | predicates)}")
        return self._models[key]

    def find_countermodel(self, n: int, hypotheses: Sequence[Any], goals: Sequence[Any]) -> Optional[PointedStructure]:
        """First (structure, point) making every hypothesis true and every goal false"""
        for structure in self.models_of_theory(relevant=list(hypotheses) + list(goals)):
            for point in structure.points(n):
                if all(structure.holds(h, point) for h in hypotheses) and not any(structure.holds(g, point) for g in goals):
                    return PointedStructure(structure, point)
        return None
