"""
Concrete propositional models for each doctrine backend.
"""
from itertools import product
from typing import Any, Dict, FrozenSet, List, Mapping, Sequence

from core.category import ProductCone
from core.errors import DoctrineDefinitionError, MorphismMismatchError
from core.structures import Structure
from doctrines.base_doctrine import BaseDoctrine
from doctrines.constants import ConstantAdjoinedDoctrine
from doctrines.finite import FiniteDoctrine
from doctrines.subsets import SubsetsDoctrine
from doctrines.syntactic import SyntacticDoctrine
from models.base_model import ModelAtS, PropModel, model_at_s_eval


class StructureModel(PropModel):
    """M(n) = carrier^n, a term tuple acts by evaluation, m_n(phi) = points where phi holds"""

    def __init__(self, doctrine: SyntacticDoctrine, structure: Structure):
        super().__init__(doctrine, name=f"structure[{structure.size}]")
        self.structure = structure
        self._cache: Dict[Any, FrozenSet[Any]] = {}

    def carrier(self, n: int) -> List[Any]:
        return list(self.structure.points(n))

    def apply(self, f: Any, point: Any) -> Any:
        return tuple(self.structure.term_value(t, point) for t in f.components)

    def interpret(self, n: int, phi: Any) -> FrozenSet[Any]:
        key = (n, phi)
        if key not in self._cache:
            self._cache[key] = frozenset(p for p in self.structure.points(n) if self.structure.holds(phi, p))
        return self._cache[key]

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        return tuple(v for p in points for v in p)

    def to_dict(self) -> Dict[str, Any]:
        return self.structure.to_dict()


class TabularModel(PropModel):
    """
    Model of a finite doctrine over a semilattice.

    Carriers are empty or the one-point set {()}. The inhabited objects form
    an up-set closed under meets, and each of them picks one atom; the picks
    must agree with the atom maps along x -> y.
    """

    def __init__(self, doctrine: FiniteDoctrine, choice: Mapping[str, str]):
        super().__init__(doctrine, name="tabular")
        base = doctrine.base
        self.choice = dict(choice)
        if base.terminal not in self.choice:
            raise DoctrineDefinitionError("the terminal object must be inhabited")
        for x, atom in self.choice.items():
            if atom not in doctrine.atoms[x]:
                raise DoctrineDefinitionError(f"{atom} is not an atom over {x}")
            for y in base.elements:
                if base.is_leq(x, y):
                    if y not in self.choice:
                        raise DoctrineDefinitionError(f"{x} is inhabited but {y} above it is not")
                    if doctrine.atom_map(base.arrow(x, y))[atom] != self.choice[y]:
                        raise DoctrineDefinitionError(f"atom choice is not natural along {x}->{y}")
            for y in self.choice:
                if base.meet(x, y) not in self.choice:
                    raise DoctrineDefinitionError(f"{x} and {y} are inhabited but their meet is not")

    def carrier(self, obj: str) -> List[Any]:
        return [()] if obj in self.choice else []

    def apply(self, f: Any, point: Any) -> Any:
        return ()

    def interpret(self, obj: str, element: Any) -> FrozenSet[Any]:
        if obj in self.choice and self.choice[obj] in element:
            return frozenset({()})
        return frozenset()

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        return ()

    def to_dict(self) -> Dict[str, Any]:
        return {"model": self.name, "inhabited": dict(sorted(self.choice.items()))}


class IdentityModel(PropModel):
    """The subsets doctrine read as a model of itself"""

    def __init__(self, doctrine: SubsetsDoctrine):
        super().__init__(doctrine, name="identity")

    def carrier(self, obj: Any) -> List[Any]:
        return list(obj.elements)

    def apply(self, f: Any, point: Any) -> Any:
        return f(point)

    def interpret(self, obj: Any, element: Any) -> FrozenSet[Any]:
        return frozenset(element)

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        if len(cone.factors) == 1:
            return points[0]
        return tuple(points)


class PowerModel(PropModel):
    """
    M(X) = K-indexed tuples over X with M(f) coordinatewise; a tuple lies in
    m_X(A) when its k0 coordinate lies in A.
    """

    def __init__(self, doctrine: SubsetsDoctrine, indices: Sequence[Any], selected: Any):
        super().__init__(doctrine, name=f"power[{len(indices)}]")
        self.indices = tuple(indices)
        if selected not in self.indices:
            raise MorphismMismatchError(f"{selected!r} is not one of the indices {self.indices}")
        self.position = self.indices.index(selected)

    def carrier(self, obj: Any) -> List[Any]:
        return list(product(obj.elements, repeat=len(self.indices)))

    def apply(self, f: Any, point: Any) -> Any:
        return tuple(f(v) for v in point)

    def interpret(self, obj: Any, element: Any) -> FrozenSet[Any]:
        return frozenset(p for p in self.carrier(obj) if p[self.position] in element)

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        if len(cone.factors) == 1:
            return points[0]
        return tuple(tuple(p[i] for p in points) for i in range(len(self.indices)))


class InducedModel(PropModel):
    """The model of P_S determined by a model of P at S"""

    def __init__(self, mas: ModelAtS, doctrine: ConstantAdjoinedDoctrine):
        if doctrine.base is not mas.model.doctrine or doctrine.fixed != mas.fixed:
            raise MorphismMismatchError("model at S and constant-adjoined doctrine disagree on P or S")
        super().__init__(doctrine, name=f"{mas.model.name}@s")
        self.mas = mas
        self.base = mas.model

    def carrier(self, obj: Any) -> List[Any]:
        return self.base.carrier(obj)

    def apply(self, f: Any, point: Any) -> Any:
        widened = self.base.pair_point(self.doctrine.category.over(f.source), [self.mas.point, point])
        return self.base.apply(f.underlying, widened)

    def interpret(self, obj: Any, element: Any) -> FrozenSet[Any]:
        return model_at_s_eval(self.mas, obj, element)

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        return self.base.pair_point(self.base.doctrine.category.product_of(cone.factors), points)

    def to_dict(self) -> Dict[str, Any]:
        return self.mas.to_dict()


class HomModel(PropModel):
    """
    M = Hom(t, -) with M(f) postcomposition and m_X(alpha) the constants c
    with c*(alpha) in the family at t. Hom-sets are cut at the given term depth.
    """

    def __init__(self, doctrine: BaseDoctrine, family: Any, depth: int = 0):
        super().__init__(doctrine, name="hom")
        self.family = family
        self.depth = depth
        self.terminal = doctrine.category.terminal

    def carrier(self, obj: Any) -> List[Any]:
        return self.doctrine.category.enumerate_morphisms(self.terminal, obj, self.depth)

    def apply(self, f: Any, point: Any) -> Any:
        return self.doctrine.category.compose(f, point)

    def interpret(self, obj: Any, element: Any) -> FrozenSet[Any]:
        return frozenset(
            c for c in self.carrier(obj) if self.family.contains(self.terminal, self.doctrine.reindex(c, element))
        )

    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        return self.doctrine.category.pair(cone, list(points), self.terminal)
