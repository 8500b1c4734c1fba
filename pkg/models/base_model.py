"""
Base Model Class
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, List, Sequence

from loguru import logger

from core.category import ProductCone
from core.errors import FiberMismatchError, MorphismMismatchError
from doctrines.base_doctrine import BaseDoctrine


class PropModel(ABC):
    """
    A propositional model (M, m): P -> subsets.

    M sends base objects to finite carriers and preserves the chosen
    products; m_X sends fiber elements over X to subsets of M(X).
    """

    def __init__(self, doctrine: BaseDoctrine, name: str = ""):
        self.doctrine = doctrine
        self.name = name or type(self).__name__
        logger.debug(f"Model initialized: {self.name} over {doctrine.name}")

    @abstractmethod
    def carrier(self, obj: Any) -> List[Any]:
        """Points of M(obj) in canonical order"""
        pass

    @abstractmethod
    def apply(self, f: Any, point: Any) -> Any:
        """M(f) at a point of M(source f)"""
        pass

    @abstractmethod
    def interpret(self, obj: Any, element: Any) -> FrozenSet[Any]:
        """m_obj(element)"""
        pass

    @abstractmethod
    def pair_point(self, cone: ProductCone, points: Sequence[Any]) -> Any:
        """The point of M(cone.obj) with the given components"""
        pass

    def validates(self, obj: Any, element: Any) -> bool:
        return self.interpret(obj, element) == frozenset(self.carrier(obj))

    def inhabits(self, obj: Any, element: Any) -> bool:
        return bool(self.interpret(obj, element))

    def naturality_failures(self, f: Any, elements: Sequence[Any]) -> List[str]:
        """Elements of the fiber over target(f) where m does not commute with reindexing"""
        cat = self.doctrine.category
        source = cat.source(f)
        failures = []
        for alpha in elements:
            image = self.interpret(cat.target(f), alpha)
            pulled = frozenset(x for x in self.carrier(source) if self.apply(f, x) in image)
            if self.interpret(source, self.doctrine.reindex(f, alpha)) != pulled:
                failures.append(self.doctrine.render(alpha))
        return failures

    def to_dict(self) -> Dict[str, Any]:
        return {"model": self.name}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


def evaluate(model: PropModel, obj: Any, element: Any) -> FrozenSet[Any]:
    """m_X(alpha) after checking that alpha lives over X"""
    if not model.doctrine.contains(obj, element):
        raise FiberMismatchError(
            f"{model.doctrine.render(element)} is not in the fiber over {model.doctrine.category.render_object(obj)}"
        )
    return model.interpret(obj, element)


@dataclass(frozen=True)
class ModelAtS:
    """A model together with a point s of M(S)"""
    model: PropModel
    fixed: Any
    point: Any

    def __post_init__(self):
        if self.point not in self.model.carrier(self.fixed):
            raise MorphismMismatchError(f"{self.point!r} is not a point of M({self.fixed})")

    def to_dict(self) -> Dict[str, Any]:
        data = self.model.to_dict()
        data["point"] = _render_point(self.point)
        return data


def _render_point(point: Any) -> Any:
    if isinstance(point, tuple) and all(isinstance(p, int) for p in point):
        return [p + 1 for p in point]
    return str(point)


def model_at_s_eval(mas: ModelAtS, obj: Any, element: Any) -> FrozenSet[Any]:
    """{y in M(obj) | (s, y) in m_{S x obj}(element)}"""
    model = mas.model
    cone = model.doctrine.category.product(mas.fixed, obj)
    relation = evaluate(model, cone.obj, element)
    return frozenset(y for y in model.carrier(obj) if model.pair_point(cone, [mas.point, y]) in relation)
