"""
Base Doctrine Class
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Any, Iterable, List, Optional, Sequence

from loguru import logger

from core.category import BaseCategory
from core.errors import FiberMismatchError, NonFiniteDoctrineError


class Tri(Enum):
    """Three-valued answer of a bounded decision procedure"""
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Tri":
        return cls.TRUE if value else cls.FALSE

    @classmethod
    def conjunction(cls, answers: Iterable["Tri"]) -> "Tri":
        """FALSE dominates UNKNOWN, which dominates TRUE"""
        answers = list(answers)
        if cls.FALSE in answers:
            return cls.FALSE
        if cls.UNKNOWN in answers:
            return cls.UNKNOWN
        return cls.TRUE


@dataclass(frozen=True)
class Verdict:
    """Outcome of one fiber comparison"""
    status: Tri
    countermodel: Optional[Any] = None
    reason: str = ""


class BaseDoctrine(ABC):
    """Abstract Boolean doctrine: a base category and a Boolean algebra per object"""

    def __init__(self, name: str, category: BaseCategory):
        self.name = name
        self.category = category
        logger.debug(f"Doctrine initialized: {name}")

    @abstractmethod
    def contains(self, obj: Any, element: Any) -> bool:
        """Whether element belongs to the fiber over obj"""
        pass

    @abstractmethod
    def top(self, obj: Any) -> Any:
        pass

    @abstractmethod
    def bottom(self, obj: Any) -> Any:
        pass

    @abstractmethod
    def meet(self, obj: Any, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def join(self, obj: Any, a: Any, b: Any) -> Any:
        pass

    @abstractmethod
    def negate(self, obj: Any, a: Any) -> Any:
        pass

    @abstractmethod
    def reindex(self, f: Any, element: Any) -> Any:
        """Reindexing along f: X -> Y, from the fiber over Y to the fiber over X"""
        pass

    @abstractmethod
    def decide(self, obj: Any, a: Any, b: Any, refute: bool = True) -> Verdict:
        """
        Decide a <= b in the fiber over obj.

        Args:
            refute: when False, backends may skip countermodel search and
                answer UNKNOWN instead of FALSE
        """
        pass

    @property
    def exhaustive(self) -> bool:
        """Finite fibers over a category whose searches are complete"""
        return False

    def elements(self, obj: Any) -> List[Any]:
        """All elements of a finite fiber, in canonical order"""
        raise NonFiniteDoctrineError(f"{self.name} has no finite fiber enumeration")

    def require(self, obj: Any, element: Any) -> Any:
        if not self.contains(obj, element):
            raise FiberMismatchError(
                f"{self.render(element)} is not in the fiber over {self.category.render_object(obj)}"
            )
        return element

    def fiber_leq(self, obj: Any, a: Any, b: Any, refute: bool = True) -> Tri:
        return self.verdict(obj, a, b, refute).status

    def verdict(self, obj: Any, a: Any, b: Any, refute: bool = True) -> Verdict:
        self.require(obj, a)
        self.require(obj, b)
        return self.decide(obj, a, b, refute)

    def equivalent(self, obj: Any, a: Any, b: Any) -> Tri:
        return Tri.conjunction([self.fiber_leq(obj, a, b), self.fiber_leq(obj, b, a)])

    def conj(self, obj: Any, items: Sequence[Any]) -> Any:
        items = list(items)
        return reduce(lambda x, y: self.meet(obj, x, y), items) if items else self.top(obj)

    def disj(self, obj: Any, items: Sequence[Any]) -> Any:
        items = list(items)
        return reduce(lambda x, y: self.join(obj, x, y), items) if items else self.bottom(obj)

    def render(self, element: Any) -> str:
        return str(element)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"
