"""
Subsets doctrine over finite sets: fibers are power sets, reindexing is preimage.
"""
from enum import Enum
from itertools import combinations
from typing import Any, FrozenSet, List, Union

from core.category import FinSet, FinSetArrow, FinSetCategory
from core.errors import FiberMismatchError
from doctrines.base_doctrine import BaseDoctrine, Tri, Verdict


class Quantifier(Enum):
    FORALL = "forall"
    EXISTS = "exists"


class SubsetsDoctrine(BaseDoctrine):
    """P(X) = all subsets of the finite set X"""

    def __init__(self):
        super().__init__("subsets", FinSetCategory())

    def contains(self, obj: FinSet, element: Any) -> bool:
        return isinstance(element, frozenset) and all(e in obj for e in element)

    def top(self, obj: FinSet) -> FrozenSet:
        return frozenset(obj.elements)

    def bottom(self, obj: FinSet) -> FrozenSet:
        return frozenset()

    def meet(self, obj: FinSet, a: FrozenSet, b: FrozenSet) -> FrozenSet:
        return a & b

    def join(self, obj: FinSet, a: FrozenSet, b: FrozenSet) -> FrozenSet:
        return a | b

    def negate(self, obj: FinSet, a: FrozenSet) -> FrozenSet:
        return frozenset(obj.elements) - a

    def reindex(self, f: FinSetArrow, element: FrozenSet) -> FrozenSet:
        self.require(f.target, element)
        return f.preimage(element)

    def decide(self, obj: FinSet, a: FrozenSet, b: FrozenSet, refute: bool = True) -> Verdict:
        return Verdict(Tri.of(a <= b), reason="exact")

    def elements(self, obj: FinSet) -> List[FrozenSet]:
        return [frozenset(c) for k in range(len(obj) + 1) for c in combinations(obj.elements, k)]

    def diagonal(self, obj: FinSet) -> FrozenSet:
        """Delta_X inside X x X"""
        return frozenset((x, x) for x in obj)

    def render(self, element: Any) -> str:
        return "{" + ",".join(sorted(str(e) for e in element)) + "}"


def subsets_quantifier(kind: Union[Quantifier, str], x: FinSet, y: FinSet, relation: FrozenSet) -> FrozenSet:
    """
    Quantify the Y coordinate of a subset of X x Y.

    Returns {x | for all y, (x, y) in relation} for FORALL and the image under
    the first projection for EXISTS.
    """
    kind = Quantifier(kind)
    pairs = set(relation)
    for element in pairs:
        if not (isinstance(element, tuple) and len(element) == 2 and element[0] in x and element[1] in y):
            raise FiberMismatchError(f"{element!r} is not a point of {x} x {y}")
    if kind is Quantifier.FORALL:
        return frozenset(a for a in x if all((a, b) in pairs for b in y))
    return frozenset(a for a in x if any((a, b) in pairs for b in y))
