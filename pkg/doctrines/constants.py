"""
Adding a constant of type S to a doctrine.

The new base is the Kleisli category of S x -, the fiber over X is the old
fiber over S x X, and reindexing along f: X ~> Y is old reindexing along
<pr1, f>. Everything "at S" (models, filters, sequents) runs on this doctrine.
"""
from typing import Any, List

from core.category import KleisliArrow, KleisliCategory
from doctrines.base_doctrine import BaseDoctrine, Verdict


class ConstantAdjoinedDoctrine(BaseDoctrine):
    """P_S for a doctrine P and an object S of its base"""

    def __init__(self, base: BaseDoctrine, fixed: Any):
        super().__init__(f"{base.name}+const", KleisliCategory(base.category, fixed))
        self.base = base
        self.fixed = fixed

    def over(self, obj: Any) -> Any:
        return self.category.over(obj).obj

    @property
    def exhaustive(self) -> bool:
        return self.base.exhaustive

    @property
    def constant(self) -> KleisliArrow:
        return self.category.constant

    def lift(self, obj: Any, element: Any) -> Any:
        """The doctrine morphism part: reindex along pr2: S x X -> X"""
        return self.base.reindex(self.category.over(obj).projections[1], element)

    def lift_morphism(self, f: Any) -> KleisliArrow:
        return self.category.lift(f)

    def contains(self, obj: Any, element: Any) -> bool:
        return self.base.contains(self.over(obj), element)

    def top(self, obj: Any) -> Any:
        return self.base.top(self.over(obj))

    def bottom(self, obj: Any) -> Any:
        return self.base.bottom(self.over(obj))

    def meet(self, obj: Any, a: Any, b: Any) -> Any:
        return self.base.meet(self.over(obj), a, b)

    def join(self, obj: Any, a: Any, b: Any) -> Any:
        return self.base.join(self.over(obj), a, b)

    def negate(self, obj: Any, a: Any) -> Any:
        return self.base.negate(self.over(obj), a)

    def reindex(self, f: KleisliArrow, element: Any) -> Any:
        at_x, at_y = self.category.over(f.source), self.category.over(f.target)
        widened = self.base.category.pair(at_y, [at_x.projections[0], f.underlying], at_x.obj)
        return self.base.reindex(widened, element)

    def decide(self, obj: Any, a: Any, b: Any, refute: bool = True) -> Verdict:
        return self.base.decide(self.over(obj), a, b, refute)

    def elements(self, obj: Any) -> List[Any]:
        return self.base.elements(self.over(obj))

    def render(self, element: Any) -> str:
        return self.base.render(element)


def add_constant(doctrine: BaseDoctrine, fixed: Any) -> ConstantAdjoinedDoctrine:
    return ConstantAdjoinedDoctrine(doctrine, fixed)
