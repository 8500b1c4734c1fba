"""
Formal generators of the one-step free construction and the element
operations built from them.

An element over S is a Boolean tree whose leaves are Generators, each
standing for "forall Y. alpha" with alpha over S x Y. Existentials are
negated generators.
"""
from dataclasses import dataclass, field
from typing import Any, Iterable

from core.boolean import Not, leaves, map_leaves
from core.category import Ctx
from core.errors import MorphismMismatchError
from core.terms import App, Var, substitute
from doctrines.base_doctrine import BaseDoctrine


@dataclass(frozen=True)
class Generator:
    """forall over the bound object, of a body in the fiber over fixed x bound"""
    fixed: Any
    bound: Any
    body: Any
    doctrine: BaseDoctrine = field(compare=False, hash=False, repr=False)

    def __post_init__(self):
        cat = self.doctrine.category
        self.doctrine.require(cat.product(self.fixed, self.bound).obj, self.body)

    @property
    def syntactic(self) -> bool:
        return isinstance(self.doctrine.category, Ctx)

    def __str__(self) -> str:
        if self.syntactic:
            if self.bound == 0:
                return f"forall. {self.body}"
            names = " ".join(f"y{i + 1}" for i in range(self.bound))
            sigma = [Var(i) for i in range(self.fixed)] + [App(f"y{i + 1}") for i in range(self.bound)]
            return f"forall {names}. {substitute(self.body, sigma, self.fixed)}"
        cat = self.doctrine.category
        return f"forall[{cat.render_object(self.bound)}]. {self.doctrine.render(self.body)}"

    def to_text(self) -> str:
        """Free1 file syntax; syntactic doctrines only"""
        return f"[forall {self.bound}: {self.body}]"


def forall_gen(doctrine: BaseDoctrine, fixed: Any, bound: Any, body: Any) -> Generator:
    return Generator(fixed, bound, body, doctrine)


def forall_embed(doctrine: BaseDoctrine, fixed: Any, element: Any) -> Generator:
    """alpha over S as the generator forall t. alpha over S x t"""
    cat = doctrine.category
    t = cat.terminal
    first = cat.product(fixed, t).projections[0]
    return Generator(fixed, t, doctrine.reindex(first, element), doctrine)


def exists_gen(doctrine: BaseDoctrine, fixed: Any, bound: Any, body: Any) -> Any:
    """exists Y. gamma as !forall Y. !gamma"""
    over = doctrine.category.product(fixed, bound).obj
    return Not(Generator(fixed, bound, doctrine.negate(over, body), doctrine))


def generators_of(element: Any) -> Iterable[Generator]:
    return [leaf for leaf in leaves(element) if isinstance(leaf, Generator)]


def shared_fixed(elements: Iterable[Any], fixed: Any) -> None:
    """Every generator of the elements must live over fixed"""
    for element in elements:
        for leaf in leaves(element):
            if not isinstance(leaf, Generator):
                raise MorphismMismatchError(f"{leaf} is not a generator")
            if leaf.fixed != fixed:
                raise MorphismMismatchError(f"generator {leaf} lives over {leaf.fixed}, not {fixed}")


def free1_reindex(doctrine: BaseDoctrine, f: Any, element: Any) -> Any:
    """
    Reindex an element over S' along f: S -> S'; each generator body moves
    along f x id_Y.
    """
    cat = doctrine.category
    source, target = cat.source(f), cat.target(f)

    def move(leaf: Generator) -> Generator:
        if leaf.fixed != target:
            raise MorphismMismatchError(f"generator {leaf} does not live over the target of {f}")
        along = cat.product_map([f, cat.identity(leaf.bound)])
        return Generator(source, leaf.bound, doctrine.reindex(along, leaf.body), doctrine)

    return map_leaves(element, move)
