"""
Base categories with finite products.

- Ctx: contexts are sizes, morphisms are tuples of terms (substitutions)
- SemilatticeCategory: a finite meet-semilattice seen as a thin category
- FinSetCategory: finite sets and functions, products as tuples
- KleisliCategory: morphisms X ~> Y are base morphisms S x X -> Y
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from core.errors import DoctrineDefinitionError, MorphismMismatchError
from core.terms import App, Signature, Term, Var, substitute_term, term_depth, term_variables


@dataclass(frozen=True)
class ProductCone:
    """A chosen product with its projections, in factor order"""
    obj: Any
    factors: Tuple[Any, ...]
    projections: Tuple[Any, ...]


class BaseCategory(ABC):
    """Abstract category with chosen finite products"""

    exhaustive: bool = False  # finite hom-sets and idempotent products

    @property
    @abstractmethod
    def terminal(self) -> Any:
        pass

    @abstractmethod
    def identity(self, obj: Any) -> Any:
        pass

    @abstractmethod
    def source(self, f: Any) -> Any:
        pass

    @abstractmethod
    def target(self, f: Any) -> Any:
        pass

    @abstractmethod
    def compose(self, g: Any, f: Any) -> Any:
        """g after f"""
        pass

    @abstractmethod
    def product_of(self, objects: Sequence[Any]) -> ProductCone:
        pass

    @abstractmethod
    def pair(self, cone: ProductCone, morphisms: Sequence[Any], source: Any) -> Any:
        """The mediating morphism source -> cone.obj with the given components"""
        pass

    @abstractmethod
    def enumerate_morphisms(self, source: Any, target: Any, depth: int = 0) -> List[Any]:
        """All morphisms source -> target up to depth, duplicate-free, canonical order"""
        pass

    def morphism_depth(self, f: Any) -> int:
        return 0

    def objects(self) -> Optional[List[Any]]:
        """All objects when there are finitely many, else None"""
        return None

    def product(self, x: Any, y: Any) -> ProductCone:
        return self.product_of([x, y])

    def bang(self, obj: Any) -> Any:
        return self.pair(self.product_of([]), [], obj)

    def product_map(self, morphisms: Sequence[Any]) -> Any:
        """f1 x ... x fn between the chosen products of sources and targets"""
        domain = self.product_of([self.source(f) for f in morphisms])
        codomain = self.product_of([self.target(f) for f in morphisms])
        legs = [self.compose(f, p) for f, p in zip(morphisms, domain.projections)]
        return self.pair(codomain, legs, domain.obj)

    def render_object(self, obj: Any) -> str:
        return str(obj)

    def render_morphism(self, f: Any) -> str:
        return str(f)

    def _check_pair(self, cone: ProductCone, morphisms: Sequence[Any], source: Any) -> None:
        if len(morphisms) != len(cone.factors):
            raise MorphismMismatchError(f"pairing needs {len(cone.factors)} components, got {len(morphisms)}")
        for f, factor in zip(morphisms, cone.factors):
            if self.source(f) != source or self.target(f) != factor:
                raise MorphismMismatchError(f"component {f} is not a morphism {source} -> {factor}")


# ---------------------------------------------------------------------------
# Ctx
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CtxMorphism:
    """A tuple of terms over the source context, one per target variable"""
    source: int
    target: int
    components: Tuple[Term, ...]

    def __post_init__(self):
        if len(self.components) != self.target:
            raise MorphismMismatchError(
                f"morphism into context {self.target} needs {self.target} terms, got {len(self.components)}"
            )
        for term in self.components:
            for index in term_variables(term):
                if index >= self.source:
                    raise MorphismMismatchError(f"term {term} is not over context {self.source}")

    @property
    def depth(self) -> int:
        return max((term_depth(t) for t in self.components), default=0)

    def __str__(self) -> str:
        return "(" + ",".join(str(t) for t in self.components) + ")"


class Ctx(BaseCategory):
    """Single-sorted context category of a signature"""

    def __init__(self, signature: Signature):
        self.signature = signature
        self._terms: Dict[Tuple[int, int], Tuple[Term, ...]] = {}
        self._homs: Dict[Tuple[int, int, int], List[CtxMorphism]] = {}

    @property
    def terminal(self) -> int:
        return 0

    def identity(self, n: int) -> CtxMorphism:
        return CtxMorphism(n, n, tuple(Var(i) for i in range(n)))

    def source(self, f: CtxMorphism) -> int:
        return f.source

    def target(self, f: CtxMorphism) -> int:
        return f.target

    def compose(self, g: CtxMorphism, f: CtxMorphism) -> CtxMorphism:
        if f.target != g.source:
            raise MorphismMismatchError(f"cannot compose {g}: {g.source}->{g.target} after {f}: {f.source}->{f.target}")
        return CtxMorphism(f.source, g.target, tuple(substitute_term(t, f.components) for t in g.components))

    def product_of(self, sizes: Sequence[int]) -> ProductCone:
        sizes = tuple(sizes)
        total = sum(sizes)
        projections, offset = [], 0
        for size in sizes:
            projections.append(CtxMorphism(total, size, tuple(Var(offset + k) for k in range(size))))
            offset += size
        return ProductCone(total, sizes, tuple(projections))

    def pair(self, cone: ProductCone, morphisms: Sequence[CtxMorphism], source: int) -> CtxMorphism:
        self._check_pair(cone, morphisms, source)
        return CtxMorphism(source, cone.obj, tuple(t for f in morphisms for t in f.components))

    def morphism_depth(self, f: CtxMorphism) -> int:
        return f.depth

    def terms(self, context: int, depth: int) -> Tuple[Term, ...]:
        """Terms over the context of depth <= depth, ordered by (depth, printed form)"""
        key = (context, depth)
        if key not in self._terms:
            found = {Var(i) for i in range(context)} | {App(c) for c in self.signature.constants}
            for _ in range(depth):
                current = sorted(found, key=str)
                for name, arity in self.signature.functions:
                    if arity == 0:
                        continue
                    for args in product(current, repeat=arity):
                        found.add(App(name, tuple(args)))
            self._terms[key] = tuple(sorted(found, key=lambda t: (term_depth(t), str(t))))
        return self._terms[key]

    def enumerate_morphisms(self, source: int, target: int, depth: int = 0) -> List[CtxMorphism]:
        key = (source, target, depth)
        if key not in self._homs:
            candidates = [CtxMorphism(source, target, tuple(ts)) for ts in product(self.terms(source, depth), repeat=target)]
            candidates.sort(key=lambda f: (f.depth, str(f)))
            self._homs[key] = candidates
            logger.debug(f"Ctx: {len(candidates)} morphisms {source}->{target} up to depth {depth}")
        return list(self._homs[key])


# ---------------------------------------------------------------------------
# Finite meet-semilattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PosetArrow:
    source: str
    target: str

    def __str__(self) -> str:
        return f"{self.source}->{self.target}"


class SemilatticeCategory(BaseCategory):
    """
    A finite meet-semilattice as a category: one arrow x -> y iff x <= y.

    The product is the meet and the terminal object is the top element.
    """

    exhaustive = True

    def __init__(self, elements: Sequence[str], top: str, meet: Mapping[Tuple[str, str], str]):
        self.elements = tuple(elements)
        if len(set(self.elements)) != len(self.elements):
            raise DoctrineDefinitionError("semilattice elements must be distinct")
        if top not in self.elements:
            raise DoctrineDefinitionError(f"top {top} is not an element")
        self.top = top
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)

        table = np.full((n, n), -1, dtype=int)
        for (a, b), c in meet.items():
            for name in (a, b, c):
                if name not in self.index:
                    raise DoctrineDefinitionError(f"unknown semilattice element {name}")
            table[self.index[a], self.index[b]] = self.index[c]
            table[self.index[b], self.index[a]] = self.index[c]
        for i in range(n):
            table[i, i] = i
            table[i, self.index[top]] = i
            table[self.index[top], i] = i
        if (table < 0).any():
            i, j = map(int, np.argwhere(table < 0)[0])
            raise DoctrineDefinitionError(f"meet of {self.elements[i]} and {self.elements[j]} is missing")
        self._meet = table
        self._validate()
        # leq[i, j] iff i <= j
        self.leq = table == np.arange(n)[:, None]

    def _validate(self) -> None:
        m = self._meet
        n = len(self.elements)
        if not (m == m.T).all():
            raise DoctrineDefinitionError("meet table is not commutative")
        left = m[m]
        right = m[np.arange(n)[:, None, None], m[None, :, :]]
        if not (left == right).all():
            raise DoctrineDefinitionError("meet table is not associative")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "SemilatticeCategory":
        """Build from {"elements": [...], "top": e, "meet": {"(a,b)": c}}"""
        meet = {}
        for key, value in data.get("meet", {}).items():
            parts = [p.strip() for p in key.strip().strip("()").split(",")]
            if len(parts) != 2:
                raise DoctrineDefinitionError(f"malformed meet key {key!r}")
            meet[(parts[0], parts[1])] = value
        return cls(data["elements"], data["top"], meet)

    def meet(self, a: str, b: str) -> str:
        return self.elements[self._meet[self.index[a], self.index[b]]]

    def is_leq(self, a: str, b: str) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    @property
    def terminal(self) -> str:
        return self.top

    def identity(self, obj: str) -> PosetArrow:
        return PosetArrow(obj, obj)

    def source(self, f: PosetArrow) -> str:
        return f.source

    def target(self, f: PosetArrow) -> str:
        return f.target

    def arrow(self, a: str, b: str) -> PosetArrow:
        if not self.is_leq(a, b):
            raise MorphismMismatchError(f"no arrow {a} -> {b}: {a} is not below {b}")
        return PosetArrow(a, b)

    def compose(self, g: PosetArrow, f: PosetArrow) -> PosetArrow:
        if f.target != g.source:
            raise MorphismMismatchError(f"cannot compose {g} after {f}")
        return PosetArrow(f.source, g.target)

    def product_of(self, objects: Sequence[str]) -> ProductCone:
        objects = tuple(objects)
        obj = reduce(self.meet, objects, self.top)
        return ProductCone(obj, objects, tuple(PosetArrow(obj, o) for o in objects))

    def pair(self, cone: ProductCone, morphisms: Sequence[PosetArrow], source: str) -> PosetArrow:
        self._check_pair(cone, morphisms, source)
        return self.arrow(source, cone.obj)

    def enumerate_morphisms(self, source: str, target: str, depth: int = 0) -> List[PosetArrow]:
        return [PosetArrow(source, target)] if self.is_leq(source, target) else []

    def objects(self) -> List[str]:
        return list(self.elements)


# ---------------------------------------------------------------------------
# Finite sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinSet:
    elements: Tuple[Any, ...]

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise DoctrineDefinitionError(f"repeated elements in {self.elements}")

    @classmethod
    def of(cls, *elements: Any) -> "FinSet":
        return cls(tuple(elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Any]:
        return iter(self.elements)

    def __contains__(self, item: Any) -> bool:
        return item in self.elements

    def __str__(self) -> str:
        return "{" + ",".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True)
class FinSetArrow:
    """A function given by its values on source.elements, in order"""
    source: FinSet
    target: FinSet
    values: Tuple[Any, ...]

    def __post_init__(self):
        if len(self.values) != len(self.source):
            raise MorphismMismatchError("function table does not cover its source")
        for v in self.values:
            if v not in self.target:
                raise MorphismMismatchError(f"value {v} outside target {self.target}")

    def __call__(self, x: Any) -> Any:
        return self.values[self.source.elements.index(x)]

    def preimage(self, subset: Iterable[Any]) -> FrozenSet[Any]:
        subset = frozenset(subset)
        return frozenset(x for x, v in zip(self.source.elements, self.values) if v in subset)

    def image(self, subset: Iterable[Any]) -> FrozenSet[Any]:
        subset = frozenset(subset)
        return frozenset(v for x, v in zip(self.source.elements, self.values) if x in subset)

    def __str__(self) -> str:
        return "{" + ",".join(f"{x}:{v}" for x, v in zip(self.source.elements, self.values)) + "}"


class FinSetCategory(BaseCategory):
    """Finite sets; a product of n >= 2 sets has n-tuples as elements"""

    @property
    def terminal(self) -> FinSet:
        return FinSet(((),))

    def function(self, source: FinSet, target: FinSet, fn) -> FinSetArrow:
        return FinSetArrow(source, target, tuple(fn(x) for x in source))

    def identity(self, obj: FinSet) -> FinSetArrow:
        return FinSetArrow(obj, obj, obj.elements)

    def source(self, f: FinSetArrow) -> FinSet:
        return f.source

    def target(self, f: FinSetArrow) -> FinSet:
        return f.target

    def compose(self, g: FinSetArrow, f: FinSetArrow) -> FinSetArrow:
        if f.target != g.source:
            raise MorphismMismatchError("cannot compose functions with mismatched middle set")
        return FinSetArrow(f.source, g.target, tuple(g(v) for v in f.values))

    def product_of(self, sets: Sequence[FinSet]) -> ProductCone:
        sets = tuple(sets)
        if len(sets) == 1:
            return ProductCone(sets[0], sets, (self.identity(sets[0]),))
        obj = FinSet(tuple(product(*(s.elements for s in sets)))) if sets else self.terminal
        projections = tuple(FinSetArrow(obj, s, tuple(p[i] for p in obj.elements)) for i, s in enumerate(sets))
        return ProductCone(obj, sets, projections)

    def pair(self, cone: ProductCone, morphisms: Sequence[FinSetArrow], source: FinSet) -> FinSetArrow:
        self._check_pair(cone, morphisms, source)
        if len(cone.factors) == 1:
            return morphisms[0]
        return FinSetArrow(source, cone.obj, tuple(tuple(f(x) for f in morphisms) for x in source))

    def enumerate_morphisms(self, source: FinSet, target: FinSet, depth: int = 0) -> List[FinSetArrow]:
        return [FinSetArrow(source, target, values) for values in product(target.elements, repeat=len(source))]


# ---------------------------------------------------------------------------
# Kleisli category of the reader comonad S x -
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KleisliArrow:
    """X ~> Y, carried by a base morphism S x X -> Y"""
    source: Any
    target: Any
    underlying: Any

    def __str__(self) -> str:
        return str(self.underlying)


class KleisliCategory(BaseCategory):
    """Same objects as the base; a fixed object S is added as a global constant"""

    def __init__(self, base: BaseCategory, fixed: Any):
        self.base = base
        self.fixed = fixed
        self.exhaustive = base.exhaustive

    def over(self, obj: Any) -> ProductCone:
        """The base product S x obj"""
        return self.base.product(self.fixed, obj)

    @property
    def terminal(self) -> Any:
        return self.base.terminal

    def identity(self, obj: Any) -> KleisliArrow:
        return KleisliArrow(obj, obj, self.over(obj).projections[1])

    def source(self, f: KleisliArrow) -> Any:
        return f.source

    def target(self, f: KleisliArrow) -> Any:
        return f.target

    def compose(self, g: KleisliArrow, f: KleisliArrow) -> KleisliArrow:
        if f.target != g.source:
            raise MorphismMismatchError(f"cannot compose {g} after {f}")
        at_x, at_y = self.over(f.source), self.over(g.source)
        widened = self.base.pair(at_y, [at_x.projections[0], f.underlying], at_x.obj)
        return KleisliArrow(f.source, g.target, self.base.compose(g.underlying, widened))

    def product_of(self, objects: Sequence[Any]) -> ProductCone:
        cone = self.base.product_of(objects)
        drop = self.over(cone.obj).projections[1]
        projections = tuple(
            KleisliArrow(cone.obj, factor, self.base.compose(p, drop))
            for factor, p in zip(cone.factors, cone.projections)
        )
        return ProductCone(cone.obj, cone.factors, projections)

    def pair(self, cone: ProductCone, morphisms: Sequence[KleisliArrow], source: Any) -> KleisliArrow:
        self._check_pair(cone, morphisms, source)
        base_cone = self.base.product_of(cone.factors)
        underlying = self.base.pair(base_cone, [f.underlying for f in morphisms], self.over(source).obj)
        return KleisliArrow(source, cone.obj, underlying)

    def lift(self, f: Any) -> KleisliArrow:
        """L_S: a base morphism that ignores the constant"""
        src = self.base.source(f)
        return KleisliArrow(src, self.base.target(f), self.base.compose(f, self.over(src).projections[1]))

    @property
    def constant(self) -> KleisliArrow:
        """id_S seen as a global element t ~> S"""
        t = self.base.terminal
        return KleisliArrow(t, self.fixed, self.over(t).projections[0])

    def enumerate_morphisms(self, source: Any, target: Any, depth: int = 0) -> List[KleisliArrow]:
        return [
            KleisliArrow(source, target, u)
            for u in self.base.enumerate_morphisms(self.over(source).obj, target, depth)
        ]

    def morphism_depth(self, f: KleisliArrow) -> int:
        return self.base.morphism_depth(f.underlying)

    def objects(self) -> Optional[List[Any]]:
        return self.base.objects()
