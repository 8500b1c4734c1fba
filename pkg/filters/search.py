"""
Bounded Herbrand witness search.

A problem is an inequality in one fiber over the domain
    D = S x Z_1 x ... x Z_m x W_1 x ... x W_h
(S omitted when no constant is fixed):

    /\ gamma_h  &  /\ <pr_S, g_i>*(alpha_{l_i})  <=  \/ beta_j  |  \/ <pr_S, g'_k>*(delta_{l'_k})

where the gamma and beta terms are fixed and the g_i, g'_k range over base
morphisms D -> Y_l, D -> V_l. The search returns the least witness in the
canonical order: outer loop on morphism depth, then on the number of picked
instances, then lexicographic on (side, pick, printed morphism).
"""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from config.config import get_settings
from core.errors import MalformedWitnessError
from doctrines.base_doctrine import BaseDoctrine, Tri

Indexed = Tuple[Any, Any]  # (object, fiber element)


@dataclass(frozen=True)
class Bounds:
    """Search bounds; max_conjuncts None means no limit on n + n'"""
    depth: int = 2
    max_conjuncts: Optional[int] = 4
    model_bound: int = 3
    trace: bool = False

    @classmethod
    def from_settings(cls, **overrides: Any) -> "Bounds":
        settings = get_settings()
        values = {
            "depth": settings.witness_depth,
            "max_conjuncts": settings.max_conjuncts,
            "model_bound": settings.model_bound,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return {"depth": self.depth, "max_n": self.max_conjuncts, "model_bound": self.model_bound}


class Side(Enum):
    FORALL = "forall"  # conjunct on the premise side
    EXISTS = "exists"  # disjunct on the conclusion side


@dataclass(frozen=True)
class Candidate:
    """One instance alpha_l reindexed along a morphism of the domain"""
    side: Side
    pick: int
    morphism: Any
    depth: int
    label: str
    element: Any = field(compare=False, hash=False)

    @property
    def sort_key(self) -> Tuple:
        return (self.depth, 0 if self.side is Side.FORALL else 1, self.pick, self.label)

    def __str__(self) -> str:
        return f"{self.side.value}#{self.pick} {self.label}"


@dataclass(frozen=True)
class TraceEntry:
    depth: int
    candidates: Tuple[str, ...]
    status: Tri
    saturation: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "depth": self.depth,
            "candidates": list(self.candidates),
            "status": self.status.value,
            "saturation": self.saturation,
        }


@dataclass
class SearchTrace:
    entries: List[TraceEntry] = field(default_factory=list)

    def record(self, depth: int, chosen: Sequence[Candidate], status: Tri, saturation: bool = False) -> None:
        entry = TraceEntry(depth, tuple(str(c) for c in chosen), status, saturation)
        self.entries.append(entry)
        logger.debug(f"witness search depth={depth} {'saturated ' if saturation else ''}{list(entry.candidates)} -> {status.value}")

    def attempts(self) -> List[TraceEntry]:
        """Entries for individual candidate combinations"""
        return [e for e in self.entries if not e.saturation]

    def to_list(self) -> List[Dict[str, Any]]:
        return [e.to_dict() for e in self.entries]


def morphism_terms(f: Any) -> List[str]:
    """Printed components of a morphism (terms for Ctx, one label otherwise)"""
    if hasattr(f, "underlying"):
        return morphism_terms(f.underlying)
    if hasattr(f, "components"):
        return [str(t) for t in f.components]
    return [str(f)]


@dataclass(frozen=True)
class Witness:
    """Picks and morphisms for both sides of a Herbrand inequality"""
    picks: Tuple[int, ...] = ()
    morphisms: Tuple[Any, ...] = ()
    picks_ex: Tuple[int, ...] = ()
    morphisms_ex: Tuple[Any, ...] = ()
    trace: SearchTrace = field(default_factory=SearchTrace, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.picks)

    @property
    def n_prime(self) -> int:
        return len(self.picks_ex)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "picks": list(self.picks),
            "terms": [morphism_terms(f) for f in self.morphisms],
            "n_prime": self.n_prime,
            "picks_ex": list(self.picks_ex),
            "terms_ex": [morphism_terms(f) for f in self.morphisms_ex],
        }


@dataclass(frozen=True)
class NoneUpTo:
    """No witness within the bounds; the question stays open"""
    bounds: Bounds
    trace: SearchTrace = field(default_factory=SearchTrace, compare=False, repr=False)


@dataclass(frozen=True)
class DefinitelyDisjoint:
    """Exhaustive backend: no witness exists at any bound"""
    reason: str = "search space exhausted"
    trace: SearchTrace = field(default_factory=SearchTrace, compare=False, repr=False)


Outcome = Union[Witness, NoneUpTo, DefinitelyDisjoint]


class HerbrandProblem:
    """
    One inequality of the form above, with its domain cone and candidate pools.

    Args:
        fixed: the object S of fixed variables, or None for none
        universal_premises: (Y_i, alpha_i) with alpha_i over S x Y_i
        existential_premises: (W_h, gamma_h) with gamma_h over S x W_h
        universal_conclusions: (Z_j, beta_j) with beta_j over S x Z_j
        existential_conclusions: (V_k, delta_k) with delta_k over S x V_k
    """

    def __init__(
        self,
        doctrine: BaseDoctrine,
        fixed: Any,
        universal_premises: Sequence[Indexed] = (),
        existential_premises: Sequence[Indexed] = (),
        universal_conclusions: Sequence[Indexed] = (),
        existential_conclusions: Sequence[Indexed] = (),
    ):
        self.doctrine = doctrine
        self.category = doctrine.category
        self.fixed = fixed
        self.alphas = list(universal_premises)
        self.gammas = list(existential_premises)
        self.betas = list(universal_conclusions)
        self.deltas = list(existential_conclusions)
        for obj, element in self.alphas + self.gammas + self.betas + self.deltas:
            doctrine.require(self.over(obj), element)

        head = [fixed] if fixed is not None else []
        self.cone = self.category.product_of(head + [z for z, _ in self.betas] + [w for w, _ in self.gammas])
        self.domain = self.cone.obj
        offset = len(head)
        projections = self.cone.projections[offset:]
        self.fixed_rhs = doctrine.disj(self.domain, [
            doctrine.reindex(self.widen(z, p), beta)
            for (z, beta), p in zip(self.betas, projections[: len(self.betas)])
        ])
        self.fixed_lhs = doctrine.conj(self.domain, [
            doctrine.reindex(self.widen(w, p), gamma)
            for (w, gamma), p in zip(self.gammas, projections[len(self.betas):])
        ])
        self._pools: Dict[int, List[Candidate]] = {}

    def over(self, obj: Any) -> Any:
        """S x obj, or obj itself without fixed variables"""
        if self.fixed is None:
            return obj
        return self.category.product(self.fixed, obj).obj

    def widen(self, target: Any, g: Any) -> Any:
        """<pr_S, g>: D -> S x target"""
        if self.fixed is None:
            return g
        return self.category.pair(self.category.product(self.fixed, target), [self.cone.projections[0], g], self.domain)

    def instance(self, side: Side, pick: int, g: Any) -> Any:
        listing = self.alphas if side is Side.FORALL else self.deltas
        if not 0 <= pick < len(listing):
            raise MalformedWitnessError(f"{side.value} pick {pick} out of range 0..{len(listing) - 1}")
        target, element = listing[pick]
        if self.category.source(g) != self.domain or self.category.target(g) != target:
            raise MalformedWitnessError(
                f"morphism {g} is not {self.category.render_object(self.domain)} -> {self.category.render_object(target)}"
            )
        return self.doctrine.reindex(self.widen(target, g), element)

    def candidates(self, depth: int) -> List[Candidate]:
        """All instances whose morphism has depth <= depth, in canonical order"""
        if depth not in self._pools:
            pool = []
            for side, listing in ((Side.FORALL, self.alphas), (Side.EXISTS, self.deltas)):
                for pick, (target, _) in enumerate(listing):
                    for g in self.category.enumerate_morphisms(self.domain, target, depth):
                        pool.append(Candidate(
                            side, pick, g, self.category.morphism_depth(g),
                            self.category.render_morphism(g), self.instance(side, pick, g),
                        ))
            pool.sort(key=lambda c: c.sort_key)
            self._pools[depth] = pool
        return self._pools[depth]

    def sides(self, chosen: Sequence[Candidate]) -> Tuple[Any, Any]:
        lhs = self.doctrine.conj(self.domain, [self.fixed_lhs] + [c.element for c in chosen if c.side is Side.FORALL])
        rhs = self.doctrine.disj(self.domain, [self.fixed_rhs] + [c.element for c in chosen if c.side is Side.EXISTS])
        return lhs, rhs

    def check(self, witness: Witness, refute: bool = False) -> Tri:
        """Evaluate the inequality for a given witness; never searches"""
        if len(witness.picks) != len(witness.morphisms) or len(witness.picks_ex) != len(witness.morphisms_ex):
            raise MalformedWitnessError("every pick needs exactly one morphism")
        chosen = [
            Candidate(Side.FORALL, p, g, 0, str(g), self.instance(Side.FORALL, p, g))
            for p, g in zip(witness.picks, witness.morphisms)
        ] + [
            Candidate(Side.EXISTS, p, g, 0, str(g), self.instance(Side.EXISTS, p, g))
            for p, g in zip(witness.picks_ex, witness.morphisms_ex)
        ]
        lhs, rhs = self.sides(chosen)
        return self.doctrine.fiber_leq(self.domain, lhs, rhs, refute=refute)

    def search(self, bounds: Bounds) -> Outcome:
        trace = SearchTrace()
        last_size, saturated = -1, Tri.UNKNOWN
        for depth in range(bounds.depth + 1):
            pool = self.candidates(depth)
            if len(pool) == last_size:
                continue
            last_size = len(pool)

            lhs, rhs = self.sides(pool)
            saturated = self.doctrine.fiber_leq(self.domain, lhs, rhs, refute=False)
            trace.record(depth, pool, saturated, saturation=True)
            if saturated is not Tri.TRUE:
                continue

            limit = len(pool) if bounds.max_conjuncts is None else min(bounds.max_conjuncts, len(pool))
            for n in range(limit + 1):
                for chosen in combinations(pool, n):
                    if depth > 0 and all(c.depth < depth for c in chosen):
                        continue
                    lhs, rhs = self.sides(chosen)
                    status = self.doctrine.fiber_leq(self.domain, lhs, rhs, refute=bounds.trace)
                    trace.record(depth, chosen, status)
                    if status is Tri.TRUE:
                        witness = Witness(
                            tuple(c.pick for c in chosen if c.side is Side.FORALL),
                            tuple(c.morphism for c in chosen if c.side is Side.FORALL),
                            tuple(c.pick for c in chosen if c.side is Side.EXISTS),
                            tuple(c.morphism for c in chosen if c.side is Side.EXISTS),
                            trace,
                        )
                        logger.info(f"Witness found at depth {depth}: n={witness.n}, n'={witness.n_prime}")
                        return witness

        if self.doctrine.exhaustive and saturated is Tri.FALSE:
            logger.info("Witness search exhausted on an exhaustive backend")
            return DefinitelyDisjoint(trace=trace)
        logger.info(f"No witness up to depth {bounds.depth} and {bounds.max_conjuncts} instances")
        return NoneUpTo(bounds, trace)
