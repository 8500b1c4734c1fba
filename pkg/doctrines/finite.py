"""
Finite doctrines over a meet-semilattice base.

Each fiber is the power set of a listed atom set. Reindexing along x -> y is
the inverse image of an atom map atoms(x) -> atoms(y), given in files as
preimage tables {target atom: [source atoms]}.
"""
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from loguru import logger

from core.category import PosetArrow, SemilatticeCategory
from core.errors import DoctrineDefinitionError, MorphismMismatchError
from doctrines.base_doctrine import BaseDoctrine, Tri, Verdict

Element = FrozenSet[str]


class FiniteDoctrine(BaseDoctrine):
    """Power-set fibers with explicit atom-level reindexing tables"""

    def __init__(
        self,
        base: SemilatticeCategory,
        fibers: Mapping[str, Sequence[str]],
        reindex_tables: Mapping[Tuple[str, str], Mapping[str, Sequence[str]]] = None,
    ):
        super().__init__("finite", base)
        self.base = base
        reindex_tables = reindex_tables or {}
        missing = [x for x in base.elements if x not in fibers]
        if missing:
            raise DoctrineDefinitionError(f"no fiber given for {missing}")
        self.atoms: Dict[str, Tuple[str, ...]] = {x: tuple(fibers[x]) for x in base.elements}
        for x, atoms in self.atoms.items():
            if len(set(atoms)) != len(atoms):
                raise DoctrineDefinitionError(f"repeated atoms in the fiber over {x}")

        self._maps: Dict[Tuple[str, str], Dict[str, str]] = {}
        for x in base.elements:
            for y in base.elements:
                if base.is_leq(x, y):
                    self._maps[(x, y)] = self._atom_map(x, y, reindex_tables.get((x, y)))
        for key in reindex_tables:
            if key not in self._maps:
                raise DoctrineDefinitionError(f"reindex table for {key[0]}->{key[1]} but {key[0]} is not below {key[1]}")
        self._check_functoriality()
        self._elements: Dict[str, List[Element]] = {}
        logger.info(f"Finite doctrine over {len(base.elements)} objects, fiber sizes {[2 ** len(a) for a in self.atoms.values()]}")

    def _atom_map(self, x: str, y: str, table: Mapping[str, Sequence[str]]) -> Dict[str, str]:
        if table is None:
            if x == y:
                return {a: a for a in self.atoms[x]}
            raise DoctrineDefinitionError(f"missing reindex table for {x}->{y}")
        mapping: Dict[str, str] = {}
        for b, preimage in table.items():
            if b not in self.atoms[y]:
                raise DoctrineDefinitionError(f"{b} is not an atom over {y}")
            for a in preimage:
                if a not in self.atoms[x]:
                    raise DoctrineDefinitionError(f"{a} is not an atom over {x}")
                if a in mapping:
                    raise DoctrineDefinitionError(f"atom {a} appears in two preimages of {x}->{y}")
                mapping[a] = b
        uncovered = [a for a in self.atoms[x] if a not in mapping]
        if uncovered:
            raise DoctrineDefinitionError(f"preimages of {x}->{y} do not cover {uncovered}")
        return mapping

    def _check_functoriality(self) -> None:
        for x in self.base.elements:
            if any(self._maps[(x, x)][a] != a for a in self.atoms[x]):
                raise DoctrineDefinitionError(f"reindexing along the identity of {x} is not the identity")
        for (x, y), first in self._maps.items():
            for (y2, z), second in self._maps.items():
                if y2 != y:
                    continue
                direct = self._maps[(x, z)]
                for a in self.atoms[x]:
                    if direct[a] != second[first[a]]:
                        raise DoctrineDefinitionError(f"reindexing is not functorial along {x}->{y}->{z}")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "FiniteDoctrine":
        """Build from {"base": semilattice, "fibers": {...}, "reindex": {"x->y": {...}}}"""
        base = SemilatticeCategory.from_dict(data["base"])
        tables = {}
        for key, table in (data.get("reindex") or {}).items():
            if "->" not in key:
                raise DoctrineDefinitionError(f"malformed reindex key {key!r}, expected 'x->y'")
            x, y = (part.strip() for part in key.split("->", 1))
            tables[(x, y)] = table
        return cls(base, data["fibers"], tables)

    @property
    def exhaustive(self) -> bool:
        return True

    def atom_map(self, f: PosetArrow) -> Dict[str, str]:
        return dict(self._maps[(f.source, f.target)])

    def element(self, obj: str, atoms: Iterable[str]) -> Element:
        return self.require(obj, frozenset(atoms))

    def contains(self, obj: str, element: Any) -> bool:
        return isinstance(element, frozenset) and obj in self.atoms and element <= set(self.atoms[obj])

    def top(self, obj: str) -> Element:
        return frozenset(self.atoms[obj])

    def bottom(self, obj: str) -> Element:
        return frozenset()

    def meet(self, obj: str, a: Element, b: Element) -> Element:
        return a & b

    def join(self, obj: str, a: Element, b: Element) -> Element:
        return a | b

    def negate(self, obj: str, a: Element) -> Element:
        return frozenset(self.atoms[obj]) - a

    def reindex(self, f: PosetArrow, element: Element) -> Element:
        if (f.source, f.target) not in self._maps:
            raise MorphismMismatchError(f"{f} is not an arrow of the base")
        self.require(f.target, element)
        mapping = self._maps[(f.source, f.target)]
        return frozenset(a for a in self.atoms[f.source] if mapping[a] in element)

    def decide(self, obj: str, a: Element, b: Element, refute: bool = True) -> Verdict:
        return Verdict(Tri.of(a <= b), reason="exact")

    def elements(self, obj: str) -> List[Element]:
        """Subsets ordered by size, then by atom positions"""
        if obj not in self._elements:
            atoms = self.atoms[obj]
            self._elements[obj] = [
                frozenset(c) for k in range(len(atoms) + 1) for c in combinations(atoms, k)
            ]
        return list(self._elements[obj])

    def render(self, element: Any) -> str:
        return "{" + ",".join(sorted(element)) + "}"
