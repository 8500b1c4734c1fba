"""
Quotients of models by the interpretation of an equality family.
"""
from itertools import product
from typing import Any, Dict, FrozenSet, List, Optional, Sequence

from loguru import logger

from core.category import ProductCone
from core.errors import ElementaryCheckError, QuotientError, SignatureError, UnboundedScopeError
from core.structures import Structure
from doctrines.elementary import EqualityFamily, check_elementary
from models.base_model import PropModel

Block = FrozenSet[Any]


class QuotientModel(PropModel):
    """
    N / ~ where a ~_X b iff (a, b) is in n_{X x X}(delta_X).

    Points are equivalence classes, computed per object on first use.
    """

    def __init__(self, source: PropModel, delta: EqualityFamily):
        super().__init__(source.doctrine, name=f"{source.name}/~")
        self.source = source
        self.delta = delta
        self._classes: Dict[Any, List[Block]] = {}

    def classes(self, obj: Any) -> List[Block]:
        if obj not in self._classes:
            cat = self.doctrine.category
            square = cat.product(obj, obj)
            relation = self.source.interpret(square.obj, self.delta.at(obj))
            points = self.source.carrier(obj)

            def related(a: Any, b: Any) -> bool:
                return self.source.pair_point(square, [a, b]) in relation

            for a in points:
                if not related(a, a):
                    raise QuotientError(f"~ is not reflexive at {a!r}")
                for b in points:
                    if related(a, b) and not related(b, a):
                        raise QuotientError(f"~ is not symmetric at {a!r}, {b!r}")
            blocks: List[Block] = []
            for a in points:
                if any(a in block for block in blocks):
                    continue
                block = frozenset(b for b in points if related(a, b))
                if any(not related(b, c) for b in block for c in block):
                    raise QuotientError(f"~ is not transitive around {a!r}")
                blocks.append(block)
            self._classes[obj] = blocks
            logger.debug(f"quotient at {cat.render_object(obj)}: {len(points)} points, {len(blocks)} classes")
        return self._classes[obj]

    def class_of(self, obj: Any, point: Any) -> Block:
        return next(block for block in self.classes(obj) if point in block)

    def carrier(self, obj: Any) -> List[Block]:
        return list(self.classes(obj))

    def apply(self, f: Any, block: Block) -> Block:
        target = self.doctrine.category.target(f)
        images = {self.class_of(target, self.source.apply(f, a)) for a in block}
        if len(images) != 1:
            raise QuotientError(f"M({f}) does not respect ~")
        return images.pop()

    def interpret(self, obj: Any, element: Any) -> FrozenSet[Block]:
        inside = self.source.interpret(obj, element)
        result = set()
        for block in self.classes(obj):
            hits = block & inside
            if hits and hits != block:
                raise QuotientError(f"{self.doctrine.render(element)} splits a class of ~")
            if hits:
                result.add(block)
        return frozenset(result)

    def pair_point(self, cone: ProductCone, points: Sequence[Block]) -> Block:
        representatives = [next(iter(sorted(block, key=repr))) for block in points]
        return self.class_of(cone.obj, self.source.pair_point(cone, representatives))


def elementary_quotient(
    model: PropModel,
    delta: EqualityFamily,
    objects: Optional[Sequence[Any]] = None,
) -> QuotientModel:
    """
    Quotient a model by delta after checking that delta is an equality.

    On the given objects the quotient interprets delta as the diagonal and
    validates the same elements as the source.
    """
    doctrine = model.doctrine
    objects = list(objects) if objects is not None else doctrine.category.objects()
    if objects is None:
        raise UnboundedScopeError("objects must be listed for an infinite base")
    report = check_elementary(doctrine, delta, objects)
    if not report.passed:
        failed = [c.name for c in report.conditions if not c.passed]
        raise ElementaryCheckError(f"equality family fails {failed}")

    quotient = QuotientModel(model, delta)
    cat = doctrine.category
    for obj in objects:
        square = cat.product(obj, obj)
        diagonal = frozenset(quotient.pair_point(square, [c, c]) for c in quotient.carrier(obj))
        if quotient.interpret(square.obj, delta.at(obj)) != diagonal:
            raise QuotientError(f"delta is not the diagonal on the quotient at {cat.render_object(obj)}")
        for alpha in doctrine.elements(obj):
            if quotient.validates(obj, alpha) != model.validates(obj, alpha):
                raise QuotientError(f"quotient changes the validity of {doctrine.render(alpha)}")
    logger.info(f"Elementary quotient verified on {len(objects)} objects")
    return quotient


def quotient_structure(structure: Structure, relation: str) -> Structure:
    """
    Quotient a first-order structure by the binary predicate named relation,
    which must be an equivalence compatible with every symbol.
    """
    signature = structure.signature
    if signature.predicate_arity(relation) != 2:
        raise SignatureError(f"{relation} is not a binary predicate")
    eq = structure.predicates[relation]
    points = range(structure.size)
    for a in points:
        if (a, a) not in eq:
            raise QuotientError(f"{relation} is not reflexive at {a + 1}")
    for a, b in eq:
        if (b, a) not in eq:
            raise QuotientError(f"{relation} is not symmetric at {a + 1}, {b + 1}")
        for c in points:
            if (b, c) in eq and (a, c) not in eq:
                raise QuotientError(f"{relation} is not transitive at {a + 1}, {b + 1}, {c + 1}")

    representative = {a: min(b for b in points if (a, b) in eq) for a in points}
    labels = {r: i for i, r in enumerate(sorted(set(representative.values())))}
    index = {a: labels[representative[a]] for a in points}

    def congruent(args: Sequence[int], other: Sequence[int]) -> bool:
        return all(index[x] == index[y] for x, y in zip(args, other))

    functions: Dict[str, Dict[Any, int]] = {}
    for name, table in structure.functions.items():
        quotient_table: Dict[Any, int] = {}
        for args, value in table.items():
            key = tuple(index[a] for a in args)
            if key in quotient_table and quotient_table[key] != index[value]:
                raise QuotientError(f"{name} does not respect {relation}")
            quotient_table[key] = index[value]
        functions[name] = quotient_table
    predicates: Dict[str, FrozenSet[Any]] = {}
    for name, rel in structure.predicates.items():
        arity = signature.predicate_arity(name)
        for args in product(points, repeat=arity):
            for other in rel:
                if congruent(args, other) and args not in rel:
                    raise QuotientError(f"{name} does not respect {relation}")
        predicates[name] = frozenset(tuple(index[a] for a in args) for args in rel)
    logger.info(f"Quotient by {relation}: {structure.size} points, {len(labels)} classes")
    return Structure(signature, len(labels), functions, predicates)
