"""
Finite first-order structures over a signature, and their exhaustive enumeration.

Carriers are range(k); the empty carrier is allowed unless constants force a
point. Formulas are compiled to closures once and evaluated pointwise.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Callable, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

from core.boolean import And, Bot, Not, Or, Top
from core.errors import SignatureError
from core.terms import Signature, Term, Var, context_size

Point = Tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Structure:
    """Interpretation of a signature on the carrier {0, ..., size-1}"""
    signature: Signature
    size: int
    functions: Mapping[str, Mapping[Point, int]]
    predicates: Mapping[str, FrozenSet[Point]]

    def points(self, context: int) -> Iterator[Point]:
        return product(range(self.size), repeat=context)

    def term_value(self, term: Term, point: Point) -> int:
        return _compile_term(term)(self, point)

    def holds(self, phi: Any, point: Point) -> bool:
        return compile_formula(phi)(self, point)

    def satisfies(self, phi: Any, context: Optional[int] = None) -> bool:
        """Validity of phi read as universally closed over its context"""
        check = compile_formula(phi)
        n = context_size(phi) if context is None else context
        return all(check(self, p) for p in self.points(n))

    def key(self) -> Tuple:
        return (
            self.size,
            tuple((f, tuple(sorted(t.items()))) for f, t in sorted(self.functions.items())),
            tuple((p, tuple(sorted(r))) for p, r in sorted(self.predicates.items())),
        )

    def __eq__(self, other: Any) -> bool:
        return isinstance(other, Structure) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def to_dict(self) -> Dict[str, Any]:
        """JSON shape with carrier labels 1..k"""
        data: Dict[str, Any] = {"carrier": self.size}
        if self.functions:
            data["functions"] = {
                name: [[[a + 1 for a in args], value + 1] for args, value in sorted(table.items())]
                for name, table in self.functions.items()
            }
        if self.predicates:
            data["predicates"] = {
                name: [[a + 1 for a in args] for args in sorted(rel)] for name, rel in self.predicates.items()
            }
        return data

    @classmethod
    def from_dict(cls, signature: Signature, data: Mapping[str, Any]) -> "Structure":
        size = int(data.get("carrier", 0))
        functions: Dict[str, Dict[Point, int]] = {}
        for name, rows in (data.get("functions") or {}).items():
            arity = signature.function_arity(name)
            table = {}
            for args, value in rows:
                if len(args) != arity:
                    raise SignatureError(f"{name} expects {arity} arguments in model table")
                table[tuple(a - 1 for a in args)] = value - 1
            functions[name] = table
        predicates = {}
        for name, rows in (data.get("predicates") or {}).items():
            signature.predicate_arity(name)
            predicates[name] = frozenset(tuple(a - 1 for a in args) for args in rows)
        for name, arity in signature.functions:
            table = functions.get(name, {})
            for args in product(range(size), repeat=arity):
                if args not in table:
                    raise SignatureError(f"model table for {name} misses arguments {[a + 1 for a in args]}")
            functions[name] = table
        for name, _ in signature.predicates:
            predicates.setdefault(name, frozenset())
        return cls(signature, size, functions, predicates)

    def __str__(self) -> str:
        parts = [f"carrier={self.size}"]
        for name, table in self.functions.items():
            parts.append(f"{name}={dict(sorted(table.items()))}")
        for name, rel in self.predicates.items():
            parts.append(f"{name}={sorted(rel)}")
        return "Structure(" + ", ".join(parts) + ")"


@lru_cache(maxsize=8192)
def _compile_term(term: Term) -> Callable[[Structure, Point], int]:
    if isinstance(term, Var):
        i = term.index
        return lambda s, p: p[i]
    name = term.symbol
    subs = tuple(_compile_term(a) for a in term.args)
    if not subs:
        return lambda s, p: s.functions[name][()]
    return lambda s, p: s.functions[name][tuple(f(s, p) for f in subs)]


@lru_cache(maxsize=8192)
def compile_formula(phi: Any) -> Callable[[Structure, Point], bool]:
    """Closure evaluating phi in a structure at a point"""
    if isinstance(phi, Top):
        return lambda s, p: True
    if isinstance(phi, Bot):
        return lambda s, p: False
    if isinstance(phi, Not):
        inner = compile_formula(phi.operand)
        return lambda s, p: not inner(s, p)
    if isinstance(phi, And):
        left, right = compile_formula(phi.left), compile_formula(phi.right)
        return lambda s, p: left(s, p) and right(s, p)
    if isinstance(phi, Or):
        left, right = compile_formula(phi.left), compile_formula(phi.right)
        return lambda s, p: left(s, p) or right(s, p)
    name = phi.predicate
    args = tuple(_compile_term(a) for a in phi.args)
    return lambda s, p: tuple(f(s, p) for f in args) in s.predicates[name]


def _function_tables(size: int, arity: int) -> List[Dict[Point, int]]:
    domain = list(product(range(size), repeat=arity))
    return [dict(zip(domain, values)) for values in product(range(size), repeat=len(domain))]


def _predicate_tables(size: int, arity: int) -> List[FrozenSet[Point]]:
    domain = list(product(range(size), repeat=arity))
    return [
        frozenset(d for d, keep in zip(domain, mask) if keep)
        for mask in product((False, True), repeat=len(domain))
    ]


def enumerate_structures(
    signature: Signature,
    axioms: Sequence[Any] = (),
    bound: int = 3,
    require_nonempty: Optional[bool] = None,
) -> Iterator[Structure]:
    """
    All structures with carrier size <= bound satisfying the axioms.

    Order: by carrier size, then function tables, then predicate tables, each in
    product order. require_nonempty defaults to "the signature has constants";
    pass it explicitly when enumerating a restricted signature.
    """
    if require_nonempty is None:
        require_nonempty = signature.has_constants
    compiled = [(compile_formula(ax), context_size(ax)) for ax in axioms]
    for size in range(1 if require_nonempty else 0, bound + 1):
        f_choices = [_function_tables(size, arity) for _, arity in signature.functions]
        p_choices = [_predicate_tables(size, arity) for _, arity in signature.predicates]
        f_names = [name for name, _ in signature.functions]
        p_names = [name for name, _ in signature.predicates]
        for f_tables in product(*f_choices):
            functions = dict(zip(f_names, f_tables))
            for p_tables in product(*p_choices):
                structure = Structure(signature, size, functions, dict(zip(p_names, p_tables)))
                if all(all(check(structure, p) for p in structure.points(n)) for check, n in compiled):
                    yield structure
