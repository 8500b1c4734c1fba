"""
Input and output file formats: theory text, sequent and Free1 query text,
and JSON schemas for finite doctrines, families, witnesses, models and results.
"""
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from core.category import CtxMorphism
from core.errors import MalformedWitnessError, ParseError, SignatureError
from core.parser import parse_formula, parse_free1, parse_term
from core.structures import Structure
from core.terms import Signature
from doctrines.finite import FiniteDoctrine
from doctrines.syntactic import SyntacticDoctrine
from filters.family import Family
from filters.search import Witness
from free1.generators import exists_gen, forall_gen
from free1.sequent import MixedSequent


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _arity(declaration: str, number: int) -> Tuple[str, int]:
    name, slash, arity = declaration.partition("/")
    if not slash or not name.strip() or not arity.strip().isdigit():
        raise ParseError(f"expected <name>/<arity>, got {declaration!r}", number, 1)
    return name.strip(), int(arity)


def parse_theory(
    text: str,
    instantiation_depth: Optional[int] = None,
    model_bound: Optional[int] = None,
) -> SyntacticDoctrine:
    """
    Theory file: `pred R/1`, `fun f/1`, `const a`, `axiom <formula>`.

    Declarations may appear in any order; axioms are read against the full
    signature and live in the context of their highest variable.
    """
    functions: List[Tuple[str, int]] = []
    predicates: List[Tuple[str, int]] = []
    axiom_lines: List[Tuple[int, str]] = []
    declared: Dict[str, int] = {}
    for number, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        rest = rest.strip()
        if keyword == "axiom":
            if not rest:
                raise ParseError("empty axiom", number, 1)
            axiom_lines.append((number, rest))
            continue
        if keyword == "pred":
            name, arity = _arity(rest, number)
            target = predicates
        elif keyword == "fun":
            name, arity = _arity(rest, number)
            target = functions
        elif keyword == "const":
            name, arity = rest, 0
            if not name.isidentifier():
                raise ParseError(f"bad constant name {name!r}", number, 7)
            target = functions
        else:
            raise ParseError(f"unknown declaration {keyword!r}", number, 1)
        if name in declared:
            raise SignatureError(f"line {number}: {name} already declared on line {declared[name]}")
        declared[name] = number
        target.append((name, arity))

    signature = Signature(tuple(functions), tuple(predicates))
    axioms = []
    for number, source in axiom_lines:
        try:
            axioms.append(parse_formula(source, signature))
        except ParseError as e:
            raise ParseError(f"cannot parse axiom {source!r}", number, e.column) from None
    doctrine = SyntacticDoctrine(signature, axioms)
    return doctrine.with_bounds(instantiation_depth, model_bound)


def render_theory(doctrine: SyntacticDoctrine) -> str:
    lines = []
    for name, arity in doctrine.signature.functions:
        lines.append(f"const {name}" if arity == 0 else f"fun {name}/{arity}")
    for name, arity in doctrine.signature.predicates:
        lines.append(f"pred {name}/{arity}")
    lines.extend(f"axiom {axiom}" for axiom in doctrine.axioms)
    return "\n".join(lines) + "\n"


def parse_sequent(text: str, doctrine: SyntacticDoctrine) -> MixedSequent:
    return MixedSequent.parse(doctrine, text)


def parse_free1_query(text: str, doctrine: SyntacticDoctrine) -> Tuple[int, Any, Any]:
    """Query file: `context n`, `lhs <expr>`, `rhs <expr>` over [forall k: phi] / [exists k: phi] leaves"""
    fixed: Optional[int] = None
    sides: Dict[str, Any] = {}
    for number, line in _lines(text):
        keyword, _, rest = line.partition(" ")
        if keyword == "context":
            if not rest.strip().isdigit():
                raise ParseError("expected `context <n>`", number, 1)
            fixed = int(rest)
        elif keyword in ("lhs", "rhs"):
            if fixed is None:
                raise ParseError("`context <n>` must come first", number, 1)
            if keyword in sides:
                raise ParseError(f"second {keyword} line", number, 1)
            size = fixed

            def factory(quantifier: str, bound: int, body: Any) -> Any:
                build = forall_gen if quantifier == "forall" else exists_gen
                return build(doctrine, size, bound, body)

            try:
                sides[keyword] = parse_free1(rest, factory)
            except ParseError as e:
                raise ParseError(f"cannot parse {keyword} expression", number, e.column) from None
        else:
            raise ParseError(f"unknown query line {keyword!r}", number, 1)
    if fixed is None or set(sides) != {"lhs", "rhs"}:
        raise ParseError("query needs `context`, `lhs` and `rhs` lines")
    return fixed, sides["lhs"], sides["rhs"]


class SemilatticeFile(BaseModel):
    elements: List[str]
    top: str
    meet: Dict[str, str] = Field(default_factory=dict)


class FiniteDoctrineFile(BaseModel):
    base: SemilatticeFile
    fibers: Dict[str, List[str]]
    reindex: Dict[str, Dict[str, List[str]]] = Field(default_factory=dict)

    def to_doctrine(self) -> FiniteDoctrine:
        return FiniteDoctrine.from_dict(self.model_dump())


class FamilyFile(BaseModel):
    """generators: object -> list of elements, each element a list of atoms"""
    kind: Optional[Literal["filter", "ideal"]] = None
    generators: Dict[str, List[List[str]]]

    def to_family(self, doctrine: FiniteDoctrine, name: str = "") -> Family:
        unknown = [x for x in self.generators if x not in doctrine.atoms]
        if unknown:
            raise SignatureError(f"family mentions unknown objects {unknown}")
        return Family(
            doctrine,
            {x: [doctrine.element(x, atoms) for atoms in elements] for x, elements in self.generators.items()},
            name=name or self.kind or "",
        )


class PairFile(BaseModel):
    filter: FamilyFile
    ideal: FamilyFile

    @model_validator(mode="after")
    def _kinds(self) -> "PairFile":
        if self.filter.kind not in (None, "filter") or self.ideal.kind not in (None, "ideal"):
            raise ValueError("a pair holds a filter and an ideal")
        return self


class WitnessFile(BaseModel):
    """Witness JSON; picks are 0-based and terms are printed term tuples"""
    n: Optional[int] = None
    picks: List[int] = Field(default_factory=list)
    terms: List[List[str]] = Field(default_factory=list)
    n_prime: Optional[int] = None
    picks_ex: List[int] = Field(default_factory=list)
    terms_ex: List[List[str]] = Field(default_factory=list)

    @model_validator(mode="after")
    def _shapes(self) -> "WitnessFile":
        if len(self.picks) != len(self.terms) or len(self.picks_ex) != len(self.terms_ex):
            raise ValueError("every pick needs one term tuple")
        if self.n is not None and self.n != len(self.picks):
            raise ValueError(f"n={self.n} but {len(self.picks)} picks")
        if self.n_prime is not None and self.n_prime != len(self.picks_ex):
            raise ValueError(f"n_prime={self.n_prime} but {len(self.picks_ex)} picks")
        return self

    def to_witness(self, sequent: MixedSequent) -> Witness:
        doctrine = sequent.doctrine
        domain = sequent.problem().domain

        def morphisms(picks: List[int], terms: List[List[str]], listing) -> Tuple[CtxMorphism, ...]:
            built = []
            for pick, texts in zip(picks, terms):
                if not 0 <= pick < len(listing):
                    raise MalformedWitnessError(f"pick {pick} out of range 0..{len(listing) - 1}")
                target = listing[pick][0]
                components = tuple(parse_term(t, doctrine.signature, domain) for t in texts)
                if len(components) != target:
                    raise MalformedWitnessError(f"pick {pick} needs {target} terms, got {len(components)}")
                built.append(CtxMorphism(domain, target, components))
            return tuple(built)

        return Witness(
            tuple(self.picks),
            morphisms(self.picks, self.terms, sequent.alphas),
            tuple(self.picks_ex),
            morphisms(self.picks_ex, self.terms_ex, sequent.deltas),
        )


class ModelFile(BaseModel):
    """Model JSON with carrier labels 1..k"""
    carrier: int = Field(ge=0)
    functions: Dict[str, List[Tuple[List[int], int]]] = Field(default_factory=dict)
    predicates: Dict[str, List[List[int]]] = Field(default_factory=dict)

    def to_structure(self, signature: Signature) -> Structure:
        return Structure.from_dict(signature, self.model_dump())


class QueryResult(BaseModel):
    status: Literal["proved", "refuted", "unknown"]
    witness: Optional[Dict[str, Any]] = None
    countermodel: Optional[Dict[str, Any]] = None
    clauses: List[Dict[str, Any]] = Field(default_factory=list)
    bounds: Dict[str, Any] = Field(default_factory=dict)
    elapsed: float = 0.0


__all__ = [
    "parse_theory",
    "render_theory",
    "parse_sequent",
    "parse_free1_query",
    "SemilatticeFile",
    "FiniteDoctrineFile",
    "FamilyFile",
    "PairFile",
    "WitnessFile",
    "ModelFile",
    "QueryResult",
]
