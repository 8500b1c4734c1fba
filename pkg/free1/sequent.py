"""
Mixed sequents over a fixed object S:

    forall alpha_i, exists gamma_h  |-  forall beta_j, exists delta_k

decided by Herbrand witness search and refuted by model enumeration at S.
"""
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Tuple

from core.category import Ctx
from core.errors import DoctrineError, MalformedWitnessError, NonFiniteDoctrineError, ParseError
from core.normal_form import Literal
from core.parser import parse_formula
from doctrines.base_doctrine import BaseDoctrine, Tri
from filters.search import Bounds, HerbrandProblem, Indexed, Outcome, Witness
from free1.generators import Generator
from models.base_model import ModelAtS
from models.enumeration import refute_sequent

_SLOTS = {
    ("lhs", "forall"): "alphas",
    ("lhs", "exists"): "gammas",
    ("rhs", "forall"): "betas",
    ("rhs", "exists"): "deltas",
}


@dataclass(frozen=True)
class MixedSequent:
    doctrine: BaseDoctrine = field(compare=False, repr=False)
    fixed: Any
    alphas: Tuple[Indexed, ...] = ()
    gammas: Tuple[Indexed, ...] = ()
    betas: Tuple[Indexed, ...] = ()
    deltas: Tuple[Indexed, ...] = ()

    def __post_init__(self):
        cat = self.doctrine.category
        for bound, body in self.alphas + self.gammas + self.betas + self.deltas:
            self.doctrine.require(cat.product(self.fixed, bound).obj, body)

    @classmethod
    def from_clause(
        cls,
        doctrine: BaseDoctrine,
        fixed: Any,
        premises: Sequence[Literal],
        conclusions: Sequence[Literal],
    ) -> "MixedSequent":
        """
        A DNF conjunct on the left and a CNF disjunct on the right.

        Negated generators change sides of the quantifier: !forall g reads
        as exists !g.
        """
        slots = {name: [] for name in _SLOTS.values()}
        for side, literals in (("lhs", premises), ("rhs", conclusions)):
            for literal in literals:
                leaf = literal.leaf
                if not isinstance(leaf, Generator):
                    raise DoctrineError(f"{leaf} is not a generator")
                if literal.positive:
                    slots[_SLOTS[(side, "forall")]].append((leaf.bound, leaf.body))
                else:
                    over = doctrine.category.product(fixed, leaf.bound).obj
                    slots[_SLOTS[(side, "exists")]].append((leaf.bound, doctrine.negate(over, leaf.body)))
        return cls(doctrine, fixed, **{k: tuple(v) for k, v in slots.items()})

    @classmethod
    def parse(cls, doctrine: BaseDoctrine, text: str) -> "MixedSequent":
        """Sequent file: `context n` then `lhs|rhs forall|exists k: formula` lines"""
        if not isinstance(doctrine.category, Ctx):
            raise DoctrineError("sequent files describe syntactic doctrines")
        fixed: Optional[int] = None
        slots = {name: [] for name in _SLOTS.values()}
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            words = line.split(None, 1)
            if words[0] == "context":
                if fixed is not None or len(words) != 2 or not words[1].strip().isdigit():
                    raise ParseError("expected a single `context <n>` line", number, 1)
                fixed = int(words[1])
                continue
            if fixed is None:
                raise ParseError("`context <n>` must come first", number, 1)
            parts = line.split(None, 2)
            if len(parts) < 3 or (parts[0], parts[1]) not in _SLOTS:
                raise ParseError(f"unknown sequent line {line!r}", number, 1)
            size, _, body_text = parts[2].partition(":")
            if not size.strip().isdigit() or not body_text.strip():
                raise ParseError(f"expected `<k>: <formula>` in {line!r}", number, 1)
            bound = int(size)
            try:
                body = parse_formula(body_text, doctrine.signature, fixed + bound)
            except ParseError as e:
                raise ParseError(f"cannot parse formula {body_text.strip()!r}", number, e.column) from None
            slots[_SLOTS[(parts[0], parts[1])]].append((bound, body))
        if fixed is None:
            raise ParseError("missing `context <n>` line")
        return cls(doctrine, fixed, **{k: tuple(v) for k, v in slots.items()})

    def to_text(self) -> str:
        lines = [f"context {self.fixed}"]
        for (side, kind), name in _SLOTS.items():
            for bound, body in getattr(self, name):
                lines.append(f"{side} {kind} {bound}: {body}")
        return "\n".join(lines) + "\n"

    def problem(self) -> HerbrandProblem:
        return HerbrandProblem(self.doctrine, self.fixed, self.alphas, self.gammas, self.betas, self.deltas)

    def search(self, bounds: Bounds) -> Outcome:
        return self.problem().search(bounds)

    def check_witness(self, witness: Witness) -> bool:
        """Evaluate the witnessed inequality; never searches"""
        return self.problem().check(witness) is Tri.TRUE

    def refute(self, bound: Optional[int] = None) -> Optional[ModelAtS]:
        """Model at S validating the premises and no conclusion, if one exists up to the bound"""
        try:
            return refute_sequent(
                self.doctrine, self.fixed, self.alphas, self.gammas, self.betas, self.deltas, bound
            )
        except NonFiniteDoctrineError:
            return None

    def reindex(self, f: Any) -> "MixedSequent":
        """The sequent over source(f), each body moved along f x id"""
        cat = self.doctrine.category
        if cat.target(f) != self.fixed:
            raise MalformedWitnessError(f"{f} does not end at {cat.render_object(self.fixed)}")

        def move(items: Tuple[Indexed, ...]) -> Tuple[Indexed, ...]:
            return tuple(
                (bound, self.doctrine.reindex(cat.product_map([f, cat.identity(bound)]), body))
                for bound, body in items
            )

        return MixedSequent(
            self.doctrine, cat.source(f), move(self.alphas), move(self.gammas), move(self.betas), move(self.deltas)
        )

    def __str__(self) -> str:
        render = self.doctrine.render
        lhs = [f"forall {b}. {render(a)}" for b, a in self.alphas] + [f"exists {b}. {render(g)}" for b, g in self.gammas]
        rhs = [f"forall {b}. {render(a)}" for b, a in self.betas] + [f"exists {b}. {render(d)}" for b, d in self.deltas]
        return f"{', '.join(lhs) or 'true'} |- {', '.join(rhs) or 'false'}"


def check_witness(sequent: MixedSequent, witness: Witness) -> bool:
    return sequent.check_witness(witness)


def transport_witness(f: Any, sequent: MixedSequent, witness: Witness) -> Tuple[MixedSequent, Witness]:
    """
    Move a witness along f: S -> S'. Each g_i is precomposed with
    f x id on the eigenvariable columns.
    """
    cat = sequent.doctrine.category
    moved = sequent.reindex(f)
    columns = [z for z, _ in sequent.betas] + [w for w, _ in sequent.gammas]
    shift = cat.product_map([f] + [cat.identity(c) for c in columns])
    transported = Witness(
        witness.picks,
        tuple(cat.compose(g, shift) for g in witness.morphisms),
        witness.picks_ex,
        tuple(cat.compose(g, shift) for g in witness.morphisms_ex),
    )
    return moved, transported

