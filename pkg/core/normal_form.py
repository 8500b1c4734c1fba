"""
Disjunctive and conjunctive normal forms of Boolean trees.

Works for quantifier-free formulas and Free1 elements alike: literals are
signed leaves. Constants are folded, duplicates removed, and literals and
clauses sorted by printed form. No minimization is attempted.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Any, FrozenSet, List, Tuple

from core.boolean import And, Bot, Not, Or, Top, conj, disj


class NormalFormKind(Enum):
    """Shape of a normal form"""
    DNF = "dnf"
    CNF = "cnf"


@dataclass(frozen=True)
class Literal:
    leaf: Any
    positive: bool = True

    def negated(self) -> "Literal":
        return Literal(self.leaf, not self.positive)

    def to_expression(self) -> Any:
        return self.leaf if self.positive else Not(self.leaf)

    def __str__(self) -> str:
        return str(self.leaf) if self.positive else f"!{self.leaf}"


Clause = Tuple[Literal, ...]


@dataclass(frozen=True)
class NormalForm:
    """DNF: disjunction of conjunctive clauses. CNF: conjunction of disjunctive clauses."""
    kind: NormalFormKind
    clauses: Tuple[Clause, ...]

    def to_expression(self) -> Any:
        if self.kind is NormalFormKind.DNF:
            return disj(conj(l.to_expression() for l in c) for c in self.clauses)
        return conj(disj(l.to_expression() for l in c) for c in self.clauses)

    def __str__(self) -> str:
        inner, outer = (" & ", " | ") if self.kind is NormalFormKind.DNF else (" | ", " & ")
        if not self.clauses:
            return "false" if self.kind is NormalFormKind.DNF else "true"
        parts = []
        for clause in self.clauses:
            if not clause:
                parts.append("true" if self.kind is NormalFormKind.DNF else "false")
            elif len(clause) == 1 or len(self.clauses) == 1:
                parts.append(inner.join(str(l) for l in clause))
            else:
                parts.append("(" + inner.join(str(l) for l in clause) + ")")
        return outer.join(parts)


def _dnf(node: Any, positive: bool) -> List[FrozenSet[Literal]]:
    if isinstance(node, Top):
        return [frozenset()] if positive else []
    if isinstance(node, Bot):
        return [] if positive else [frozenset()]
    if isinstance(node, Not):
        return _dnf(node.operand, not positive)
    if isinstance(node, (And, Or)):
        left, right = _dnf(node.left, positive), _dnf(node.right, positive)
        if isinstance(node, And) == positive:
            # conjunction: distribute
            return [a | b for a in left for b in right]
        return left + right
    return [frozenset({Literal(node, positive)})]


def _canonical(clauses: List[FrozenSet[Literal]]) -> Tuple[Clause, ...]:
    ordered = {tuple(sorted(c, key=str)) for c in clauses}
    return tuple(sorted(ordered, key=lambda c: [str(l) for l in c]))


def normal_form(expression: Any, kind: NormalFormKind) -> NormalForm:
    """Propositionally equivalent DNF or CNF with canonical ordering"""
    if kind is NormalFormKind.DNF:
        return NormalForm(kind, _canonical(_dnf(expression, True)))
    # CNF(e) is the literal-wise negation of DNF(!e)
    dual = _dnf(expression, False)
    return NormalForm(kind, _canonical([frozenset(l.negated() for l in c) for c in dual]))
