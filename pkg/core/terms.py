"""
First-order terms and quantifier-free formulas over a finite signature.

Variables are context positions: Var(i) is the i-th variable of the ambient
context, printed as x<i>. A context is just its size.
"""
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple, Union

from core.boolean import And, Bot, Not, Or, Top, leaves, map_leaves
from core.errors import MalformedSubstitutionError, SignatureError


@dataclass(frozen=True)
class Signature:
    """Function and predicate symbols with their arities"""
    functions: Tuple[Tuple[str, int], ...] = ()
    predicates: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        for kind, symbols in (("function", self.functions), ("predicate", self.predicates)):
            seen = set()
            for name, arity in symbols:
                if arity < 0:
                    raise SignatureError(f"{kind} symbol {name} has negative arity {arity}")
                if name in seen:
                    raise SignatureError(f"duplicate {kind} symbol {name}")
                seen.add(name)

    @property
    def function_arities(self) -> Dict[str, int]:
        return dict(self.functions)

    @property
    def predicate_arities(self) -> Dict[str, int]:
        return dict(self.predicates)

    @property
    def constants(self) -> Tuple[str, ...]:
        return tuple(name for name, arity in self.functions if arity == 0)

    @property
    def has_constants(self) -> bool:
        return bool(self.constants)

    def function_arity(self, name: str) -> int:
        try:
            return self.function_arities[name]
        except KeyError:
            raise SignatureError(f"unknown function symbol {name}") from None

    def predicate_arity(self, name: str) -> int:
        try:
            return self.predicate_arities[name]
        except KeyError:
            raise SignatureError(f"unknown predicate symbol {name}") from None

    def restrict(self, function_names: Iterable[str], predicate_names: Iterable[str]) -> "Signature":
        """Sub-signature keeping only the named symbols (declaration order preserved)"""
        keep_f, keep_p = set(function_names), set(predicate_names)
        return Signature(
            functions=tuple(s for s in self.functions if s[0] in keep_f),
            predicates=tuple(s for s in self.predicates if s[0] in keep_p),
        )

    def extend(self, functions: Iterable[Tuple[str, int]] = (), predicates: Iterable[Tuple[str, int]] = ()) -> "Signature":
        return Signature(self.functions + tuple(functions), self.predicates + tuple(predicates))


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class App:
    symbol: str
    args: Tuple["Term", ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"


Term = Union[Var, App]


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(a) for a in self.args)})"


# QFFormula = Atom | Top | Bot | Not | And | Or
QFFormula = Any


def term_depth(term: Term) -> int:
    """Variables and constants have depth 0"""
    if isinstance(term, Var) or not term.args:
        return 0
    return 1 + max(term_depth(a) for a in term.args)


def term_variables(term: Term) -> Iterator[int]:
    if isinstance(term, Var):
        yield term.index
    else:
        for arg in term.args:
            yield from term_variables(arg)


def term_functions(term: Term) -> Iterator[str]:
    if isinstance(term, App):
        yield term.symbol
        for arg in term.args:
            yield from term_functions(arg)


def substitute_term(term: Term, sigma: Sequence[Term]) -> Term:
    if isinstance(term, Var):
        if term.index >= len(sigma):
            raise MalformedSubstitutionError(f"variable {term} outside substitution of length {len(sigma)}")
        return sigma[term.index]
    return App(term.symbol, tuple(substitute_term(a, sigma) for a in term.args))


def formula_variables(phi: QFFormula) -> FrozenSet[int]:
    return frozenset(i for atom in leaves(phi) for a in atom.args for i in term_variables(a))


def context_size(phi: QFFormula) -> int:
    """Smallest context the formula lives in"""
    indices = formula_variables(phi)
    return max(indices) + 1 if indices else 0


def formula_symbols(phi: QFFormula) -> Tuple[FrozenSet[str], FrozenSet[str]]:
    """(function symbols, predicate symbols) occurring in phi"""
    functions, predicates = set(), set()
    for atom in leaves(phi):
        predicates.add(atom.predicate)
        for arg in atom.args:
            functions.update(term_functions(arg))
    return frozenset(functions), frozenset(predicates)


def check_term(signature: Signature, term: Term, context: Optional[int]) -> None:
    """context None accepts every variable"""
    if isinstance(term, Var):
        if context is not None and term.index >= context:
            raise MalformedSubstitutionError(f"variable {term} outside context of size {context}")
        return
    arity = signature.function_arity(term.symbol)
    if arity != len(term.args):
        raise SignatureError(f"{term.symbol} expects {arity} arguments, got {len(term.args)}")
    for arg in term.args:
        check_term(signature, arg, context)


def check_formula(signature: Signature, phi: QFFormula, context: Optional[int]) -> None:
    """Raise unless phi is a well-formed formula of the signature in the given context"""
    if isinstance(phi, (Top, Bot)):
        return
    if isinstance(phi, Not):
        check_formula(signature, phi.operand, context)
        return
    if isinstance(phi, (And, Or)):
        check_formula(signature, phi.left, context)
        check_formula(signature, phi.right, context)
        return
    if not isinstance(phi, Atom):
        raise SignatureError(f"not a quantifier-free formula: {phi!r}")
    arity = signature.predicate_arity(phi.predicate)
    if arity != len(phi.args):
        raise SignatureError(f"{phi.predicate} expects {arity} arguments, got {len(phi.args)}")
    for arg in phi.args:
        check_term(signature, arg, context)


def substitute(phi: QFFormula, sigma: Sequence[Term], target_context: int) -> QFFormula:
    """
    Simultaneous substitution of sigma[i] for Var(i).

    Args:
        phi: formula over a context of size len(sigma)
        sigma: one term per source variable, each over the target context
        target_context: size of the context of the result
    """
    sigma = tuple(sigma)
    if context_size(phi) > len(sigma):
        raise MalformedSubstitutionError(
            f"substitution of length {len(sigma)} does not cover the variables of {phi}"
        )
    for term in sigma:
        for index in term_variables(term):
            if index >= target_context:
                raise MalformedSubstitutionError(
                    f"term {term} is not over the target context of size {target_context}"
                )
    return map_leaves(phi, lambda atom: Atom(atom.predicate, tuple(substitute_term(a, sigma) for a in atom.args)))
