"""
Concrete syntax for terms, quantifier-free formulas and Free1 expressions.

Precedence from tightest to loosest: ! & | -> <->. Implication and
biconditional are eliminated while parsing.
"""
from typing import Any, Callable, Optional

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from core.boolean import BOT, TOP, And, Not, Or
from core.errors import DoctrineError, ParseError
from core.terms import App, Atom, Signature, Var, check_formula, check_term

GRAMMAR = r"""
    ?formula: iff
    ?iff: imp
        | imp "<->" imp              -> iff
    ?imp: disj
        | disj "->" imp              -> imp
    ?disj: conj
        | disj "|" conj              -> or_
    ?conj: unary
        | conj "&" unary             -> and_
    ?unary: "!" unary                -> not_
        | "(" formula ")"
        | "true"                     -> top
        | "false"                    -> bot
        | NAME "(" term ("," term)* ")" -> atom
        | NAME                       -> atom

    ?term: VAR                       -> var
        | NAME "(" term ("," term)* ")" -> app
        | NAME                       -> app

    ?free1: fiff
    ?fiff: fimp
        | fimp "<->" fimp            -> iff
    ?fimp: fdisj
        | fdisj "->" fimp            -> imp
    ?fdisj: fconj
        | fdisj "|" fconj            -> or_
    ?fconj: funary
        | fconj "&" funary           -> and_
    ?funary: "!" funary              -> not_
        | "(" free1 ")"
        | "true"                     -> top
        | "false"                    -> bot
        | "[" "forall" INT ":" formula "]" -> forall_gen
        | "[" "exists" INT ":" formula "]" -> exists_gen

    VAR.2: /x[0-9]+(?![A-Za-z0-9_])/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.INT
    %import common.WS
    %ignore WS
"""

_PARSER = Lark(GRAMMAR, start=["formula", "term", "free1"], parser="lalr")


class FormulaBuilder(Transformer):
    """Builds terms and formulas; generator leaves go through a factory"""

    def __init__(self, generator_factory: Optional[Callable[[str, int, Any], Any]] = None):
        super().__init__()
        self.generator_factory = generator_factory

    def var(self, items):
        return Var(int(str(items[0])[1:]))

    def app(self, items):
        return App(str(items[0]), tuple(items[1:]))

    def atom(self, items):
        return Atom(str(items[0]), tuple(items[1:]))

    def top(self, _):
        return TOP

    def bot(self, _):
        return BOT

    def not_(self, items):
        return Not(items[0])

    def and_(self, items):
        return And(items[0], items[1])

    def or_(self, items):
        return Or(items[0], items[1])

    def imp(self, items):
        return Or(Not(items[0]), items[1])

    def iff(self, items):
        a, b = items
        return Or(And(a, b), And(Not(a), Not(b)))

    def forall_gen(self, items):
        return self.generator_factory("forall", int(items[0]), items[1])

    def exists_gen(self, items):
        return self.generator_factory("exists", int(items[0]), items[1])


def _parse(text: str, start: str, builder: FormulaBuilder) -> Any:
    try:
        tree = _PARSER.parse(text, start=start)
        return builder.transform(tree)
    except UnexpectedInput as e:
        raise ParseError(f"cannot parse {text.strip()!r}", getattr(e, "line", None), getattr(e, "column", None)) from None
    except VisitError as e:
        if isinstance(e.orig_exc, DoctrineError):
            raise e.orig_exc from None
        raise


def parse_formula(text: str, signature: Optional[Signature] = None, context: Optional[int] = None) -> Any:
    """Parse a quantifier-free formula, validating it when a signature is given"""
    phi = _parse(text, "formula", FormulaBuilder())
    if signature is not None:
        check_formula(signature, phi, context)
    return phi


def parse_term(text: str, signature: Optional[Signature] = None, context: Optional[int] = None) -> Any:
    term = _parse(text, "term", FormulaBuilder())
    if signature is not None:
        check_term(signature, term, context)
    return term


def parse_free1(text: str, generator_factory: Callable[[str, int, Any], Any]) -> Any:
    """
    Parse a Boolean combination of [forall k: phi] / [exists k: phi] leaves.

    Args:
        generator_factory: called as factory(quantifier, bound_size, body)
    """
    return _parse(text, "free1", FormulaBuilder(generator_factory))
