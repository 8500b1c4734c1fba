"""
Boolean expression trees shared by quantifier-free formulas and Free1 elements.

Leaves are any hashable objects with a printed form (atoms, formal generators);
the connective nodes below are the same for both layers.
"""
from dataclasses import dataclass
from functools import reduce
from typing import Any, Callable, Iterable, Iterator


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "true"


@dataclass(frozen=True)
class Bot:
    def __str__(self) -> str:
        return "false"


@dataclass(frozen=True)
class Not:
    operand: Any

    def __str__(self) -> str:
        return f"!{_wrap(self.operand, 3)}"


@dataclass(frozen=True)
class And:
    left: Any
    right: Any

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, (And, Or)) else _wrap(self.right, 2)
        return f"{_wrap(self.left, 2)} & {right}"


@dataclass(frozen=True)
class Or:
    left: Any
    right: Any

    def __str__(self) -> str:
        right = f"({self.right})" if isinstance(self.right, Or) else _wrap(self.right, 1)
        return f"{_wrap(self.left, 1)} | {right}"


TOP = Top()
BOT = Bot()

CONNECTIVES = (Top, Bot, Not, And, Or)


def _precedence(node: Any) -> int:
    if isinstance(node, Or):
        return 1
    if isinstance(node, And):
        return 2
    if isinstance(node, Not):
        return 3
    return 4


def _wrap(node: Any, level: int) -> str:
    text = str(node)
    return f"({text})" if _precedence(node) < level else text


def is_leaf(node: Any) -> bool:
    return not isinstance(node, CONNECTIVES)


def conj(items: Iterable[Any]) -> Any:
    """Left-nested conjunction; the empty conjunction is true"""
    items = list(items)
    if not items:
        return TOP
    return reduce(And, items)


def disj(items: Iterable[Any]) -> Any:
    """Left-nested disjunction; the empty disjunction is false"""
    items = list(items)
    if not items:
        return BOT
    return reduce(Or, items)


def negate(node: Any) -> Any:
    """Negation that strips an existing outer negation"""
    if isinstance(node, Not):
        return node.operand
    return Not(node)


def leaves(node: Any) -> Iterator[Any]:
    """Leaves in left-to-right order (with repetitions)"""
    stack = [node]
    while stack:
        current = stack.pop()
        if isinstance(current, (And, Or)):
            stack.append(current.right)
            stack.append(current.left)
        elif isinstance(current, Not):
            stack.append(current.operand)
        elif not isinstance(current, (Top, Bot)):
            yield current


def map_leaves(node: Any, fn: Callable[[Any], Any]) -> Any:
    """Rebuild the tree with every leaf replaced by fn(leaf)"""
    if isinstance(node, (Top, Bot)):
        return node
    if isinstance(node, Not):
        return Not(map_leaves(node.operand, fn))
    if isinstance(node, And):
        return And(map_leaves(node.left, fn), map_leaves(node.right, fn))
    if isinstance(node, Or):
        return Or(map_leaves(node.left, fn), map_leaves(node.right, fn))
    return fn(node)


def evaluate_boolean(node: Any, valuation: Callable[[Any], bool]) -> bool:
    """Evaluate under a truth assignment of the leaves"""
    if isinstance(node, Top):
        return True
    if isinstance(node, Bot):
        return False
    if isinstance(node, Not):
        return not evaluate_boolean(node.operand, valuation)
    if isinstance(node, And):
        return evaluate_boolean(node.left, valuation) and evaluate_boolean(node.right, valuation)
    if isinstance(node, Or):
        return evaluate_boolean(node.left, valuation) or evaluate_boolean(node.right, valuation)
    return bool(valuation(node))
