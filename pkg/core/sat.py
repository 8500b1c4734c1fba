"""
Propositional entailment: Tseitin encoding into CNF decided by DPLL.

Distinct leaves (atoms, generators) are independent propositional variables.
"""
from itertools import product
from typing import Any, Dict, List, Optional, Sequence

from core.boolean import And, Bot, Not, Or, Top, evaluate_boolean, leaves

Clause = List[int]


class DpllSolver:
    """DPLL with unit propagation and pure-literal elimination"""

    def __init__(self, cnf: Sequence[Sequence[int]]):
        self.cnf = [list(c) for c in cnf]

    @staticmethod
    def simplify(cnf: List[Clause], lit: int) -> List[Clause]:
        new_cnf = []
        for clause in cnf:
            if lit in clause:
                continue
            if -lit in clause:
                new_cnf.append([x for x in clause if x != -lit])
            else:
                new_cnf.append(clause)
        return new_cnf

    def _propagate(self, cnf: List[Clause]) -> Optional[List[Clause]]:
        """Apply units and pure literals to a fixpoint; None on conflict"""
        while True:
            if any(len(clause) == 0 for clause in cnf):
                return None
            unit = next((clause[0] for clause in cnf if len(clause) == 1), None)
            if unit is not None:
                cnf = self.simplify(cnf, unit)
                continue
            literals = {lit for clause in cnf for lit in clause}
            pure = next((lit for lit in literals if -lit not in literals), None)
            if pure is not None:
                cnf = self.simplify(cnf, pure)
                continue
            return cnf

    def solve(self) -> bool:
        stack = [self.cnf]
        while stack:
            cnf = self._propagate(stack.pop())
            if cnf is None:
                continue
            if not cnf:
                return True
            var = abs(cnf[0][0])
            stack.append(self.simplify(cnf, -var))
            stack.append(self.simplify(cnf, var))
        return False


class TseitinEncoder:
    """Maps Boolean trees to literals, emitting definitional clauses"""

    def __init__(self):
        self.clauses: List[Clause] = []
        self._variables: Dict[Any, int] = {}
        self._count = 0
        self._true = self._fresh()
        self.clauses.append([self._true])

    def _fresh(self) -> int:
        self._count += 1
        return self._count

    def literal(self, node: Any) -> int:
        if isinstance(node, Top):
            return self._true
        if isinstance(node, Bot):
            return -self._true
        if isinstance(node, Not):
            return -self.literal(node.operand)
        if node in self._variables:
            return self._variables[node]
        if isinstance(node, (And, Or)):
            a, b = self.literal(node.left), self.literal(node.right)
            g = self._fresh()
            if isinstance(node, And):
                self.clauses += [[-g, a], [-g, b], [g, -a, -b]]
            else:
                self.clauses += [[-g, a, b], [g, -a], [g, -b]]
        else:
            g = self._fresh()
        self._variables[node] = g
        return g

    def assert_true(self, node: Any) -> None:
        self.clauses.append([self.literal(node)])


def satisfiable(formulas: Sequence[Any]) -> bool:
    encoder = TseitinEncoder()
    for phi in formulas:
        encoder.assert_true(phi)
    return DpllSolver(encoder.clauses).solve()


def prop_entails(hypotheses: Sequence[Any], goal: Any) -> bool:
    """True iff the conjunction of hypotheses propositionally entails goal"""
    return not satisfiable(list(hypotheses) + [Not(goal)])


def truth_table_entails(hypotheses: Sequence[Any], goal: Any) -> bool:
    """Exhaustive check over all assignments of the distinct leaves"""
    atoms = list(dict.fromkeys(a for phi in list(hypotheses) + [goal] for a in leaves(phi)))
    for values in product((False, True), repeat=len(atoms)):
        valuation = dict(zip(atoms, values))
        if all(evaluate_boolean(h, valuation.__getitem__) for h in hypotheses):
            if not evaluate_boolean(goal, valuation.__getitem__):
                return False
    return True
