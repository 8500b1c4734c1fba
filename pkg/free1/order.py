"""
Order of the one-step free construction.

e1 <= e2 iff every (DNF conjunct of e1, CNF disjunct of e2) pair is a valid
mixed sequent. Each sequent is decided by witness search and, failing that,
by model enumeration at S.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from loguru import logger

from config.config import get_settings
from core.normal_form import Literal, NormalFormKind, normal_form
from doctrines.base_doctrine import BaseDoctrine, Tri
from filters.search import Bounds, DefinitelyDisjoint, SearchTrace, Witness
from free1.generators import shared_fixed
from free1.sequent import MixedSequent
from models.base_model import ModelAtS


@dataclass(frozen=True)
class ClauseOutcome:
    sequent: MixedSequent
    status: Tri
    witness: Optional[Witness] = None
    countermodel: Optional[ModelAtS] = None
    reason: str = ""
    trace: SearchTrace = field(default_factory=SearchTrace, compare=False, repr=False)

    def to_dict(self, include_trace: bool = False) -> Dict[str, Any]:
        data: Dict[str, Any] = {"sequent": str(self.sequent), "status": self.status.value, "reason": self.reason}
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        if self.countermodel is not None:
            data["countermodel"] = self.countermodel.to_dict()
        if include_trace:
            data["trace"] = self.trace.to_list()
        return data


@dataclass(frozen=True)
class OrderResult:
    status: Tri
    clauses: Tuple[ClauseOutcome, ...] = ()

    @property
    def witnesses(self) -> List[Witness]:
        return [c.witness for c in self.clauses if c.witness is not None]

    def to_dict(self, include_trace: bool = False) -> Dict[str, Any]:
        return {"status": self.status.value, "clauses": [c.to_dict(include_trace) for c in self.clauses]}


def decide_sequent(sequent: MixedSequent, bounds: Bounds) -> ClauseOutcome:
    outcome = sequent.search(bounds)
    if isinstance(outcome, Witness):
        return ClauseOutcome(sequent, Tri.TRUE, witness=outcome, reason="witness", trace=outcome.trace)
    countermodel = sequent.refute(bounds.model_bound)
    if countermodel is not None:
        return ClauseOutcome(sequent, Tri.FALSE, countermodel=countermodel, reason="countermodel", trace=outcome.trace)
    if isinstance(outcome, DefinitelyDisjoint):
        return ClauseOutcome(sequent, Tri.FALSE, reason=outcome.reason, trace=outcome.trace)
    logger.warning(f"Clause undecided within bounds: {sequent}")
    return ClauseOutcome(
        sequent, Tri.UNKNOWN,
        reason=f"no witness up to depth {bounds.depth}, no model up to size {bounds.model_bound}",
        trace=outcome.trace,
    )


def free1_leq(
    doctrine: BaseDoctrine,
    fixed: Any,
    lhs: Any,
    rhs: Any,
    bounds: Optional[Bounds] = None,
    jobs: Optional[int] = None,
) -> OrderResult:
    """
    Decide lhs <= rhs over S.

    Args:
        jobs: clause-level worker threads; results keep clause order
    """
    shared_fixed([lhs, rhs], fixed)
    bounds = bounds or Bounds.from_settings()
    jobs = jobs or get_settings().jobs
    disjuncts = normal_form(lhs, NormalFormKind.DNF).clauses
    conjuncts = normal_form(rhs, NormalFormKind.CNF).clauses
    pairs: List[Tuple[Tuple[Literal, ...], Tuple[Literal, ...]]] = [(d, c) for d in disjuncts for c in conjuncts]
    sequents = [MixedSequent.from_clause(doctrine, fixed, d, c) for d, c in pairs]
    logger.info(f"Deciding {len(sequents)} clause sequents with {jobs} worker(s)")

    if jobs > 1 and len(sequents) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda s: decide_sequent(s, bounds), sequents))
    else:
        outcomes = [decide_sequent(s, bounds) for s in sequents]

    status = Tri.conjunction(o.status for o in outcomes)
    logger.info(f"free1 order: {status.value} over {len(outcomes)} clauses")
    return OrderResult(status, tuple(outcomes))
