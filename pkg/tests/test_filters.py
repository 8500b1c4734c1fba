from itertools import combinations, product

import pytest

from core.boolean import BOT, Not
from core.errors import (
    GuardExceededError,
    InconsistentInputError,
    MalformedFamilyError,
    NonFiniteDoctrineError,
    UnboundedScopeError,
)
from core.terms import App, Atom, Var
from doctrines.base_doctrine import Tri
from filters.family import CheckScope, Family, FamilyKind, check_family_axioms
from filters.generated import generated_closure, generated_intersect, generated_membership
from filters.search import Bounds, DefinitelyDisjoint, HerbrandProblem, NoneUpTo, Witness
from filters.ultrafilter import (
    extend_to_ultrafilter,
    filter_extension_meets,
    ideal_extension_meets,
    intersection_of,
    ultrafilters_of,
    ultraideals_of,
    universal_filters_of,
    universal_ideals_of,
    up_set,
)
from models.enumeration import enumerate_models
from models.families import pair_from_models, valid_universal_family

P, Q = frozenset({"p"}), frozenset({"q"})
P1, P2, Q1 = frozenset({"p1"}), frozenset({"p2"}), frozenset({"q1"})

BOUNDS = Bounds(depth=2, max_conjuncts=4, model_bound=3)


def r(term):
    return Atom("R", (term,))


def tops(doctrine):
    return Family(doctrine, {x: [doctrine.top(x)] for x in doctrine.category.objects()})


def bottoms(doctrine):
    return Family(doctrine, {x: [doctrine.bottom(x)] for x in doctrine.category.objects()})


class TestFamilyAxioms:
    @staticmethod
    def test_reindex_failure_is_reported(finite):
        chain2 = finite("chain2")
        family = Family(chain2, {"t": [P, chain2.top("t")], "b": [chain2.top("b")]})
        report = check_family_axioms(FamilyKind.FILTER, family)
        assert not report.passed
        assert report.clause("reindex").counterexample == {"morphism": "b->t", "element": "{p}", "object": "b"}
        assert report.clause("upward").passed

    @staticmethod
    def test_closure_repairs_the_family(finite):
        chain2 = finite("chain2")
        family = Family(chain2, {"t": [P, chain2.top("t")], "b": [chain2.top("b")]})
        closed = generated_closure(chain2, FamilyKind.FILTER, family)
        assert check_family_axioms(FamilyKind.FILTER, closed).passed
        assert closed.members("b") == up_set(chain2, "b", frozenset({"p1", "p2"}))

    @staticmethod
    def test_trivial_pair(finite):
        chain2 = finite("chain2")
        report = check_family_axioms(FamilyKind.PAIR, (tops(chain2), bottoms(chain2)))
        assert report.passed
        assert {c.clause for c in report.clauses} >= {"filter:reindex", "ideal:bottom", "connecting-1", "connecting-2"}

    @staticmethod
    def test_ideal_closure(finite):
        chain2 = finite("chain2")
        ideal = generated_closure(chain2, FamilyKind.IDEAL, [("t", Q), ("b", frozenset())])
        assert check_family_axioms(FamilyKind.IDEAL, ideal).passed
        assert Q1 in ideal.members("b")
        assert not ideal.contains("t", P)

    @staticmethod
    def test_closure_needs_an_exhaustive_backend(fix_ab):
        with pytest.raises(NonFiniteDoctrineError):
            generated_closure(fix_ab, FamilyKind.FILTER, [(0, r(App("a")))])

    @staticmethod
    def test_infinite_base_needs_an_explicit_scope(fix_ab):
        with pytest.raises(UnboundedScopeError):
            CheckScope.exhaustive(fix_ab)
        valid = Family(fix_ab, predicate=lambda obj, e: e == BOT)
        with pytest.raises(UnboundedScopeError):
            valid.to_dict()
        assert valid.contains(0, BOT)

    @staticmethod
    def test_family_shapes(finite):
        chain2 = finite("chain2")
        with pytest.raises(MalformedFamilyError):
            Family(chain2)
        with pytest.raises(MalformedFamilyError):
            generated_closure(chain2, FamilyKind.ULTRAFILTER, [("t", P)])


class TestUltrafilters:
    @staticmethod
    @pytest.mark.parametrize("name, count", [("one_object", 2), ("one_object_trivial", 1), ("trivial_chain3", 3), ("chain2", 5)])
    def test_counts(finite, name, count):
        assert len(ultrafilters_of(finite(name))) == count

    @staticmethod
    def test_chain2_listing(finite):
        chain2 = finite("chain2")
        found = {(frozenset(u.members("t")), frozenset(u.members("b"))) for u in ultrafilters_of(chain2)}
        whole = frozenset(chain2.elements("b"))
        expected = {
            (up_set(chain2, "t", P), up_set(chain2, "b", P1)),
            (up_set(chain2, "t", P), up_set(chain2, "b", P2)),
            (up_set(chain2, "t", P), whole),
            (up_set(chain2, "t", Q), up_set(chain2, "b", Q1)),
            (up_set(chain2, "t", Q), whole),
        }
        assert found == expected

    @staticmethod
    @pytest.mark.parametrize("name", ["chain3", "diamond"])
    def test_every_listed_family_is_an_ultrafilter(finite, name):
        doctrine = finite(name)
        found = ultrafilters_of(doctrine)
        assert found
        for u in found:
            assert check_family_axioms(FamilyKind.ULTRAFILTER, u).passed
            t = doctrine.category.terminal
            for a in doctrine.elements(t):
                assert u.contains(t, a) != u.contains(t, doctrine.negate(t, a))

    @staticmethod
    def test_guard(finite):
        with pytest.raises(GuardExceededError):
            ultrafilters_of(finite("diamond"), guard=1)

    @staticmethod
    def test_ultraideals(finite):
        chain2 = finite("chain2")
        ideals = ultraideals_of(chain2)
        assert len(ideals) == 5
        for ideal in ideals:
            assert check_family_axioms(FamilyKind.ULTRAIDEAL, ideal).passed

    @staticmethod
    @pytest.mark.parametrize("name", ["chain2", "chain3", "diamond"])
    def test_complement_of_an_ultrafilter_is_an_ultraideal(finite, name):
        doctrine = finite(name)
        for u in ultrafilters_of(doctrine):
            assert check_family_axioms(FamilyKind.ULTRAIDEAL, u.complement()).passed


class TestExtension:
    @staticmethod
    def test_already_maximal(finite):
        doctrine = finite("trivial_chain3")
        result = extend_to_ultrafilter(doctrine, tops(doctrine), bottoms(doctrine))
        assert result == tops(doctrine)

    @staticmethod
    def test_chain2(finite):
        chain2 = finite("chain2")
        result = extend_to_ultrafilter(chain2, tops(chain2), bottoms(chain2))
        assert result.members("t") == up_set(chain2, "t", P)
        assert result.members("b") == up_set(chain2, "b", P1)
        assert any(result == u for u in ultrafilters_of(chain2))

    @staticmethod
    def test_respects_the_ideal(finite):
        chain2 = finite("chain2")
        ideal = generated_closure(chain2, FamilyKind.IDEAL, [("t", P)])
        result = extend_to_ultrafilter(chain2, tops(chain2), ideal)
        assert result.contains("t", Q)
        assert result.disjoint(ideal)

    @staticmethod
    def test_overlapping_inputs(finite):
        chain2 = finite("chain2")
        ideal = Family(chain2, {x: chain2.elements(x) for x in ("t", "b")})
        with pytest.raises(InconsistentInputError):
            extend_to_ultrafilter(chain2, tops(chain2), ideal)

    @staticmethod
    def test_input_must_be_a_filter(finite):
        chain2 = finite("chain2")
        family = Family(chain2, {"t": [P, chain2.top("t")], "b": [chain2.top("b")]})
        with pytest.raises(InconsistentInputError):
            extend_to_ultrafilter(chain2, family, bottoms(chain2))

    @staticmethod
    @pytest.mark.parametrize("name", ["one_object", "trivial_chain3", pytest.param("chain2", marks=pytest.mark.slow)])
    def test_every_disjoint_pair_extends(finite, name):
        doctrine = finite(name)
        ultrafilters = ultrafilters_of(doctrine)
        for filt, ideal in product(universal_filters_of(doctrine), universal_ideals_of(doctrine)):
            if not filt.disjoint(ideal) or not check_family_axioms(FamilyKind.PAIR, (filt, ideal)).passed:
                continue
            result = extend_to_ultrafilter(doctrine, filt, ideal)
            assert filt.issubset(result)
            assert result.disjoint(ideal)
            assert any(result == u for u in ultrafilters)


class TestCharacterizations:
    @staticmethod
    @pytest.mark.parametrize("name", ["chain2", "diamond"])
    def test_filters_are_intersections_of_ultrafilters(finite, name):
        doctrine = finite(name)
        ultrafilters = ultrafilters_of(doctrine)
        for filt in universal_filters_of(doctrine):
            above = [u for u in ultrafilters if filt.issubset(u)]
            assert intersection_of(doctrine, above) == filt

    @staticmethod
    def test_ideals_are_intersections_of_ultraideals(finite):
        chain2 = finite("chain2")
        ultraideals = ultraideals_of(chain2)
        for ideal in universal_ideals_of(chain2):
            above = [u for u in ultraideals if ideal.issubset(u)]
            assert intersection_of(chain2, above) == ideal

    @staticmethod
    @pytest.mark.parametrize("name", ["chain2", "chain3", pytest.param("diamond", marks=pytest.mark.slow)])
    def test_pairs_are_cut_out_by_ultrafilters(finite, name):
        doctrine = finite(name)
        ultrafilters = ultrafilters_of(doctrine)
        ideals = universal_ideals_of(doctrine)
        for filt in universal_filters_of(doctrine):
            for ideal in ideals:
                if not check_family_axioms(FamilyKind.PAIR, (filt, ideal)).passed:
                    continue
                compatible = [u for u in ultrafilters if filt.issubset(u) and u.disjoint(ideal)]
                assert intersection_of(doctrine, compatible) == filt
                assert intersection_of(doctrine, [u.complement() for u in compatible]) == ideal

    @staticmethod
    def test_pairs_come_from_classes_of_models(finite):
        chain2 = finite("chain2")
        models = list(enumerate_models(chain2))
        validity = [valid_universal_family(m)[0] for m in models]
        ideals = universal_ideals_of(chain2)
        for filt in universal_filters_of(chain2):
            for ideal in ideals:
                if not check_family_axioms(FamilyKind.PAIR, (filt, ideal)).passed:
                    continue
                chosen = [m for m, v in zip(models, validity) if filt.issubset(v) and v.disjoint(ideal)]
                (valid, invalid), report = pair_from_models(chosen, doctrine=chain2)
                assert report.passed
                assert valid == filt
                assert invalid == ideal

    @staticmethod
    def test_every_class_of_models_gives_a_pair(finite):
        chain2 = finite("chain2")
        models = list(enumerate_models(chain2))
        for k in range(len(models) + 1):
            for chosen in combinations(models, k):
                assert pair_from_models(list(chosen), doctrine=chain2)[1].passed

    @staticmethod
    @pytest.mark.parametrize("name", ["chain2", "chain3", "diamond"])
    def test_ultraideals_are_complements_of_ultrafilters(finite, name):
        doctrine = finite(name)
        found = {
            ideal.key() for ideal in universal_ideals_of(doctrine)
            if check_family_axioms(FamilyKind.ULTRAIDEAL, ideal).passed
        }
        assert found == {u.complement().key() for u in ultrafilters_of(doctrine)}
        assert found == {u.key() for u in ultraideals_of(doctrine)}

    @staticmethod
    def test_empty_intersection_is_everything(finite):
        chain2 = finite("chain2")
        everything = intersection_of(chain2, [])
        assert everything.members("b") == frozenset(chain2.elements("b"))

    @staticmethod
    def test_extension_criteria(finite):
        chain2 = finite("chain2")
        filt, ideal = tops(chain2), bottoms(chain2)
        assert filter_extension_meets(chain2, filt, ideal, "t", frozenset())
        assert not filter_extension_meets(chain2, filt, ideal, "t", P | Q)
        assert ideal_extension_meets(chain2, filt, ideal, "t", P | Q)
        assert not ideal_extension_meets(chain2, filt, ideal, "t", frozenset())

    @staticmethod
    def test_complement(finite):
        chain2 = finite("chain2")
        outside = tops(chain2).complement()
        assert len(outside.members("t")) == 3
        assert not outside.contains("t", P | Q)
        assert len(outside.members("b")) == 7


class TestWitnessSearch:
    @staticmethod
    def test_filter_meets_ideal(fix_ab):
        outcome = generated_intersect(fix_ab, [(1, Not(r(Var(0))))], [(0, BOT)], BOUNDS)
        assert isinstance(outcome, Witness)
        assert outcome.to_dict() == {
            "n": 2, "picks": [0, 0], "terms": [["a"], ["b"]], "n_prime": 0, "picks_ex": [], "terms_ex": [],
        }

    @staticmethod
    def test_no_witness_in_a_syntactic_doctrine(fix_ab):
        outcome = generated_intersect(fix_ab, [(1, r(Var(0)))], [(0, BOT)], BOUNDS)
        assert isinstance(outcome, NoneUpTo)
        assert outcome.trace.entries[0].saturation

    @staticmethod
    def test_exhausted_finite_search(finite):
        chain2 = finite("chain2")
        outcome = generated_intersect(chain2, [("t", P)], [("b", P1)], BOUNDS)
        assert isinstance(outcome, DefinitelyDisjoint)

    @staticmethod
    def test_finite_witness(finite):
        chain2 = finite("chain2")
        outcome = generated_intersect(chain2, [("t", P)], [("b", frozenset({"p1", "p2"}))], BOUNDS)
        assert isinstance(outcome, Witness)
        assert outcome.to_dict()["terms"] == [["b->t"]]

    @staticmethod
    def test_trace_mode_refutes_small_attempts(fix_ab):
        traced = Bounds(depth=2, max_conjuncts=4, model_bound=3, trace=True)
        outcome = generated_intersect(fix_ab, [(1, Not(r(Var(0))))], [(0, BOT)], traced)
        assert isinstance(outcome, Witness)
        attempts = outcome.trace.attempts()
        assert [e.status for e in attempts[:-1]] == [Tri.FALSE] * (len(attempts) - 1)
        assert attempts[-1].status is Tri.TRUE
        assert len(attempts[-1].candidates) == 2

    @staticmethod
    def test_check_without_search(fix_ab):
        problem = HerbrandProblem(fix_ab, None, universal_premises=[(1, Not(r(Var(0))))], universal_conclusions=[(0, BOT)])
        a, b = fix_ab.category.enumerate_morphisms(0, 1, 0)
        assert problem.check(Witness((0, 0), (a, b))) is Tri.TRUE
        assert problem.check(Witness((0,), (a,))) is not Tri.TRUE


class TestMembership:
    @staticmethod
    def test_filter_membership(fix_ab):
        found = generated_membership(fix_ab, FamilyKind.FILTER, [(1, r(Var(0)))], 0, r(App("a")), BOUNDS)
        assert found.status is Tri.TRUE
        assert found.certificate()["terms"] == [["a"]]
        assert found.certificate()["generators"] == [["1", "R(x0)"]]

    @staticmethod
    def test_ideal_membership(fix_ab):
        found = generated_membership(fix_ab, FamilyKind.IDEAL, [(0, r(App("a")))], 1, r(Var(0)), BOUNDS)
        assert found.status is Tri.TRUE

    @staticmethod
    def test_finite_membership(finite):
        chain2 = finite("chain2")
        inside = generated_membership(chain2, FamilyKind.FILTER, [("t", P)], "b", frozenset({"p1", "p2", "q1"}), BOUNDS)
        outside = generated_membership(chain2, FamilyKind.FILTER, [("t", P)], "b", P1, BOUNDS)
        assert inside.status is Tri.TRUE
        assert outside.status is Tri.FALSE
        assert outside.certificate() == {}

    @staticmethod
    def test_membership_agrees_with_closure(finite):
        chain2 = finite("chain2")
        closed = generated_closure(chain2, FamilyKind.FILTER, [("t", P)])
        for x in ("t", "b"):
            for e in chain2.elements(x):
                status = generated_membership(chain2, FamilyKind.FILTER, [("t", P)], x, e, BOUNDS).status
                assert (status is Tri.TRUE) == closed.contains(x, e)

    @staticmethod
    def test_scope_with_sampled_elements(fix_ab):
        scope = CheckScope((0,), {0: (r(App("a")), BOT)})
        family = Family(fix_ab, {0: [r(App("a"))]})
        report = check_family_axioms(FamilyKind.FILTER, family, scope)
        assert not report.clause("top").passed
