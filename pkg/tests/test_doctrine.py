from itertools import product

import pytest

from core.boolean import BOT, TOP, And, Not, Or
from core.category import CtxMorphism, FinSet, FinSetCategory
from core.errors import DoctrineDefinitionError, FiberMismatchError, MorphismMismatchError
from core.terms import App, Atom, Signature, Var
from doctrines.base_doctrine import Tri
from doctrines.constants import add_constant
from doctrines.elementary import EqualityFamily, check_boolean_laws, check_elementary
from doctrines.finite import FiniteDoctrine
from doctrines.subsets import Quantifier, subsets_quantifier
from doctrines.syntactic import SyntacticDoctrine

X = FinSet.of(1, 2)
Y = FinSet.of("p", "q")
RQ = Signature(predicates=(("R", 1), ("Q", 1)))


def r(term):
    return Atom("R", (term,))


class TestSyntacticDoctrine:
    @staticmethod
    def test_axiom_consequences(fix_ab):
        a, b = App("a"), App("b")
        assert fix_ab.fiber_leq(0, TOP, Or(r(a), r(b))) is Tri.TRUE
        assert fix_ab.fiber_leq(0, Not(r(a)), r(b)) is Tri.TRUE

    @staticmethod
    def test_countermodel(fix_ab):
        verdict = fix_ab.verdict(0, Not(r(App("a"))), BOT)
        assert verdict.status is Tri.FALSE
        structure = verdict.countermodel.structure
        assert structure.size == 2
        assert structure.functions["a"] == {(): 0}
        assert structure.functions["b"] == {(): 1}
        assert structure.predicates["R"] == frozenset({(1,)})

    @staticmethod
    def test_unknown_without_refutation(fix_ab):
        assert fix_ab.fiber_leq(0, Not(r(App("a"))), BOT, refute=False) is Tri.UNKNOWN

    @staticmethod
    def test_fiber_membership(fix_ab):
        with pytest.raises(FiberMismatchError):
            fix_ab.fiber_leq(0, r(Var(0)), TOP)

    @staticmethod
    def test_reindex_substitutes(fix_ab):
        f = CtxMorphism(0, 1, (App("a"),))
        assert fix_ab.reindex(f, r(Var(0))) == r(App("a"))
        with pytest.raises(MorphismMismatchError):
            fix_ab.reindex(f, r(Var(1)))

    @staticmethod
    def test_grounding_is_deduplicated(fix_ab):
        assert fix_ab.ground_axioms(0) == (Or(r(App("a")), r(App("b"))),)

    @staticmethod
    def test_boolean_laws(fix_ab):
        samples = [TOP, BOT, r(Var(0)), r(App("a")), Not(r(Var(0)))]
        assert all(result.passed for result in check_boolean_laws(fix_ab, 1, samples))


class TestFiniteDoctrine:
    @staticmethod
    def test_reindexing(finite):
        chain2 = finite("chain2")
        f = chain2.category.arrow("b", "t")
        assert chain2.reindex(f, frozenset({"p"})) == frozenset({"p1", "p2"})
        assert chain2.reindex(f, frozenset()) == frozenset()
        assert chain2.atom_map(f)["q1"] == "q"

    @staticmethod
    def test_elements_in_canonical_order(finite):
        chain2 = finite("chain2")
        assert [chain2.render(e) for e in chain2.elements("t")] == ["{}", "{p}", "{q}", "{p,q}"]
        assert len(chain2.elements("b")) == 8

    @staticmethod
    def test_fiber_order_is_exact(finite):
        chain2 = finite("chain2")
        assert chain2.fiber_leq("t", frozenset({"p"}), frozenset({"p", "q"})) is Tri.TRUE
        assert chain2.fiber_leq("t", frozenset({"p"}), frozenset({"q"})) is Tri.FALSE

    @staticmethod
    def test_boolean_laws(finite):
        chain2 = finite("chain2")
        assert all(result.passed for result in check_boolean_laws(chain2, "b"))

    @staticmethod
    def test_missing_table():
        with pytest.raises(DoctrineDefinitionError):
            FiniteDoctrine.from_dict({
                "base": {"elements": ["t", "b"], "top": "t"},
                "fibers": {"t": ["p"], "b": ["q"]},
            })

    @staticmethod
    def test_preimages_must_partition():
        with pytest.raises(DoctrineDefinitionError):
            FiniteDoctrine.from_dict({
                "base": {"elements": ["t", "b"], "top": "t"},
                "fibers": {"t": ["p", "q"], "b": ["p1", "q1"]},
                "reindex": {"b->t": {"p": ["p1", "q1"], "q": ["q1"]}},
            })

    @staticmethod
    def test_functoriality():
        with pytest.raises(DoctrineDefinitionError):
            FiniteDoctrine.from_dict({
                "base": {"elements": ["t", "y", "x"], "top": "t", "meet": {"(x,y)": "x"}},
                "fibers": {"t": ["p", "q"], "y": ["yp", "yq"], "x": ["x1", "x2", "x3"]},
                "reindex": {
                    "y->t": {"p": ["yp"], "q": ["yq"]},
                    "x->y": {"yp": ["x1", "x2"], "yq": ["x3"]},
                    "x->t": {"p": ["x1", "x3"], "q": ["x2"]},
                },
            })


class TestSubsets:
    @staticmethod
    def test_quantifiers():
        relation = frozenset({(1, "p"), (1, "q"), (2, "p")})
        assert subsets_quantifier(Quantifier.FORALL, X, Y, relation) == frozenset({1})
        assert subsets_quantifier("exists", X, Y, relation) == frozenset({1, 2})

    @staticmethod
    def test_quantifier_rejects_foreign_pairs():
        with pytest.raises(FiberMismatchError):
            subsets_quantifier(Quantifier.EXISTS, X, Y, frozenset({(3, "p")}))

    @staticmethod
    def test_reindex_is_preimage(subsets):
        f = FinSetCategory().function(X, Y, lambda n: "p")
        assert subsets.reindex(f, frozenset({"p"})) == frozenset({1, 2})
        assert subsets.reindex(f, frozenset({"q"})) == frozenset()

    @staticmethod
    @pytest.mark.parametrize("n, m", list(product(range(1, 4), repeat=2)))
    def test_first_order_laws(rng, n, m):
        xs, ys = FinSet.of(*range(n)), FinSet.of(*range(m))
        square = list(product(xs, ys))
        for _ in range(100):
            s = frozenset(p for p in square if rng.random() < 0.5)
            t = frozenset(p for p in square if rng.random() < 0.5)
            a = frozenset(x for x in xs if rng.random() < 0.5)
            lifted = frozenset((x, y) for x, y in square if x in a)
            forall = subsets_quantifier(Quantifier.FORALL, xs, ys, s)
            exists = subsets_quantifier(Quantifier.EXISTS, xs, ys, s)
            assert (exists <= a) == (s <= lifted)
            assert (a <= forall) == (lifted <= s)
            assert subsets_quantifier(Quantifier.FORALL, xs, ys, s | lifted) == forall | a
            assert subsets_quantifier(Quantifier.FORALL, xs, ys, s & t) == forall & subsets_quantifier(
                Quantifier.FORALL, xs, ys, t
            )

    @staticmethod
    @pytest.mark.parametrize("n, m", list(product(range(1, 4), repeat=2)))
    def test_forall_against_a_lifted_join(subsets, rng, n, m):
        xs, ys = FinSet.of(*range(n)), FinSet.of(*range(m))
        first = FinSetCategory().product(xs, ys).projections[0]
        square = list(product(xs, ys))
        for _ in range(100):
            a = frozenset(x for x in xs if rng.random() < 0.5)
            c = frozenset(x for x in xs if rng.random() < 0.5)
            s = frozenset(p for p in square if rng.random() < 0.5)
            forall = subsets_quantifier(Quantifier.FORALL, xs, ys, s)
            assert (a <= c | forall) == (subsets.reindex(first, a) <= subsets.reindex(first, c) | s)

    @staticmethod
    @pytest.mark.parametrize("n, m", list(product(range(1, 4), repeat=2)))
    def test_forall_is_below_every_substitution(subsets, rng, n, m):
        cat = FinSetCategory()
        xs, ys = FinSet.of(*range(n)), FinSet.of(*range(m))
        cone = cat.product(xs, ys)
        square = list(cone.obj)
        for f in cat.enumerate_morphisms(xs, ys):
            graph = cat.pair(cone, [cat.identity(xs), f], xs)
            for _ in range(20):
                s = frozenset(p for p in square if rng.random() < 0.5)
                assert subsets_quantifier(Quantifier.FORALL, xs, ys, s) <= subsets.reindex(graph, s)

    @staticmethod
    @pytest.mark.parametrize("n, m", list(product(range(0, 3), repeat=2)))
    def test_forall_distributes_over_disjoint_joins(subsets, n, m):
        cat = FinSetCategory()
        t = cat.terminal
        xs, ys = FinSet.of(*range(n)), FinSet.of(*range(n, n + m))
        cone = cat.product(xs, ys)
        first, second = cone.projections

        def forall(obj, alpha):
            return subsets_quantifier(Quantifier.FORALL, t, obj, frozenset(((), p) for p in alpha))

        for a in subsets.elements(xs):
            for b in subsets.elements(ys):
                joined = subsets.reindex(first, a) | subsets.reindex(second, b)
                assert forall(xs, a) | forall(ys, b) == forall(cone.obj, joined)


class TestConstantAdjoined:
    @staticmethod
    def test_constant_identifies_coordinates():
        doctrine = add_constant(SyntacticDoctrine(RQ), 1)
        phi = And(r(Var(0)), Atom("Q", (Var(1),)))
        assert doctrine.reindex(doctrine.constant, phi) == And(r(Var(0)), Atom("Q", (Var(0),)))

    @staticmethod
    def test_lift_ignores_the_constant():
        doctrine = add_constant(SyntacticDoctrine(RQ), 1)
        assert doctrine.lift(1, r(Var(0))) == r(Var(1))

    @staticmethod
    def test_lifted_identity_is_the_identity():
        doctrine = add_constant(SyntacticDoctrine(RQ), 1)
        assert doctrine.lift_morphism(doctrine.category.base.identity(1)) == doctrine.category.identity(1)

    @staticmethod
    def test_fibers_live_over_the_product():
        doctrine = add_constant(SyntacticDoctrine(RQ), 1)
        assert doctrine.contains(1, Atom("Q", (Var(1),)))
        assert not doctrine.contains(0, Atom("Q", (Var(1),)))


class TestElementary:
    @staticmethod
    def test_diagonal_is_elementary(subsets):
        report = check_elementary(subsets, EqualityFamily.diagonal(subsets), [X])
        assert report.passed
        assert report.condition("symmetry").passed

    @staticmethod
    def test_top_fails_substitutivity_on_sets(subsets):
        report = check_elementary(subsets, EqualityFamily.top(subsets), [X])
        assert report.condition("reflexivity").passed
        assert not report.condition("substitutivity").passed
        assert not report.passed

    @staticmethod
    def test_top_on_a_semilattice_base(finite):
        chain2 = finite("chain2")
        assert check_elementary(chain2, EqualityFamily.top(chain2)).passed

    @staticmethod
    def test_empty_relation_fails_reflexivity(subsets):
        delta = EqualityFamily(lambda obj: frozenset())
        report = check_elementary(subsets, delta, [X])
        assert not report.condition("reflexivity").passed
        assert report.condition("reflexivity").counterexample["object"] == str(X)
