import pytest

from core.category import (
    Ctx,
    CtxMorphism,
    FinSet,
    FinSetCategory,
    KleisliCategory,
    SemilatticeCategory,
)
from core.errors import DoctrineDefinitionError, MorphismMismatchError
from core.terms import App, Signature, Var

AB = Signature(functions=(("a", 0), ("b", 0)), predicates=(("R", 1),))
F = Signature(functions=(("a", 0), ("f", 1)), predicates=(("R", 1),))
CHAIN = {"elements": ["t", "y", "x"], "top": "t", "meet": {"(x,y)": "x"}}


class TestCtx:
    @staticmethod
    def test_compose_substitutes():
        ctx = Ctx(F)
        g = CtxMorphism(1, 1, (App("f", (Var(0),)),))
        f = CtxMorphism(0, 1, (App("a"),))
        assert str(ctx.compose(g, f)) == "(f(a))"

    @staticmethod
    def test_compose_mismatch():
        ctx = Ctx(F)
        with pytest.raises(MorphismMismatchError):
            ctx.compose(ctx.identity(2), ctx.identity(1))

    @staticmethod
    def test_products_concatenate_contexts():
        cone = Ctx(F).product_of([2, 1])
        assert cone.obj == 3
        assert [str(p) for p in cone.projections] == ["(x0,x1)", "(x2)"]

    @staticmethod
    def test_pairing():
        ctx = Ctx(AB)
        cone = ctx.product(1, 1)
        paired = ctx.pair(cone, [CtxMorphism(0, 1, (App("a"),)), CtxMorphism(0, 1, (App("b"),))], 0)
        assert str(paired) == "(a,b)"
        assert ctx.compose(cone.projections[1], paired) == CtxMorphism(0, 1, (App("b"),))

    @staticmethod
    def test_terminal_is_empty_context():
        ctx = Ctx(AB)
        assert ctx.terminal == 0
        assert ctx.bang(2) == CtxMorphism(2, 0, ())

    @staticmethod
    def test_morphisms_from_terminal():
        assert [str(f) for f in Ctx(AB).enumerate_morphisms(0, 1, 1)] == ["(a)", "(b)"]
        assert Ctx(Signature(predicates=(("R", 1),))).enumerate_morphisms(0, 1, 3) == []

    @staticmethod
    def test_morphisms_ordered_by_depth():
        ctx = Ctx(Signature(functions=(("f", 1),)))
        assert [str(f) for f in ctx.enumerate_morphisms(1, 1, 2)] == ["(x0)", "(f(x0))", "(f(f(x0)))"]

    @staticmethod
    def test_morphism_rejects_foreign_variables():
        with pytest.raises(MorphismMismatchError):
            CtxMorphism(1, 1, (Var(1),))


class TestSemilattice:
    @staticmethod
    def test_order_and_products():
        base = SemilatticeCategory.from_dict(CHAIN)
        assert base.is_leq("x", "y") and base.is_leq("y", "t")
        assert not base.is_leq("t", "x")
        assert base.product("y", "x").obj == "x"
        assert base.product_of([]).obj == "t"

    @staticmethod
    def test_arrow_requires_order():
        base = SemilatticeCategory.from_dict(CHAIN)
        assert [str(f) for f in base.enumerate_morphisms("x", "t")] == ["x->t"]
        assert base.enumerate_morphisms("t", "x") == []
        with pytest.raises(MorphismMismatchError):
            base.arrow("t", "y")

    @staticmethod
    def test_missing_meet():
        with pytest.raises(DoctrineDefinitionError):
            SemilatticeCategory(["t", "u", "v"], "t", {})

    @staticmethod
    def test_non_associative_meet():
        meet = {("a", "b"): "c", ("a", "c"): "a", ("b", "c"): "c"}
        with pytest.raises(DoctrineDefinitionError):
            SemilatticeCategory(["t", "a", "b", "c"], "t", meet)


class TestFinSet:
    @staticmethod
    def test_products_and_projections():
        cat = FinSetCategory()
        x, y = FinSet.of(1, 2), FinSet.of("p", "q")
        cone = cat.product(x, y)
        assert len(cone.obj) == 4
        assert cone.projections[1]((2, "q")) == "q"
        assert cat.product_of([x]).obj == x

    @staticmethod
    def test_preimage_and_image():
        cat = FinSetCategory()
        f = cat.function(FinSet.of(1, 2, 3), FinSet.of("p", "q"), lambda n: "p" if n < 3 else "q")
        assert f.preimage({"p"}) == frozenset({1, 2})
        assert f.image({3}) == frozenset({"q"})

    @staticmethod
    def test_hom_set_size():
        cat = FinSetCategory()
        assert len(cat.enumerate_morphisms(FinSet.of(1, 2), FinSet.of("p", "q", "r"))) == 9


class TestKleisli:
    @staticmethod
    def test_constant_and_lift():
        ctx = Ctx(F)
        kleisli = KleisliCategory(ctx, 1)
        assert kleisli.constant.source == 0 and kleisli.constant.target == 1
        assert str(kleisli.constant) == "(x0)"
        lifted = kleisli.lift(CtxMorphism(1, 1, (App("f", (Var(0),)),)))
        assert str(lifted) == "(f(x1))"

    @staticmethod
    def test_identity_is_neutral():
        kleisli = KleisliCategory(Ctx(F), 1)
        f = kleisli.enumerate_morphisms(0, 1, 1)[-1]
        assert kleisli.compose(kleisli.identity(1), f) == f
        assert kleisli.compose(f, kleisli.identity(0)) == f
