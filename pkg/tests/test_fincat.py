"""Tests for finite categories, weights and nerves."""

import pytest

from wlim.errors import CompositionError, ParameterError, StructureError
from wlim.fincat import (
    CatFunctor,
    FinCategory,
    SetWeight,
    boolean_lattice,
    cat_weighted_join,
    category_of_elements,
    compose_functors,
    constant_weight,
    cospan,
    discrete_category,
    end_in_finset,
    fibers,
    identity_functor,
    is_equivalence,
    isomorphic_objects,
    nerve,
    ordinal,
    ordinary_limit,
    over_category,
    poset_category,
    rectify,
    representable_weight,
    terminal_category,
    terminal_object,
    walking_arrow,
    weighted_cone_category,
    weighted_cones,
    weighted_limit,
    weighted_limit_in_finset,
    weighted_limit_via_elements,
)
from wlim.fixtures import example0_weight, lattice_cospan, meetless_cospan
from wlim.sscore import horn, identity, is_isomorphic, standard_simplex


def _walking_iso() -> FinCategory:
    return FinCategory.build(
        ["x", "y"],
        {"u": ("x", "y"), "v": ("y", "x")},
        {("v", "u"): "id_x", ("u", "v"): "id_y"},
    )


class TestFinCategory:
    """Presentations, composition and validation."""

    def test_divisibility_poset(self):
        """Divisibility on 1, 2, 4 composes 2<4 after 1<2 to 1<4."""
        C = poset_category(["1", "2", "4"], lambda a, b: int(b) % int(a) == 0)
        assert C.non_identities() == ["1<2", "1<4", "2<4"]
        assert C.compose("2<4", "1<2") == "1<4"

    def test_discrete(self):
        """A discrete category has only identities."""
        C = discrete_category(["x", "y"])
        assert C.non_identities() == []
        assert C.hom("x", "y") == ()

    def test_cospan_shape(self):
        """The cospan has three objects and two non-identity arrows."""
        J = cospan()
        assert J.objects == ("a", "b", "c")
        assert J.non_identities() == ["f", "g"]
        assert J.compose("id_b", "f") == "f"

    def test_poset_naming(self):
        """Arrows of a poset are named by their endpoints."""
        L = boolean_lattice(["x", "y"])
        assert L.objects == ("{}", "{x}", "{y}", "{x,y}")
        assert L.compose("{x}<{x,y}", "{}<{x}") == "{}<{x,y}"

    def test_composition_mismatch(self):
        """Composing f then f in the cospan is undefined."""
        with pytest.raises(CompositionError):
            cospan().compose("f", "f")

    def test_missing_composite(self):
        """A presentation without the composite of a chain is rejected."""
        with pytest.raises(StructureError) as info:
            FinCategory.build(["0", "1", "2"], {"u": ("0", "1"), "v": ("1", "2")})
        assert info.value.where == "v"

    def test_longest_chain(self):
        """Ordinals are acyclic; the walking isomorphism is not."""
        assert ordinal(3).longest_chain() == 3
        assert not _walking_iso().is_acyclic()

    def test_isomorphic_objects(self):
        """The walking isomorphism has an inverse pair."""
        assert isomorphic_objects(_walking_iso(), "x", "y") == ("u", "v")
        assert isomorphic_objects(walking_arrow(), "0", "1") is None

    def test_over_category(self):
        """The slice of the cospan over its apex is again a cospan."""
        over, forget = over_category(cospan(), "b")
        assert over.objects == ("f", "g", "id_b")
        assert forget("f") == "a"
        assert is_isomorphic(nerve(over), horn(2, 2)) is not None


class TestFunctors:
    """Functor construction and composition."""

    def test_morphisms_inferred(self):
        """Images into a poset are determined by the objects."""
        D = lattice_cospan()
        assert D.fmap("f") == "{x}<{x,y}"
        assert D.fmap("id_a") == "id_{x}"

    def test_ambiguous_image(self):
        """Parallel arrows in the target must be named explicitly."""
        T = FinCategory.build(["p", "q"], {"s": ("p", "q"), "t": ("p", "q")})
        with pytest.raises(ParameterError):
            CatFunctor.between(walking_arrow(), T, {"0": "p", "1": "q"})
        F = CatFunctor.between(walking_arrow(), T, {"0": "p", "1": "q"}, {"0<1": "t"})
        assert F.fmap("0<1") == "t"

    def test_compose_functors(self):
        """Composing with an identity functor changes nothing."""
        D = lattice_cospan()
        DI = compose_functors(D, identity_functor(cospan()))
        assert dict(DI.on_objects) == dict(D.on_objects)
        with pytest.raises(CompositionError):
            compose_functors(D, D)

    def test_equivalence(self):
        """Identities are equivalences; the cospan into the lattice misses {}."""
        assert is_equivalence(identity_functor(cospan()))
        assert not is_equivalence(lattice_cospan())


class TestWeights:
    """Set-valued weights, elements and fibers."""

    def test_example_weight(self):
        """The example weight has two elements over b."""
        W = example0_weight()
        assert W("b") == ("0", "1")
        assert W.apply("g", "1") == "1"

    def test_action_must_be_functorial(self):
        """An action landing outside the target set is rejected."""
        with pytest.raises(StructureError) as info:
            SetWeight.build(cospan(), {"a": ["0"], "b": ["1"], "c": []}, {"f": {"0": "2"}})
        assert info.value.where == "f"

    def test_representable(self):
        """Hom(a, -) on the cospan is a point over a and b."""
        W = representable_weight(cospan(), "a")
        assert W("a") == ("id_a",)
        assert W("b") == ("f",)
        assert W("c") == ()

    def test_category_of_elements(self):
        """el(W) has one object per element and one arrow per (f, x)."""
        E, P = category_of_elements(example0_weight())
        assert E.objects == ("(a,0)", "(b,0)", "(b,1)", "(c,1)")
        assert E.non_identities() == ["f@0", "g@1"]
        assert P("(b,1)") == "b"

    def test_fibers_invert_elements(self):
        """The fibers of el(W) -> J recover the sizes of W."""
        W = example0_weight()
        _, P = category_of_elements(W)
        F = fibers(P)
        assert F("b") == ("(b,0)", "(b,1)")
        assert F.apply("f", "(a,0)") == "(b,0)"

    def test_weighted_join_of_categories(self):
        """Joining a point along el(W) adds one arrow per element."""
        _, P = category_of_elements(example0_weight())
        K = cat_weighted_join(terminal_category("t"), P)
        assert K.objects == ("t", "a", "b", "c")
        assert K.hom("t", "b") == ("t>(b,0)", "t>(b,1)")
        assert K.compose("f", "t>(a,0)") == "t>(b,0)"

    def test_nerve_of_ordinal(self):
        """N([2]) is Delta[2]."""
        N = nerve(ordinal(2))
        assert N.level(2) == ("0<1;1<2",)
        assert is_isomorphic(N, standard_simplex(2)) is not None

    def test_nerve_with_cycles_needs_bound(self):
        """A category with non-identity cycles has an unbounded nerve."""
        with pytest.raises(ParameterError):
            nerve(_walking_iso())
        N = nerve(_walking_iso(), max_dim=2)
        assert N.truncated
        assert N.f_vector() == (2, 2, 2)


class TestLimits:
    """Weighted limits in finite categories and finite sets."""

    def test_example_limit_is_bottom(self):
        """The example weight over {x} -> {x,y} <- {y} has apex {}."""
        cone = weighted_limit(example0_weight(), lattice_cospan())
        assert cone is not None
        assert cone.apex == "{}"
        assert cone.leg("b", "0") == "{}<{x,y}"

    def test_limit_via_elements_agrees(self):
        """The limit over el(W) gives the same apex."""
        W, D = example0_weight(), lattice_cospan()
        assert weighted_limit_via_elements(W, D).apex == weighted_limit(W, D).apex

    def test_ordinary_limit(self):
        """The pullback in the lattice is the meet."""
        assert ordinary_limit(lattice_cospan()).apex == "{}"
        assert len(weighted_cones(constant_weight(cospan()), lattice_cospan())) == 1

    def test_cone_category(self):
        """The example has a single weighted cone, and it is terminal."""
        C, cones = weighted_cone_category(example0_weight(), lattice_cospan())
        assert len(C.objects) == 1
        assert terminal_object(C) in cones
        assert terminal_object(boolean_lattice(["x", "y"])) == "{x,y}"

    def test_no_limit_without_meet(self):
        """Without a lower bound there is no cone at all."""
        assert weighted_limit(example0_weight(), meetless_cospan()) is None
        assert ordinary_limit(meetless_cospan()) is None

    def test_mismatched_categories(self):
        """A weight over another shape is rejected."""
        with pytest.raises(CompositionError):
            weighted_cones(constant_weight(walking_arrow()), lattice_cospan())

    def test_finset_limit_matches_end(self):
        """Natural transformations W => D are the end of D^W."""
        W = example0_weight()
        D = constant_weight(cospan(), ["p", "q"])
        families = weighted_limit_in_finset(W, D)
        assert len(families) == 4
        assert sorted(families) == end_in_finset(W, D)

    def test_rectify_checks_target(self):
        """Rectification needs a map into the nerve of J."""
        with pytest.raises(StructureError):
            rectify(identity(standard_simplex(1)), cospan(), "b")
