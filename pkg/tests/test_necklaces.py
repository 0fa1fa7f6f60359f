"""Tests for flagged necklaces, mapping spaces and cofibrant weights."""

import pytest

from wlim.errors import ParameterError
from wlim.fincat import cospan, nerve, ordinal, rectify
from wlim.joins import APEX_BOTTOM, weighted_fat_join, weighted_join
from wlim.necklaces import (
    FlaggedNecklace,
    Necklace,
    computation1_check,
    concat,
    concatenate,
    cofibrant_weight,
    decompose,
    enumerate_necklaces,
    flagged_necklaces,
    flags_of,
    mainfact_check,
    mainfact_map,
    mapping_space,
    necklace_degeneracy,
    necklace_face,
    realization_oracle,
    straightened_weight,
    target,
)
from wlim.sscore import (
    SimplexRef,
    SimplicialSet,
    boundary,
    cube,
    cube_boundary,
    horn,
    identity,
    is_isomorphic,
    opposite,
    point,
    standard_simplex,
)

TOP = FlaggedNecklace("0", ("012",), ((0, 2), (0, 1, 2)))


def _loop() -> SimplicialSet:
    return SimplicialSet((("0",), ("e",)), {"0": (), "e": (SimplexRef("0"), SimplexRef("0"))}, 1)


def _all_flagged(J, x, y, m):
    return {n.flagged(f) for n in enumerate_necklaces(J, x, y) for f in flags_of(J, n, m)}


class TestEnumeration:
    """Necklaces and their flags."""

    def test_necklaces_in_triangle(self):
        """From 0 to 2 in Delta[2]: the triangle, the long edge and the path of two edges."""
        found = enumerate_necklaces(standard_simplex(2), "0", "2")
        assert [n.beads for n in found] == [("012",), ("02",), ("01", "12")]

    def test_empty_necklace(self):
        """Each vertex has the empty necklace to itself and nothing goes backwards."""
        J = standard_simplex(2)
        assert enumerate_necklaces(J, "1", "1") == [Necklace("1", ())]
        assert enumerate_necklaces(J, "2", "0") == []

    def test_cycles_need_a_bound(self):
        """A loop makes the necklace set infinite."""
        with pytest.raises(ParameterError):
            enumerate_necklaces(_loop(), "0", "0")
        bounded = enumerate_necklaces(_loop(), "0", "0", max_length=2)
        assert [n.beads for n in bounded] == [(), ("e",), ("e", "e")]

    def test_flag_counts(self):
        """The one free position of a triangle can enter at any level 1..m."""
        necklace = Necklace("0", ("012",))
        assert list(flags_of(standard_simplex(2), necklace, 0)) == []
        assert list(flags_of(standard_simplex(2), necklace, 1)) == [((0, 2), (0, 1, 2))]
        assert len(list(flags_of(standard_simplex(2), necklace, 2))) == 2

    def test_target(self):
        """The target is the vertex at the last position."""
        assert target(standard_simplex(2), TOP) == "2"

    @pytest.mark.parametrize("m", [0, 1, 2])
    def test_brute_force_agrees(self, m):
        """Maps out of wedges find the same flagged necklaces."""
        J = standard_simplex(3)
        assert set(flagged_necklaces(J, "0", "3", m)) == _all_flagged(J, "0", "3", m)

    def test_label(self):
        """Labels list the beads and then the flag."""
        assert TOP.label() == "012{0,2|0,1,2}"
        assert FlaggedNecklace("1", (), ((0,),)).label() == "1_1{0}"


class TestOperators:
    """Faces, degeneracies and concatenation."""

    def test_last_face_restricts(self):
        """d_1 of the flagged triangle restricts it to its long edge."""
        assert necklace_face(standard_simplex(2), TOP, 1) == FlaggedNecklace("0", ("02",), ((0, 1),))

    def test_first_face_subdivides(self):
        """d_0 of the flagged triangle splits it at the middle vertex."""
        expected = FlaggedNecklace("0", ("01", "12"), ((0, 1, 2),))
        assert necklace_face(standard_simplex(2), TOP, 0) == expected

    def test_face_out_of_range(self):
        """Degree-0 necklaces have no faces."""
        with pytest.raises(ParameterError):
            necklace_face(standard_simplex(2), FlaggedNecklace("0", ("02",), ((0, 1),)), 0)

    def test_degeneracy_repeats_a_level(self):
        """s_0 doubles the joints."""
        assert necklace_degeneracy(TOP, 0).flags == ((0, 2), (0, 2), (0, 1, 2))

    def test_concatenate(self):
        """Concatenation shifts the second flag past the first necklace."""
        J = standard_simplex(2)
        left = FlaggedNecklace("0", ("01",), ((0, 1),))
        right = FlaggedNecklace("1", ("12",), ((0, 1),))
        assert concatenate(J, left, right) == FlaggedNecklace("0", ("01", "12"), ((0, 1, 2),))
        with pytest.raises(ParameterError):
            concatenate(J, right, left)


class TestMappingSpaces:
    """Mapping spaces of homotopy coherent realizations."""

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_simplex_gives_cube(self, n):
        """Map(0, n) in Delta[n] is the (n-1)-cube."""
        space = mapping_space(standard_simplex(n), "0", str(n), 2).sset
        assert is_isomorphic(space, cube(n - 1)) is not None

    @pytest.mark.parametrize("n", [2, 3])
    def test_boundary_gives_cube_boundary(self, n):
        """Map(0, n) in the boundary of Delta[n] is the boundary of the (n-1)-cube."""
        space = mapping_space(boundary(n), "0", str(n), 2).sset
        assert is_isomorphic(space, cube_boundary(n - 1)) is not None

    def test_triangle_space(self):
        """Map(0, 2) in Delta[2] is an edge from the long edge to the path."""
        built = mapping_space(standard_simplex(2), "0", "2", 2)
        assert built.sset.f_vector() == (2, 1)
        assert not built.sset.truncated
        edge = built.sset.level(1)[0]
        assert built.key_of(edge) == TOP

    def test_backwards_is_empty(self):
        """Nothing maps from 2 back to 0."""
        assert mapping_space(standard_simplex(2), "2", "0", 2).sset.is_empty()

    def test_negative_degree(self):
        """m_max must be non-negative."""
        with pytest.raises(ParameterError):
            mapping_space(standard_simplex(1), "0", "1", -1)

    @pytest.mark.parametrize("m", [0, 1])
    def test_realization_oracle(self, m):
        """Reduced words of cube cells give exactly the flagged necklaces."""
        assert realization_oracle(standard_simplex(2), "0", "2", m).ok

    def test_computation_over_a_point(self):
        """Delta[2] joined with a point has a square from 0 to the point."""
        assert computation1_check(identity(point()), 2, "full").ok
        assert computation1_check(identity(point()), 2, "full", "0").ok
        assert computation1_check(identity(point()), 2, "boundary").ok

    def test_computation_modes(self):
        """Unknown modes are rejected."""
        with pytest.raises(ParameterError):
            computation1_check(identity(point()), 2, "open")


class TestWeightedJoins:
    """Decomposition and the product formula."""

    def test_round_trip(self):
        """decompose then concat gives the necklace back."""
        wj = weighted_join(point(), identity(standard_simplex(1)))
        W = wj.sset
        bottom = wj.include_I.images["0"].base
        end = wj.include_J.images["1"].base
        space = mapping_space(W, bottom, end, 1)
        for g in space.sset.generator_names():
            tau = space.key_of(g)
            assert concat(wj, decompose(wj, tau)) == tau

    def test_product_formula_on_an_edge(self):
        """Map(a, b) in a point joined to a point is a product of points."""
        wj = weighted_join(point(), identity(point()))
        assert mainfact_check(wj, "0", "0", 1, part=1).ok

    def test_product_formula_needs_neat_join(self):
        """The comparison is only built for neat weighted joins."""
        wj = weighted_fat_join(point(), identity(point()))
        with pytest.raises(ParameterError):
            mainfact_map(wj, "0", "0", 1)

    def test_no_way_back(self):
        """Nothing maps from J back to I."""
        wj = weighted_join(standard_simplex(1), identity(standard_simplex(1)))
        assert mainfact_check(wj, "0", "1", 1, part=4).ok
        with pytest.raises(ParameterError):
            mainfact_check(wj, "0", "1", 1, part=5)


class TestCofibrantWeights:
    """Straightening by mapping spaces out of the cone point."""

    def test_cospan_values(self):
        """The straightened cospan is a point at a and c and an outward span at b."""
        W = straightened_weight(cospan(), 2)
        assert W("a").f_vector() == (1,)
        assert is_isomorphic(W("b"), opposite(horn(2, 2))) is not None
        assert is_isomorphic(W("b"), horn(2, 2)) is None

    def test_cospan_value_against_rectification(self):
        """At b the necklace value is the opposite of the nerve of the slice over b."""
        shape = cospan()
        W = straightened_weight(shape, 2)
        over_b = rectify(identity(nerve(shape)), shape, "b").sset
        assert is_isomorphic(over_b, horn(2, 2)) is not None
        assert is_isomorphic(W("b"), horn(2, 0)) is not None
        assert is_isomorphic(W("b"), opposite(over_b)) is not None

    def test_simplex_values_are_cubes(self):
        """Over N([1]) the value at 1 is an edge."""
        cof = cofibrant_weight(identity(nerve(ordinal(1))), 2)
        assert cof.bottom in cof.join.sset.vertex_names
        assert cof.join.include_I.images[APEX_BOTTOM].base == cof.bottom
        assert is_isomorphic(cof.value("1"), cube(1)) is not None

    def test_along_needs_degree_zero(self):
        """Only vertices of Map_J act by maps."""
        cof = cofibrant_weight(identity(nerve(ordinal(1))), 2)
        with pytest.raises(ParameterError):
            cof.along(FlaggedNecklace("0", ("0<1",), ((0, 1), (0, 1))))
