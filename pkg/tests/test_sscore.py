"""Tests for simplicial sets, maps and constructions."""

import pytest

from wlim.errors import CompositionError, EnumerationLimitError, ParameterError, StructureError
from wlim.sscore import (
    SimplexRef,
    SimplicialSet,
    boundary,
    codegeneracy,
    compose,
    constant_map,
    coproduct,
    cube,
    cube_boundary,
    cube_horn,
    degens_to_surjection,
    enumerate_maps,
    enumeration_budget,
    equalizer,
    exponential,
    horn,
    identity,
    inverse,
    is_isomorphic,
    iter_maps,
    opposite,
    point,
    product,
    product_many,
    pullback,
    pushout,
    simplex_construction,
    simplex_map,
    skeleton,
    standard_simplex,
    subcomplex,
    surjection_to_degens,
    vertex_inclusion,
    wedge,
    yoneda,
)


def _bad_triangle() -> SimplicialSet:
    refs = {name: SimplexRef(name) for name in ("0", "1", "2", "01", "02", "12")}
    faces = {
        "0": (),
        "1": (),
        "2": (),
        "01": (refs["1"], refs["0"]),
        "02": (refs["2"], refs["0"]),
        "12": (refs["2"], refs["1"]),
        "012": (refs["01"], refs["02"], refs["01"]),
    }
    return SimplicialSet((("0", "1", "2"), ("01", "02", "12"), ("012",)), faces, 2)


class TestNormalForm:
    """Degeneracy words and simplicial operators."""

    def test_surjection_round_trip(self):
        """s_0 on a 1-simplex is the surjection [2] -> [1] hitting 0 twice."""
        assert degens_to_surjection((0,), 2) == (0, 0, 1)
        assert surjection_to_degens((0, 0, 1)) == (0,)
        assert surjection_to_degens((0, 1, 1, 1)) == (2, 1)

    def test_faces_of_top_simplex(self):
        """Faces of Delta[2] drop one vertex each."""
        X = standard_simplex(2)
        assert X.faces["012"] == (SimplexRef("12"), SimplexRef("02"), SimplexRef("01"))
        assert X.face(SimplexRef("012"), 1) == SimplexRef("02")

    def test_face_of_degeneracy(self):
        """d_0 s_0 and d_1 s_0 are both the identity."""
        X = standard_simplex(2)
        x = SimplexRef("01")
        s = X.degeneracy(x, 0)
        assert s == SimplexRef("01", (0,))
        assert X.face(s, 0) == x
        assert X.face(s, 1) == x

    @pytest.mark.parametrize("n", [2, 3])
    def test_simplicial_identities(self, n):
        """d_i d_j = d_{j-1} d_i on every simplex, degenerate ones included."""
        X = standard_simplex(2)
        for x in X.simplices(n):
            for j in range(1, n + 1):
                for i in range(j):
                    assert X.face(X.face(x, j), i) == X.face(X.face(x, i), j - 1)

    def test_simplex_counts(self):
        """Delta[2] has C(n+2, 2) simplices in degree n."""
        X = standard_simplex(2)
        assert len(X.simplices(1)) == 6
        assert len(X.simplices(2)) == 10

    def test_non_monotone_operator(self):
        """Operators must be monotone."""
        with pytest.raises(ParameterError):
            standard_simplex(2).operate(SimplexRef("012"), (1, 0))

    def test_simplex_map(self):
        """A monotone function induces a map of simplices."""
        f = simplex_map((0, 0, 2), 2).validate()
        assert f.vertex_map() == {"0": "0", "1": "0", "2": "2"}
        with pytest.raises(ParameterError):
            simplex_map((1, 0), 2)

    def test_simplex_map_onto_lower_dimension(self):
        """Codegeneracies land on degenerate simplices of the smaller simplex."""
        f = simplex_map(codegeneracy(1, 0), 1).validate()
        assert f.images["012"] == SimplexRef("01", (0,))
        g = simplex_map((0, 0), 0).validate()
        assert g.images["01"] == SimplexRef("0", (0,))

    def test_degenerate_keys_above_dimension(self):
        """Chains longer than the dimension resolve to degenerate normal forms."""
        assert simplex_construction(0).ref(2, (0, 0, 0)) == SimplexRef("0", (1, 0))
        assert simplex_construction(1).ref(2, (0, 1, 1)) == SimplexRef("01", (1,))

    def test_vertices(self):
        """The vertex list of a degenerate simplex repeats."""
        X = standard_simplex(2)
        assert X.vertices(SimplexRef("02", (0,))) == ("0", "0", "2")


class TestStandardObjects:
    """Simplices, boundaries, horns, cubes and wedges."""

    def test_simplex_f_vector(self):
        """Delta[3] has the binomial f-vector."""
        assert standard_simplex(3).f_vector() == (4, 6, 4, 1)

    def test_boundary_and_horns(self):
        """The horns of Delta[2] miss one edge each."""
        assert boundary(2).f_vector() == (3, 3)
        assert horn(2, 1).level(1) == ("01", "12")
        assert horn(2, 2).level(1) == ("02", "12")
        assert horn(3, 1).f_vector() == (4, 6, 3)

    def test_horn_parameters(self):
        """Horn indices must lie in 0..n."""
        with pytest.raises(ParameterError):
            horn(2, 3)

    def test_cube_vertices(self):
        """cube(0) is a point labelled '*', cube(2) a square of two triangles."""
        assert cube(0).vertex_names == ("*",)
        assert cube(2).f_vector() == (4, 5, 2)
        assert is_isomorphic(cube(1), standard_simplex(1)) is not None

    def test_cube_boundary_and_horn(self):
        """The square's boundary has four edges; a horn keeps three."""
        assert len(cube_boundary(2).level(1)) == 4
        assert len(cube_horn(2, 1, 0).level(1)) == 3
        with pytest.raises(ParameterError):
            cube_horn(2, 3, 0)

    def test_wedge(self):
        """Delta[1] v Delta[1] is the inner horn of Delta[2]."""
        assert is_isomorphic(wedge([1, 1]), horn(2, 1)) is not None

    def test_yoneda(self):
        """The representing map of an edge sends the top simplex to it."""
        X = standard_simplex(2)
        f = yoneda(X, SimplexRef("02"))
        assert f.images["01"] == SimplexRef("02")
        assert f.vertex_map() == {"0": "0", "1": "2"}


class TestValidation:
    """Structural checks on hand-written simplicial sets."""

    def test_identity_failure_is_located(self):
        """A broken simplicial identity names the generator and the indices."""
        with pytest.raises(StructureError) as info:
            _bad_triangle().validate()
        assert info.value.where == "012"
        assert info.value.indices == (0, 1)

    def test_unsorted_generators(self):
        """Generators of each dimension must be sorted."""
        X = SimplicialSet((("1", "0"),), {"0": (), "1": ()}, 0)
        with pytest.raises(StructureError):
            X.validate()

    def test_wrong_face_count(self):
        """An edge needs two faces."""
        X = SimplicialSet((("0",), ("e",)), {"0": (), "e": (SimplexRef("0"),)}, 1)
        with pytest.raises(StructureError) as info:
            X.validate()
        assert info.value.where == "e"


class TestMaps:
    """Composition, enumeration and isomorphism."""

    def test_enumerate_edge_into_triangle(self):
        """Maps Delta[1] -> Delta[2] are the monotone maps [1] -> [2]."""
        assert len(enumerate_maps(standard_simplex(1), standard_simplex(2))) == 6

    def test_enumerate_circle_into_interval(self):
        """Maps out of the boundary of Delta[2] into Delta[1] are monotone vertex labellings."""
        assert len(enumerate_maps(boundary(2), standard_simplex(1))) == 4

    def test_compose_mismatch(self):
        """Composition checks sources against targets."""
        with pytest.raises(CompositionError):
            compose(identity(standard_simplex(1)), identity(standard_simplex(2)))

    def test_constant_map(self):
        """A constant map degenerates its vertex."""
        f = constant_map(standard_simplex(2), standard_simplex(1), "1").validate()
        assert f.images["012"] == SimplexRef("1", (1, 0))

    def test_inverse(self):
        """An isomorphism composes with its inverse to the identity."""
        X = standard_simplex(2)
        f = is_isomorphic(X, opposite(X))
        assert f is not None
        assert compose(inverse(f), f) == identity(X)

    def test_isomorphism_is_orientation_sensitive(self):
        """Lambda^2[2] and Lambda^0[2] are opposite, not isomorphic."""
        assert is_isomorphic(horn(2, 2), horn(2, 0)) is None
        assert is_isomorphic(horn(2, 2), opposite(horn(2, 0))) is not None

    def test_isomorphism_ignores_empty_top_levels(self):
        """The boundary of the 1-cube is two points, however its dimension is declared."""
        assert cube_boundary(1).f_vector() == (2, 0)
        assert is_isomorphic(cube_boundary(1), boundary(1)) is not None

    def test_opposite_is_involution(self):
        """Reversing twice gives back the same simplicial set."""
        X = horn(3, 1)
        assert opposite(opposite(X)) == X

    def test_budget(self):
        """A tiny budget stops the enumeration."""
        with enumeration_budget(1):
            with pytest.raises(EnumerationLimitError):
                enumerate_maps(standard_simplex(1), standard_simplex(2))

    def test_budget_must_be_positive(self):
        """A zero budget is rejected."""
        with pytest.raises(ParameterError):
            with enumeration_budget(0):
                pass

    def test_no_maps_out_of_truncated(self):
        """Enumeration out of a truncated simplicial set is refused."""
        X = exponential(standard_simplex(1), point(), 1).sset
        with pytest.raises(ParameterError):
            next(iter_maps(X, standard_simplex(1)))


class TestConstructions:
    """Limits, colimits, subcomplexes and exponentials."""

    def test_product_is_square(self):
        """Delta[1] x Delta[1] is the 2-cube."""
        P = product(standard_simplex(1), standard_simplex(1))
        assert P.sset.f_vector() == (4, 5, 2)
        assert is_isomorphic(P.sset, cube(2)) is not None
        for leg in P.legs:
            leg.validate()

    def test_product_of_three_edges(self):
        """Delta[1]^3 is the triangulated 3-cube."""
        P = product_many([standard_simplex(1)] * 3)
        assert P.sset.f_vector() == (8, 19, 18, 6)
        assert P.sset.f_vector() == cube(3).f_vector()
        assert len(P.legs) == 3

    def test_coproduct_renames(self):
        """Colliding names on the left side are primed."""
        C = coproduct(point(), point())
        assert C.sset.vertex_names == ("0", "0'")

    def test_pullback_of_endpoints(self):
        """The two endpoints of Delta[1] do not meet; an endpoint meets itself."""
        assert pullback(vertex_inclusion(1, 0), vertex_inclusion(1, 1)).sset.is_empty()
        P = pullback(vertex_inclusion(1, 0), vertex_inclusion(1, 0))
        assert P.sset.f_vector()[0] == 1
        with pytest.raises(CompositionError):
            pullback(vertex_inclusion(1, 0), vertex_inclusion(2, 0))

    def test_pushout_glues_edges(self):
        """Gluing the end of one edge to the start of another gives the inner horn."""
        P = pushout(vertex_inclusion(1, 1), vertex_inclusion(1, 0))
        assert is_isomorphic(P.sset, horn(2, 1)) is not None

    def test_equalizer(self):
        """The identity and the constant map at 0 agree only on vertex 0."""
        X = standard_simplex(1)
        E = equalizer(identity(X), constant_map(X, X, "0"))
        assert E.sset.vertex_names == ("0",)
        assert not E.sset.level(1)

    def test_subcomplex(self):
        """Subcomplexes must be closed under faces."""
        X = standard_simplex(2)
        sub = subcomplex(X, ["0", "1", "01"])
        assert sub.sset.f_vector() == (2, 1)
        sub.legs[0].validate()
        with pytest.raises(StructureError):
            subcomplex(X, ["0", "01"])

    def test_skeleton(self):
        """The 1-skeleton of Delta[2] is its boundary."""
        assert is_isomorphic(skeleton(standard_simplex(2), 1), boundary(2)) is not None

    def test_exponential_of_point(self):
        """Q^{Delta[0]} is Q, truncated."""
        E = exponential(standard_simplex(1), point(), 1).sset
        assert E.truncated
        assert E.f_vector() == (2, 1)
        assert is_isomorphic(E, standard_simplex(1)) is not None
