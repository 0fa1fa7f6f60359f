"""Tests for terminal vertices, weighted limits and homotopy categories."""

import pytest

from wlim.errors import ParameterError, StructureError
from wlim.fincat import boolean_lattice, cospan, discrete_category, nerve, ordinal
from wlim.fixtures import (
    conical_nerves,
    example0_nerves,
    example0_weight,
    meetless_cospan,
    nerve_diagram,
    nerve_shapes,
)
from wlim.limits import (
    conical_reduction_check,
    ho_category,
    ho_functor,
    is_quasi_category,
    is_terminal_vertex,
    limit_methods_check,
    limit_uniqueness_check,
    slice_comparison_check,
    terminal_object_check,
    terminal_vertices,
    weighted_limit_vertex,
)
from wlim.report import Status
from wlim.sscore import SimplexRef, boundary, horn, identity, standard_simplex


class TestQuasiCategories:
    """Inner horn filling."""

    @pytest.mark.parametrize("X", [standard_simplex(2), horn(2, 2), nerve(cospan())])
    def test_nerves_fill(self, X):
        """Simplices and nerves fill their inner horns."""
        verdict = is_quasi_category(X, 3)
        assert verdict.ok
        assert verdict.bound == 3

    def test_hollow_triangle(self):
        """The boundary of Delta[2] leaves 0 -> 1 -> 2 without a composite."""
        verdict = is_quasi_category(boundary(2), 3)
        assert verdict.status is Status.COUNTEREXAMPLE
        assert "Lambda^1[2]" in verdict.witness


class TestTerminalVertices:
    """Terminal vertices by sphere filling."""

    def test_last_vertex_of_simplex(self):
        """Only the last vertex of Delta[2] is terminal."""
        assert is_terminal_vertex(standard_simplex(2), "2").ok
        assert not is_terminal_vertex(standard_simplex(2), "1").ok
        assert terminal_vertices(standard_simplex(2)) == ["2"]

    def test_hollow_triangle_has_none(self):
        """The circle through 0, 1, 2 does not fill."""
        assert terminal_vertices(boundary(2)) == []

    def test_not_a_vertex(self):
        """Only vertices can be terminal."""
        with pytest.raises(StructureError):
            is_terminal_vertex(standard_simplex(2), "01")

    def test_lattice_top_is_terminal(self):
        """The top of the Boolean lattice is its terminal vertex."""
        assert terminal_vertices(nerve(boolean_lattice(["x", "y"]))) == ["{x,y}"]

    @pytest.mark.parametrize("name", sorted(nerve_shapes()))
    def test_terminal_objects_of_shapes(self, name):
        """In every fixture shape, terminal vertices of the nerve are the terminal objects."""
        assert terminal_object_check(nerve_shapes()[name], 3).ok

    def test_terminal_objects_by_hand(self):
        """The cospan ends at b, [2] at 2, and two bare points have nothing."""
        assert terminal_vertices(nerve(cospan()), 3) == ["b"]
        assert terminal_vertices(nerve(ordinal(2)), 3) == ["2"]
        assert terminal_vertices(nerve(discrete_category(["x", "y"])), 3) == []


class TestWeightedLimits:
    """Limits as terminal vertices of weighted slices."""

    @pytest.mark.parametrize("method", ["slice", "lifting"])
    def test_example_limit(self, method):
        """The example weight over the lattice cospan has apex {}."""
        nd = example0_nerves()
        found = weighted_limit_vertex(nd.p, nd.d, 2, 2, method=method)
        assert found.apex == "{}"
        assert found.verdict.ok
        assert found.cone is not None

    def test_conical_limit(self):
        """The pullback in the lattice is also {}."""
        nd = conical_nerves()
        assert weighted_limit_vertex(nd.p, nd.d, 2, 2).apex == "{}"

    def test_no_limit(self):
        """Without a lower bound the search comes back empty, not with an error."""
        nd = nerve_diagram(example0_weight(), meetless_cospan())
        found = weighted_limit_vertex(nd.p, nd.d, 2, 2)
        assert found.apex is None
        assert found.vertex is None
        assert found.verdict.status is Status.NONE_FOUND

    def test_unknown_method(self):
        """Only the slice and lifting methods exist."""
        nd = example0_nerves()
        with pytest.raises(ParameterError):
            weighted_limit_vertex(nd.p, nd.d, method="guess")

    def test_uniqueness(self):
        """All limit apexes found agree up to isomorphism."""
        nd = example0_nerves()
        assert limit_uniqueness_check(nd.p, nd.d, 2, 2).ok

    def test_slice_comparison(self):
        """Neat and fat weighted slices have equivalent homotopy categories."""
        nd = example0_nerves()
        assert slice_comparison_check(nd.p, nd.d, 2).ok

    def test_slice_comparison_map_fails(self, monkeypatch):
        """A comparison map that breaks the simplicial identities is a counterexample, not an error."""

        def broken(neat, fat):
            raise StructureError("faces do not match", where="v0")

        monkeypatch.setattr("wlim.limits.fat_to_neat_slice_map", broken)
        nd = example0_nerves()
        found = slice_comparison_check(nd.p, nd.d, 2)
        assert found.status is Status.COUNTEREXAMPLE
        assert found.witness == "v0"

    @pytest.mark.parametrize("diagram", ["example0", "conical", "meetless"])
    def test_methods_agree(self, diagram):
        """The slice and lifting searches find the same apexes, including none."""
        nd = {
            "example0": example0_nerves,
            "conical": conical_nerves,
            "meetless": lambda: nerve_diagram(example0_weight(), meetless_cospan()),
        }[diagram]()
        verdict = limit_methods_check(nd.p, nd.d, 2, 2)
        assert verdict.ok, verdict.detail

    def test_conical_reduction(self):
        """The weighted slice is the conical slice over d o p."""
        nd = example0_nerves()
        assert conical_reduction_check(nd.p, nd.d, 2).ok


class TestHomotopyCategory:
    """ho(Q) of quasi-categories."""

    def test_nerve_of_cospan(self):
        """ho of a nerve is the category itself."""
        ho = ho_category(nerve(cospan()))
        assert ho.category.objects == ("a", "b", "c")
        assert ho.category.non_identities() == ["f", "g"]
        assert ho.arrow_of(SimplexRef("f")) == "f"

    def test_triangle_composes(self):
        """In Delta[2] the long edge is the composite."""
        ho = ho_category(standard_simplex(2))
        assert ho.category.compose("12", "01") == "02"

    def test_hollow_triangle_fails(self):
        """Without the 2-simplex, 12 o 01 has no composite."""
        with pytest.raises(StructureError):
            ho_category(boundary(2))

    def test_functor(self):
        """ho of the identity is the identity."""
        X = standard_simplex(2)
        ho = ho_category(X)
        F = ho_functor(identity(X), ho, ho)
        assert F.fmap("02") == "02"
