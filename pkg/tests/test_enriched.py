"""Tests for simplicially enriched weighted limits."""

import pytest

from wlim.enriched import (
    COMMA,
    comma_weight,
    constant_weight,
    homotopy_pullback,
    maps_into_end,
    sset_cospan,
    weighted_cone_count,
    weighted_end,
)
from wlim.errors import CompositionError, ParameterError
from wlim.fincat import constant_sset_weight, cospan, terminal_category, walking_arrow
from wlim.sscore import is_isomorphic, point, standard_simplex, vertex_inclusion


def _path_cospan():
    return sset_cospan(vertex_inclusion(1, 0), vertex_inclusion(1, 1))


class TestWeightedEnd:
    """Ends of cotensors."""

    def test_point_weight_on_a_point(self):
        """Over the terminal category the end with the point weight is the diagram itself."""
        J = terminal_category()
        D = constant_sset_weight(J, standard_simplex(1))
        end = weighted_end(constant_weight(J), D, 1)
        assert end.sset.truncated
        assert is_isomorphic(end.sset, standard_simplex(1)) is not None
        end.inclusion.validate()

    def test_comma_weight_counts_paths(self):
        """The comma weight over 0 -> Delta[1] <- 1 sees exactly one path."""
        end = weighted_end(comma_weight(), _path_cospan(), 1)
        assert len(end.sset.vertex_names) == 1

    def test_homotopy_pullback_with_comma_weight(self):
        """The named entry point agrees with the direct end."""
        end = homotopy_pullback(vertex_inclusion(1, 1), vertex_inclusion(1, 1), COMMA, 1)
        assert len(end.sset.vertex_names) == 1

    def test_unknown_weight_choice(self):
        """Only the cofibrant and comma weights are offered."""
        with pytest.raises(ParameterError):
            homotopy_pullback(vertex_inclusion(1, 0), vertex_inclusion(1, 1), "strict")

    def test_shapes_must_match(self):
        """Weight and diagram share their shape."""
        with pytest.raises(CompositionError):
            weighted_end(constant_weight(walking_arrow()), _path_cospan(), 1)

    def test_negative_truncation(self):
        """Truncations are non-negative."""
        with pytest.raises(ParameterError):
            weighted_end(comma_weight(), _path_cospan(), -1)

    def test_cospan_needs_common_target(self):
        """The two legs of a cospan meet."""
        with pytest.raises(CompositionError):
            sset_cospan(vertex_inclusion(1, 0), vertex_inclusion(2, 0))


class TestUniversalProperty:
    """Maps into the end against weighted cones."""

    @pytest.mark.parametrize("weight", [constant_weight(cospan()), comma_weight()])
    def test_vertices_are_cones(self, weight):
        """Maps from a point into the end are the weighted cones with apex a point."""
        D = _path_cospan()
        end = weighted_end(weight, D, 1)
        assert maps_into_end(point(), end) == weighted_cone_count(weight, D, point(), 1)

    def test_comma_cone_count(self):
        """One comma cone from a point: the identity path."""
        assert weighted_cone_count(comma_weight(), _path_cospan(), point()) == 1

    def test_strict_pullback_is_empty(self):
        """0 and 1 never meet, so the point-weighted cone set is empty."""
        assert weighted_cone_count(constant_weight(cospan()), _path_cospan(), point()) == 0

    def test_cone_count_truncation(self):
        """Truncations are non-negative and bound the apex dimension."""
        D = _path_cospan()
        assert weighted_cone_count(comma_weight(), D, standard_simplex(1), 1) >= 1
        with pytest.raises(ParameterError):
            weighted_cone_count(comma_weight(), D, point(), -1)
        with pytest.raises(ParameterError):
            weighted_cone_count(comma_weight(), D, standard_simplex(2), 1)
