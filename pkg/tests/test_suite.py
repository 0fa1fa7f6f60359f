"""Tests for the invariant suite registry."""

import pytest

from wlim.errors import ParameterError
from wlim.suite import CHECKS, run_suite, selected, suites


class TestRegistry:
    """Suites and their checks."""

    def test_suite_names(self):
        """Every area has a suite, plus 'all'."""
        names = suites()
        assert names[-1] == "all"
        for name in ("joins", "necklaces", "cofibrant", "limits", "slices", "enriched"):
            assert name in names

    def test_check_names_are_unique(self):
        """Reports key checks by name."""
        names = [c.name for c in CHECKS]
        assert len(names) == len(set(names))

    def test_all_selects_everything(self):
        """'all' is every registered check, in registration order."""
        assert selected("all") == CHECKS

    def test_unknown_suite(self):
        """Unknown suite names are parameter errors."""
        with pytest.raises(ParameterError):
            selected("bogus")


class TestRun:
    """Running suites on the built-in fixtures."""

    def test_joins_suite_passes(self):
        """All join checks verify."""
        results = run_suite("joins")
        assert results
        for check, verdict in results:
            assert verdict.ok, f"{check.name}: {verdict.detail}"

    def test_enriched_suite_passes(self):
        """Ends agree with weighted cones and comma objects."""
        for check, verdict in run_suite("enriched"):
            assert verdict.ok, f"{check.name}: {verdict.detail}"

    @pytest.mark.parametrize("suite", ["limits", "slices", "cofibrant"])
    def test_suite_passes(self, suite):
        """Limits, slices and straightening checks verify on the fixtures."""
        for check, verdict in run_suite(suite):
            assert verdict.ok, f"{check.name}: {verdict.detail}"

    def test_limit_checks_registered(self):
        """Both limit searches and terminality on nerves are part of the limits suite."""
        names = {check.name for check in selected("limits")}
        assert {"two_path_agreement", "terminal_transport"} <= names
