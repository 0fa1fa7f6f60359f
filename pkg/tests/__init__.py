"""Tests for wlim."""
