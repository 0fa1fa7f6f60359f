"""Tests for reading and writing JSON documents."""

import json
from pathlib import Path

import pytest

from wlim.errors import SchemaError, StructureError
from wlim.fincat import SetWeight, cospan
from wlim.serialize import canonicalize, comment_of, from_document, load, save, sset_document, to_document
from wlim.sscore import SimplicialSet, horn, standard_simplex

FIXTURES = Path(__file__).parent.parent / "fixtures"


class TestLoad:
    """Decoding fixture files."""

    def test_triangle(self):
        """delta2.json is Delta[2]."""
        assert load(FIXTURES / "delta2.json") == standard_simplex(2)

    def test_comment(self):
        """Comments are kept out of the object but can be read back."""
        assert comment_of(FIXTURES / "delta2.json").startswith("Delta[2]")

    def test_ref_is_resolved(self):
        """The example weight pulls its category from cospan.json."""
        W = load(FIXTURES / "example0.json")
        assert isinstance(W, SetWeight)
        assert W.category == load(FIXTURES / "cospan.json")
        assert W("b") == ("0", "1")
        assert W.apply("f", "0") == "0"

    def test_broken_identity(self):
        """A broken simplicial identity is a structure error naming the simplex."""
        with pytest.raises(StructureError) as info:
            load(FIXTURES / "bad-faces.json")
        assert info.value.where == "012"

    @pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.json") if p.name != "bad-faces.json"))
    def test_fixtures_load(self, name):
        """Every shipped fixture except the broken one is valid."""
        assert load(FIXTURES / name) is not None


class TestSchemaErrors:
    """Failures point at the offending location."""

    def test_missing_field(self):
        """dim is required."""
        with pytest.raises(SchemaError) as info:
            from_document({"kind": "sset", "simplices": {}})
        assert info.value.path == "/"
        assert "dim" in str(info.value)

    def test_unknown_kind(self):
        """Only the listed kinds decode."""
        with pytest.raises(SchemaError) as info:
            from_document({"kind": "graph"})
        assert info.value.path == "/kind"

    def test_wrong_face_count(self):
        """An edge listed with one face is rejected at its faces."""
        doc = {
            "kind": "sset",
            "dim": 1,
            "simplices": {
                "0": [{"name": "0"}],
                "1": [{"name": "e", "faces": [{"base": "0"}]}],
            },
        }
        with pytest.raises(SchemaError) as info:
            from_document(doc)
        assert info.value.path == "/simplices/1/0/faces"

    def test_bad_degeneracies(self):
        """Degeneracy words are strictly decreasing."""
        doc = {
            "kind": "sset",
            "dim": 1,
            "simplices": {
                "0": [{"name": "0"}],
                "1": [{"name": "e", "faces": [{"base": "0", "degens": [0, 0]}, {"base": "0"}]}],
            },
        }
        with pytest.raises(SchemaError) as info:
            from_document(doc)
        assert info.value.path.endswith("/degens")

    def test_invalid_json(self, tmp_path):
        """Unparseable files are schema errors, not tracebacks."""
        path = tmp_path / "broken.json"
        path.write_text("{")
        with pytest.raises(SchemaError):
            load(path)

    def test_ref_of_wrong_kind(self, tmp_path):
        """A $ref must point at a document of the expected kind."""
        (tmp_path / "X.json").write_text(json.dumps(sset_document(standard_simplex(1))))
        doc = {"kind": "set-weight", "category": {"$ref": "X.json"}, "values": {}}
        with pytest.raises(SchemaError) as info:
            from_document(doc, tmp_path)
        assert info.value.path == "/category"


class TestWrite:
    """Canonical output."""

    def test_save_and_load(self, tmp_path):
        """A saved horn loads back equal, comment included."""
        path = tmp_path / "horn.json"
        save(horn(2, 2), path, comment="the outer horn")
        assert load(path) == horn(2, 2)
        assert comment_of(path) == "the outer horn"

    def test_canonical_form_is_stable(self, tmp_path):
        """Canonicalizing a canonical document changes nothing."""
        once = canonicalize(FIXTURES / "example0.json")
        path = tmp_path / "example0.json"
        path.write_text(once)
        assert canonicalize(path) == once

    def test_refs_are_inlined(self):
        """Written documents are self-contained."""
        doc = to_document(load(FIXTURES / "example0.json"))
        assert doc["category"]["kind"] == "category"
        assert doc["category"]["objects"] == sorted(cospan().objects)

    def test_truncation_flag(self):
        """Only truncated simplicial sets carry the flag."""
        X = standard_simplex(1)
        assert "truncated" not in sset_document(X)
        T = SimplicialSet(X.generators, X.faces, X.dim, True)
        assert sset_document(T)["truncated"] is True

    def test_unknown_object(self):
        """Only wlim objects serialize."""
        with pytest.raises(TypeError):
            to_document(object())
