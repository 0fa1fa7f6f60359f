"""
JSON documents for simplicial sets, maps, categories, functors and weights.

Every document is an object with a ``"kind"`` and an optional ``"comment"``.
Nested objects are either inlined or given as ``{"$ref": "file.json"}``,
resolved relative to the referring file. Saving sorts every list by name so
that save(load(x)) is the canonical form of x.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Optional, Union

from .errors import SchemaError
from .fincat import CatFunctor, FinCategory, SetWeight, SSetWeight
from .sscore import SimplexRef, SimplicialMap, SimplicialSet, identity

log = logging.getLogger(__name__)

KINDS = ("sset", "smap", "category", "functor", "set-weight", "sset-weight")

Loaded = Union[SimplicialSet, SimplicialMap, FinCategory, CatFunctor, SetWeight, SSetWeight]


def _expect(doc: Any, kind: type, path: str) -> Any:
    if not isinstance(doc, kind):
        raise SchemaError(f"expected {kind.__name__}, got {type(doc).__name__}", path)
    return doc


def _field(doc: dict, name: str, kind: type, path: str) -> Any:
    if name not in doc:
        raise SchemaError(f"missing field {name!r}", path)
    return _expect(doc[name], kind, f"{path}/{name}")


class _Reader:
    """Decodes documents; ``base`` is the directory $refs are resolved against."""

    def __init__(self, base: Optional[Path] = None):
        self.base = base or Path(".")
        self._cache: dict[Path, Loaded] = {}

    def resolve(self, doc: Any, path: str, kind: str) -> Loaded:
        if isinstance(doc, dict) and "$ref" in doc:
            ref = self.base / _field(doc, "$ref", str, path)
            if ref not in self._cache:
                self._cache[ref] = _Reader(ref.parent).read(_read_json(ref), "")
            obj = self._cache[ref]
        else:
            obj = self.read(doc, path, default_kind=kind)
        wanted = _TYPES[kind]
        if not isinstance(obj, wanted):
            raise SchemaError(f"expected a {kind} document", path)
        return obj

    def read(self, doc: Any, path: str, default_kind: Optional[str] = None) -> Loaded:
        doc = _expect(doc, dict, path)
        kind = doc.get("kind", default_kind)
        if kind not in KINDS:
            raise SchemaError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", f"{path}/kind")
        return getattr(self, "_" + kind.replace("-", "_"))(doc, path)

    def _ref(self, doc: Any, path: str) -> SimplexRef:
        doc = _expect(doc, dict, path)
        base = _field(doc, "base", str, path)
        degens = tuple(_field(doc, "degens", list, path)) if "degens" in doc else ()
        if any(not isinstance(j, int) for j in degens):
            raise SchemaError("degeneracy indices must be integers", f"{path}/degens")
        if any(a <= b for a, b in zip(degens, degens[1:])) or any(j < 0 for j in degens):
            raise SchemaError("degeneracy indices must be strictly decreasing and >= 0", f"{path}/degens")
        return SimplexRef(base, degens)

    def _sset(self, doc: dict, path: str) -> SimplicialSet:
        dim = _field(doc, "dim", int, path)
        simplices = _field(doc, "simplices", dict, path)
        levels: list[list[str]] = [[] for _ in range(dim + 1)]
        faces: dict[str, tuple[SimplexRef, ...]] = {}
        for key, entries in simplices.items():
            where = f"{path}/simplices/{key}"
            if not key.isdigit() or int(key) > dim:
                raise SchemaError(f"degree {key!r} is not an integer in 0..{dim}", where)
            k = int(key)
            for i, entry in enumerate(_expect(entries, list, where)):
                at = f"{where}/{i}"
                _expect(entry, dict, at)
                name = _field(entry, "name", str, at)
                if name in faces:
                    raise SchemaError(f"duplicate simplex name {name!r}", f"{at}/name")
                listed = _field(entry, "faces", list, at) if k else entry.get("faces", [])
                if len(listed) != (k + 1 if k else 0):
                    raise SchemaError(f"a {k}-simplex needs {k + 1 if k else 0} faces", f"{at}/faces")
                faces[name] = tuple(self._ref(f, f"{at}/faces/{j}") for j, f in enumerate(listed))
                levels[k].append(name)
        truncated = bool(doc.get("truncated", False))
        X = SimplicialSet(tuple(tuple(sorted(level)) for level in levels), faces, dim, truncated)
        return X.validate()

    def _smap(self, doc: dict, path: str) -> SimplicialMap:
        source = self.resolve(_field(doc, "source", dict, path), f"{path}/source", "sset")
        target = self.resolve(_field(doc, "target", dict, path), f"{path}/target", "sset")
        images = _field(doc, "images", dict, path)
        f = SimplicialMap(
            source, target, {g: self._ref(r, f"{path}/images/{g}") for g, r in images.items()}
        )
        return f.validate()

    def _category(self, doc: dict, path: str) -> FinCategory:
        objects = [str(o) for o in _field(doc, "objects", list, path)]
        arrows = {}
        for i, m in enumerate(_field(doc, "morphisms", list, path)):
            at = f"{path}/morphisms/{i}"
            arrows[_field(m, "name", str, at)] = (_field(m, "dom", str, at), _field(m, "cod", str, at))
        identities = doc.get("identities")
        table = {}
        for i, row in enumerate(doc.get("compose", [])):
            at = f"{path}/compose/{i}"
            table[(_field(row, "g", str, at), _field(row, "f", str, at))] = _field(row, "gf", str, at)
        if identities is not None:
            identities = _expect(identities, dict, f"{path}/identities")
        return FinCategory.build(objects, arrows, table, identities)

    def _functor(self, doc: dict, path: str) -> CatFunctor:
        source = self.resolve(_field(doc, "source", dict, path), f"{path}/source", "category")
        target = self.resolve(_field(doc, "target", dict, path), f"{path}/target", "category")
        objects = _field(doc, "objects", dict, path)
        morphisms = doc.get("morphisms")
        return CatFunctor.between(source, target, objects, morphisms)

    def _set_weight(self, doc: dict, path: str) -> SetWeight:
        category = self.resolve(_field(doc, "category", dict, path), f"{path}/category", "category")
        values = _field(doc, "values", dict, path)
        action = doc.get("action", {})
        return SetWeight.build(category, values, action)

    def _sset_weight(self, doc: dict, path: str) -> SSetWeight:
        category = self.resolve(_field(doc, "category", dict, path), f"{path}/category", "category")
        raw_values = _field(doc, "values", dict, path)
        values = {j: self.resolve(v, f"{path}/values/{j}", "sset") for j, v in raw_values.items()}
        action = {}
        for f, entry in _field(doc, "action", dict, path).items():
            at = f"{path}/action/{f}"
            images = _field(entry, "images", dict, at)
            source, target = values[category.dom(f)], values[category.cod(f)]
            action[f] = SimplicialMap(
                source, target, {g: self._ref(r, f"{at}/images/{g}") for g, r in images.items()}
            )
        for o in category.objects:
            ident = category.identity(o)
            if ident not in action and o in values:
                action[ident] = identity(values[o])
        return SSetWeight(category, values, action).validate()


_TYPES = {
    "sset": SimplicialSet,
    "smap": SimplicialMap,
    "category": FinCategory,
    "functor": CatFunctor,
    "set-weight": SetWeight,
    "sset-weight": SSetWeight,
}


def _read_json(path: Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})") from None


def load(path: Union[str, Path]) -> Loaded:
    """Read and validate a document from a file."""
    path = Path(path)
    obj = _Reader(path.parent).read(_read_json(path), "")
    log.debug("loaded %s from %s", type(obj).__name__, path)
    return obj


def from_document(doc: Any, base: Optional[Path] = None) -> Loaded:
    return _Reader(base).read(doc, "")


def comment_of(path: Union[str, Path]) -> Optional[str]:
    doc = _read_json(Path(path))
    return doc.get("comment") if isinstance(doc, dict) else None


# =============================================================================
# Writing
# =============================================================================


def _ref_doc(r: SimplexRef) -> dict:
    return {"base": r.base, "degens": list(r.degens)}


def sset_document(X: SimplicialSet) -> dict:
    simplices = {}
    for k in range(X.dim + 1):
        simplices[str(k)] = [
            {"name": g, "faces": [_ref_doc(f) for f in X.faces[g]]} for g in sorted(X.level(k))
        ]
    doc = {"kind": "sset", "dim": X.dim, "simplices": simplices}
    if X.truncated:
        doc["truncated"] = True
    return doc


def _images_doc(f: SimplicialMap) -> dict:
    return {g: _ref_doc(r) for g, r in sorted(f.images.items())}


def category_document(C: FinCategory) -> dict:
    return {
        "kind": "category",
        "objects": sorted(C.objects),
        "identities": dict(sorted(C.identities.items())),
        "morphisms": [
            {"name": f, "dom": C.dom(f), "cod": C.cod(f)} for f in C.morphisms() if not C.is_identity(f)
        ],
        "compose": [
            {"g": g, "f": f, "gf": h}
            for (g, f), h in sorted(C.table.items())
            if not C.is_identity(g) and not C.is_identity(f)
        ],
    }


def to_document(obj: Loaded) -> dict:
    """The canonical document of an object, with everything inlined."""
    if isinstance(obj, SimplicialSet):
        return sset_document(obj)
    if isinstance(obj, SimplicialMap):
        return {
            "kind": "smap",
            "source": sset_document(obj.source),
            "target": sset_document(obj.target),
            "images": _images_doc(obj),
        }
    if isinstance(obj, FinCategory):
        return category_document(obj)
    if isinstance(obj, CatFunctor):
        return {
            "kind": "functor",
            "source": category_document(obj.source),
            "target": category_document(obj.target),
            "objects": dict(sorted(obj.on_objects.items())),
            "morphisms": dict(sorted(obj.on_morphisms.items())),
        }
    if isinstance(obj, SetWeight):
        J = obj.category
        return {
            "kind": "set-weight",
            "category": category_document(J),
            "values": {j: sorted(obj.values[j]) for j in sorted(J.objects)},
            "action": {
                f: dict(sorted(obj.action[f].items())) for f in J.morphisms() if not J.is_identity(f)
            },
        }
    if isinstance(obj, SSetWeight):
        J = obj.category
        return {
            "kind": "sset-weight",
            "category": category_document(J),
            "values": {j: sset_document(obj.values[j]) for j in sorted(J.objects)},
            "action": {
                f: {"images": _images_doc(obj.action[f])} for f in J.morphisms() if not J.is_identity(f)
            },
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(doc: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def save(obj: Loaded, path: Union[str, Path], comment: Optional[str] = None) -> None:
    doc = to_document(obj)
    if comment:
        doc["comment"] = comment
    Path(path).write_text(dumps(doc))


def canonicalize(path: Union[str, Path]) -> str:
    """The canonical text of a document: load it, then write it back inlined."""
    doc = to_document(load(path))
    comment = comment_of(path)
    if comment:
        doc["comment"] = comment
    return dumps(doc)
