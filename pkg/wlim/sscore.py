"""
Finite simplicial sets in Eilenberg-Zilber normal form.

A simplicial set is stored as its nondegenerate generators, each with the
ordered list of its faces. Every simplex, degenerate or not, is a
:class:`SimplexRef`: a generator name plus the strictly decreasing list of
degeneracy indices applied to it. Internally a degeneracy word is handled
as the monotone surjection it encodes, which turns every simplicial
operator into an epi-mono factorization.

Limits, colimits, joins, exponentials and slices are all computed the same
way: a *level model* lists the (hashable) simplices of each degree with
their face and degeneracy functions, and :func:`realize` extracts the
nondegenerate ones and rewrites faces in normal form. The result is a
:class:`Construction`, which keeps the lookup from model simplices to
normal forms so that induced maps can be written down exactly.
"""

from __future__ import annotations

import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Optional, Protocol, Sequence

from .errors import CompositionError, EnumerationLimitError, ParameterError, StructureError

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 1_000_000

_budget: ContextVar[Optional[int]] = ContextVar("wlim_max_cells", default=None)


def max_cells() -> int:
    """Active cap on candidate extensions per map enumeration."""
    cap = _budget.get()
    if cap is not None:
        return cap
    return int(os.environ.get("WLIM_MAX_CELLS", DEFAULT_MAX_CELLS))


@contextmanager
def enumeration_budget(cap: int):
    """Temporarily set the candidate-extension cap for map enumeration."""
    if cap <= 0:
        raise ParameterError(f"enumeration budget must be positive, got {cap}")
    token = _budget.set(cap)
    try:
        yield cap
    finally:
        _budget.reset(token)


# =============================================================================
# Simplices in normal form
# =============================================================================


@dataclass(frozen=True, order=True)
class SimplexRef:
    """A simplex s_{i_1} ... s_{i_k} (base), with i_1 > ... > i_k."""

    base: str
    degens: tuple[int, ...] = ()

    @property
    def is_degenerate(self) -> bool:
        return bool(self.degens)

    def __str__(self) -> str:
        if not self.degens:
            return self.base
        return f"s{','.join(map(str, self.degens))}({self.base})"


def degens_to_surjection(degens: Sequence[int], n: int) -> tuple[int, ...]:
    """The monotone surjection [n] -> [n - len(degens)] of a degeneracy word."""
    ties = set(degens)
    eta = [0]
    for j in range(n):
        eta.append(eta[-1] if j in ties else eta[-1] + 1)
    return tuple(eta)


def surjection_to_degens(eta: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`degens_to_surjection`."""
    return tuple(sorted((j for j in range(len(eta) - 1) if eta[j] == eta[j + 1]), reverse=True))


def _check_monotone(alpha: Sequence[int], n: int) -> None:
    if not alpha:
        raise ParameterError("simplicial operators need a nonempty source [m]")
    for a, b in zip(alpha, alpha[1:]):
        if b < a:
            raise ParameterError(f"operator {tuple(alpha)} is not monotone")
    if alpha[0] < 0 or alpha[-1] > n:
        raise ParameterError(f"operator {tuple(alpha)} does not land in [{n}]")


def coface(n: int, i: int) -> tuple[int, ...]:
    """delta^i: [n-1] -> [n], skipping i."""
    return tuple(q for q in range(n + 1) if q != i)


def codegeneracy(n: int, j: int) -> tuple[int, ...]:
    """sigma^j: [n+1] -> [n], hitting j twice."""
    return tuple(range(j + 1)) + tuple(range(j, n + 1))


# =============================================================================
# Simplicial sets
# =============================================================================


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    """A finite simplicial set given by nondegenerate generators and faces.

    ``generators[k]`` lists the names of nondegenerate k-simplices (sorted),
    ``faces[name]`` the faces d_0..d_k of a generator. ``dim`` is the declared
    dimension bound (-1 for the empty simplicial set). When ``truncated`` is
    set, nothing is known above ``dim``.
    """

    generators: tuple[tuple[str, ...], ...]
    faces: Mapping[str, tuple[SimplexRef, ...]]
    dim: int
    truncated: bool = False
    _restrictions: dict[tuple[str, tuple[int, ...]], SimplexRef] = field(default_factory=dict, init=False, repr=False)
    _levels: dict[int, tuple[SimplexRef, ...]] = field(default_factory=dict, init=False, repr=False)
    _face_indexes: dict[int, dict[tuple[SimplexRef, ...], list[SimplexRef]]] = field(
        default_factory=dict, init=False, repr=False
    )
    _vertex_cache: dict[SimplexRef, tuple[str, ...]] = field(default_factory=dict, init=False, repr=False)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.truncated == other.truncated
            and self.generators == other.generators
            and dict(self.faces) == dict(other.faces)
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.dim, self.truncated))

    def __repr__(self) -> str:
        return f"SimplicialSet(f={self.f_vector()}, dim={self.dim}{', truncated' if self.truncated else ''})"

    # -- bookkeeping ----------------------------------------------------------

    @cached_property
    def _dims(self) -> dict[str, int]:
        return {name: k for k, level in enumerate(self.generators) for name in level}

    def dim_of(self, name: str) -> int:
        try:
            return self._dims[name]
        except KeyError:
            raise StructureError(f"unknown generator {name!r}", where=name) from None

    def has_generator(self, name: str) -> bool:
        return name in self._dims

    def generator_names(self) -> list[str]:
        return [name for level in self.generators for name in level]

    def level(self, k: int) -> tuple[str, ...]:
        return self.generators[k] if 0 <= k < len(self.generators) else ()

    @property
    def vertex_names(self) -> tuple[str, ...]:
        return self.level(0)

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.level(k)) for k in range(self.dim + 1))

    def is_empty(self) -> bool:
        return not self.level(0)

    # -- simplicial operators -------------------------------------------------

    def dimension(self, x: SimplexRef) -> int:
        return self.dim_of(x.base) + len(x.degens)

    def surjection(self, x: SimplexRef) -> tuple[int, ...]:
        return degens_to_surjection(x.degens, self.dimension(x))

    def ref(self, base: str, eta: Sequence[int]) -> SimplexRef:
        """Normal form of the simplex ``base`` pulled back along the surjection ``eta``."""
        return SimplexRef(base, surjection_to_degens(eta))

    def operate(self, x: SimplexRef, alpha: Sequence[int]) -> SimplexRef:
        """Apply the simplicial operator of a monotone map alpha: [m] -> [dim x]."""
        n = self.dimension(x)
        _check_monotone(alpha, n)
        eta = self.surjection(x)
        composite = [eta[a] for a in alpha]
        image = sorted(set(composite))
        position = {v: i for i, v in enumerate(image)}
        y = self._restrict_generator(x.base, tuple(image))
        theta = self.surjection(y)
        return self.ref(y.base, [theta[position[c]] for c in composite])

    def _restrict_generator(self, base: str, support: tuple[int, ...]) -> SimplexRef:
        d = self.dim_of(base)
        if support == tuple(range(d + 1)):
            return SimplexRef(base)
        cached = self._restrictions.get((base, support))
        if cached is not None:
            return cached
        missing = max(set(range(d + 1)) - set(support))
        face = self.faces[base][missing]
        shifted = tuple(s if s < missing else s - 1 for s in support)
        result = self.operate(face, shifted)
        self._restrictions[(base, support)] = result
        return result

    def face(self, x: SimplexRef, i: int) -> SimplexRef:
        n = self.dimension(x)
        if not 0 <= i <= n or n == 0:
            raise ParameterError(f"face d_{i} undefined on a {n}-simplex")
        return self.operate(x, coface(n, i))

    def degeneracy(self, x: SimplexRef, j: int) -> SimplexRef:
        n = self.dimension(x)
        if not 0 <= j <= n:
            raise ParameterError(f"degeneracy s_{j} undefined on a {n}-simplex")
        return self.operate(x, codegeneracy(n, j))

    def degenerate_to(self, x: SimplexRef, n: int) -> SimplexRef:
        """Totally degenerate copy of a vertex (or any simplex) in degree n."""
        k = self.dimension(x)
        if n < k:
            raise ParameterError(f"cannot degenerate a {k}-simplex down to degree {n}")
        return self.operate(x, tuple(min(q, k) if q <= k else k for q in range(n + 1)))

    def faces_of(self, x: SimplexRef) -> tuple[SimplexRef, ...]:
        n = self.dimension(x)
        if n == 0:
            return ()
        if not x.degens:
            return tuple(self.faces[x.base])
        return tuple(self.face(x, i) for i in range(n + 1))

    def vertices(self, x: SimplexRef) -> tuple[str, ...]:
        cached = self._vertex_cache.get(x)
        if cached is None:
            cached = tuple(self.operate(x, (q,)).base for q in range(self.dimension(x) + 1))
            self._vertex_cache[x] = cached
        return cached

    def restrict(self, x: SimplexRef, positions: Sequence[int]) -> SimplexRef:
        """The face of x spanned by the given increasing vertex positions."""
        return self.operate(x, tuple(positions))

    # -- full simplex sets ----------------------------------------------------

    def simplices(self, n: int) -> tuple[SimplexRef, ...]:
        """Every n-simplex, degenerate ones included, in a fixed order."""
        if n < 0:
            return ()
        if self.truncated and n > self.dim:
            raise ParameterError(f"simplices of degree {n} lie above the truncation {self.dim}")
        cached = self._levels.get(n)
        if cached is not None:
            return cached
        out = []
        for d in range(min(n, self.dim) + 1):
            for name in self.level(d):
                for ties in combinations(range(n), n - d):
                    out.append(SimplexRef(name, tuple(sorted(ties, reverse=True))))
        cached = tuple(out)
        self._levels[n] = cached
        return cached

    def face_index(self, n: int) -> dict[tuple[SimplexRef, ...], list[SimplexRef]]:
        """n-simplices grouped by their tuple of faces (n >= 1)."""
        cached = self._face_indexes.get(n)
        if cached is None:
            cached = {}
            for x in self.simplices(n):
                cached.setdefault(self.faces_of(x), []).append(x)
            self._face_indexes[n] = cached
        return cached

    # -- validation -----------------------------------------------------------

    def validate(self) -> "SimplicialSet":
        """Check normal-form well-formedness and the simplicial identities."""
        seen = set()
        for k, level in enumerate(self.generators):
            if list(level) != sorted(level):
                raise StructureError(f"generators of dimension {k} are not sorted", indices=(k,))
            for name in level:
                if name in seen:
                    raise StructureError(f"generator {name!r} declared twice", where=name)
                seen.add(name)
        if len(self.generators) > self.dim + 1:
            raise StructureError(f"generators above the declared dimension {self.dim}")
        for name in seen:
            k = self.dim_of(name)
            faces = self.faces.get(name)
            if faces is None:
                raise StructureError(f"generator {name!r} has no face list", where=name)
            if len(faces) != (k + 1 if k else 0):
                raise StructureError(
                    f"generator {name!r} of dimension {k} has {len(faces)} faces", where=name
                )
            for i, face in enumerate(faces):
                if not self.has_generator(face.base):
                    raise StructureError(
                        f"face d_{i} of {name!r} refers to unknown generator {face.base!r}",
                        where=name,
                        indices=(i,),
                    )
                degens = face.degens
                if list(degens) != sorted(set(degens), reverse=True) or (
                    degens and (degens[-1] < 0 or degens[0] >= k - 1)
                ):
                    raise StructureError(
                        f"face d_{i} of {name!r} has degeneracies {degens} out of normal form",
                        where=name,
                        indices=(i,),
                    )
                if self.dimension(face) != k - 1:
                    raise StructureError(
                        f"face d_{i} of {name!r} has dimension {self.dimension(face)}",
                        where=name,
                        indices=(i,),
                    )
        for name in sorted(seen):
            k = self.dim_of(name)
            if k < 2:
                continue
            for j in range(1, k + 1):
                for i in range(j):
                    left = self.face(self.faces[name][j], i)
                    right = self.face(self.faces[name][i], j - 1)
                    if left != right:
                        raise StructureError(
                            f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on {name!r}: "
                            f"{left} != {right}",
                            where=name,
                            indices=(i, j),
                        )
        return self


EMPTY = SimplicialSet(generators=(), faces={}, dim=-1)


def point(name: str = "0") -> SimplicialSet:
    """Delta[0] with its vertex called ``name``."""
    return SimplicialSet(generators=((name,),), faces={name: ()}, dim=0)


# =============================================================================
# Simplicial maps
# =============================================================================


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A map given by the images of the source generators."""

    source: SimplicialSet
    target: SimplicialSet
    images: Mapping[str, SimplexRef]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.images) == dict(other.images)
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"SimplicialMap({self.source!r} -> {self.target!r})"

    def apply(self, x: SimplexRef) -> SimplexRef:
        image = self.images[x.base]
        if not x.degens:
            return image
        eta = self.source.surjection(x)
        theta = self.target.surjection(image)
        return self.target.ref(image.base, [theta[e] for e in eta])

    def key(self) -> tuple[tuple[str, SimplexRef], ...]:
        """Canonical serialization: sorted generator-image pairs."""
        return tuple(sorted(self.images.items()))

    def vertex_map(self) -> dict[str, str]:
        return {v: self.images[v].base for v in self.source.vertex_names}

    def validate(self) -> "SimplicialMap":
        for name in self.source.generator_names():
            if name not in self.images:
                raise StructureError(f"no image for generator {name!r}", where=name)
            image = self.images[name]
            if not self.target.has_generator(image.base):
                raise StructureError(
                    f"image of {name!r} refers to unknown generator {image.base!r}", where=name
                )
            k = self.source.dim_of(name)
            if self.target.dimension(image) != k:
                raise StructureError(f"image of {name!r} has the wrong dimension", where=name)
            for i, face in enumerate(self.source.faces[name]):
                if self.apply(face) != self.target.face(image, i):
                    raise StructureError(
                        f"map does not commute with d_{i} on {name!r}", where=name, indices=(i,)
                    )
        return self

    def is_injective_on_generators(self) -> bool:
        images = [self.images[g] for g in self.source.generator_names()]
        return all(not r.degens for r in images) and len(set(images)) == len(images)

    def is_isomorphism(self) -> bool:
        """Bijective on nondegenerate simplices (hence an isomorphism)."""
        return self.is_injective_on_generators() and len(self.images) == len(
            self.target.generator_names()
        )


def identity(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {g: SimplexRef(g) for g in X.generator_names()})


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """The composite g o f (f first)."""
    if f.target != g.source:
        raise CompositionError("cannot compose: target of the first map is not the source of the second")
    return SimplicialMap(f.source, g.target, {name: g.apply(r) for name, r in f.images.items()})


def empty_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(EMPTY, X, {})


def constant_map(X: SimplicialSet, Y: SimplicialSet, vertex: str) -> SimplicialMap:
    """Collapse X onto a vertex of Y."""
    v = SimplexRef(vertex)
    Y.dim_of(vertex)
    return SimplicialMap(X, Y, {g: Y.degenerate_to(v, X.dim_of(g)) for g in X.generator_names()})


def inverse(f: SimplicialMap) -> SimplicialMap:
    if not f.is_isomorphism():
        raise StructureError("map is not bijective on nondegenerate simplices")
    return SimplicialMap(f.target, f.source, {r.base: SimplexRef(g) for g, r in f.images.items()})


# =============================================================================
# Level models and realization
# =============================================================================


class LevelModel(Protocol):
    """Degreewise description of a simplicial set.

    Keys returned by ``simplices``, ``face`` and ``degeneracy`` must be
    canonical: equal simplices are equal keys.
    """

    def simplices(self, n: int) -> Iterable[Hashable]: ...

    def face(self, n: int, key: Hashable, i: int) -> Hashable: ...

    def degeneracy(self, n: int, key: Hashable, j: int) -> Hashable: ...

    def name(self, key: Hashable) -> str: ...


@dataclass(frozen=True, eq=False)
class Construction:
    """A simplicial set together with how it was built.

    ``legs`` are the structural maps (projections, injections, inclusions),
    ``index`` sends ``(degree, model key)`` to the normal form of that
    simplex and ``origin`` sends a generator to its model key. ``model`` is
    the level model the index was realized from, if any; degenerate keys
    above the realized degree are normalized through it on lookup.
    Every cache along the way is a write-once memo of a deterministic value,
    so constructions can be shared between threads.
    """

    sset: SimplicialSet
    legs: tuple[SimplicialMap, ...] = ()
    index: Mapping[tuple[int, Hashable], SimplexRef] = field(default_factory=dict)
    origin: Mapping[str, Hashable] = field(default_factory=dict)
    model: Optional[LevelModel] = None

    def ref(self, n: int, key: Hashable) -> SimplexRef:
        try:
            return self.index[(n, key)]
        except KeyError:
            pass
        if self.model is not None and n > self.sset.dim:
            for j in range(n):
                below = self.model.face(n, key, j)
                if self.model.degeneracy(n - 1, below, j) == key:
                    lower = self.ref(n - 1, below)
                    return _degenerate_ref(lower, self.sset.dim_of(lower.base), j)
        raise StructureError(f"no simplex {key!r} in degree {n}")

    def key_of(self, name: str) -> Hashable:
        return self.origin[name]

    def with_legs(self, *legs: SimplicialMap) -> "Construction":
        return Construction(self.sset, tuple(legs), self.index, self.origin, self.model)


def _degenerate_ref(ref: SimplexRef, base_dim: int, j: int) -> SimplexRef:
    eta = degens_to_surjection(ref.degens, base_dim + len(ref.degens))
    eta = eta[: j + 1] + eta[j:]
    return SimplexRef(ref.base, surjection_to_degens(eta))


def realize(model: LevelModel, bound: int, *, truncated: bool = False) -> Construction:
    """Extract normal forms from a level model up to degree ``bound``."""
    index: dict[tuple[int, Hashable], SimplexRef] = {}
    origin: dict[str, Hashable] = {}
    dims: dict[str, int] = {}
    faces: dict[str, tuple[SimplexRef, ...]] = {}
    generators: list[tuple[str, ...]] = []
    for n in range(bound + 1):
        level = []
        for key in model.simplices(n):
            ref = None
            for j in range(n):
                below = model.face(n, key, j)
                if model.degeneracy(n - 1, below, j) == key:
                    lower = index[(n - 1, below)]
                    ref = _degenerate_ref(lower, dims[lower.base], j)
                    break
            if ref is None:
                name = model.name(key)
                if name in dims:
                    raise StructureError(f"two generators would both be named {name!r}", where=name)
                dims[name] = n
                origin[name] = key
                level.append(name)
                faces[name] = tuple(index[(n - 1, model.face(n, key, i))] for i in range(n + 1)) if n else ()
                ref = SimplexRef(name)
            index[(n, key)] = ref
        generators.append(tuple(sorted(level)))
    sset = SimplicialSet(tuple(generators), faces, bound, truncated)
    log.debug("realized %s", sset)
    return Construction(sset, (), index, origin, model)


def induced_map(
    source: Construction, target: Construction, key_map: Callable[[int, Hashable], Hashable]
) -> SimplicialMap:
    """The map sending each source generator's model key through ``key_map``."""
    images = {}
    for name in source.sset.generator_names():
        n = source.sset.dim_of(name)
        images[name] = target.ref(n, key_map(n, source.key_of(name)))
    return SimplicialMap(source.sset, target.sset, images)


# =============================================================================
# Standard objects
# =============================================================================


class _ChainModel:
    """Nerve of a finite poset, optionally restricted to a downward-closed family."""

    def __init__(
        self,
        elements: Sequence[Hashable],
        leq: Callable[[Hashable, Hashable], bool],
        label: Callable[[Hashable], str],
        allowed: Optional[Callable[[frozenset], bool]] = None,
        sep: str = "",
    ):
        self.elements = list(elements)
        self.up = {e: [f for f in self.elements if leq(e, f)] for e in self.elements}
        self.label = label
        self.allowed = allowed or (lambda support: True)
        self.sep = sep

    def simplices(self, n: int) -> Iterator[tuple]:
        def extend(chain: tuple) -> Iterator[tuple]:
            if len(chain) == n + 1:
                yield chain
                return
            for f in self.up[chain[-1]]:
                nxt = chain + (f,)
                if self.allowed(frozenset(nxt)):
                    yield from extend(nxt)

        for e in self.elements:
            if self.allowed(frozenset((e,))):
                yield from extend((e,))

    def face(self, n: int, key: tuple, i: int) -> tuple:
        return key[:i] + key[i + 1 :]

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        return key[: j + 1] + key[j:]

    def name(self, key: tuple) -> str:
        return self.sep.join(self.label(e) for e in key)


def _ordinal_label(n: int) -> tuple[Callable[[int], str], str]:
    return str, ("" if n < 10 else ".")


@lru_cache(maxsize=None)
def simplex_construction(n: int) -> Construction:
    """Delta[n] as a construction whose model keys are vertex chains."""
    if n < 0:
        raise ParameterError(f"Delta[n] needs n >= 0, got {n}")
    label, sep = _ordinal_label(n)
    return realize(_ChainModel(range(n + 1), lambda a, b: a <= b, label, sep=sep), n)


def standard_simplex(n: int) -> SimplicialSet:
    """Delta[n]: one nondegenerate k-simplex per (k+1)-subset of {0..n}."""
    return simplex_construction(n).sset


@lru_cache(maxsize=None)
def boundary_construction(n: int) -> Construction:
    if n < 1:
        raise ParameterError(f"boundary needs n >= 1, got {n}")
    label, sep = _ordinal_label(n)
    full = frozenset(range(n + 1))
    model = _ChainModel(range(n + 1), lambda a, b: a <= b, label, lambda s: s != full, sep)
    return realize(model, n - 1)


def boundary(n: int) -> SimplicialSet:
    """The boundary sphere of Delta[n]."""
    return boundary_construction(n).sset


@lru_cache(maxsize=None)
def horn_construction(n: int, k: int) -> Construction:
    if n < 1 or not 0 <= k <= n:
        raise ParameterError(f"horn Lambda^{k}[{n}] needs 0 <= k <= n and n >= 1")
    label, sep = _ordinal_label(n)
    face = frozenset(range(n + 1)) - {k}

    def allowed(support: frozenset) -> bool:
        return len(support) <= n and not face <= support

    return realize(_ChainModel(range(n + 1), lambda a, b: a <= b, label, allowed, sep), n - 1)


def horn(n: int, k: int) -> SimplicialSet:
    """Lambda^k[n]: the boundary of Delta[n] without its k-th face."""
    return horn_construction(n, k).sset


def simplex_map(alpha: Sequence[int], n: int) -> SimplicialMap:
    """The map Delta[m] -> Delta[n] of a monotone function alpha: [m] -> [n]."""
    alpha = tuple(alpha)
    _check_monotone(alpha, n)
    source = simplex_construction(len(alpha) - 1)
    target = simplex_construction(n)
    return induced_map(source, target, lambda k, chain: tuple(alpha[q] for q in chain))


def boundary_inclusion(n: int) -> SimplicialMap:
    return induced_map(boundary_construction(n), simplex_construction(n), lambda k, chain: chain)


def horn_inclusion(n: int, k: int) -> SimplicialMap:
    return induced_map(horn_construction(n, k), simplex_construction(n), lambda q, chain: chain)


def vertex_inclusion(n: int, v: int) -> SimplicialMap:
    """Delta[0] -> Delta[n] picking vertex v."""
    return simplex_map((v,), n)


def yoneda(X: SimplicialSet, x: SimplexRef) -> SimplicialMap:
    """The map Delta[n] -> X representing the n-simplex x."""
    n = X.dimension(x)
    delta = simplex_construction(n)
    return SimplicialMap(
        delta.sset, X, {g: X.operate(x, delta.key_of(g)) for g in delta.sset.generator_names()}
    )


@lru_cache(maxsize=None)
def cube_construction(n: int, faces: Optional[frozenset] = None) -> Construction:
    """Delta[1]^n as the nerve of the poset {0,1}^n, or the union of some of its faces.

    ``faces`` is a set of (coordinate, epsilon) pairs with coordinates 1..n.
    """
    if n < 0:
        raise ParameterError(f"cube needs n >= 0, got {n}")
    elements = list(cartesian((0, 1), repeat=n))

    def leq(a: tuple, b: tuple) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def label(v: tuple) -> str:
        return "".join(map(str, v)) or "*"

    allowed = None
    if faces is not None:

        def allowed(support: frozenset) -> bool:
            return any(all(v[i - 1] == eps for v in support) for i, eps in faces)

    return realize(_ChainModel(elements, leq, label, allowed, sep="-"), n)


def cube(n: int) -> SimplicialSet:
    """The n-cube Delta[1]^n."""
    return cube_construction(n).sset


def cube_boundary(n: int) -> SimplicialSet:
    """The union of all codimension-one faces of the n-cube."""
    return cube_construction(n, frozenset((i, e) for i in range(1, n + 1) for e in (0, 1))).sset


def cube_horn(n: int, k: int, eps: int) -> SimplicialSet:
    """The cubical horn: every face of the n-cube except {x_k = 1 - eps}."""
    if not 1 <= k <= n or eps not in (0, 1):
        raise ParameterError(f"cubical horn needs 1 <= k <= n and eps in {{0,1}}, got k={k}, eps={eps}")
    faces = frozenset((i, e) for i in range(1, n + 1) for e in (0, 1) if (i, e) != (k, 1 - eps))
    return cube_construction(n, faces).sset


@lru_cache(maxsize=None)
def wedge_construction(dims: tuple[int, ...]) -> Construction:
    """The head-to-tail wedge Delta[n_1] v ... v Delta[n_k] on positions 0..sum(n_i)."""
    offsets = [0]
    for d in dims:
        if d < 1:
            raise ParameterError(f"wedge beads need dimension >= 1, got {dims}")
        offsets.append(offsets[-1] + d)
    total = offsets[-1]
    ranges = [frozenset(range(a, b + 1)) for a, b in zip(offsets, offsets[1:])] or [frozenset({0})]

    def allowed(support: frozenset) -> bool:
        return any(support <= r for r in ranges)

    label, sep = _ordinal_label(total)
    bound = max(dims) if dims else 0
    return realize(_ChainModel(range(total + 1), lambda a, b: a <= b, label, allowed, sep), bound)


def wedge(dims: Sequence[int]) -> SimplicialSet:
    return wedge_construction(tuple(dims)).sset


# =============================================================================
# Limits
# =============================================================================


def _limit_bound(factors: Sequence[SimplicialSet]) -> tuple[int, bool]:
    if any(X.is_empty() for X in factors):
        return -1, False
    bound = sum(X.dim for X in factors)
    truncations = [X.dim for X in factors if X.truncated]
    if truncations:
        return min(bound, min(truncations)), True
    return bound, False


class _ProductModel:
    def __init__(self, factors: Sequence[SimplicialSet], keep: Optional[Callable[[tuple], bool]] = None):
        self.factors = list(factors)
        self.keep = keep

    def simplices(self, n: int) -> Iterator[tuple]:
        for key in cartesian(*(X.simplices(n) for X in self.factors)):
            if self.keep is None or self.keep(key):
                yield key

    def face(self, n: int, key: tuple, i: int) -> tuple:
        return tuple(X.face(x, i) for X, x in zip(self.factors, key))

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        return tuple(X.degeneracy(x, j) for X, x in zip(self.factors, key))

    def name(self, key: tuple) -> str:
        return "(" + ",".join(str(x) for x in key) + ")"


def _projections(built: Construction, factors: Sequence[SimplicialSet]) -> tuple[SimplicialMap, ...]:
    legs = []
    for slot, X in enumerate(factors):
        images = {g: built.key_of(g)[slot] for g in built.sset.generator_names()}
        legs.append(SimplicialMap(built.sset, X, images))
    return tuple(legs)


def product_many(factors: Sequence[SimplicialSet]) -> Construction:
    """The product of several simplicial sets with its projections.

    Model keys are tuples of component simplices.
    """
    bound, truncated = _limit_bound(factors)
    built = realize(_ProductModel(factors), bound, truncated=truncated)
    return built.with_legs(*_projections(built, factors))


def product(X: SimplicialSet, Y: SimplicialSet) -> Construction:
    """X x Y with its two projections; keys are pairs of simplices."""
    return product_many([X, Y])


def pullback(f: SimplicialMap, g: SimplicialMap) -> Construction:
    """X x_B Y for f: X -> B and g: Y -> B, with its two projections."""
    if f.target != g.target:
        raise CompositionError("pullback needs maps with a common target")
    factors = [f.source, g.source]
    bound, truncated = _limit_bound(factors)
    model = _ProductModel(factors, keep=lambda key: f.apply(key[0]) == g.apply(key[1]))
    built = realize(model, bound, truncated=truncated)
    return built.with_legs(*_projections(built, factors))


class _EqualizerModel:
    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        self.X = f.source
        self.f, self.g = f, g

    def simplices(self, n: int) -> Iterator[SimplexRef]:
        for x in self.X.simplices(n):
            if self.f.apply(x) == self.g.apply(x):
                yield x

    def face(self, n: int, key: SimplexRef, i: int) -> SimplexRef:
        return self.X.face(key, i)

    def degeneracy(self, n: int, key: SimplexRef, j: int) -> SimplexRef:
        return self.X.degeneracy(key, j)

    def name(self, key: SimplexRef) -> str:
        return key.base


def equalizer(f: SimplicialMap, g: SimplicialMap) -> Construction:
    """The largest sub-simplicial set of X on which f and g agree, with its inclusion."""
    if f.source != g.source or f.target != g.target:
        raise CompositionError("equalizer needs a parallel pair")
    X = f.source
    built = realize(_EqualizerModel(f, g), X.dim, truncated=X.truncated)
    inclusion = SimplicialMap(built.sset, X, {name: SimplexRef(name) for name in built.sset.generator_names()})
    return built.with_legs(inclusion)


# =============================================================================
# Colimits
# =============================================================================


class _PushoutModel:
    """Degreewise quotient of X_n + Y_n by f(a) ~ g(a); Y-side names win."""

    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        self.f, self.g = f, g
        self.X, self.Y = f.target, g.target
        self._classes: dict[int, dict[tuple, tuple]] = {}
        y_names = set(self.Y.generator_names())
        x_names = set(self.X.generator_names())
        taken = y_names | x_names
        self.rename = {}
        for name in sorted(x_names & y_names):
            alias = name + "'"
            while alias in taken:
                alias += "'"
            taken.add(alias)
            self.rename[name] = alias

    def _level(self, n: int) -> dict[tuple, tuple]:
        cached = self._classes.get(n)
        if cached is not None:
            return cached
        parent: dict[tuple, tuple] = {}

        def find(e: tuple) -> tuple:
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        def rank(e: tuple) -> tuple:
            return (0 if e[0] == "Y" else 1, e[1])

        for x in self.X.simplices(n) if n <= self.X.dim or not self.X.truncated else ():
            parent[("X", x)] = ("X", x)
        for y in self.Y.simplices(n) if n <= self.Y.dim or not self.Y.truncated else ():
            parent[("Y", y)] = ("Y", y)
        A = self.f.source
        for a in A.simplices(n) if n <= A.dim or not A.truncated else ():
            u, v = find(("X", self.f.apply(a))), find(("Y", self.g.apply(a)))
            if u != v:
                if rank(v) < rank(u):
                    u, v = v, u
                parent[v] = u
        classes = {e: find(e) for e in parent}
        self._classes[n] = classes
        return classes

    def elements(self, n: int) -> dict[tuple, tuple]:
        return self._level(n)

    def simplices(self, n: int) -> list[tuple]:
        return sorted(set(self._level(n).values()), key=lambda e: (e[0] != "Y", e[1]))

    def face(self, n: int, key: tuple, i: int) -> tuple:
        side, x = key
        Z = self.Y if side == "Y" else self.X
        return self._level(n - 1)[(side, Z.face(x, i))]

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        side, x = key
        Z = self.Y if side == "Y" else self.X
        return self._level(n + 1)[(side, Z.degeneracy(x, j))]

    def name(self, key: tuple) -> str:
        side, x = key
        return x.base if side == "Y" else self.rename.get(x.base, x.base)


def pushout(f: SimplicialMap, g: SimplicialMap) -> Construction:
    """X +_A Y for f: A -> X and g: A -> Y, with legs X -> P and Y -> P.

    Model keys are ('X', x) or ('Y', y); every element of the disjoint union
    is indexed, not only class representatives.
    """
    if f.source != g.source:
        raise CompositionError("pushout needs maps with a common source")
    X, Y = f.target, g.target
    bound = max(X.dim, Y.dim)
    truncated = X.truncated or Y.truncated
    if truncated:
        bound = min(Z.dim for Z in (X, Y) if Z.truncated)
    model = _PushoutModel(f, g)
    built = realize(model, bound, truncated=truncated)
    index = dict(built.index)
    for n in range(bound + 1):
        for element, rep in model.elements(n).items():
            index[(n, element)] = index[(n, rep)]
    built = Construction(built.sset, (), index, built.origin, built.model)
    legs = []
    for side, Z in (("X", X), ("Y", Y)):
        legs.append(induced_map(as_construction(Z), built, lambda n, x, side=side: (side, x)))
    return built.with_legs(*legs)


def coproduct(X: SimplicialSet, Y: SimplicialSet) -> Construction:
    """X + Y with its two injections (colliding names on the X side are primed)."""
    return pushout(empty_map(X), empty_map(Y))


class _RefIndex(Mapping):
    """Index of a plain simplicial set: every SimplexRef is its own normal form."""

    def __init__(self, X: SimplicialSet):
        self.X = X

    def __getitem__(self, item: tuple[int, Hashable]) -> SimplexRef:
        n, x = item
        if not isinstance(x, SimplexRef) or not self.X.has_generator(x.base) or self.X.dimension(x) != n:
            raise KeyError(item)
        return x

    def __iter__(self):
        for n in range(self.X.dim + 1):
            for x in self.X.simplices(n):
                yield (n, x)

    def __len__(self) -> int:
        return sum(len(self.X.simplices(n)) for n in range(self.X.dim + 1))


def as_construction(X: SimplicialSet) -> Construction:
    """Wrap a plain simplicial set; model keys are SimplexRefs."""
    return Construction(X, (), _RefIndex(X), {g: SimplexRef(g) for g in X.generator_names()})


# =============================================================================
# Map enumeration
# =============================================================================


def _signature(X: SimplicialSet) -> dict[str, tuple]:
    """Coface incidence profile of each generator (an isomorphism invariant)."""
    profile: dict[str, list] = {g: [] for g in X.generator_names()}
    for name in X.generator_names():
        for i, face in enumerate(X.faces[name]):
            if not face.degens:
                profile[face.base].append((X.dim_of(name), i))
    return {g: tuple(sorted(p)) for g, p in profile.items()}


def iter_maps(
    X: SimplicialSet,
    Y: SimplicialSet,
    *,
    fixed: Optional[Mapping[str, SimplexRef]] = None,
    bijective: bool = False,
) -> Iterator[SimplicialMap]:
    """Backtracking over generator images, by increasing dimension.

    ``fixed`` pins the images of some generators; ``bijective`` restricts to
    maps sending generators bijectively onto generators.
    """
    if X.truncated:
        raise ParameterError("cannot enumerate maps out of a truncated simplicial set")
    if Y.truncated and X.dim > Y.dim:
        raise ParameterError(f"target truncated at {Y.dim} below the source dimension {X.dim}")
    fixed = dict(fixed or {})
    order = [g for k in range(X.dim + 1) for g in X.level(k)]
    cap = max_cells()
    tried = 0
    images: dict[str, SimplexRef] = {}
    used: set[SimplexRef] = set()
    sig_x = _signature(X) if bijective else {}
    sig_y = _signature(Y) if bijective else {}

    def push(x: SimplexRef) -> SimplexRef:
        image = images[x.base]
        if not x.degens:
            return image
        eta = X.surjection(x)
        theta = Y.surjection(image)
        return Y.ref(image.base, [theta[e] for e in eta])

    def candidates(name: str) -> Sequence[SimplexRef]:
        k = X.dim_of(name)
        if k == 0:
            pool = Y.simplices(0)
        else:
            pool = Y.face_index(k).get(tuple(push(face) for face in X.faces[name]), ())
        if name in fixed:
            return [fixed[name]] if fixed[name] in pool else []
        if bijective:
            return [r for r in pool if not r.degens and r not in used and sig_y[r.base] == sig_x[name]]
        return pool

    def extend(position: int) -> Iterator[SimplicialMap]:
        nonlocal tried
        if position == len(order):
            yield SimplicialMap(X, Y, dict(images))
            return
        name = order[position]
        for candidate in candidates(name):
            tried += 1
            if tried > cap:
                raise EnumerationLimitError(cap)
            images[name] = candidate
            if bijective:
                used.add(candidate)
            yield from extend(position + 1)
            if bijective:
                used.discard(candidate)
            del images[name]

    if bijective and X.f_vector() != Y.f_vector():
        return
    yield from extend(0)


def enumerate_maps(X: SimplicialSet, Y: SimplicialSet) -> list[SimplicialMap]:
    """All simplicial maps X -> Y in a deterministic order."""
    maps = list(iter_maps(X, Y))
    log.debug("enumerated %d maps %r -> %r", len(maps), X, Y)
    return maps


def iter_maps_under(j_X: SimplicialMap, j_Y: SimplicialMap) -> Iterator[SimplicialMap]:
    """Maps f: X -> Y with f o j_X = j_Y."""
    if j_X.source != j_Y.source:
        raise CompositionError("maps under J need a common source J")
    fixed: dict[str, SimplexRef] = {}
    for g, r in j_X.images.items():
        if not r.degens:
            wanted = j_Y.images[g]
            if fixed.setdefault(r.base, wanted) != wanted:
                return
    for f in iter_maps(j_X.target, j_Y.target, fixed=fixed):
        if all(f.apply(r) == j_Y.images[g] for g, r in j_X.images.items()):
            yield f


def enumerate_maps_under(j_X: SimplicialMap, j_Y: SimplicialMap) -> list[SimplicialMap]:
    return list(iter_maps_under(j_X, j_Y))


def _top(X: SimplicialSet) -> int:
    return max((k for k in range(X.dim + 1) if X.level(k)), default=-1)


def is_isomorphic(X: SimplicialSet, Y: SimplicialSet) -> Optional[SimplicialMap]:
    """An isomorphism X -> Y if one exists.

    Truncated inputs are compared up to the smaller truncation. Empty levels
    above the top generator are ignored, in which case the isomorphism runs
    between the trimmed copies.
    """
    if X.truncated or Y.truncated:
        bound = min(Z.dim for Z in (X, Y) if Z.truncated)
        X, Y = skeleton(X, bound), skeleton(Y, bound)
    if X.dim != Y.dim:
        X, Y = skeleton(X, _top(X)), skeleton(Y, _top(Y))
    if X.f_vector() != Y.f_vector():
        return None
    for f in iter_maps(X, Y, bijective=True):
        return f
    return None


def skeleton(X: SimplicialSet, k: int) -> SimplicialSet:
    """The k-skeleton as an untruncated simplicial set of dimension bound k."""
    k = min(k, X.dim)
    generators = tuple(X.level(q) for q in range(k + 1))
    names = [g for level in generators for g in level]
    return SimplicialSet(generators, {g: X.faces[g] for g in names}, k)


def subcomplex(X: SimplicialSet, generators: Iterable[str]) -> Construction:
    """The sub-simplicial set on the given generators, with its inclusion.

    The generators must be closed under faces.
    """
    keep = set(generators)
    for name in sorted(keep):
        X.dim_of(name)
        for i, face in enumerate(X.faces[name]):
            if face.base not in keep:
                raise StructureError(
                    f"face d_{i} of {name!r} lies outside the subcomplex", where=name, indices=(i,)
                )
    top = max((X.dim_of(g) for g in keep), default=-1)
    dim = X.dim if X.truncated else top
    levels = tuple(tuple(g for g in X.level(k) if g in keep) for k in range(dim + 1))
    sub = SimplicialSet(levels, {g: X.faces[g] for g in keep}, dim, X.truncated)
    inclusion = SimplicialMap(sub, X, {g: SimplexRef(g) for g in keep})
    return as_construction(sub).with_legs(inclusion)


def opposite(X: SimplicialSet) -> SimplicialSet:
    """X^op: the same generators with vertex order reversed, so d_i becomes d_{n-i}."""

    def flip(r: SimplexRef) -> SimplexRef:
        n, k = X.dimension(r), X.dim_of(r.base)
        eta = degens_to_surjection(r.degens, n)
        return SimplexRef(r.base, surjection_to_degens([k - eta[n - q] for q in range(n + 1)]))

    faces = {g: tuple(flip(r) for r in reversed(fs)) for g, fs in X.faces.items()}
    return SimplicialSet(X.generators, faces, X.dim, X.truncated).validate()


# =============================================================================
# Exponentials
# =============================================================================


class _ExponentialModel:
    """n-simplices of Q^K: maps Delta[n] x K -> Q, keyed by their canonical serialization."""

    def __init__(self, Q: SimplicialSet, K: SimplicialSet, trunc: int):
        self.Q, self.K = Q, K
        self.cylinders = [product(standard_simplex(n), K) for n in range(trunc + 2)]
        self._cofaces: dict[tuple[int, int], SimplicialMap] = {}
        self._codegeneracies: dict[tuple[int, int], SimplicialMap] = {}

    def _along(self, alpha: tuple[int, ...], n: int) -> SimplicialMap:
        m = len(alpha) - 1
        delta = simplex_map(alpha, n)
        return induced_map(
            self.cylinders[m],
            self.cylinders[n],
            lambda k, key: (delta.apply(key[0]), key[1]),
        )

    def coface_map(self, n: int, i: int) -> SimplicialMap:
        if (n, i) not in self._cofaces:
            self._cofaces[(n, i)] = self._along(coface(n, i), n)
        return self._cofaces[(n, i)]

    def codegeneracy_map(self, n: int, j: int) -> SimplicialMap:
        if (n, j) not in self._codegeneracies:
            self._codegeneracies[(n, j)] = self._along(codegeneracy(n, j), n)
        return self._codegeneracies[(n, j)]

    def simplices(self, n: int) -> Iterator[tuple]:
        for f in iter_maps(self.cylinders[n].sset, self.Q):
            yield f.key()

    def face(self, n: int, key: tuple, i: int) -> tuple:
        return _precompose(key, self.coface_map(n, i), self.Q)

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        return _precompose(key, self.codegeneracy_map(n, j), self.Q)

    def name(self, key: tuple) -> str:
        return map_label(key)


def _precompose(key: tuple, u: SimplicialMap, target: SimplicialSet) -> tuple:
    f = SimplicialMap(u.target, target, dict(key))
    return tuple(sorted((g, f.apply(r)) for g, r in u.images.items()))


def map_label(key: tuple) -> str:
    """Readable canonical name of a map given by its sorted generator images."""
    return "{" + ";".join(f"{g}>{r}" for g, r in key) + "}"


def exponential(Q: SimplicialSet, K: SimplicialSet, trunc: int) -> Construction:
    """Q^K up to degree ``trunc``; model keys are canonical map serializations.

    The result is marked truncated: simplices above ``trunc`` are not computed.
    """
    if trunc < 0:
        raise ParameterError(f"truncation must be >= 0, got {trunc}")
    model = _ExponentialModel(Q, K, trunc)
    return realize(model, trunc, truncated=True)


def exponential_restriction(
    Q: SimplicialSet, big: Construction, small: Construction, u: SimplicialMap
) -> SimplicialMap:
    """Q^K -> Q^{K'} induced by precomposition with u: K' -> K."""
    cylinders: dict[int, SimplicialMap] = {}

    def key_map(n: int, key: tuple) -> tuple:
        if n not in cylinders:
            source = product(standard_simplex(n), u.source)
            target = product(standard_simplex(n), u.target)
            cylinders[n] = induced_map(source, target, lambda k, pair: (pair[0], u.apply(pair[1])))
        return _precompose(key, cylinders[n], Q)

    return induced_map(big, small, key_map)


def exponential_pushforward(
    big: Construction, small: Construction, h: SimplicialMap
) -> SimplicialMap:
    """Q^K -> R^K induced by postcomposition with h: Q -> R."""
    return induced_map(
        big, small, lambda n, key: tuple((g, h.apply(r)) for g, r in key)
    )
