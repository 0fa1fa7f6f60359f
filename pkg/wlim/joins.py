"""
Joins, weighted joins and their fat variants.

The join I * J is computed from its levelwise description: an n-simplex is
an n-simplex of I, an n-simplex of J, or a pair (x, y) with x in I_i and
y in J_{n-1-i}. The weighted join along p: J~ -> J is the pushout of
I * J~ and J over J~. The fat join replaces the mixed simplices by the
cylinder I x Delta[1] x J with its two ends collapsed.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional

from .errors import CompositionError, ParameterError
from .sscore import (
    Construction,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    as_construction,
    compose,
    identity,
    induced_map,
    point,
    pushout,
    realize,
)

log = logging.getLogger(__name__)

APEX_BOTTOM = "⊥"
APEX_TOP = "⊤"


def _renaming(keep: SimplicialSet, other: SimplicialSet) -> dict[str, str]:
    """Primed names for generators of ``other`` that clash with ``keep``."""
    taken = set(keep.generator_names()) | set(other.generator_names())
    rename = {}
    for name in sorted(set(keep.generator_names()) & set(other.generator_names())):
        alias = name + "'"
        while alias in taken:
            alias += "'"
        taken.add(alias)
        rename[name] = alias
    return rename


def _check_finite(*parts: SimplicialSet) -> None:
    for X in parts:
        if X.truncated:
            raise ParameterError("joins are only defined here for untruncated simplicial sets")


# =============================================================================
# Join
# =============================================================================


class _JoinModel:
    def __init__(self, I: SimplicialSet, J: SimplicialSet):
        self.I, self.J = I, J
        self.rename = _renaming(I, J)

    def simplices(self, n: int) -> Iterator[tuple]:
        for x in self.I.simplices(n):
            yield ("I", x)
        for y in self.J.simplices(n):
            yield ("J", y)
        for i in range(n):
            for x in self.I.simplices(i):
                for y in self.J.simplices(n - 1 - i):
                    yield ("IJ", x, y)

    def face(self, n: int, key: tuple, k: int) -> tuple:
        side = key[0]
        if side == "I":
            return ("I", self.I.face(key[1], k))
        if side == "J":
            return ("J", self.J.face(key[1], k))
        _, x, y = key
        i = self.I.dimension(x)
        if k <= i:
            return ("J", y) if i == 0 else ("IJ", self.I.face(x, k), y)
        if n - 1 - i == 0:
            return ("I", x)
        return ("IJ", x, self.J.face(y, k - i - 1))

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        side = key[0]
        if side == "I":
            return ("I", self.I.degeneracy(key[1], j))
        if side == "J":
            return ("J", self.J.degeneracy(key[1], j))
        _, x, y = key
        i = self.I.dimension(x)
        if j <= i:
            return ("IJ", self.I.degeneracy(x, j), y)
        return ("IJ", x, self.J.degeneracy(y, j - i - 1))

    def name(self, key: tuple) -> str:
        if key[0] == "I":
            return key[1].base
        if key[0] == "J":
            return self.rename.get(key[1].base, key[1].base)
        return f"{key[1].base}*{self.rename.get(key[2].base, key[2].base)}"


def _join_bound(I: SimplicialSet, J: SimplicialSet) -> int:
    if I.is_empty():
        return J.dim
    if J.is_empty():
        return I.dim
    return I.dim + J.dim + 1


def join(I: SimplicialSet, J: SimplicialSet) -> Construction:
    """I * J with its inclusions of I and J (model keys ('I', x), ('J', y), ('IJ', x, y))."""
    _check_finite(I, J)
    built = realize(_JoinModel(I, J), _join_bound(I, J))
    legs = (
        induced_map(as_construction(I), built, lambda n, x: ("I", x)),
        induced_map(as_construction(J), built, lambda n, y: ("J", y)),
    )
    log.debug("join %r * %r = %r", I, J, built.sset)
    return built.with_legs(*legs)


def join_map(f: SimplicialMap, g: SimplicialMap, source: Construction, target: Construction) -> SimplicialMap:
    """f * g between two join constructions."""

    def key_map(n: int, key: tuple) -> tuple:
        if key[0] == "I":
            return ("I", f.apply(key[1]))
        if key[0] == "J":
            return ("J", g.apply(key[1]))
        return ("IJ", f.apply(key[1]), g.apply(key[2]))

    return induced_map(source, target, key_map)


# =============================================================================
# Fat join
# =============================================================================


class _FatJoinModel:
    """I + (I x Delta[1] x J) + J with the ends of the cylinder collapsed.

    Cylinder keys are ('C', a, t, b) with t a non-constant 0/1 word.
    """

    def __init__(self, I: SimplicialSet, J: SimplicialSet):
        self.I, self.J = I, J
        self.rename = _renaming(I, J)

    def _collapse(self, a: SimplexRef, t: tuple[int, ...], b: SimplexRef) -> tuple:
        if all(v == 0 for v in t):
            return ("I", a)
        if all(v == 1 for v in t):
            return ("J", b)
        return ("C", a, t, b)

    def simplices(self, n: int) -> Iterator[tuple]:
        for x in self.I.simplices(n):
            yield ("I", x)
        for y in self.J.simplices(n):
            yield ("J", y)
        for zeros in range(1, n + 1):
            t = (0,) * zeros + (1,) * (n + 1 - zeros)
            for a in self.I.simplices(n):
                for b in self.J.simplices(n):
                    yield ("C", a, t, b)

    def face(self, n: int, key: tuple, k: int) -> tuple:
        if key[0] == "I":
            return ("I", self.I.face(key[1], k))
        if key[0] == "J":
            return ("J", self.J.face(key[1], k))
        _, a, t, b = key
        return self._collapse(self.I.face(a, k), t[:k] + t[k + 1 :], self.J.face(b, k))

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        if key[0] == "I":
            return ("I", self.I.degeneracy(key[1], j))
        if key[0] == "J":
            return ("J", self.J.degeneracy(key[1], j))
        _, a, t, b = key
        return ("C", self.I.degeneracy(a, j), t[: j + 1] + t[j:], self.J.degeneracy(b, j))

    def name(self, key: tuple) -> str:
        if key[0] == "I":
            return key[1].base
        if key[0] == "J":
            return self.rename.get(key[1].base, key[1].base)
        _, a, t, b = key
        return f"({a},{''.join(map(str, t))},{b})"


def fat_join(I: SimplicialSet, J: SimplicialSet) -> Construction:
    """The fat join with its inclusions of I and J."""
    _check_finite(I, J)
    built = realize(_FatJoinModel(I, J), _join_bound(I, J))
    legs = (
        induced_map(as_construction(I), built, lambda n, x: ("I", x)),
        induced_map(as_construction(J), built, lambda n, y: ("J", y)),
    )
    return built.with_legs(*legs)


def fat_join_map(f: SimplicialMap, g: SimplicialMap, source: Construction, target: Construction) -> SimplicialMap:
    def key_map(n: int, key: tuple) -> tuple:
        if key[0] == "I":
            return ("I", f.apply(key[1]))
        if key[0] == "J":
            return ("J", g.apply(key[1]))
        return ("C", f.apply(key[1]), key[2], g.apply(key[3]))

    return induced_map(source, target, key_map)


def _fat_to_neat_key(I: SimplicialSet, J: SimplicialSet, n: int, key: tuple) -> tuple:
    if key[0] != "C":
        return key
    _, a, t, b = key
    zeros = t.count(0)
    return ("IJ", I.restrict(a, range(zeros)), J.restrict(b, range(zeros, n + 1)))


def fat_to_neat_unweighted(
    fat: Construction, neat: Construction, I: SimplicialSet, J: SimplicialSet
) -> SimplicialMap:
    """The collapse I <> J -> I * J: a cylinder simplex splits at its last 0."""
    return induced_map(fat, neat, lambda n, key: _fat_to_neat_key(I, J, n, key))


# =============================================================================
# Weighted joins
# =============================================================================


@dataclass(frozen=True, eq=False)
class WeightedJoin:
    """A weighted join I *^p J (or its fat variant) with the data it was built from.

    ``inner`` is the unweighted join of I with J~; ``glued`` is the pushout
    whose legs are inner -> glued and J -> glued.
    """

    I: SimplicialSet
    p: SimplicialMap
    inner: Construction
    glued: Construction
    fat: bool = False

    @property
    def J(self) -> SimplicialSet:
        return self.p.target

    @property
    def tilde(self) -> SimplicialSet:
        return self.p.source

    @property
    def sset(self) -> SimplicialSet:
        return self.glued.sset

    @cached_property
    def include_J(self) -> SimplicialMap:
        return self.glued.legs[1]

    @cached_property
    def include_I(self) -> SimplicialMap:
        return compose(self.glued.legs[0], self.inner.legs[0])

    @cached_property
    def include_inner(self) -> SimplicialMap:
        return self.glued.legs[0]

    def ref(self, n: int, key: tuple) -> SimplexRef:
        """Image in the weighted join of a simplex of the inner join given by its model key."""
        return self.glued.ref(n, ("X", self.inner.ref(n, key)))

    def mixed(self, x: SimplexRef, y: SimplexRef) -> SimplexRef:
        """The join simplex x * y for x in I and y in J~ (neat joins only)."""
        if self.fat:
            raise ParameterError("mixed simplices x * y only exist in neat joins")
        n = self.I.dimension(x) + self.tilde.dimension(y) + 1
        return self.ref(n, ("IJ", x, y))

    def classify(self, name: str) -> tuple:
        """Model key of a generator: ('I', x), ('J', y) with y in J, or a mixed/cylinder key."""
        side, ref = self.glued.key_of(name)
        if side == "Y":
            return ("J", ref)
        return self.inner.key_of(ref.base)


def _weighted(I: SimplicialSet, p: SimplicialMap, fat: bool) -> WeightedJoin:
    p.validate()
    inner = fat_join(I, p.source) if fat else join(I, p.source)
    glued = pushout(inner.legs[1], p)
    return WeightedJoin(I, p, inner, glued, fat)


def weighted_join(I: SimplicialSet, p: SimplicialMap, J: Optional[SimplicialSet] = None) -> WeightedJoin:
    """I *^p J := (I * J~) +_{J~} J for p: J~ -> J."""
    if J is not None and p.target != J:
        raise CompositionError("the weight p does not land in J")
    return _weighted(I, p, fat=False)


def weighted_fat_join(I: SimplicialSet, p: SimplicialMap, J: Optional[SimplicialSet] = None) -> WeightedJoin:
    """I <>^p J := (I <> J~) +_{J~} J for p: J~ -> J."""
    if J is not None and p.target != J:
        raise CompositionError("the weight p does not land in J")
    return _weighted(I, p, fat=True)


def _glued_key_map(inner_map: SimplicialMap):
    def key_map(n: int, key: tuple) -> tuple:
        side, ref = key
        return ("X", inner_map.apply(ref)) if side == "X" else key

    return key_map


def weighted_join_map(f: SimplicialMap, source: WeightedJoin, target: WeightedJoin) -> SimplicialMap:
    """f *^p J for f: I -> I' (source and target share p)."""
    if source.p != target.p or source.fat != target.fat:
        raise CompositionError("weighted joins along different weights")
    if f.source != source.I or f.target != target.I:
        raise CompositionError("map does not run between the joined simplicial sets")
    glue = fat_join_map if source.fat else join_map
    inner_map = glue(f, identity(source.tilde), source.inner, target.inner)
    return induced_map(source.glued, target.glued, _glued_key_map(inner_map))


def weighted_fat_join_map(f: SimplicialMap, source: WeightedJoin, target: WeightedJoin) -> SimplicialMap:
    return weighted_join_map(f, source, target)


def fat_to_neat(fat: WeightedJoin, neat: WeightedJoin) -> SimplicialMap:
    """I <>^p J -> I *^p J, induced by the collapse on I <> J~ and the identity of J."""
    if not fat.fat or neat.fat or fat.p != neat.p or fat.I != neat.I:
        raise CompositionError("fat_to_neat needs the fat and neat joins of the same I and p")
    inner_map = fat_to_neat_unweighted(fat.inner, neat.inner, fat.I, fat.tilde)
    return induced_map(fat.glued, neat.glued, _glued_key_map(inner_map))


def cone(p: SimplicialMap) -> WeightedJoin:
    """Delta[0] *^p J with the apex named ⊥."""
    return weighted_join(point(APEX_BOTTOM), p)


def cocone(I: SimplicialSet) -> Construction:
    """I * Delta[0] with the apex named ⊤."""
    return join(I, point(APEX_TOP))


def levelwise_weighted_join_counts(I: SimplicialSet, p: SimplicialMap, n: int) -> int:
    """|(I *^p J)_n| from the levelwise formula, degenerate simplices included."""
    J, tilde = p.target, p.source
    total = len(I.simplices(n)) + len(J.simplices(n))
    for i in range(n):
        total += len(I.simplices(i)) * len(tilde.simplices(n - 1 - i))
    return total

