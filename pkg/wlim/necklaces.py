"""
Flagged necklaces and the mapping spaces of homotopy coherent realizations.

A necklace in J is a head-to-tail wedge of nondegenerate simplices (beads)
of J. Its vertices are addressed by *positions* 0..L of the wedge, so
repeated vertices of J cause no ambiguity. A flag of degree m is a chain
T_0 <= ... <= T_m of position sets with T_0 the joints (bead endpoints)
and T_m every position. Flagged necklaces of degree m from x to y are the
m-simplices of Map(x, y) in the homotopy coherent realization of J.

Simplicial operators: s_j repeats T_j and an inner d_j drops T_j. The outer
face d_m drops T_m and restricts every bead to the positions of T_{m-1};
d_0 drops T_0 and splits every bead at the positions of T_1. Both can
produce degenerate beads, which are collapsed by :func:`_normalize`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Iterator, Optional, Sequence

from .errors import ParameterError, StructureError
from .fincat import FinCategory, SSetWeight, nerve_construction
from .joins import APEX_BOTTOM, WeightedJoin, cocone, cone, weighted_join
from .report import Verdict
from .sscore import (
    Construction,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    boundary,
    cube,
    cube_boundary,
    cube_horn,
    identity,
    induced_map,
    is_isomorphic,
    iter_maps,
    product,
    realize,
    standard_simplex,
    wedge_construction,
)

log = logging.getLogger(__name__)

Flag = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, order=True)
class FlaggedNecklace:
    """A flagged totally nondegenerate necklace; ``beads`` are generator names."""

    start: str
    beads: tuple[str, ...]
    flags: Flag

    @property
    def degree(self) -> int:
        return len(self.flags) - 1

    def label(self) -> str:
        body = "∨".join(self.beads) if self.beads else f"1_{self.start}"
        return body + "{" + "|".join(",".join(map(str, T)) for T in self.flags) + "}"

    def __str__(self) -> str:
        return self.label()


def bead_offsets(J: SimplicialSet, beads: Sequence[str]) -> list[int]:
    """Starting position of every bead, followed by the total length."""
    offsets = [0]
    for b in beads:
        offsets.append(offsets[-1] + J.dim_of(b))
    return offsets


def joints(J: SimplicialSet, beads: Sequence[str]) -> tuple[int, ...]:
    return tuple(bead_offsets(J, beads))


def vertex_at(J: SimplicialSet, tau: FlaggedNecklace, position: int) -> str:
    """Name of the vertex of J at a position of the necklace."""
    if not tau.beads:
        return tau.start
    offsets = bead_offsets(J, tau.beads)
    for r, b in enumerate(tau.beads):
        if offsets[r] <= position <= offsets[r + 1]:
            return J.vertices(SimplexRef(b))[position - offsets[r]]
    raise ParameterError(f"position {position} lies outside the necklace")


def target(J: SimplicialSet, tau: FlaggedNecklace) -> str:
    return vertex_at(J, tau, bead_offsets(J, tau.beads)[-1])


# =============================================================================
# Enumeration
# =============================================================================


def _has_cycles(J: SimplicialSet) -> bool:
    edges: dict[str, set[str]] = {v: set() for v in J.vertex_names}
    for g in J.generator_names():
        if J.dim_of(g) >= 1:
            vs = J.vertices(SimplexRef(g))
            if vs[0] == vs[-1]:
                return True
            edges[vs[0]].add(vs[-1])
    state: dict[str, int] = {}

    def visit(v: str) -> bool:
        state[v] = 1
        for w in edges[v]:
            if state.get(w) == 1 or (w not in state and visit(w)):
                return True
        state[v] = 2
        return False

    return any(v not in state and visit(v) for v in J.vertex_names)


@dataclass(frozen=True)
class Necklace:
    """An unflagged totally nondegenerate necklace."""

    start: str
    beads: tuple[str, ...]

    def flagged(self, flags: Flag) -> FlaggedNecklace:
        return FlaggedNecklace(self.start, self.beads, flags)


def enumerate_necklaces(
    J: SimplicialSet, x: str, y: str, max_length: Optional[int] = None
) -> list[Necklace]:
    """Totally nondegenerate necklaces from x to y (the empty one when x == y).

    ``max_length`` bounds the total bead dimension and is required when J has
    directed cycles.
    """
    J.dim_of(x)
    J.dim_of(y)
    if max_length is None and _has_cycles(J):
        raise ParameterError("J has directed cycles; a max_length is needed to enumerate necklaces")
    outgoing: dict[str, list[tuple[str, str, int]]] = {v: [] for v in J.vertex_names}
    for g in J.generator_names():
        k = J.dim_of(g)
        if k >= 1:
            vs = J.vertices(SimplexRef(g))
            outgoing[vs[0]].append((g, vs[-1], k))
    reaches: dict[str, set[str]] = {v: {v} for v in J.vertex_names}
    changed = True
    while changed:
        changed = False
        for v in J.vertex_names:
            for _, w, _ in outgoing[v]:
                if not reaches[w] <= reaches[v]:
                    reaches[v] |= reaches[w]
                    changed = True
    found: list[Necklace] = []
    beads: list[str] = []

    def extend(v: str, length: int) -> None:
        if v == y:
            found.append(Necklace(x, tuple(beads)))
        for g, w, k in outgoing[v]:
            if y not in reaches[w]:
                continue
            if max_length is not None and length + k > max_length:
                continue
            beads.append(g)
            extend(w, length + k)
            beads.pop()

    extend(x, 0)
    return sorted(found, key=lambda t: (len(t.beads), t.beads))


def flags_of(J: SimplicialSet, necklace: Necklace, m: int) -> Iterator[Flag]:
    """Every degree-m flag: each non-joint position enters at some level 1..m."""
    offsets = bead_offsets(J, necklace.beads)
    length = offsets[-1]
    base = set(offsets)
    free = [q for q in range(length + 1) if q not in base]
    if m == 0:
        if not free:
            yield (tuple(sorted(base)),)
        return
    for levels in cartesian(range(1, m + 1), repeat=len(free)):
        entry = dict(zip(free, levels))
        yield tuple(
            tuple(sorted(base | {q for q, lvl in entry.items() if lvl <= i})) for i in range(m + 1)
        )


# =============================================================================
# Normal forms
# =============================================================================


def _normalize(
    J: SimplicialSet, start: str, pieces: Sequence[tuple[SimplexRef, Sequence[int]]], flags: Sequence[set]
) -> FlaggedNecklace:
    """Collapse degenerate beads, drop beads that became vertices, renumber positions."""
    parent: dict[int, int] = {}

    def find(q: int) -> int:
        while parent[q] != q:
            parent[q] = parent[parent[q]]
            q = parent[q]
        return q

    for _, pos in pieces:
        for q in pos:
            parent.setdefault(q, q)
    survivors = []
    for ref, pos in pieces:
        eta = J.surjection(ref)
        for q in range(len(pos) - 1):
            if eta[q] == eta[q + 1]:
                a, b = find(pos[q]), find(pos[q + 1])
                if a != b:
                    parent[max(a, b)] = min(a, b)
        if J.dim_of(ref.base) >= 1:
            survivors.append(ref.base)
    if not survivors:
        return FlaggedNecklace(start, (), tuple((0,) for _ in flags))
    classes = sorted({find(q) for q in parent})
    index = {c: i for i, c in enumerate(classes)}
    new_flags = tuple(tuple(sorted({index[find(q)] for q in T if q in parent})) for T in flags)
    return FlaggedNecklace(start, tuple(survivors), new_flags)


def _pieces(J: SimplicialSet, tau: FlaggedNecklace) -> list[tuple[SimplexRef, list[int]]]:
    offsets = bead_offsets(J, tau.beads)
    return [
        (SimplexRef(b), list(range(offsets[r], offsets[r + 1] + 1))) for r, b in enumerate(tau.beads)
    ]


def necklace_face(J: SimplicialSet, tau: FlaggedNecklace, i: int) -> FlaggedNecklace:
    """d_i of a flagged necklace of degree m >= 1."""
    m = tau.degree
    if not 0 <= i <= m or m == 0:
        raise ParameterError(f"face d_{i} undefined in degree {m}")
    flags = tau.flags
    if 0 < i < m or not tau.beads:
        return FlaggedNecklace(tau.start, tau.beads, flags[:i] + flags[i + 1 :])
    pieces = []
    if i == m:
        keep = set(flags[m - 1])
        for ref, pos in _pieces(J, tau):
            local = tuple(k for k, q in enumerate(pos) if q in keep)
            pieces.append((J.operate(ref, local), [pos[k] for k in local]))
        return _normalize(J, tau.start, pieces, [set(T) for T in flags[:m]])
    cut = set(flags[1])
    for ref, pos in _pieces(J, tau):
        marks = [k for k, q in enumerate(pos) if q in cut]
        for a, b in zip(marks, marks[1:]):
            pieces.append((J.operate(ref, tuple(range(a, b + 1))), pos[a : b + 1]))
    return _normalize(J, tau.start, pieces, [set(T) for T in flags[1:]])


def necklace_degeneracy(tau: FlaggedNecklace, j: int) -> FlaggedNecklace:
    if not 0 <= j <= tau.degree:
        raise ParameterError(f"degeneracy s_{j} undefined in degree {tau.degree}")
    return FlaggedNecklace(tau.start, tau.beads, tau.flags[: j + 1] + tau.flags[j:])


def concatenate(J: SimplicialSet, tau: FlaggedNecklace, other: FlaggedNecklace) -> FlaggedNecklace:
    """[tau, other]: beads in sequence, flags unioned levelwise."""
    if tau.degree != other.degree:
        raise ParameterError("concatenated necklaces must have the same degree")
    if target(J, tau) != other.start:
        raise ParameterError(f"necklace ending at {target(J, tau)} cannot precede one starting at {other.start}")
    shift = bead_offsets(J, tau.beads)[-1]
    flags = tuple(
        tuple(sorted(set(T) | {q + shift for q in S})) for T, S in zip(tau.flags, other.flags)
    )
    return FlaggedNecklace(tau.start, tau.beads + other.beads, flags)


# =============================================================================
# Mapping spaces
# =============================================================================


class _MappingModel:
    def __init__(self, J: SimplicialSet, necklaces: list[Necklace]):
        self.J = J
        self.necklaces = necklaces

    def simplices(self, m: int) -> Iterator[FlaggedNecklace]:
        for necklace in self.necklaces:
            for flags in flags_of(self.J, necklace, m):
                yield necklace.flagged(flags)

    def face(self, m: int, key: FlaggedNecklace, i: int) -> FlaggedNecklace:
        return necklace_face(self.J, key, i)

    def degeneracy(self, m: int, key: FlaggedNecklace, j: int) -> FlaggedNecklace:
        return necklace_degeneracy(key, j)

    def name(self, key: FlaggedNecklace) -> str:
        return key.label()


def mapping_space(
    J: SimplicialSet, x: str, y: str, m_max: int, max_length: Optional[int] = None
) -> Construction:
    """Map(x, y) in the homotopy coherent realization of J, up to degree ``m_max``.

    Model keys are :class:`FlaggedNecklace` values.
    """
    if m_max < 0:
        raise ParameterError(f"m_max must be >= 0, got {m_max}")
    necklaces = enumerate_necklaces(J, x, y, max_length)
    free = 0
    for necklace in necklaces:
        offsets = bead_offsets(J, necklace.beads)
        free = max(free, offsets[-1] + 1 - len(set(offsets)))
    bound = min(m_max, free) if necklaces else -1
    built = realize(_MappingModel(J, necklaces), bound, truncated=m_max < free)
    log.debug("Map(%s, %s) = %r", x, y, built.sset)
    return built


def flagged_necklaces(
    J: SimplicialSet, x: str, y: str, m: int, max_length: Optional[int] = None
) -> list[FlaggedNecklace]:
    """Brute-force degree-m flagged necklaces via maps out of wedges of simplices.

    ``max_length`` defaults to one less than the number of vertices, which
    bounds every necklace when beads have distinct vertices and J is acyclic.
    """
    if max_length is None:
        max_length = len(J.vertex_names) - 1
    found = []
    if x == y:
        found.append(FlaggedNecklace(x, (), tuple((0,) for _ in range(m + 1))))
    for length in range(1, max_length + 1):
        for dims in _compositions(length):
            wedge = wedge_construction(dims)
            first = wedge.ref(0, (0,)).base
            last = wedge.ref(0, (length,)).base
            offsets = [0]
            for d in dims:
                offsets.append(offsets[-1] + d)
            tops = [wedge.ref(d, tuple(range(o, o + d + 1))).base for d, o in zip(dims, offsets)]
            fixed = {first: SimplexRef(x), last: SimplexRef(y)} if first != last else {first: SimplexRef(x)}
            for f in iter_maps(wedge.sset, J, fixed=fixed):
                images = [f.images[t] for t in tops]
                if any(r.degens for r in images):
                    continue
                free = [q for q in range(length + 1) if q not in offsets]
                base = set(offsets)
                if m == 0:
                    if not free:
                        found.append(FlaggedNecklace(x, tuple(r.base for r in images), (tuple(offsets),)))
                    continue
                for levels in cartesian(range(1, m + 1), repeat=len(free)):
                    flags = tuple(
                        tuple(sorted(base | {q for q, lvl in zip(free, levels) if lvl <= i}))
                        for i in range(m + 1)
                    )
                    found.append(FlaggedNecklace(x, tuple(r.base for r in images), flags))
    return sorted(set(found))


def _compositions(total: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


# =============================================================================
# Realization oracle
# =============================================================================


def _reduce_cell(J: SimplicialSet, sigma: SimplexRef, chain: Sequence[frozenset]) -> list[tuple[str, list[set]]]:
    """A cube cell of sigma rewritten as a word of nondegenerate cells."""
    top = sorted(chain[-1])
    restricted = J.restrict(sigma, top)
    where = {q: k for k, q in enumerate(top)}
    eta = J.surjection(restricted)
    collapsed = [{eta[where[q]] for q in U} for U in chain]
    d = J.dim_of(restricted.base)
    if d == 0:
        return []
    marks = sorted(collapsed[0])
    if len(marks) == 2:
        return [(restricted.base, collapsed)]
    out = []
    base = SimplexRef(restricted.base)
    for a, b in zip(marks, marks[1:]):
        piece = J.operate(base, tuple(range(a, b + 1)))
        sub = [frozenset(q - a for q in U if a <= q <= b) for U in collapsed]
        out.extend(_reduce_cell(J, piece, sub))
    return out


def _reduce_word(
    J: SimplicialSet, start: str, word: Sequence[tuple[SimplexRef, Sequence[frozenset]]], m: int
) -> FlaggedNecklace:
    beads: list[str] = []
    flags = [set() for _ in range(m + 1)]
    shift = 0
    flags_seen = False
    for sigma, chain in word:
        for base, cell in _reduce_cell(J, sigma, chain):
            beads.append(base)
            for i, U in enumerate(cell):
                flags[i] |= {q + shift for q in U}
            shift += J.dim_of(base)
            flags_seen = True
    if not flags_seen:
        return FlaggedNecklace(start, (), tuple((0,) for _ in range(m + 1)))
    return FlaggedNecklace(start, tuple(beads), tuple(tuple(sorted(T)) for T in flags))


def _cells(J: SimplicialSet, m: int) -> list[tuple[SimplexRef, tuple[frozenset, ...], str, str]]:
    cells = []
    for n in range(1, J.dim + 2):
        for sigma in J.simplices(n):
            vs = J.vertices(sigma)
            interior = list(range(1, n))
            for levels in cartesian(range(m + 2), repeat=len(interior)):
                chain = tuple(
                    frozenset({0, n} | {q for q, lvl in zip(interior, levels) if lvl <= i})
                    for i in range(m + 1)
                )
                cells.append((sigma, chain, vs[0], vs[-1]))
    return cells


def realization_oracle(
    J: SimplicialSet, x: str, y: str, m: int, max_cells: Optional[int] = None
) -> Verdict:
    """Compare degree-m simplices of Map(x, y) against reduced words of cube cells.

    A word is a composable sequence of cells (sigma, U_0 <= ... <= U_m) with
    sigma any simplex of J (degenerate ones included) and each U_i a set of
    vertex positions of sigma containing both ends. Words are reduced one cell
    at a time; faces are taken cellwise before reduction and must match the
    faces of the reduced necklace. Words default to at most as many cells as
    the longest necklace has beads.
    """
    necklaces = enumerate_necklaces(J, x, y)
    if max_cells is None:
        max_cells = max((len(t.beads) for t in necklaces), default=0)
    expected = set(_MappingModel(J, necklaces).simplices(m))
    cells = _cells(J, m)
    by_source: dict[str, list] = {}
    for cell in cells:
        by_source.setdefault(cell[2], []).append(cell)
    reached: set[FlaggedNecklace] = set()
    mismatches: list[str] = []

    def check(word: list) -> None:
        form = _reduce_word(J, x, [(c[0], c[1]) for c in word], m)
        reached.add(form)
        if m == 0:
            return
        for i in range(m + 1):
            faced = [(c[0], c[1][:i] + c[1][i + 1 :]) for c in word]
            lhs = _reduce_word(J, x, faced, m - 1)
            rhs = necklace_face(J, form, i)
            if lhs != rhs:
                mismatches.append(f"d_{i} of {form}: cellwise {lhs}, necklace rule {rhs}")

    def extend(word: list, at: str) -> None:
        if at == y:
            check(word)
        if len(word) == max_cells:
            return
        for cell in by_source.get(at, ()):
            word.append(cell)
            extend(word, cell[3])
            word.pop()

    extend([], x)
    missing = expected - reached
    extra = reached - expected
    detail = (
        f"{len(expected)} flagged necklaces, {len(reached)} reduced forms, "
        f"{len(missing)} missing, {len(extra)} extra, {len(mismatches)} face mismatches"
    )
    holds = not missing and not extra and not mismatches
    return Verdict.check(holds, detail, bound=m, witness=mismatches[0] if mismatches else None)


# =============================================================================
# Weighted joins: decomposition and the product formula
# =============================================================================


@dataclass(frozen=True)
class JoinBead:
    """The middle bead x * y of a necklace in a weighted join, with its flag."""

    x: str
    y: str
    flags: Flag


@dataclass(frozen=True)
class Decomposition:
    left: Optional[FlaggedNecklace]
    middle: Optional[JoinBead]
    right: Optional[FlaggedNecklace]


def _cut(flags: Flag, lo: int, hi: int) -> Flag:
    return tuple(tuple(q - lo for q in T if lo <= q <= hi) for T in flags)


def _vertex_side(wj: WeightedJoin, name: str) -> tuple[str, str]:
    side, ref = wj.classify(name)[:2]
    return side, ref.base


def decompose(wj: WeightedJoin, tau: FlaggedNecklace) -> Decomposition:
    """Split a flagged necklace of a weighted join into its I part, join bead and J part."""
    W = wj.sset
    kinds = [wj.classify(b) for b in tau.beads]
    offsets = bead_offsets(W, tau.beads)
    m = tau.degree
    split = 0
    while split < len(kinds) and kinds[split][0] == "I":
        split += 1
    middle = None
    rest = split
    if rest < len(kinds) and kinds[rest][0] == "IJ":
        _, x, y = kinds[rest]
        lo, hi = offsets[rest], offsets[rest + 1]
        middle = JoinBead(x.base, y.base, _cut(tau.flags, lo, hi))
        rest += 1
    if any(k[0] != "J" for k in kinds[rest:]):
        raise StructureError(f"necklace {tau} does not run from I through a join bead into J")
    start_side, start_name = _vertex_side(wj, tau.start)
    left = right = None
    if start_side == "I":
        left = FlaggedNecklace(
            start_name,
            tuple(k[1].base for k in kinds[:split]),
            _cut(tau.flags, 0, offsets[split]),
        )
    if middle is not None:
        last = wj.tilde.vertices(SimplexRef(middle.y))[-1]
        first = wj.p.apply(SimplexRef(last)).base
    elif start_side == "J":
        first = start_name
    else:
        return Decomposition(left, None, None)
    right = FlaggedNecklace(
        first, tuple(k[1].base for k in kinds[rest:]), _cut(tau.flags, offsets[rest], offsets[-1])
    )
    return Decomposition(left, middle, right)


def concat(wj: WeightedJoin, parts: Decomposition) -> FlaggedNecklace:
    """Inverse of :func:`decompose`."""
    beads: list[str] = []
    flags: Optional[list[set]] = None
    shift = 0

    def add(names: Sequence[str], piece_flags: Flag, length: int) -> None:
        nonlocal flags, shift
        beads.extend(names)
        if flags is None:
            flags = [set() for _ in piece_flags]
        for i, T in enumerate(piece_flags):
            flags[i] |= {q + shift for q in T}
        shift += length

    if parts.left is not None:
        I = wj.I
        add(
            [wj.include_I.images[b].base for b in parts.left.beads],
            parts.left.flags,
            bead_offsets(I, parts.left.beads)[-1],
        )
        start = wj.include_I.images[parts.left.start].base
    elif parts.right is not None:
        start = wj.include_J.images[parts.right.start].base
    else:
        raise ParameterError("a decomposition needs a left or right part")
    if parts.middle is not None:
        bead = wj.mixed(SimplexRef(parts.middle.x), SimplexRef(parts.middle.y))
        add([bead.base], parts.middle.flags, wj.sset.dim_of(bead.base))
    if parts.right is not None:
        add(
            [wj.include_J.images[b].base for b in parts.right.beads],
            parts.right.flags,
            bead_offsets(wj.J, parts.right.beads)[-1],
        )
    assert flags is not None
    return FlaggedNecklace(start, tuple(beads), tuple(tuple(sorted(T)) for T in flags))


@dataclass(frozen=True, eq=False)
class ProductFormula:
    """Both sides of Map(a, b) = Map(a, ⊤) x Map(⊥, b) and the comparison map."""

    lhs: Construction
    left: Construction
    right: Construction
    product: Construction
    phi: Optional[SimplicialMap]


def _split_flags(middle: JoinBead, i: int) -> tuple[Flag, Flag]:
    """Flags of x * ⊤ and ⊥ * y cut from the flag of x * y (x of dimension i)."""
    to_top = tuple(tuple(sorted({q for q in T if q <= i} | {i + 1})) for T in middle.flags)
    from_bottom = tuple(tuple(sorted({0} | {q - i for q in T if q > i})) for T in middle.flags)
    return to_top, from_bottom


def mainfact_map(wj: WeightedJoin, a: str, b: str, m_max: int) -> ProductFormula:
    """The explicit comparison Phi: Map(a, b) -> Map(a, ⊤) x Map(⊥, b)."""
    if wj.fat:
        raise ParameterError("the product formula is stated for neat weighted joins")
    W = wj.sset
    a_name = wj.include_I.images[a].base
    b_name = wj.include_J.images[b].base
    lhs = mapping_space(W, a_name, b_name, m_max)
    co = cocone(wj.I)
    top = co.legs[1].images[next(iter(co.legs[1].images))].base
    bottom_cone = cone(wj.p)
    bottom = bottom_cone.include_I.images[APEX_BOTTOM].base
    b_cone = bottom_cone.include_J.images[b].base
    left = mapping_space(co.sset, a, top, m_max)
    right = mapping_space(bottom_cone.sset, bottom, b_cone, m_max)
    prod = product(left.sset, right.sset)

    def nu(m: int, tau: FlaggedNecklace) -> tuple[SimplexRef, SimplexRef]:
        parts = decompose(wj, tau)
        assert parts.left is not None and parts.middle is not None and parts.right is not None
        i = wj.I.dim_of(parts.middle.x)
        to_top, from_bottom = _split_flags(parts.middle, i)
        length_left = bead_offsets(wj.I, parts.left.beads)[-1]
        cone_bead = co.ref(i + 1, ("IJ", SimplexRef(parts.middle.x), SimplexRef(top))).base
        nu_left = FlaggedNecklace(
            a,
            tuple(co.ref(wj.I.dim_of(g), ("I", SimplexRef(g))).base for g in parts.left.beads) + (cone_bead,),
            tuple(
                tuple(sorted(set(L) | {q + length_left for q in T}))
                for L, T in zip(parts.left.flags, to_top)
            ),
        )
        apex_bead = bottom_cone.mixed(SimplexRef(APEX_BOTTOM), SimplexRef(parts.middle.y)).base
        length_apex = bottom_cone.sset.dim_of(apex_bead)
        nu_right = FlaggedNecklace(
            bottom,
            (apex_bead,) + tuple(bottom_cone.include_J.images[g].base for g in parts.right.beads),
            tuple(
                tuple(sorted(set(T) | {q + length_apex for q in R}))
                for T, R in zip(from_bottom, parts.right.flags)
            ),
        )
        return (left.ref(m, nu_left), right.ref(m, nu_right))

    try:
        phi = induced_map(lhs, prod, nu)
    except (StructureError, KeyError) as exc:
        log.debug("product formula map failed: %s", exc)
        phi = None
    return ProductFormula(lhs, left, right, prod, phi)


def mainfact_check(wj: WeightedJoin, a: str, b: str, m_max: int, part: int = 1) -> Verdict:
    """Check one clause of the product formula for mapping spaces of a weighted join.

    1: Map(a, b) = Map(a, ⊤) x Map(⊥, b) for a in I, b in J;
    2: Map(a, a') = Map_I(a, a') for a, a' in I; 3: Map(b, b') = Map_J(b, b')
    for b, b' in J; 4: Map(b, a) is empty for b in J, a in I.
    """
    W = wj.sset
    if part == 1:
        formula = mainfact_map(wj, a, b, m_max)
        phi = formula.phi
        if phi is None:
            return Verdict.counterexample(bound=m_max, detail="comparison map undefined")
        try:
            phi.validate()
        except StructureError as exc:
            return Verdict.counterexample(bound=m_max, detail=f"comparison map is not simplicial: {exc}")
        return Verdict.check(
            phi.is_isomorphism(),
            f"Map(a,b) f={formula.lhs.sset.f_vector()} vs product f={formula.product.sset.f_vector()}",
            bound=m_max,
            witness=phi if phi.is_isomorphism() else None,
        )
    if part in (2, 3):
        side = wj.include_I if part == 2 else wj.include_J
        base = wj.I if part == 2 else wj.J
        inner = mapping_space(base, a, b, m_max)
        outer = mapping_space(W, side.images[a].base, side.images[b].base, m_max)

        def push(m: int, tau: FlaggedNecklace) -> FlaggedNecklace:
            return FlaggedNecklace(
                side.images[tau.start].base, tuple(side.images[g].base for g in tau.beads), tau.flags
            )

        try:
            u = induced_map(inner, outer, push).validate()
        except StructureError as exc:
            return Verdict.counterexample(bound=m_max, detail=str(exc))
        return Verdict.check(
            u.is_isomorphism(), f"f={inner.sset.f_vector()} vs f={outer.sset.f_vector()}", bound=m_max
        )
    if part == 4:
        back = mapping_space(W, wj.include_J.images[b].base, wj.include_I.images[a].base, m_max)
        empty = back.sset.is_empty()
        return Verdict.check(empty, "Map(b, a) is empty" if empty else "Map(b, a) is inhabited")
    raise ParameterError(f"unknown clause {part}")


# =============================================================================
# Cofibrant weights and straightening
# =============================================================================


@dataclass(frozen=True, eq=False)
class CofibrantWeight:
    """j -> Map(⊥, j) in the realization of Delta[0] *^p J, with its action."""

    join: WeightedJoin
    m_max: int
    values: dict[str, Construction] = field(default_factory=dict)

    @cached_property
    def bottom(self) -> str:
        return self.join.include_I.images[APEX_BOTTOM].base

    def value(self, j: str) -> SimplicialSet:
        return self.values[j].sset

    def act(self, tau: FlaggedNecklace, nu: FlaggedNecklace) -> FlaggedNecklace:
        """nu in W(j) followed by tau in Map_J(j, j')."""
        moved = FlaggedNecklace(
            self.join.include_J.images[tau.start].base,
            tuple(self.join.include_J.images[g].base for g in tau.beads),
            tau.flags,
        )
        return concatenate(self.join.sset, nu, moved)

    def along(self, tau: FlaggedNecklace) -> SimplicialMap:
        """W(j) -> W(j') for a degree-0 necklace tau from j to j' (degenerated to every degree)."""
        if tau.degree != 0:
            raise ParameterError("only degree-0 necklaces act by simplicial maps")
        J = self.join.J
        j, j2 = tau.start, target(J, tau)

        def key_map(m: int, nu: FlaggedNecklace) -> FlaggedNecklace:
            return self.act(FlaggedNecklace(tau.start, tau.beads, tau.flags * (m + 1)), nu)

        return induced_map(self.values[j], self.values[j2], key_map)


def cofibrant_weight(p: SimplicialMap, m_max: int) -> CofibrantWeight:
    """Values Map(⊥, j) for every vertex j of J = p.target."""
    wj = cone(p)
    weight = CofibrantWeight(wj, m_max)
    for j in p.target.vertex_names:
        weight.values[j] = mapping_space(wj.sset, weight.bottom, wj.include_J.images[j].base, m_max)
    return weight


def straightened_weight(J: FinCategory, m_max: int) -> SSetWeight:
    """The straightening of the identity of N(J), as a functor J -> sSet.

    Morphisms act by concatenating their edge; functoriality is validated, so
    the shape must have no composable pair of non-identity morphisms.
    """
    N = nerve_construction(J).sset
    weight = cofibrant_weight(identity(N), m_max)
    action = {}
    for f in J.morphisms():
        if J.is_identity(f):
            action[f] = identity(weight.value(J.dom(f)))
        else:
            action[f] = weight.along(FlaggedNecklace(J.dom(f), (f,), ((0, 1),)))
    return SSetWeight(J, {j: weight.value(j) for j in J.objects}, action).validate()


def computation1_check(
    p: SimplicialMap, n: int, mode: str = "full", x: Optional[str] = None, m_max: int = 2
) -> Verdict:
    """Map(0, x) in Delta[n] *^p J (or the boundary variant) against its cube formula.

    For a vertex x of J the expected value is the cube (or its horn) times the
    cofibrant weight at x; for x None the target is the last vertex n of
    Delta[n] and the expected value is the (boundary of the) (n-1)-cube.
    """
    if mode not in ("full", "boundary"):
        raise ParameterError(f"mode must be 'full' or 'boundary', got {mode!r}")
    if n < (1 if mode == "boundary" or x is None else 0):
        raise ParameterError(f"n={n} is too small for mode {mode!r}")
    I = standard_simplex(n) if mode == "full" else boundary(n)
    wj = weighted_join(I, p)
    source = wj.include_I.images["0"].base
    if x is None:
        target_name = wj.include_I.images[str(n)].base
        expected = cube(n - 1) if mode == "full" else cube_boundary(n - 1)
    else:
        target_name = wj.include_J.images[x].base
        cof = cofibrant_weight(p, m_max).value(x)
        shape = cube(n) if mode == "full" else cube_horn(n, n, 0)
        expected = product(shape, cof).sset
    actual = mapping_space(wj.sset, source, target_name, m_max).sset
    witness = is_isomorphic(actual, expected)
    return Verdict.check(
        witness is not None,
        f"Map f={actual.f_vector()} vs expected f={expected.f_vector()}",
        bound=m_max,
        witness=witness,
    )
