"""
Finite categories given by full composition tables.

Objects and morphisms are plain names. A category stores, for every
morphism, its domain and codomain, the identity of every object and the
composite of every composable pair, so hom-sets, terminality and
limits are decided by exhaustive search.

Set-valued weights and Set-valued diagrams share one representation,
:class:`SetWeight`: a covariant functor into finite sets of names.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from itertools import product as cartesian
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import CompositionError, ParameterError, StructureError
from .sscore import (
    Construction,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    compose,
    identity,
    induced_map,
    pullback,
    realize,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FinCategory:
    """A finite category.

    ``arrows`` maps every morphism name (identities included) to its
    (domain, codomain); ``table`` maps every composable pair ``(g, f)`` to the
    name of ``g o f``.
    """

    objects: tuple[str, ...]
    arrows: Mapping[str, tuple[str, str]]
    identities: Mapping[str, str]
    table: Mapping[tuple[str, str], str]

    @classmethod
    def build(
        cls,
        objects: Iterable[str],
        arrows: Mapping[str, tuple[str, str]],
        table: Optional[Mapping[tuple[str, str], str]] = None,
        identities: Optional[Mapping[str, str]] = None,
    ) -> "FinCategory":
        """Complete a presentation by identities and unit composites, then validate.

        ``arrows`` lists the non-identity morphisms and ``table`` their
        composites; identities are named ``id_<object>`` unless given.
        """
        objects = tuple(objects)
        identities = dict(identities or {o: f"id_{o}" for o in objects})
        all_arrows = dict(arrows)
        for o in objects:
            all_arrows[identities[o]] = (o, o)
        full = dict(table or {})
        for name, (a, b) in all_arrows.items():
            full[(identities[b], name)] = name
            full[(name, identities[a])] = name
        return cls(objects, all_arrows, identities, full).validate()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and dict(self.arrows) == dict(other.arrows)
            and dict(self.identities) == dict(other.identities)
            and dict(self.table) == dict(other.table)
        )

    def __hash__(self) -> int:
        return hash((self.objects, len(self.arrows)))

    def __repr__(self) -> str:
        return f"FinCategory({len(self.objects)} objects, {len(self.arrows)} morphisms)"

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {}
        for name in sorted(self.arrows):
            homs.setdefault(self.arrows[name], []).append(name)
        return {k: tuple(v) for k, v in homs.items()}

    def dom(self, f: str) -> str:
        return self.arrows[f][0]

    def cod(self, f: str) -> str:
        return self.arrows[f][1]

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._homs.get((a, b), ())

    def identity(self, a: str) -> str:
        return self.identities[a]

    def is_identity(self, f: str) -> bool:
        return self.identities.get(self.dom(f)) == f

    def morphisms(self) -> list[str]:
        return sorted(self.arrows)

    def non_identities(self) -> list[str]:
        return [f for f in self.morphisms() if not self.is_identity(f)]

    def compose(self, g: str, f: str) -> str:
        """g o f."""
        if self.cod(f) != self.dom(g):
            raise CompositionError(f"{g} o {f}: codomain of {f} is not the domain of {g}")
        return self.table[(g, f)]

    def compose_path(self, path: Sequence[str]) -> str:
        """Composite of f_1, ..., f_k given in diagrammatic order."""
        result = path[0]
        for f in path[1:]:
            result = self.compose(f, result)
        return result

    def validate(self) -> "FinCategory":
        if len(set(self.objects)) != len(self.objects):
            raise StructureError("duplicate object names")
        for name, (a, b) in self.arrows.items():
            if a not in self.identities or b not in self.identities:
                raise StructureError(f"morphism {name!r} has an unknown endpoint", where=name)
        for o in self.objects:
            i = self.identities.get(o)
            if i is None or self.arrows.get(i) != (o, o):
                raise StructureError(f"object {o!r} has no identity", where=o)
        for (g, f), h in self.table.items():
            if g not in self.arrows or f not in self.arrows or h not in self.arrows:
                raise StructureError(f"composition table mentions unknown morphisms {g}, {f}, {h}", where=h)
            if self.cod(f) != self.dom(g):
                raise StructureError(f"table composes non-composable {g} o {f}", where=g)
            if self.arrows[h] != (self.dom(f), self.cod(g)):
                raise StructureError(f"{g} o {f} = {h} has the wrong endpoints", where=h)
        for f in self.arrows:
            for g in self.arrows:
                if self.cod(f) == self.dom(g) and (g, f) not in self.table:
                    raise StructureError(f"composite {g} o {f} missing from the table", where=g)
        for f in self.arrows:
            if self.table[(self.identity(self.cod(f)), f)] != f or self.table[(f, self.identity(self.dom(f)))] != f:
                raise StructureError(f"unit law fails at {f!r}", where=f)
        for f in self.arrows:
            for g in self.hom_from(self.cod(f)):
                for h in self.hom_from(self.cod(g)):
                    if self.table[(h, self.table[(g, f)])] != self.table[(self.table[(h, g)], f)]:
                        raise StructureError(f"associativity fails at ({h}, {g}, {f})", where=g)
        return self

    @cached_property
    def _ends(self) -> tuple[dict[str, list[str]], dict[str, list[str]]]:
        out: dict[str, list[str]] = {o: [] for o in self.objects}
        into: dict[str, list[str]] = {o: [] for o in self.objects}
        for f in self.morphisms():
            out.setdefault(self.dom(f), []).append(f)
            into.setdefault(self.cod(f), []).append(f)
        return out, into

    def hom_from(self, a: str) -> list[str]:
        return self._ends[0].get(a, [])

    def hom_to(self, b: str) -> list[str]:
        return self._ends[1].get(b, [])

    def is_acyclic(self) -> bool:
        """No non-identity endomorphisms and no cycles of non-identity morphisms."""
        return self.longest_chain() is not None

    def longest_chain(self) -> Optional[int]:
        """Length of the longest identity-free composable chain, or None if unbounded."""
        edges: dict[str, set[str]] = {o: set() for o in self.objects}
        for f in self.non_identities():
            edges[self.dom(f)].add(self.cod(f))
        depth: dict[str, int] = {}
        active: set[str] = set()

        def visit(o: str) -> Optional[int]:
            if o in depth:
                return depth[o]
            if o in active:
                return None
            active.add(o)
            best = 0
            for nxt in edges[o]:
                d = visit(nxt)
                if d is None:
                    return None
                best = max(best, d + 1)
            active.discard(o)
            depth[o] = best
            return best

        longest = 0
        for o in self.objects:
            d = visit(o)
            if d is None:
                return None
            longest = max(longest, d)
        return longest


# =============================================================================
# Constructors
# =============================================================================


def poset_category(
    elements: Sequence[str], leq: Callable[[str, str], bool], *, sep: str = "<"
) -> FinCategory:
    """A poset as a category; the arrow a <= b is named ``a<b``."""
    arrows = {f"{a}{sep}{b}": (a, b) for a in elements for b in elements if a != b and leq(a, b)}
    table = {}
    for a in elements:
        for b in elements:
            for c in elements:
                if a != b and b != c and a != c and leq(a, b) and leq(b, c):
                    table[(f"{b}{sep}{c}", f"{a}{sep}{b}")] = f"{a}{sep}{c}"
    return FinCategory.build(elements, arrows, table)


def ordinal(n: int) -> FinCategory:
    """The ordinal [n] = {0 < 1 < ... < n}."""
    if n < 0:
        raise ParameterError(f"ordinal needs n >= 0, got {n}")
    names = [str(i) for i in range(n + 1)]
    return poset_category(names, lambda a, b: int(a) <= int(b))


def walking_arrow() -> FinCategory:
    return ordinal(1)


def discrete_category(objects: Iterable[str]) -> FinCategory:
    return FinCategory.build(objects, {})


def terminal_category(name: str = "*") -> FinCategory:
    return discrete_category([name])


def cospan() -> FinCategory:
    """The cospan shape a -f-> b <-g- c."""
    return FinCategory.build(["a", "b", "c"], {"f": ("a", "b"), "g": ("c", "b")})


def subset_name(subset: Iterable[str]) -> str:
    return "{" + ",".join(sorted(subset)) + "}"


def boolean_lattice(universe: Sequence[str]) -> FinCategory:
    """Subsets of a finite universe ordered by inclusion; objects are named ``{x,y}``."""
    subsets = []
    for size in range(len(universe) + 1):
        subsets.extend(frozenset(c) for c in combinations(sorted(universe), size))
    by_name = {subset_name(s): s for s in subsets}
    return poset_category(list(by_name), lambda a, b: by_name[a] <= by_name[b])


def over_category(C: FinCategory, j: str) -> tuple[FinCategory, "CatFunctor"]:
    """The slice C/j with its forgetful functor to C.

    Objects of C/j are the morphisms f: a -> j; the arrow f -> f' given by
    h: a -> a' with f' o h = f is named ``h|f'``.
    """
    objects = C.hom_to(j)
    arrows, identities, table = {}, {}, {}
    carrier: dict[str, tuple[str, str]] = {}
    for f in objects:
        for h in C.hom_from(C.dom(f)):
            for f2 in C.hom(C.cod(h), j):
                if C.compose(f2, h) == f:
                    arrows[f"{h}|{f2}"] = (f, f2)
                    carrier[f"{h}|{f2}"] = (h, f2)
        identities[f] = f"{C.identity(C.dom(f))}|{f}"
    for name, (_, f2) in arrows.items():
        h = carrier[name][0]
        for name2, (src, f3) in arrows.items():
            if src == f2:
                table[(name2, name)] = f"{C.compose(carrier[name2][0], h)}|{f3}"
    over = FinCategory(tuple(objects), arrows, identities, table).validate()
    forget = CatFunctor(
        over, C, {f: C.dom(f) for f in objects}, {name: h for name, (h, _) in carrier.items()}
    ).validate()
    return over, forget


# =============================================================================
# Functors and weights
# =============================================================================


@dataclass(frozen=True, eq=False)
class CatFunctor:
    source: FinCategory
    target: FinCategory
    on_objects: Mapping[str, str]
    on_morphisms: Mapping[str, str]

    @classmethod
    def between(
        cls,
        source: FinCategory,
        target: FinCategory,
        on_objects: Mapping[str, str],
        on_morphisms: Optional[Mapping[str, str]] = None,
    ) -> "CatFunctor":
        """Build a functor; morphism images may be omitted when the target hom is a singleton."""
        images = dict(on_morphisms or {})
        for f in source.morphisms():
            if f in images:
                continue
            if source.is_identity(f):
                images[f] = target.identity(on_objects[source.dom(f)])
                continue
            candidates = target.hom(on_objects[source.dom(f)], on_objects[source.cod(f)])
            if len(candidates) != 1:
                raise ParameterError(f"image of {f!r} is not determined by the object map")
            images[f] = candidates[0]
        return cls(source, target, dict(on_objects), images).validate()

    def __call__(self, x: str) -> str:
        return self.on_objects[x]

    def fmap(self, f: str) -> str:
        return self.on_morphisms[f]

    def validate(self) -> "CatFunctor":
        S, T = self.source, self.target
        for o in S.objects:
            if self.on_objects.get(o) not in T.identities:
                raise StructureError(f"object {o!r} has no valid image", where=o)
            if self.on_morphisms.get(S.identity(o)) != T.identity(self.on_objects[o]):
                raise StructureError(f"identity of {o!r} is not preserved", where=o)
        for f in S.morphisms():
            image = self.on_morphisms.get(f)
            if image not in T.arrows:
                raise StructureError(f"morphism {f!r} has no valid image", where=f)
            if T.arrows[image] != (self.on_objects[S.dom(f)], self.on_objects[S.cod(f)]):
                raise StructureError(f"image of {f!r} has the wrong endpoints", where=f)
        for (g, f), h in S.table.items():
            if T.compose(self.fmap(g), self.fmap(f)) != self.fmap(h):
                raise StructureError(f"composite {g} o {f} is not preserved", where=h)
        return self


def identity_functor(C: FinCategory) -> CatFunctor:
    return CatFunctor(C, C, {o: o for o in C.objects}, {f: f for f in C.arrows})


def compose_functors(G: CatFunctor, F: CatFunctor) -> CatFunctor:
    """G o F."""
    if F.target != G.source:
        raise CompositionError("functors are not composable")
    return CatFunctor(
        F.source,
        G.target,
        {o: G(F(o)) for o in F.source.objects},
        {f: G.fmap(F.fmap(f)) for f in F.source.arrows},
    )


@dataclass(frozen=True, eq=False)
class SetWeight:
    """A covariant functor J -> FinSet; elements are names."""

    category: FinCategory
    values: Mapping[str, tuple[str, ...]]
    action: Mapping[str, Mapping[str, str]]

    @classmethod
    def build(
        cls,
        category: FinCategory,
        values: Mapping[str, Iterable[str]],
        action: Optional[Mapping[str, Mapping[str, str]]] = None,
    ) -> "SetWeight":
        """Fill in identity actions and validate functoriality."""
        vals = {o: tuple(sorted(values.get(o, ()))) for o in category.objects}
        act = {f: dict(m) for f, m in (action or {}).items()}
        for o in category.objects:
            act.setdefault(category.identity(o), {x: x for x in vals[o]})
        for f in category.morphisms():
            if f not in act and not vals[category.dom(f)]:
                act[f] = {}
        return cls(category, vals, act).validate()

    def __call__(self, j: str) -> tuple[str, ...]:
        return self.values[j]

    def apply(self, f: str, x: str) -> str:
        return self.action[f][x]

    def elements(self) -> Iterator[tuple[str, str]]:
        for j in self.category.objects:
            for x in self.values[j]:
                yield j, x

    def validate(self) -> "SetWeight":
        J = self.category
        for f in J.morphisms():
            table = self.action.get(f)
            if table is None:
                raise StructureError(f"no action for morphism {f!r}", where=f)
            a, b = J.arrows[f]
            if set(table) != set(self.values[a]) or not set(table.values()) <= set(self.values[b]):
                raise StructureError(f"action of {f!r} is not a function {a} -> {b}", where=f)
        for o in J.objects:
            if any(self.apply(J.identity(o), x) != x for x in self.values[o]):
                raise StructureError(f"identity of {o!r} acts nontrivially", where=o)
        for (g, f), h in J.table.items():
            for x in self.values[J.dom(f)]:
                if self.apply(g, self.apply(f, x)) != self.apply(h, x):
                    raise StructureError(f"action does not respect {g} o {f}", where=h)
        return self


def constant_weight(J: FinCategory, elements: Sequence[str] = ("*",)) -> SetWeight:
    return SetWeight.build(
        J,
        {o: elements for o in J.objects},
        {f: {x: x for x in elements} for f in J.morphisms()},
    )


def empty_weight(J: FinCategory) -> SetWeight:
    return SetWeight.build(J, {})


def representable_weight(J: FinCategory, j: str) -> SetWeight:
    """Hom_J(j, -)."""
    values = {o: J.hom(j, o) for o in J.objects}
    action = {f: {x: J.compose(f, x) for x in values[J.dom(f)]} for f in J.morphisms()}
    return SetWeight.build(J, values, action)


# =============================================================================
# Nerves
# =============================================================================


class _NerveModel:
    """Composable chains; degree-0 keys are 1-tuples of objects."""

    def __init__(self, C: FinCategory):
        self.C = C
        self.out = {o: C.hom_from(o) for o in C.objects}

    def simplices(self, n: int) -> Iterator[tuple[str, ...]]:
        if n == 0:
            yield from ((o,) for o in self.C.objects)
            return

        def extend(chain: tuple[str, ...]) -> Iterator[tuple[str, ...]]:
            if len(chain) == n:
                yield chain
                return
            for f in self.out[self.C.cod(chain[-1])]:
                yield from extend(chain + (f,))

        for f in self.C.morphisms():
            yield from extend((f,))

    def face(self, n: int, key: tuple[str, ...], i: int) -> tuple[str, ...]:
        C = self.C
        if n == 1:
            return (C.cod(key[0]),) if i == 0 else (C.dom(key[0]),)
        if i == 0:
            return key[1:]
        if i == n:
            return key[:-1]
        return key[: i - 1] + (C.compose(key[i], key[i - 1]),) + key[i + 1 :]

    def degeneracy(self, n: int, key: tuple[str, ...], j: int) -> tuple[str, ...]:
        C = self.C
        if n == 0:
            return (C.identity(key[0]),)
        vertex = C.dom(key[j]) if j < n else C.cod(key[-1])
        return key[:j] + (C.identity(vertex),) + key[j:]

    def name(self, key: tuple[str, ...]) -> str:
        return ";".join(key)


def nerve_construction(C: FinCategory, max_dim: Optional[int] = None) -> Construction:
    """The nerve of C; model keys are chains of morphisms (objects in degree 0)."""
    longest = C.longest_chain()
    if longest is None:
        if max_dim is None:
            raise ParameterError("nerve of a category with non-identity cycles needs a max_dim")
        return realize(_NerveModel(C), max_dim, truncated=True)
    if max_dim is not None and max_dim < longest:
        return realize(_NerveModel(C), max_dim, truncated=True)
    return realize(_NerveModel(C), longest)


def nerve(C: FinCategory, max_dim: Optional[int] = None) -> SimplicialSet:
    """Composable chains of C; nondegenerate ones are identity-free."""
    return nerve_construction(C, max_dim).sset


def nerve_functor(F: CatFunctor, source: Construction, target: Construction) -> SimplicialMap:
    """N(F) between the given nerve constructions."""

    def key_map(n: int, key: tuple[str, ...]) -> tuple[str, ...]:
        if n == 0:
            return (F(key[0]),)
        return tuple(F.fmap(f) for f in key)

    return induced_map(source, target, key_map)


# =============================================================================
# Elements and fibers
# =============================================================================


def element_name(j: str, x: str) -> str:
    return f"({j},{x})"


def category_of_elements(W: SetWeight) -> tuple[FinCategory, CatFunctor]:
    """el(W) with its projection; the arrow over f at x is named ``f@x``."""
    J = W.category
    objects = [element_name(j, x) for j, x in W.elements()]
    arrows, identities, table = {}, {}, {}
    carrier: dict[str, str] = {}
    for f in J.morphisms():
        a, b = J.arrows[f]
        for x in W(a):
            arrows[f"{f}@{x}"] = (element_name(a, x), element_name(b, W.apply(f, x)))
            carrier[f"{f}@{x}"] = f
    for j, x in W.elements():
        identities[element_name(j, x)] = f"{J.identity(j)}@{x}"
    for f in J.morphisms():
        for x in W(J.dom(f)):
            y = W.apply(f, x)
            for g in J.hom_from(J.cod(f)):
                table[(f"{g}@{y}", f"{f}@{x}")] = f"{J.compose(g, f)}@{x}"
    E = FinCategory(tuple(objects), arrows, identities, table).validate()
    P = CatFunctor(
        E,
        J,
        {element_name(j, x): j for j, x in W.elements()},
        carrier,
    )
    return E, P.validate()


def fibers(P: CatFunctor) -> SetWeight:
    """The weight j -> P^{-1}(j) of a discrete opfibration P: E -> J.

    Each f: j -> j' must lift uniquely to an arrow out of every e over j.
    """
    E, J = P.source, P.target
    over = {j: [e for e in E.objects if P(e) == j] for j in J.objects}
    action: dict[str, dict[str, str]] = {}
    for f in J.morphisms():
        a = J.dom(f)
        action[f] = {}
        for e in over[a]:
            lifts = [u for u in E.hom_from(e) if P.fmap(u) == f]
            if len(lifts) != 1:
                raise StructureError(
                    f"{f!r} has {len(lifts)} lifts starting at {e!r}; not a discrete opfibration",
                    where=f,
                )
            action[f][e] = E.cod(lifts[0])
    return SetWeight.build(J, over, action)


# =============================================================================
# Weighted join of categories
# =============================================================================


def cat_weighted_join(I: FinCategory, P: CatFunctor) -> FinCategory:
    """The weighted join of I with J = P.target along the discrete opfibration P.

    Hom(a, b) = P^{-1}(b) for a in I and b in J; the arrow picking x is
    named ``a>x``. There are no arrows from J back to I.
    """
    J = P.target
    W = fibers(P)
    clash = set(I.objects) & set(J.objects) or set(I.arrows) & set(J.arrows)
    if clash:
        raise ParameterError(f"I and J share names {sorted(clash)}")
    arrows = {**I.arrows, **J.arrows}
    identities = {**I.identities, **J.identities}
    table = {**I.table, **J.table}
    bridge: dict[tuple[str, str], str] = {}
    for a in I.objects:
        for b in J.objects:
            for x in W(b):
                name = f"{a}>{x}"
                arrows[name] = (a, b)
                bridge[(a, x)] = name
    for (a, x), name in bridge.items():
        b = arrows[name][1]
        for u in I.hom_to(a):
            table[(name, u)] = bridge[(I.dom(u), x)]
        for g in J.hom_from(b):
            table[(g, name)] = bridge[(a, W.apply(g, x))]
    return FinCategory(tuple(I.objects) + tuple(J.objects), arrows, identities, table).validate()


# =============================================================================
# Weighted cones and limits
# =============================================================================


@dataclass(frozen=True)
class WeightedCone:
    """A W-weighted cone over D: one leg A -> D(j) per element (j, x) of W."""

    apex: str
    legs: tuple[tuple[tuple[str, str], str], ...]

    def leg(self, j: str, x: str) -> str:
        return dict(self.legs)[(j, x)]

    def label(self) -> str:
        inner = ",".join(f"{j}.{x}:{f}" for (j, x), f in self.legs)
        return f"{self.apex}[{inner}]"


def weighted_cones(W: SetWeight, D: CatFunctor) -> list[WeightedCone]:
    """Every natural transformation W => Hom_C(A, D-) for every object A."""
    J, C = D.source, D.target
    if W.category != J:
        raise CompositionError("weight and diagram live over different categories")
    slots = list(W.elements())
    cones = []
    for A in C.objects:
        legs: dict[tuple[str, str], str] = {}

        def consistent(slot: tuple[str, str]) -> bool:
            j, x = slot
            for f in J.hom_from(j):
                target = (J.cod(f), W.apply(f, x))
                if target in legs and C.compose(D.fmap(f), legs[slot]) != legs[target]:
                    return False
            for f in J.hom_to(j):
                for y in W(J.dom(f)):
                    source = (J.dom(f), y)
                    if W.apply(f, y) == x and source in legs:
                        if C.compose(D.fmap(f), legs[source]) != legs[slot]:
                            return False
            return True

        def extend(position: int) -> Iterator[WeightedCone]:
            if position == len(slots):
                yield WeightedCone(A, tuple(sorted(legs.items())))
                return
            slot = slots[position]
            for leg in C.hom(A, D(slot[0])):
                legs[slot] = leg
                if consistent(slot):
                    yield from extend(position + 1)
                del legs[slot]

        cones.extend(extend(0))
    return cones


def weighted_cone_category(W: SetWeight, D: CatFunctor) -> tuple[FinCategory, dict[str, WeightedCone]]:
    """The category of W-weighted cones over D, with its objects decoded."""
    C = D.target
    cones = weighted_cones(W, D)
    by_name = {cone.label(): cone for cone in cones}
    arrows, identities, table = {}, {}, {}
    carrier: dict[str, str] = {}
    for name, cone in by_name.items():
        for name2, cone2 in by_name.items():
            for h in C.hom(cone.apex, cone2.apex):
                if all(C.compose(cone2.leg(j, x), h) == f for (j, x), f in cone.legs):
                    arrow = f"{h}:{name}>{name2}"
                    arrows[arrow] = (name, name2)
                    carrier[arrow] = h
        identities[name] = f"{C.identity(cone.apex)}:{name}>{name}"
    for arrow, (src, mid) in arrows.items():
        for arrow2, (src2, tgt) in arrows.items():
            if src2 == mid:
                table[(arrow2, arrow)] = f"{C.compose(carrier[arrow2], carrier[arrow])}:{src}>{tgt}"
    cat = FinCategory(tuple(by_name), arrows, identities, table).validate()
    return cat, by_name


def terminal_objects(C: FinCategory) -> list[str]:
    """Objects receiving exactly one arrow from every object."""
    return [t for t in C.objects if all(len(C.hom(a, t)) == 1 for a in C.objects)]


def terminal_object(C: FinCategory) -> Optional[str]:
    found = terminal_objects(C)
    return found[0] if found else None


def weighted_limit(W: SetWeight, D: CatFunctor) -> Optional[WeightedCone]:
    """The terminal W-weighted cone over D, if any."""
    cat, by_name = weighted_cone_category(W, D)
    t = terminal_object(cat)
    log.debug("weighted cone category %r, terminal %s", cat, t)
    return by_name[t] if t is not None else None


def weighted_limit_via_elements(W: SetWeight, D: CatFunctor) -> Optional[WeightedCone]:
    """The ordinary limit of D o P over el(W), read back as a weighted cone."""
    E, P = category_of_elements(W)
    DP = compose_functors(D, P)
    cone = weighted_limit(constant_weight(E), DP)
    if cone is None:
        return None
    legs = tuple(sorted(((j, x), cone.leg(element_name(j, x), "*")) for j, x in W.elements()))
    return WeightedCone(cone.apex, legs)


def ordinary_limit(D: CatFunctor) -> Optional[WeightedCone]:
    return weighted_limit(constant_weight(D.source), D)


def isomorphic_objects(C: FinCategory, x: str, y: str) -> Optional[tuple[str, str]]:
    """An inverse pair (f: x -> y, g: y -> x), if any."""
    for f in C.hom(x, y):
        for g in C.hom(y, x):
            if C.compose(g, f) == C.identity(x) and C.compose(f, g) == C.identity(y):
                return f, g
    return None


def is_equivalence(F: CatFunctor) -> bool:
    """Full, faithful and essentially surjective, checked exhaustively."""
    S, T = F.source, F.target
    for a in S.objects:
        for b in S.objects:
            images = sorted(F.fmap(f) for f in S.hom(a, b))
            if images != sorted(T.hom(F(a), F(b))):
                return False
    return all(any(isomorphic_objects(T, F(a), t) for a in S.objects) for t in T.objects)


# =============================================================================
# Weighted limits of finite sets
# =============================================================================


Family = tuple[tuple[tuple[str, str], str], ...]


def weighted_limit_in_finset(W: SetWeight, D: SetWeight) -> list[Family]:
    """Natural transformations W => D, found elementwise by backtracking."""
    J = W.category
    if D.category != J:
        raise CompositionError("weight and diagram live over different categories")
    slots = list(W.elements())
    chosen: dict[tuple[str, str], str] = {}
    out: list[Family] = []

    def natural(slot: tuple[str, str]) -> bool:
        j, x = slot
        for f in J.hom_from(j):
            target = (J.cod(f), W.apply(f, x))
            if target in chosen and D.apply(f, chosen[slot]) != chosen[target]:
                return False
        for f in J.hom_to(j):
            for y in W(J.dom(f)):
                source = (J.dom(f), y)
                if W.apply(f, y) == x and source in chosen:
                    if D.apply(f, chosen[source]) != chosen[slot]:
                        return False
        return True

    def extend(position: int) -> None:
        if position == len(slots):
            out.append(tuple(sorted(chosen.items())))
            return
        slot = slots[position]
        for d in D(slot[0]):
            chosen[slot] = d
            if natural(slot):
                extend(position + 1)
            del chosen[slot]

    extend(0)
    return out


def end_in_finset(W: SetWeight, D: SetWeight) -> list[Family]:
    """The end of D(j)^{W(j)}: the product cut out by the two canonical maps."""
    J = W.category
    slots = list(W.elements())
    out = []
    for values in cartesian(*(D(j) for j, _ in slots)):
        family = dict(zip(slots, values))
        if all(
            D.apply(f, family[(J.dom(f), x)]) == family[(J.cod(f), W.apply(f, x))]
            for f in J.non_identities()
            for x in W(J.dom(f))
        ):
            out.append(tuple(sorted(family.items())))
    return sorted(out)


# =============================================================================
# Rectification
# =============================================================================


def rectify(p: SimplicialMap, J: FinCategory, j: str) -> Construction:
    """The pullback of p: X -> N(J) along N(J/j) -> N(J)."""
    base = nerve_construction(J)
    if p.target != base.sset:
        raise StructureError("target of p is not the nerve of the given category")
    over, forget = over_category(J, j)
    leg = nerve_functor(forget, nerve_construction(over), base)
    return pullback(p, leg)


# =============================================================================
# Simplicial-set valued functors
# =============================================================================


@dataclass(frozen=True, eq=False)
class SSetWeight:
    """A functor J -> sSet: a simplicial set per object and a map per morphism.

    Used both for weights and for diagrams.
    """

    category: FinCategory
    values: Mapping[str, SimplicialSet]
    action: Mapping[str, SimplicialMap]

    def __call__(self, j: str) -> SimplicialSet:
        return self.values[j]

    def validate(self) -> "SSetWeight":
        J = self.category
        for j in J.objects:
            if j not in self.values:
                raise StructureError(f"no value at object {j!r}", where=j)
        for f in J.morphisms():
            u = self.action.get(f)
            if u is None:
                raise StructureError(f"no action for morphism {f!r}", where=f)
            if u.source != self.values[J.dom(f)] or u.target != self.values[J.cod(f)]:
                raise StructureError(f"action of {f!r} has the wrong endpoints", where=f)
            u.validate()
            if J.is_identity(f) and any(SimplexRef(g) != r for g, r in u.images.items()):
                raise StructureError(f"identity {f!r} acts nontrivially", where=f)
        for (g, f), h in J.table.items():
            if compose(self.action[g], self.action[f]) != self.action[h]:
                raise StructureError(f"action does not respect {g} o {f}", where=h)
        return self


SSetDiagram = SSetWeight


def constant_sset_weight(J: FinCategory, X: SimplicialSet) -> SSetWeight:
    return SSetWeight(J, {j: X for j in J.objects}, {f: identity(X) for f in J.morphisms()}).validate()
