"""
Weighted slices, fat weighted slices and comma objects.

An n-simplex of the weighted slice Q^p_{/d} is a map Delta[n] *^p J -> Q
that restricts to d on J. The simplicial operators come from the
cosimplicial object n -> Delta[n] *^p J, i.e. from weighted_join_map applied
to cofaces and codegeneracies. The fat slice uses Delta[n] <>^p J instead.
Both are only computed up to a truncation degree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import CompositionError, ParameterError, StructureError
from .fincat import CatFunctor, fibers, nerve_construction, nerve_functor, weighted_cone_category
from .joins import WeightedJoin, fat_to_neat, weighted_fat_join, weighted_join, weighted_join_map
from .report import Verdict
from .sscore import (
    Construction,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    _precompose,
    as_construction,
    codegeneracy,
    coface,
    compose,
    exponential,
    exponential_restriction,
    identity,
    induced_map,
    inverse,
    is_isomorphic,
    iter_maps_under,
    map_label,
    point,
    product,
    pullback,
    realize,
    simplex_map,
    standard_simplex,
    yoneda,
)

log = logging.getLogger(__name__)

Diagram = SimplicialMap


class _SliceModel:
    """n-simplices: maps Delta[n] *^p J -> Q under J, keyed by their serialization."""

    def __init__(self, p: SimplicialMap, d: SimplicialMap, trunc: int, fat: bool):
        build = weighted_fat_join if fat else weighted_join
        self.Q = d.target
        self.d = d
        self.joins = [build(standard_simplex(n), p) for n in range(trunc + 1)]
        self._maps: dict[tuple[int, tuple[int, ...]], SimplicialMap] = {}

    def structure_map(self, alpha: tuple[int, ...], n: int) -> SimplicialMap:
        """Delta[m] *^p J -> Delta[n] *^p J for a monotone alpha: [m] -> [n]."""
        cached = self._maps.get((n, alpha))
        if cached is None:
            m = len(alpha) - 1
            cached = weighted_join_map(simplex_map(alpha, n), self.joins[m], self.joins[n])
            self._maps[(n, alpha)] = cached
        return cached

    def simplices(self, n: int):
        for f in iter_maps_under(self.joins[n].include_J, self.d):
            yield f.key()

    def face(self, n: int, key: tuple, i: int) -> tuple:
        return _precompose(key, self.structure_map(coface(n, i), n), self.Q)

    def degeneracy(self, n: int, key: tuple, j: int) -> tuple:
        return _precompose(key, self.structure_map(codegeneracy(n, j), n), self.Q)

    def name(self, key: tuple) -> str:
        return map_label(key)


@dataclass(frozen=True, eq=False)
class WeightedSlice:
    """A (fat) weighted slice together with the joins its simplices are maps out of."""

    p: SimplicialMap
    d: Diagram
    trunc: int
    fat: bool
    joins: tuple[WeightedJoin, ...]
    built: Construction

    @property
    def sset(self) -> SimplicialSet:
        return self.built.sset

    def cone(self, name: str) -> SimplicialMap:
        """The map Delta[n] *^p J -> Q that the generator ``name`` stands for."""
        n = self.sset.dim_of(name)
        return SimplicialMap(self.joins[n].sset, self.d.target, dict(self.built.key_of(name)))


def _slice(p: SimplicialMap, d: Diagram, trunc: int, fat: bool) -> WeightedSlice:
    if trunc < 0:
        raise ParameterError(f"truncation must be >= 0, got {trunc}")
    if d.source != p.target:
        raise CompositionError("the diagram is not defined on the target of the weight")
    p.validate()
    d.validate()
    model = _SliceModel(p, d, trunc, fat)
    built = realize(model, trunc, truncated=True)
    log.debug("%sweighted slice: %r", "fat " if fat else "", built.sset)
    return WeightedSlice(p, d, trunc, fat, tuple(model.joins), built)


def weighted_slice(p: SimplicialMap, d: Diagram, trunc: int) -> WeightedSlice:
    """Q^p_{/d}: the quasi-category of p-weighted cones over d, up to degree ``trunc``."""
    return _slice(p, d, trunc, fat=False)


def fat_weighted_slice(p: SimplicialMap, d: Diagram, trunc: int) -> WeightedSlice:
    """Q^p_{//d}: fat p-weighted cones over d, up to degree ``trunc``."""
    return _slice(p, d, trunc, fat=True)


def slice_over(d: Diagram, trunc: int) -> WeightedSlice:
    """The ordinary slice Q_{/d}."""
    return weighted_slice(identity(d.source), d, trunc)


# =============================================================================
# Comma objects
# =============================================================================


def _vertex_of_interval(eps: int, n: int) -> SimplexRef:
    return standard_simplex(1).degenerate_to(SimplexRef(str(eps)), n)


def evaluation(Q: SimplicialSet, path: Construction, eps: int) -> SimplicialMap:
    """Q^{Delta[1]} -> Q, evaluation at the endpoint ``eps``."""
    target = as_construction(Q)

    def key_map(n: int, key: tuple) -> SimplexRef:
        cylinder = product(standard_simplex(n), standard_simplex(1))
        top = SimplexRef(standard_simplex(n).level(n)[0])
        f = SimplicialMap(cylinder.sset, Q, dict(key))
        return f.apply(cylinder.ref(n, (top, _vertex_of_interval(eps, n))))

    return induced_map(path, target, key_map)


@dataclass(frozen=True, eq=False)
class Comma:
    """F |_B G with its domain and codomain projections."""

    built: Construction
    to_A: SimplicialMap
    to_C: SimplicialMap
    to_path: SimplicialMap

    @property
    def sset(self) -> SimplicialSet:
        return self.built.sset


def comma(F: SimplicialMap, G: SimplicialMap, trunc: int) -> Comma:
    """The pullback of A x C -> B x B <- B^{Delta[1]}, up to degree ``trunc``."""
    if F.target != G.target:
        raise CompositionError("comma needs maps into a common target")
    B = F.target
    path = exponential(B, standard_simplex(1), trunc)
    ev0, ev1 = evaluation(B, path, 0), evaluation(B, path, 1)
    first = pullback(F, ev0)
    second = pullback(compose(ev1, first.legs[1]), G)
    to_first, to_C = second.legs
    to_A = compose(first.legs[0], to_first)
    to_path = compose(first.legs[1], to_first)
    log.debug("comma: %r", second.sset)
    return Comma(second, to_A, to_C, to_path)


@dataclass(frozen=True, eq=False)
class FatSliceComma:
    """Q x_{Q^J~} Q^{Delta[1] x J~} x_{Q^J~} Delta[0], the comma form of a fat slice."""

    built: Construction
    first: Construction
    path: Construction
    cylinder: Construction

    @property
    def sset(self) -> SimplicialSet:
        return self.built.sset


def fat_slice_comma(p: SimplicialMap, d: Diagram, trunc: int) -> FatSliceComma:
    """The comma of the constant diagram functor Q -> Q^{J~} and the vertex d o p."""
    Q = d.target
    tilde = p.source
    dp = compose(d, p)
    cylinder = product(standard_simplex(1), tilde)
    path = exponential(Q, cylinder.sset, trunc)
    diagrams = exponential(Q, tilde, trunc)

    def end(eps: int) -> SimplicialMap:
        u = SimplicialMap(
            tilde,
            cylinder.sset,
            {
                y: cylinder.ref(tilde.dim_of(y), (_vertex_of_interval(eps, tilde.dim_of(y)), SimplexRef(y)))
                for y in tilde.generator_names()
            },
        )
        return exponential_restriction(Q, path, diagrams, u)

    def constant(n: int, x: SimplexRef) -> tuple:
        square = product(standard_simplex(n), tilde)
        return compose(yoneda(Q, x), square.legs[0]).key()

    diagonal = induced_map(as_construction(Q), diagrams, constant)
    first = pullback(diagonal, end(0))
    corner = point()
    square0 = product(standard_simplex(0), tilde)
    vertex = diagrams.ref(0, compose(dp, square0.legs[1]).key())
    pick = SimplicialMap(corner, diagrams.sset, {corner.level(0)[0]: vertex})
    built = pullback(compose(end(1), first.legs[1]), pick)
    return FatSliceComma(built, first, path, cylinder)


def _fat_key(sigma: SimplexRef, t: tuple[int, ...], y: SimplexRef) -> tuple:
    if all(v == 0 for v in t):
        return ("I", sigma)
    if all(v == 1 for v in t):
        return ("J", y)
    return ("C", sigma, t, y)


def fat_slice_as_comma_map(fat: WeightedSlice, target: FatSliceComma) -> SimplicialMap:
    """The explicit comparison of a fat slice with its comma form."""
    Q = fat.d.target
    interval = standard_simplex(1)
    pr_t, pr_y = target.cylinder.legs

    def key_map(n: int, key: tuple) -> tuple:
        wj = fat.joins[n]
        f = SimplicialMap(wj.sset, Q, dict(key))
        top = SimplexRef(standard_simplex(n).level(n)[0])
        x = f.apply(wj.include_I.apply(top))
        prism = product(standard_simplex(n), target.cylinder.sset)
        images = []
        for g in prism.sset.generator_names():
            k = prism.sset.dim_of(g)
            sigma, z = prism.key_of(g)
            t = tuple(int(v) for v in interval.vertices(pr_t.apply(z)))
            inner = wj.inner.ref(k, _fat_key(sigma, t, pr_y.apply(z)))
            images.append((g, f.apply(wj.include_inner.apply(inner))))
        e = target.path.ref(n, tuple(sorted(images)))
        return (target.first.ref(n, (x, e)), point().degenerate_to(SimplexRef(point().level(0)[0]), n))

    return induced_map(fat.built, target.built, key_map)


def fat_slice_as_comma_check(p: SimplicialMap, d: Diagram, trunc: int) -> Verdict:
    """The fat slice against its comma form: an explicit isomorphism or a counterexample."""
    fat = fat_weighted_slice(p, d, trunc)
    other = fat_slice_comma(p, d, trunc)
    detail = f"fat slice f={fat.sset.f_vector()}, comma f={other.sset.f_vector()}"
    try:
        phi = fat_slice_as_comma_map(fat, other).validate()
    except StructureError as exc:
        return Verdict.counterexample(bound=trunc, witness=exc.where, detail=f"{detail}; {exc}")
    if not phi.is_isomorphism():
        missing = sorted(set(other.sset.generator_names()) - {r.base for r in phi.images.values()})
        return Verdict.counterexample(bound=trunc, witness=missing[0] if missing else None, detail=detail)
    return Verdict.verified(witness=phi, bound=trunc, detail=detail)


def fat_to_neat_slice_map(neat: WeightedSlice, fat: WeightedSlice) -> SimplicialMap:
    """Q^p_{/d} -> Q^p_{//d}: precomposition with the collapse Delta[n] <>^p J -> Delta[n] *^p J."""
    if neat.fat or not fat.fat or neat.p != fat.p or neat.d != fat.d or neat.trunc != fat.trunc:
        raise CompositionError("fat_to_neat_slice_map needs the neat and fat slices of the same data")
    collapses = [fat_to_neat(f, n) for f, n in zip(fat.joins, neat.joins)]
    Q = neat.d.target
    return induced_map(neat.built, fat.built, lambda n, key: _precompose(key, collapses[n], Q))


# =============================================================================
# Identifications
# =============================================================================


def conical_slice_map(weighted: WeightedSlice, conical: WeightedSlice) -> SimplicialMap:
    """Q^p_{/d} -> Q_{/d o p}: restriction along Delta[n] * J~ -> Delta[n] *^p J."""
    if conical.p != identity(weighted.p.source) or conical.trunc != weighted.trunc:
        raise CompositionError("the conical slice must be taken over d o p at the same truncation")
    Q = weighted.d.target
    unglue = [inverse(wj.include_inner) for wj in conical.joins]

    def key_map(n: int, key: tuple) -> tuple:
        wj = weighted.joins[n]
        restricted = SimplicialMap(wj.inner.sset, Q, dict(_precompose(key, wj.include_inner, Q)))
        return compose(restricted, unglue[n]).key()

    return induced_map(weighted.built, conical.built, key_map)


def nerve_slice_check(P: CatFunctor, D: CatFunctor, trunc: int) -> Verdict:
    """The weighted slice of N(D) along N(P) against the nerve of the cone category.

    P must be a discrete opfibration over the shape of D.
    """
    if P.target != D.source:
        raise CompositionError("P and D do not share a shape category")
    shape = nerve_construction(D.source)
    p = nerve_functor(P, nerve_construction(P.source), shape)
    d = nerve_functor(D, shape, nerve_construction(D.target))
    sliced = weighted_slice(p, d, trunc)
    cones, _ = weighted_cone_category(fibers(P), D)
    expected = nerve_construction(cones, trunc).sset
    witness = is_isomorphic(sliced.sset, expected)
    return Verdict.check(
        witness is not None,
        f"slice f={sliced.sset.f_vector()}, cone nerve f={expected.f_vector()}",
        bound=trunc,
        witness=witness,
    )


def slice_vertex_count(p: SimplicialMap, d: Diagram, n: int) -> int:
    """|maps Delta[n] *^p J -> Q under J|, counted directly."""
    wj = weighted_join(standard_simplex(n), p)
    return sum(1 for _ in iter_maps_under(wj.include_J, d))
