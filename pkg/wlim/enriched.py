"""
Simplicially enriched weighted limits over finite ordinary shapes.

lim^W D is the end of D(j)^{W(j)}: the equalizer of

    prod_j D(j)^{W(j)}  ==>  prod_{f: j -> j'} D(j')^{W(j)}

where one map postcomposes with D(f) and the other precomposes with W(f).
Exponentials are truncated, so the end is too.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import CompositionError, ParameterError
from .fincat import FinCategory, SSetDiagram, SSetWeight, constant_sset_weight, cospan
from .necklaces import straightened_weight
from .sscore import (
    Construction,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    equalizer,
    exponential,
    exponential_pushforward,
    exponential_restriction,
    identity,
    induced_map,
    iter_maps,
    point,
    product,
    product_many,
    standard_simplex,
)

log = logging.getLogger(__name__)

COSPAN_COFIBRANT = "cospan_cofibrant"
COMMA = "comma"


@dataclass(frozen=True, eq=False)
class WeightedEnd:
    """lim^W D with the cotensors it was cut out of."""

    weight: SSetWeight
    diagram: SSetDiagram
    trunc: int
    cotensors: dict[str, Construction]
    built: Construction

    @property
    def sset(self) -> SimplicialSet:
        return self.built.sset

    @property
    def inclusion(self) -> SimplicialMap:
        """lim^W D -> prod_j D(j)^{W(j)}."""
        return self.built.legs[0]


def weighted_end(W: SSetWeight, D: SSetDiagram, trunc: int) -> WeightedEnd:
    """The W-weighted limit of D, up to degree ``trunc``."""
    J = W.category
    if D.category != J:
        raise CompositionError("weight and diagram live over different shapes")
    if trunc < 0:
        raise ParameterError(f"truncation must be >= 0, got {trunc}")
    objects = list(J.objects)
    slot = {j: i for i, j in enumerate(objects)}
    cotensors = {j: exponential(D(j), W(j), trunc) for j in objects}
    total = product_many([cotensors[j].sset for j in objects])
    arrows = J.non_identities()
    if not arrows:
        built = equalizer(identity(total.sset), identity(total.sset))
        return WeightedEnd(W, D, trunc, cotensors, built)
    targets = {f: exponential(D(J.cod(f)), W(J.dom(f)), trunc) for f in arrows}
    mixed = product_many([targets[f].sset for f in arrows])
    post = {f: exponential_pushforward(cotensors[J.dom(f)], targets[f], D.action[f]) for f in arrows}
    pre = {
        f: exponential_restriction(D(J.cod(f)), cotensors[J.cod(f)], targets[f], W.action[f])
        for f in arrows
    }

    def pushed(n: int, key: tuple) -> tuple:
        return tuple(post[f].apply(key[slot[J.dom(f)]]) for f in arrows)

    def pulled(n: int, key: tuple) -> tuple:
        return tuple(pre[f].apply(key[slot[J.cod(f)]]) for f in arrows)

    built = equalizer(induced_map(total, mixed, pushed), induced_map(total, mixed, pulled))
    log.debug("weighted end over %r: %r", J, built.sset)
    return WeightedEnd(W, D, trunc, cotensors, built)


# =============================================================================
# Standard weights and diagrams
# =============================================================================


def constant_weight(J: FinCategory, X: Optional[SimplicialSet] = None) -> SSetWeight:
    """The weight constant at X (a point by default)."""
    return constant_sset_weight(J, X if X is not None else point())


def comma_weight() -> SSetWeight:
    """{0} -> Delta[1] <- {1} on the cospan shape."""
    shape = cospan()
    interval = standard_simplex(1)
    start, end = point("0"), point("1")
    values = {"a": start, "b": interval, "c": end}
    action = {
        "f": SimplicialMap(start, interval, {"0": SimplexRef("0")}),
        "g": SimplicialMap(end, interval, {"1": SimplexRef("1")}),
    }
    for o in shape.objects:
        action[shape.identity(o)] = identity(values[o])
    return SSetWeight(shape, values, action).validate()


def sset_cospan(F: SimplicialMap, G: SimplicialMap) -> SSetDiagram:
    """The cospan A -F-> B <-G- C as a diagram on the cospan shape."""
    if F.target != G.target:
        raise CompositionError("a cospan needs maps into a common target")
    shape = cospan()
    values = {"a": F.source, "b": F.target, "c": G.source}
    action = {"f": F, "g": G}
    for o in shape.objects:
        action[shape.identity(o)] = identity(values[o])
    return SSetWeight(shape, values, action).validate()


def cospan_cofibrant_weight(m_max: int = 2) -> SSetWeight:
    """The cofibrant replacement of the constant point weight on the cospan shape."""
    return straightened_weight(cospan(), m_max)


def homotopy_pullback(
    F: SimplicialMap, G: SimplicialMap, weight_choice: str = COSPAN_COFIBRANT, trunc: int = 2
) -> WeightedEnd:
    """A x^h_B C as a weighted end, with the cofibrant cospan weight or the comma weight.

    No Kan condition is checked on A, B or C.
    """
    if weight_choice == COSPAN_COFIBRANT:
        W = cospan_cofibrant_weight()
    elif weight_choice == COMMA:
        W = comma_weight()
    else:
        raise ParameterError(f"unknown weight {weight_choice!r}; use {COSPAN_COFIBRANT!r} or {COMMA!r}")
    return weighted_end(W, sset_cospan(F, G), trunc)


# =============================================================================
# Universal property
# =============================================================================


def _natural_families(W: SSetWeight, D: SSetDiagram, A: SimplicialSet) -> Iterator[dict[str, SimplicialMap]]:
    """Families A x W(j) -> D(j) natural in j."""
    J = W.category
    objects = list(J.objects)
    cylinders = {j: product(A, W(j)) for j in objects}
    shifts: dict[str, SimplicialMap] = {}
    for f in J.non_identities():
        a, b = J.arrows[f]
        u = W.action[f]
        shifts[f] = induced_map(cylinders[a], cylinders[b], lambda n, key, u=u: (key[0], u.apply(key[1])))
    chosen: dict[str, SimplicialMap] = {}

    def natural(j: str) -> bool:
        for f in J.non_identities():
            a, b = J.arrows[f]
            if j not in (a, b) or a not in chosen or b not in chosen:
                continue
            cyl = cylinders[a].sset
            for g in cyl.generator_names():
                x = SimplexRef(g)
                if D.action[f].apply(chosen[a].apply(x)) != chosen[b].apply(shifts[f].apply(x)):
                    return False
        return True

    def extend(position: int) -> Iterator[dict[str, SimplicialMap]]:
        if position == len(objects):
            yield dict(chosen)
            return
        j = objects[position]
        for phi in iter_maps(cylinders[j].sset, D(j)):
            chosen[j] = phi
            if natural(j):
                yield from extend(position + 1)
            del chosen[j]

    yield from extend(0)


def weighted_cone_count(W: SSetWeight, D: SSetDiagram, A: SimplicialSet, trunc: int = 2) -> int:
    """The number of W-weighted cones over D with apex A.

    ``trunc`` is the truncation of the end the count is compared with.
    Apexes of higher dimension are refused.
    """
    if D.category != W.category:
        raise CompositionError("weight and diagram live over different shapes")
    if trunc < 0:
        raise ParameterError(f"truncation must be >= 0, got {trunc}")
    if A.dim > trunc:
        raise ParameterError(f"apex of dimension {A.dim} lies above the truncation {trunc}")
    return sum(1 for _ in _natural_families(W, D, A))


def maps_into_end(A: SimplicialSet, end: WeightedEnd) -> int:
    """|sSet(A, lim^W D)|, for comparison with :func:`weighted_cone_count`."""
    return sum(1 for _ in iter_maps(A, end.sset))
