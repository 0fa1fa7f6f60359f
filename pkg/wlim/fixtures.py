"""
Named example objects.

The same objects ship as JSON in ``fixtures/``; these builders are what the
invariant suite and the tests use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .fincat import (
    CatFunctor,
    FinCategory,
    SetWeight,
    boolean_lattice,
    category_of_elements,
    constant_weight,
    cospan,
    discrete_category,
    nerve_construction,
    nerve_functor,
    ordinal,
    poset_category,
)
from .sscore import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    boundary,
    horn,
    identity,
    point,
    standard_simplex,
    vertex_inclusion,
)


def _ref(base: str, *degens: int) -> SimplexRef:
    return SimplexRef(base, tuple(degens))


# =============================================================================
# Example 0: a weight on the cospan shape
# =============================================================================


def example0_weight() -> SetWeight:
    """W(a) = {0}, W(b) = {0, 1}, W(c) = {1}, with the two inclusions."""
    return SetWeight.build(
        cospan(),
        {"a": ["0"], "b": ["0", "1"], "c": ["1"]},
        {"f": {"0": "0"}, "g": {"1": "1"}},
    )


def lattice_cospan() -> CatFunctor:
    """{x} -> {x,y} <- {y} in the Boolean lattice on {x, y}."""
    lattice = boolean_lattice(["x", "y"])
    return CatFunctor.between(cospan(), lattice, {"a": "{x}", "b": "{x,y}", "c": "{y}"})


def meetless_cospan() -> CatFunctor:
    """x -> top <- y in a poset where x and y have no lower bound."""
    order = {("x", "top"), ("y", "top")}
    P = poset_category(["x", "y", "top"], lambda a, b: a == b or (a, b) in order)
    return CatFunctor.between(cospan(), P, {"a": "x", "b": "top", "c": "y"})


def conical_weight() -> SetWeight:
    return constant_weight(cospan())


# =============================================================================
# Nerve transports
# =============================================================================


@dataclass(frozen=True, eq=False)
class NerveDiagram:
    """p: N(el W) -> N(J) and d: N(J) -> N(C) for a Set-weight W and diagram D."""

    weight: SetWeight
    diagram: CatFunctor
    p: SimplicialMap
    d: SimplicialMap
    P: CatFunctor


def nerve_diagram(W: SetWeight, D: CatFunctor) -> NerveDiagram:
    E, P = category_of_elements(W)
    shape = nerve_construction(D.source)
    p = nerve_functor(P, nerve_construction(E), shape)
    d = nerve_functor(D, shape, nerve_construction(D.target))
    return NerveDiagram(W, D, p, d, P)


def example0_nerves() -> NerveDiagram:
    return nerve_diagram(example0_weight(), lattice_cospan())


def conical_nerves() -> NerveDiagram:
    return nerve_diagram(conical_weight(), lattice_cospan())


# =============================================================================
# Example 1: a weight over the nerve of the cospan that is not a nerve
# =============================================================================


def example1_tilde() -> SimplicialSet:
    """Vertices a0, b0, b1, c0; a triangle c0 -> b0 -> b1 and an edge a0 -> b1."""
    generators = (
        ("a0", "b0", "b1", "c0"),
        ("a0b1", "b0b1", "c0b0", "c0b1"),
        ("c0b0b1",),
    )
    faces = {
        "a0": (),
        "b0": (),
        "b1": (),
        "c0": (),
        "a0b1": (_ref("b1"), _ref("a0")),
        "b0b1": (_ref("b1"), _ref("b0")),
        "c0b0": (_ref("b0"), _ref("c0")),
        "c0b1": (_ref("b1"), _ref("c0")),
        "c0b0b1": (_ref("b0b1"), _ref("c0b1"), _ref("c0b0")),
    }
    return SimplicialSet(generators, faces, 2).validate()


def example1_weight() -> SimplicialMap:
    """p: J~ -> N(a -f-> b <-g- c), collapsing b0 -> b1 to the identity of b."""
    tilde = example1_tilde()
    base = nerve_construction(cospan()).sset
    images = {
        "a0": _ref("a"),
        "b0": _ref("b"),
        "b1": _ref("b"),
        "c0": _ref("c"),
        "a0b1": _ref("f"),
        "b0b1": _ref("b", 0),
        "c0b0": _ref("g"),
        "c0b1": _ref("g"),
        "c0b0b1": _ref("g", 1),
    }
    return SimplicialMap(tilde, base, images).validate()


def cospan_horn() -> SimplicialSet:
    """Lambda^2[2], the nerve of the cospan shape up to renaming."""
    return horn(2, 2)


# =============================================================================
# Small weights for the levelwise counting oracle
# =============================================================================


def _inclusions() -> Iterator[SimplicialMap]:
    yield identity(point())
    yield identity(standard_simplex(1))
    yield identity(standard_simplex(2))
    yield identity(boundary(2))
    yield identity(horn(2, 1))
    yield vertex_inclusion(1, 0)
    yield vertex_inclusion(1, 1)
    yield vertex_inclusion(2, 1)


def weighted_join_pairs() -> list[tuple[SimplicialSet, SimplicialMap]]:
    """Pairs (I, p) small enough for exhaustive comparisons."""
    shapes = [point(), standard_simplex(1), boundary(2), standard_simplex(2)]
    weights = list(_inclusions()) + [example1_weight()]
    pairs = []
    for I in shapes:
        for p in weights:
            pairs.append((I, p))
    return pairs


def nerve_shapes() -> dict[str, FinCategory]:
    return {
        "[0]": ordinal(0),
        "[1]": ordinal(1),
        "[2]": ordinal(2),
        "cospan": cospan(),
        "lattice": boolean_lattice(["x", "y"]),
        "two points": discrete_category(["x", "y"]),
    }


FIXTURES: dict[str, Callable[[], object]] = {
    "delta2": lambda: standard_simplex(2),
    "delta3": lambda: standard_simplex(3),
    "horn22": cospan_horn,
    "boundary2": lambda: boundary(2),
    "example0-weight": example0_weight,
    "lattice-cospan": lattice_cospan,
    "meetless-cospan": meetless_cospan,
    "example1-tilde": example1_tilde,
    "example1-weight": example1_weight,
}
