"""
The invariant suite: every structural identity wlim claims, run on the
built-in fixtures.

Each check returns one :class:`~wlim.report.Verdict` summarizing all of its
cases; the first failing case is reported.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import fixtures
from .enriched import (
    COMMA,
    comma_weight,
    constant_weight,
    cospan_cofibrant_weight,
    homotopy_pullback,
    maps_into_end,
    sset_cospan,
    weighted_cone_count,
    weighted_end,
)
from .errors import ParameterError
from .fincat import (
    cospan,
    nerve,
    ordinal,
    ordinary_limit,
    representable_weight,
    rectify,
    weighted_limit,
    weighted_limit_via_elements,
)
from .joins import APEX_BOTTOM, cone, levelwise_weighted_join_counts, weighted_join
from .limits import (
    conical_reduction_check,
    is_quasi_category,
    limit_methods_check,
    limit_uniqueness_check,
    slice_comparison_check,
    terminal_object_check,
    weighted_limit_vertex,
)
from .necklaces import (
    FlaggedNecklace,
    computation1_check,
    concat,
    concatenate,
    cofibrant_weight,
    decompose,
    flagged_necklaces,
    mainfact_check,
    mapping_space,
    realization_oracle,
    straightened_weight,
)
from .report import Verdict
from .slices import comma, fat_slice_as_comma_check, nerve_slice_check
from .sscore import (
    SimplexRef,
    SimplicialSet,
    boundary,
    cube,
    cube_boundary,
    horn,
    identity,
    is_isomorphic,
    opposite,
    point,
    standard_simplex,
    vertex_inclusion,
)

log = logging.getLogger(__name__)

TRUNC = 2
M_MAX = 2


@dataclass(frozen=True)
class Check:
    name: str
    suite: str
    description: str
    run: Callable[[], Verdict]


CHECKS: list[Check] = []


def check(suite: str, description: str):
    """Register a check under a suite name."""

    def register(fn: Callable[[], Verdict]) -> Callable[[], Verdict]:
        CHECKS.append(Check(fn.__name__, suite, description, fn))
        return fn

    return register


def suites() -> list[str]:
    return sorted({c.suite for c in CHECKS}) + ["all"]


def _summarize(cases: Iterable[tuple[str, Verdict]], bound: int | None = None) -> Verdict:
    count = 0
    for label, verdict in cases:
        if not verdict.ok:
            detail = f"{label}: {verdict.detail}" if verdict.detail else label
            return Verdict(verdict.status, verdict.bound, verdict.witness, detail)
        count += 1
    return Verdict.verified(bound=bound, detail=f"{count} case(s)")


def _vertex_pairs(J: SimplicialSet) -> Iterator[tuple[str, str]]:
    for x in J.vertex_names:
        for y in J.vertex_names:
            yield x, y


def _necklace_shapes() -> dict[str, SimplicialSet]:
    return {
        "Delta[2]": standard_simplex(2),
        "Delta[3]": standard_simplex(3),
        "Lambda^2[2]": horn(2, 2),
        "boundary[2]": boundary(2),
    }


def _nerve_diagrams() -> dict[str, fixtures.NerveDiagram]:
    D = fixtures.lattice_cospan()
    found = {
        "example0": fixtures.example0_nerves(),
        "conical": fixtures.conical_nerves(),
    }
    for j in cospan().objects:
        found[f"representable({j})"] = fixtures.nerve_diagram(representable_weight(cospan(), j), D)
    return found


# =============================================================================
# Joins
# =============================================================================


@check("joins", "levelwise cardinalities of weighted joins")
def levelwise_counts() -> Verdict:
    def cases():
        for I, p in fixtures.weighted_join_pairs():
            wj = weighted_join(I, p)
            for n in range(wj.sset.dim + 1):
                built = len(wj.sset.simplices(n))
                formula = levelwise_weighted_join_counts(I, p, n)
                yield f"{I!r} *^p {p.target!r} in degree {n}", Verdict.check(
                    built == formula, f"{built} simplices vs formula {formula}"
                )

    return _summarize(cases())


@check("joins", "the cone over the non-nerve cospan weight")
def example1_cone() -> Verdict:
    wj = cone(fixtures.example1_weight())
    X = wj.sset
    if X.f_vector() != (4, 6, 4, 1):
        return Verdict.counterexample(detail=f"f-vector {X.f_vector()}")
    bottom = wj.include_I.images[APEX_BOTTOM].base
    a, b, c = (wj.include_J.images[j].base for j in ("a", "b", "c"))
    top = SimplexRef(X.level(3)[0])
    rim = {X.face(top, i) for i in range(4)}
    extra = [t for t in X.level(2) if SimplexRef(t) not in rim]
    if len(extra) != 1:
        return Verdict.counterexample(witness=tuple(extra), detail=f"{len(extra)} triangles off the 3-simplex")
    tetra = X.vertices(top)
    triangle = X.vertices(SimplexRef(extra[0]))
    return Verdict.check(
        tetra == (bottom, c, b, b) and triangle == (bottom, a, b),
        f"3-simplex {top} on {tetra}, triangle {extra[0]} on {triangle}",
        witness=(top.base, extra[0]),
    )


# =============================================================================
# Necklaces
# =============================================================================


@check("necklaces", "mapping-space simplices against brute-force flagged necklaces")
def necklace_counts() -> Verdict:
    def cases():
        for name, J in _necklace_shapes().items():
            for x, y in _vertex_pairs(J):
                space = mapping_space(J, x, y, M_MAX).sset
                for m in range(M_MAX + 1):
                    built = len(space.simplices(m))
                    brute = len(flagged_necklaces(J, x, y, m))
                    yield f"{name} ({x},{y}) degree {m}", Verdict.check(
                        built == brute, f"{built} vs {brute}", bound=m
                    )

    return _summarize(cases(), M_MAX)


@check("necklaces", "mapping spaces against the colimit of cube cells")
def realization() -> Verdict:
    def cases():
        for name, J in _necklace_shapes().items():
            for x, y in _vertex_pairs(J):
                for m in range(M_MAX + 1):
                    yield f"{name} ({x},{y}) degree {m}", realization_oracle(J, x, y, m)

    return _summarize(cases(), M_MAX)


@check("necklaces", "Map(0, n) is a cube, and a cube boundary for boundaries of simplices")
def cube_identities() -> Verdict:
    def cases():
        for n in (1, 2, 3):
            actual = mapping_space(standard_simplex(n), "0", str(n), M_MAX).sset
            witness = is_isomorphic(actual, cube(n - 1))
            yield f"Delta[{n}]", Verdict.check(witness is not None, f"f={actual.f_vector()}", M_MAX, witness)
        for n in (2, 3):
            actual = mapping_space(boundary(n), "0", str(n), M_MAX).sset
            witness = is_isomorphic(actual, cube_boundary(n - 1))
            yield f"boundary[{n}]", Verdict.check(witness is not None, f"f={actual.f_vector()}", M_MAX, witness)
        over_point = identity(point())
        for n in (1, 2):
            yield f"Delta[{n}] * point, to n", computation1_check(over_point, n, "full")
            yield f"Delta[{n}] * point, to the point", computation1_check(over_point, n, "full", "0")
        for n in (2, 3):
            yield f"boundary[{n}] * point, to n", computation1_check(over_point, n, "boundary")
        yield "boundary[2] * point, to the point", computation1_check(over_point, 2, "boundary", "0")

    return _summarize(cases(), M_MAX)


def _mainfact_fixtures() -> Iterator[tuple[str, SimplicialSet, object]]:
    shapes = {"point": point(), "Delta[1]": standard_simplex(1), "boundary[2]": boundary(2)}
    weights = {
        "id(point)": identity(point()),
        "id(Delta[1])": identity(standard_simplex(1)),
        "0 -> Delta[1]": vertex_inclusion(1, 0),
        "example1": fixtures.example1_weight(),
    }
    for i_name, I in shapes.items():
        for p_name, p in weights.items():
            yield f"{i_name} *^{p_name}", I, p


@check("necklaces", "product formula for mapping spaces of weighted joins")
def mainfact() -> Verdict:
    def cases():
        for label, I, p in _mainfact_fixtures():
            wj = weighted_join(I, p)
            a, a2 = I.vertex_names[0], I.vertex_names[-1]
            b, b2 = p.target.vertex_names[0], p.target.vertex_names[-1]
            for bb in p.target.vertex_names:
                yield f"{label}: Map({a}, {bb})", mainfact_check(wj, a, bb, M_MAX, part=1)
            yield f"{label}: Map({a}, {a2})", mainfact_check(wj, a, a2, M_MAX, part=2)
            yield f"{label}: Map({b}, {b2})", mainfact_check(wj, b, b2, M_MAX, part=3)
            yield f"{label}: Map({b}, {a})", mainfact_check(wj, a, b, M_MAX, part=4)

    return _summarize(cases(), M_MAX)


@check("necklaces", "decompose and concat are inverse")
def decomposition_round_trip() -> Verdict:
    def cases():
        for label, I, p in _mainfact_fixtures():
            wj = weighted_join(I, p)
            W = wj.sset
            for x, y in _vertex_pairs(W):
                space = mapping_space(W, x, y, 1)
                for g in space.sset.generator_names():
                    tau = space.key_of(g)
                    back = concat(wj, decompose(wj, tau))
                    yield f"{label}: {tau.label()}", Verdict.check(back == tau, f"came back as {back.label()}")

    return _summarize(cases(), 1)


# =============================================================================
# Cofibrant weights
# =============================================================================


@check("cofibrant", "straightening the cospan shape against its rectification")
def cospan_straightening() -> Verdict:
    shape = cospan()
    W = straightened_weight(shape, M_MAX)
    N = nerve(shape)

    def cases():
        expected = {"a": point(), "b": horn(2, 0), "c": point()}
        for j in shape.objects:
            witness = is_isomorphic(W(j), expected[j])
            yield f"value at {j}", Verdict.check(witness is not None, f"f={W(j).f_vector()}", M_MAX, witness)
            over = opposite(rectify(identity(N), shape, j).sset)
            witness = is_isomorphic(W(j), over)
            found = Verdict.check(witness is not None, f"f={over.f_vector()}", M_MAX, witness)
            yield f"rectified value at {j}", found
        flipped = is_isomorphic(W("b"), horn(2, 2))
        outward = Verdict.check(flipped is None, "edges run out of the direct necklace")
        yield "value at b is not the inward span", outward

    return _summarize(cases(), M_MAX)


@check("cofibrant", "straightening over a simplex gives cubes; the action is unital and associative")
def simplex_straightening() -> Verdict:
    def cases():
        for n in (1, 2):
            cof = cofibrant_weight(identity(nerve(ordinal(n))), M_MAX)
            value = cof.value(str(n))
            witness = is_isomorphic(value, cube(n))
            yield f"Delta[{n}] at {n}", Verdict.check(witness is not None, f"f={value.f_vector()}", M_MAX, witness)
        J = nerve(ordinal(2))
        cof = cofibrant_weight(identity(J), M_MAX)
        first = cof.values["0"]
        for g in first.sset.generator_names():
            nu = first.key_of(g)
            m = nu.degree
            unit = FlaggedNecklace("0", (), ((0,),) * (m + 1))
            yield f"unit on {nu.label()}", Verdict.check(cof.act(unit, nu) == nu, "identity necklace moves nu")
            tau1 = FlaggedNecklace("0", ("0<1",), ((0, 1),) * (m + 1))
            tau2 = FlaggedNecklace("1", ("1<2",), ((0, 1),) * (m + 1))
            stepwise = cof.act(tau2, cof.act(tau1, nu))
            at_once = cof.act(concatenate(J, tau1, tau2), nu)
            yield f"associativity on {nu.label()}", Verdict.check(stepwise == at_once, "actions disagree")

    return _summarize(cases(), M_MAX)


# =============================================================================
# Limits
# =============================================================================


@check("limits", "weighted and conical limits of a lattice cospan")
def example0_limits() -> Verdict:
    def cases():
        D = fixtures.lattice_cospan()
        for label, W in (("example0", fixtures.example0_weight()), ("conical", fixtures.conical_weight())):
            direct = weighted_limit(W, D)
            via = weighted_limit_via_elements(W, D)
            apexes = (direct and direct.apex, via and via.apex)
            yield f"{label} in the lattice", Verdict.check(apexes == ("{}", "{}"), f"apexes {apexes}")
        ordinary = ordinary_limit(D)
        yield "pullback", Verdict.check(ordinary is not None and ordinary.apex == "{}", f"{ordinary}")
        missing = weighted_limit(fixtures.example0_weight(), fixtures.meetless_cospan())
        yield "no lower bound", Verdict.check(missing is None, f"found {missing}")
        for label, nd in (("example0", fixtures.example0_nerves()), ("conical", fixtures.conical_nerves())):
            found = weighted_limit_vertex(nd.p, nd.d, TRUNC, TRUNC)
            yield f"{label} via slices", Verdict.check(found.apex == "{}", f"apex {found.apex}", TRUNC)

    return _summarize(cases(), TRUNC)


@check("limits", "nerves of the fixture categories are quasi-categories")
def nerves_are_quasi_categories() -> Verdict:
    def cases():
        for name, C in fixtures.nerve_shapes().items():
            yield name, is_quasi_category(nerve(C), 3)

    return _summarize(cases(), 3)


@check("limits", "terminal vertices of nerves are the terminal objects")
def terminal_transport() -> Verdict:
    def cases():
        for name, C in fixtures.nerve_shapes().items():
            yield name, terminal_object_check(C, 3)

    return _summarize(cases(), 3)


@check("limits", "the slice and lifting searches find the same limits")
def two_path_agreement() -> Verdict:
    def cases():
        for label, nd in _nerve_diagrams().items():
            yield label, limit_methods_check(nd.p, nd.d, TRUNC, TRUNC)
        nd = fixtures.nerve_diagram(fixtures.example0_weight(), fixtures.meetless_cospan())
        yield "without a lower bound", limit_methods_check(nd.p, nd.d, TRUNC, TRUNC)

    return _summarize(cases(), TRUNC)


@check("limits", "weighted slices are conical slices, with matching limit cones")
def conical_reduction() -> Verdict:
    def cases():
        diagrams = _nerve_diagrams()
        d = diagrams["conical"].d
        for label, nd in diagrams.items():
            yield label, conical_reduction_check(nd.p, nd.d, TRUNC)
        yield "example1", conical_reduction_check(fixtures.example1_weight(), d, TRUNC)

    return _summarize(cases(), TRUNC)


@check("limits", "limit apexes are unique up to isomorphism")
def limit_uniqueness() -> Verdict:
    def cases():
        for label, nd in _nerve_diagrams().items():
            verdict = limit_uniqueness_check(nd.p, nd.d, TRUNC, TRUNC)
            if verdict.status.value != "none-found":
                yield label, verdict

    return _summarize(cases(), TRUNC)


@check("slices", "fat slices are commas")
def fat_slices() -> Verdict:
    def cases():
        for label, nd in _nerve_diagrams().items():
            yield label, fat_slice_as_comma_check(nd.p, nd.d, TRUNC)

    return _summarize(cases(), TRUNC)


@check("slices", "neat and fat weighted slices have equivalent homotopy categories")
def slice_comparison() -> Verdict:
    def cases():
        for label, nd in _nerve_diagrams().items():
            yield label, slice_comparison_check(nd.p, nd.d, TRUNC)

    return _summarize(cases(), TRUNC)


@check("slices", "weighted slices of nerves are nerves of weighted cone categories")
def nerve_slices() -> Verdict:
    def cases():
        for label, nd in _nerve_diagrams().items():
            yield label, nerve_slice_check(nd.P, nd.diagram, TRUNC)
        for label, W in (("example0", fixtures.example0_weight()), ("conical", fixtures.conical_weight())):
            nd = fixtures.nerve_diagram(W, fixtures.meetless_cospan())
            yield f"{label} without a lower bound", nerve_slice_check(nd.P, nd.diagram, TRUNC)

    return _summarize(cases(), TRUNC)


# =============================================================================
# Enriched limits
# =============================================================================


def _cospans():
    F, G = vertex_inclusion(1, 0), vertex_inclusion(1, 1)
    same = vertex_inclusion(1, 1)
    return {"0 -> Delta[1] <- 1": (F, G), "1 -> Delta[1] <- 1": (same, same)}


@check("enriched", "maps into weighted ends are weighted cones")
def end_universal_property() -> Verdict:
    def cases():
        for label, (F, G) in _cospans().items():
            D = sset_cospan(F, G)
            weights = {
                "point": constant_weight(cospan()),
                "comma": comma_weight(),
                "cofibrant": cospan_cofibrant_weight(M_MAX),
            }
            for w_name, W in weights.items():
                end = weighted_end(W, D, TRUNC)
                for A in (standard_simplex(0), standard_simplex(1)):
                    into = maps_into_end(A, end)
                    cones = weighted_cone_count(W, D, A, TRUNC)
                    yield f"{label}, {w_name} weight, A={A!r}", Verdict.check(
                        into == cones, f"{into} maps vs {cones} cones", TRUNC
                    )

    return _summarize(cases(), TRUNC)


@check("enriched", "the comma weight computes the comma object")
def comma_via_end() -> Verdict:
    def cases():
        for label, (F, G) in _cospans().items():
            by_end = homotopy_pullback(F, G, COMMA, TRUNC).sset
            by_pullback = comma(F, G, TRUNC).sset
            witness = is_isomorphic(by_end, by_pullback)
            yield label, Verdict.check(
                witness is not None,
                f"end f={by_end.f_vector()}, comma f={by_pullback.f_vector()}",
                TRUNC,
                witness,
            )

    return _summarize(cases(), TRUNC)


def selected(suite: str) -> list[Check]:
    if suite == "all":
        return list(CHECKS)
    chosen = [c for c in CHECKS if c.suite == suite]
    if not chosen:
        raise ParameterError(f"unknown suite {suite!r}; choose from {', '.join(suites())}")
    return chosen


def run_suite(suite: str = "all") -> list[tuple[Check, Verdict]]:
    results = []
    for c in selected(suite):
        log.debug("running %s", c.name)
        results.append((c, c.run()))
    return results
