"""
Terminal vertices and weighted limits in quasi-categories.

Every check here is a bounded lifting search and reports a :class:`Verdict`
with the bound it was run at. For nerves of categories the bound 3 is a
complete certificate, since nerves are 2-coskeletal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import ParameterError, StructureError
from .fincat import CatFunctor, FinCategory, is_equivalence, isomorphic_objects, nerve, terminal_objects
from .joins import weighted_join, weighted_join_map
from .report import Verdict
from .slices import (
    Diagram,
    conical_slice_map,
    fat_to_neat_slice_map,
    fat_weighted_slice,
    slice_over,
    weighted_slice,
)
from .sscore import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    boundary,
    boundary_inclusion,
    compose,
    horn,
    horn_inclusion,
    iter_maps,
    iter_maps_under,
    map_label,
    standard_simplex,
)

log = logging.getLogger(__name__)


def _reach(Q: SimplicialSet, n_max: int) -> int:
    return min(n_max, Q.dim) if Q.truncated else n_max


def _extends(inclusion: SimplicialMap, h: SimplicialMap) -> bool:
    return next(iter_maps_under(inclusion, h), None) is not None


def is_quasi_category(Q: SimplicialSet, n_max: int = 3) -> Verdict:
    """Inner horn fillers Lambda^k[n] -> Q for 0 < k < n <= n_max."""
    bound = _reach(Q, n_max)
    for n in range(2, bound + 1):
        for k in range(1, n):
            inclusion = horn_inclusion(n, k)
            for h in iter_maps(horn(n, k), Q):
                if not _extends(inclusion, h):
                    log.debug("no filler for Lambda^%d[%d] -> Q", k, n)
                    return Verdict.counterexample(
                        witness=f"Lambda^{k}[{n}]: {map_label(h.key())}",
                        bound=bound,
                        detail=f"inner horn Lambda^{k}[{n}] has no filler",
                    )
    return Verdict.verified(bound=bound, detail=f"inner horns fill up to dimension {bound}")


def is_terminal_vertex(Q: SimplicialSet, t: str, n_max: int = 3) -> Verdict:
    """Every boundary d(Delta[n]) -> Q ending at t extends to Delta[n], for 1 <= n <= n_max."""
    if Q.dim_of(t) != 0:
        raise StructureError(f"{t!r} is not a vertex", where=t)
    bound = _reach(Q, n_max)
    for n in range(1, bound + 1):
        inclusion = boundary_inclusion(n)
        for h in iter_maps(boundary(n), Q, fixed={str(n): SimplexRef(t)}):
            if not _extends(inclusion, h):
                return Verdict.counterexample(
                    witness=map_label(h.key()), bound=bound, detail=f"sphere of dimension {n - 1} does not fill"
                )
    return Verdict.verified(bound=bound, detail=f"terminal up to dimension {bound}")


def terminal_vertices(Q: SimplicialSet, n_max: int = 3) -> list[str]:
    return [v for v in Q.vertex_names if is_terminal_vertex(Q, v, n_max).ok]


# =============================================================================
# Weighted limits
# =============================================================================


@dataclass(frozen=True, eq=False)
class LimitResult:
    """Limit cones found by a search: vertex names of the weighted slice."""

    vertices: tuple[str, ...]
    cones: tuple[SimplicialMap, ...]
    apexes: tuple[str, ...]
    verdict: Verdict

    @property
    def vertex(self) -> Optional[str]:
        return self.vertices[0] if self.vertices else None

    @property
    def cone(self) -> Optional[SimplicialMap]:
        return self.cones[0] if self.cones else None

    @property
    def apex(self) -> Optional[str]:
        return self.apexes[0] if self.apexes else None


def _apex(cone: SimplicialMap, I_vertex: SimplexRef) -> str:
    return cone.apply(I_vertex).base


def _result(names: Sequence[str], cones: Sequence[SimplicialMap], apex_of: SimplexRef, bound: int) -> LimitResult:
    apexes = tuple(_apex(c, apex_of) for c in cones)
    if names:
        detail = f"{len(names)} limit cone(s), apex {apexes[0]}"
        verdict = Verdict.verified(witness=names[0], bound=bound, detail=detail)
    else:
        verdict = Verdict.none_found(bound=bound, detail="no weighted cone is terminal")
    return LimitResult(tuple(names), tuple(cones), apexes, verdict)


def _limit_by_slice(p: SimplicialMap, d: Diagram, trunc: int, n_max: int) -> LimitResult:
    sliced = weighted_slice(p, d, trunc)
    bound = min(n_max, trunc)
    names = terminal_vertices(sliced.sset, bound)
    cones = [sliced.cone(v) for v in names]
    apex_of = sliced.joins[0].include_I.images["0"]
    return _result(names, cones, apex_of, bound)


def _maps_satisfying(
    X: SimplicialSet, Q: SimplicialSet, constraints: Sequence[tuple[SimplicialMap, SimplicialMap]]
) -> Iterator[SimplicialMap]:
    """Maps f: X -> Q with f o u = v for every (u, v)."""
    fixed: dict[str, SimplexRef] = {}
    for u, v in constraints:
        for g, r in u.images.items():
            if not r.degens and fixed.setdefault(r.base, v.images[g]) != v.images[g]:
                return
    for f in iter_maps(X, Q, fixed=fixed):
        if all(f.apply(r) == v.images[g] for u, v in constraints for g, r in u.images.items()):
            yield f


def _lifts_against_boundaries(p: SimplicialMap, d: Diagram, cone: SimplicialMap, n_max: int) -> bool:
    """Every d(Delta[n]) *^p J -> Q under J ending at ``cone`` extends over Delta[n] *^p J."""
    Q = d.target
    apex = weighted_join(standard_simplex(0), p)
    for n in range(1, n_max + 1):
        rim = weighted_join(boundary(n), p)
        full = weighted_join(standard_simplex(n), p)
        inclusion = weighted_join_map(boundary_inclusion(n), rim, full)
        last = SimplicialMap(standard_simplex(0), boundary(n), {"0": SimplexRef(str(n))})
        at_last = weighted_join_map(last, apex, rim)
        for h in _maps_satisfying(rim.sset, Q, [(rim.include_J, d), (at_last, cone)]):
            if not _extends(inclusion, h):
                return False
    return True


def _limit_by_lifting(p: SimplicialMap, d: Diagram, n_max: int) -> LimitResult:
    apex = weighted_join(standard_simplex(0), p)
    candidates = list(iter_maps_under(apex.include_J, d))
    found = [c for c in candidates if _lifts_against_boundaries(p, d, c, n_max)]
    names = [map_label(c.key()) for c in found]
    return _result(names, found, apex.include_I.images["0"], n_max)


def weighted_limit_vertex(
    p: SimplicialMap, d: Diagram, trunc: int = 2, n_max: int = 2, method: str = "slice"
) -> LimitResult:
    """p-weighted limit cones over d, as terminal vertices of the weighted slice.

    ``method="lifting"`` solves the transposed lifting problems against
    d(Delta[n]) *^p J -> Delta[n] *^p J directly instead of building the slice.
    """
    if method == "slice":
        return _limit_by_slice(p, d, trunc, n_max)
    if method == "lifting":
        return _limit_by_lifting(p, d, n_max)
    raise ParameterError(f"unknown method {method!r}")


def conical_reduction_check(p: SimplicialMap, d: Diagram, trunc: int = 2) -> Verdict:
    """Q^p_{/d} against Q_{/d o p}: an isomorphism carrying limit cones to limit cones."""
    weighted = weighted_slice(p, d, trunc)
    conical = slice_over(compose(d, p), trunc)
    detail = f"weighted f={weighted.sset.f_vector()}, conical f={conical.sset.f_vector()}"
    try:
        phi = conical_slice_map(weighted, conical).validate()
    except StructureError as exc:
        return Verdict.counterexample(witness=exc.where, bound=trunc, detail=f"{detail}; {exc}")
    if not phi.is_isomorphism():
        return Verdict.counterexample(bound=trunc, detail=f"{detail}; restriction is not bijective")
    ours = sorted(phi.images[v].base for v in terminal_vertices(weighted.sset, trunc))
    theirs = sorted(terminal_vertices(conical.sset, trunc))
    if ours != theirs:
        return Verdict.counterexample(bound=trunc, detail=f"{detail}; limit cones {ours} vs {theirs}")
    return Verdict.verified(witness=phi, bound=trunc, detail=f"{detail}; {len(ours)} limit cone(s) correspond")


def limit_methods_check(p: SimplicialMap, d: Diagram, trunc: int = 2, n_max: int = 2) -> Verdict:
    """The slice search and the direct lifting search find the same limit apexes."""
    bound = min(trunc, n_max)
    by_slice = weighted_limit_vertex(p, d, trunc, bound, method="slice")
    by_lifting = weighted_limit_vertex(p, d, trunc, bound, method="lifting")
    ours, theirs = sorted(by_slice.apexes), sorted(by_lifting.apexes)
    same = ours == theirs and by_slice.verdict.status is by_lifting.verdict.status
    detail = f"slice {ours} ({by_slice.verdict.status.value}), lifting {theirs} ({by_lifting.verdict.status.value})"
    return Verdict.check(same, detail, bound=bound)


def terminal_object_check(C: FinCategory, n_max: int = 3) -> Verdict:
    """Terminal vertices of N(C) are exactly the terminal objects of C."""
    found = sorted(terminal_vertices(nerve(C), n_max))
    expected = sorted(terminal_objects(C))
    return Verdict.check(found == expected, f"terminal vertices {found}, terminal objects {expected}", bound=n_max)


# =============================================================================
# Homotopy categories
# =============================================================================


@dataclass(frozen=True, eq=False)
class HoCategory:
    """ho(Q) with the class of every edge of Q."""

    category: FinCategory
    classes: dict[SimplexRef, str]
    source: SimplicialSet

    def arrow_of(self, edge: SimplexRef) -> str:
        return self.classes[edge]


def ho_category(Q: SimplicialSet) -> HoCategory:
    """Vertices, and edges modulo homotopy; composites come from 2-simplices.

    Raises StructureError when some composable pair has no 2-simplex witness
    or two witnesses disagree, i.e. when Q is not a quasi-category.
    """
    if Q.truncated and Q.dim < 2:
        raise StructureError("homotopy categories need simplices up to dimension 2")
    edges = list(Q.simplices(1))
    triangles = Q.simplices(2)
    parent = {e: e for e in edges}

    def find(e: SimplexRef) -> SimplexRef:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a: SimplexRef, b: SimplexRef) -> None:
        a, b = find(a), find(b)
        if a != b:
            if (not b.degens, b.base) < (not a.degens, a.base):
                a, b = b, a
            parent[b] = a

    for sigma in triangles:
        d0, d1, d2 = (Q.face(sigma, i) for i in range(3))
        if d0.degens:
            union(d1, d2)
        if d2.degens:
            union(d0, d1)
    names: dict[SimplexRef, str] = {}
    taken = set(Q.generator_names())
    for e in sorted({find(e) for e in edges}, key=lambda r: (not r.degens, r.base)):
        if e.degens:
            label = f"id_{e.base}"
            while label in taken:
                label += "'"
        else:
            label = e.base
        taken.add(label)
        names[e] = label
    classes = {e: names[find(e)] for e in edges}
    arrows = {
        names[rep]: tuple(Q.vertices(rep)[i] for i in (0, 1)) for rep in names
    }
    identities = {v: classes[Q.degeneracy(SimplexRef(v), 0)] for v in Q.vertex_names}
    table: dict[tuple[str, str], str] = {}
    for sigma in triangles:
        f, g, h = classes[Q.face(sigma, 2)], classes[Q.face(sigma, 0)], classes[Q.face(sigma, 1)]
        if table.setdefault((g, f), h) != h:
            raise StructureError(f"{g} o {f} has two different composites", where=sigma.base)
    for g in arrows:
        for f in arrows:
            if arrows[f][1] == arrows[g][0] and (g, f) not in table:
                raise StructureError(f"{g} o {f} has no composite; not a quasi-category", where=g)
    category = FinCategory(tuple(Q.vertex_names), arrows, identities, table).validate()
    log.debug("ho category: %r", category)
    return HoCategory(category, classes, Q)


def ho_functor(f: SimplicialMap, source: HoCategory, target: HoCategory) -> CatFunctor:
    """ho(f) between homotopy categories already computed for its source and target."""
    on_objects = {v: f.images[v].base for v in f.source.vertex_names}
    on_morphisms = {}
    for edge, arrow in source.classes.items():
        image = target.classes[f.apply(edge)]
        if on_morphisms.setdefault(arrow, image) != image:
            raise StructureError(f"homotopic edges in class {arrow!r} have non-homotopic images", where=arrow)
    return CatFunctor(source.category, target.category, on_objects, on_morphisms).validate()


def slice_comparison_check(p: SimplicialMap, d: Diagram, trunc: int = 2) -> Verdict:
    """The neat-to-fat slice comparison induces an equivalence of homotopy categories."""
    qc = is_quasi_category(d.target, 3)
    if not qc.ok:
        return Verdict.none_found(bound=trunc, detail=f"target is not a quasi-category: {qc.detail}")
    neat = weighted_slice(p, d, trunc)
    fat = fat_weighted_slice(p, d, trunc)
    try:
        comparison = fat_to_neat_slice_map(neat, fat).validate()
        F = ho_functor(comparison, ho_category(neat.sset), ho_category(fat.sset))
    except StructureError as exc:
        return Verdict.counterexample(witness=exc.where, bound=trunc, detail=str(exc))
    return Verdict.check(
        is_equivalence(F),
        f"ho(neat) has {len(F.source.objects)} objects, ho(fat) has {len(F.target.objects)}",
        bound=trunc,
        witness=F if is_equivalence(F) else None,
    )


def limit_uniqueness_check(p: SimplicialMap, d: Diagram, trunc: int = 2, n_max: int = 2) -> Verdict:
    """All limit apexes found are pairwise isomorphic in ho(Q)."""
    found = weighted_limit_vertex(p, d, trunc, n_max)
    if not found.apexes:
        return Verdict.none_found(bound=n_max, detail="no limit cone to compare")
    ho = ho_category(d.target).category
    first = found.apexes[0]
    for other in found.apexes[1:]:
        if isomorphic_objects(ho, first, other) is None:
            return Verdict.counterexample(
                witness=(first, other), bound=n_max, detail="limit apexes are not isomorphic"
            )
    return Verdict.verified(bound=n_max, detail=f"{len(found.apexes)} limit apex(es), all isomorphic")


