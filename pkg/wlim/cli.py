#!/usr/bin/env python3
"""
wlim command line

Builds simplicial sets, joins, slices and mapping spaces from JSON documents,
searches for weighted limits and runs the invariant suite. Reports are
canonical JSON on stdout (or --out); status lines and tables go to stderr.

Exit codes: 0 success or witness found, 1 counterexample or absence,
2 usage, schema or structure error, 3 enumeration budget exceeded.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from . import fixtures, serialize
from .enriched import COMMA, COSPAN_COFIBRANT, homotopy_pullback, weighted_end
from .errors import EnumerationLimitError, SchemaError, WlimError
from .fincat import (
    CatFunctor,
    FinCategory,
    SetWeight,
    SSetWeight,
    category_of_elements,
    nerve,
    weighted_limit,
    weighted_limit_via_elements,
)
from .joins import fat_join, join, weighted_fat_join, weighted_join
from .limits import ho_category, is_terminal_vertex, weighted_limit_vertex
from .necklaces import cofibrant_weight, mapping_space
from .report import Status, Verdict
from .slices import comma, fat_weighted_slice, slice_over, weighted_slice
from .sscore import (
    DEFAULT_MAX_CELLS,
    SimplicialMap,
    SimplicialSet,
    boundary,
    cube,
    cube_boundary,
    cube_horn,
    enumeration_budget,
    horn,
    is_isomorphic,
    map_label,
    standard_simplex,
)
from .suite import run_suite, suites

console = Console(stderr=True)


class Failure(click.ClickException):
    """A library error surfaced with its exit code."""

    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


class WlimGroup(click.Group):
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except EnumerationLimitError as exc:
            raise Failure(str(exc), 3) from exc
        except WlimError as exc:
            raise Failure(str(exc), 2) from exc


@dataclass
class Settings:
    trunc: int
    max_dim: int
    out: Optional[Path]


# =============================================================================
# Helpers
# =============================================================================


def _load(path: str, kind: type, what: str) -> Any:
    obj = serialize.load(path)
    if not isinstance(obj, kind):
        raise SchemaError(f"{path} holds a {type(obj).__name__}, expected {what}", "/kind")
    return obj


def _emit(settings: Settings, report: dict) -> None:
    text = serialize.dumps(report)
    if settings.out is not None:
        settings.out.write_text(text)
        console.print(f"[green]Report written to:[/green] {settings.out}")
    else:
        click.echo(text, nl=False)


def _witness(witness: Any) -> Any:
    if witness is None:
        return None
    if isinstance(witness, SimplicialMap):
        return map_label(witness.key())
    return str(witness)


def _verdict(v: Verdict) -> dict:
    return {"status": v.status.value, "bound": v.bound, "detail": v.detail, "witness": _witness(v.witness)}


def _summary(title: str, X: SimplicialSet) -> dict:
    table = Table(title=title)
    table.add_column("Degree", style="cyan", justify="right")
    table.add_column("Nondegenerate", style="green", justify="right")
    for k, count in enumerate(X.f_vector()):
        table.add_row(str(k), str(count))
    console.print(table)
    if X.truncated:
        console.print(f"[dim]truncated above degree {X.dim}[/dim]")
    return {"f_vector": list(X.f_vector()), "truncated": X.truncated, "sset": serialize.sset_document(X)}


def _finish(ctx: click.Context, ok: bool) -> None:
    if not ok:
        ctx.exit(1)


# =============================================================================
# Command group
# =============================================================================


@click.group(cls=WlimGroup)
@click.option("--trunc", type=click.IntRange(min=0), default=2, show_default=True, help="Truncation degree")
@click.option(
    "--max-dim",
    type=click.IntRange(min=1),
    default=3,
    show_default=True,
    help="Largest n for lifting and horn-filling tests",
)
@click.option("--out", "-o", type=click.Path(dir_okay=False, path_type=Path), help="Write the report here")
@click.option(
    "--max-cells",
    type=click.IntRange(min=1),
    default=DEFAULT_MAX_CELLS,
    show_default=True,
    envvar="WLIM_MAX_CELLS",
    help="Cap on candidate extensions per map enumeration",
)
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.pass_context
def cli(ctx: click.Context, trunc: int, max_dim: int, out: Optional[Path], max_cells: int, verbose: bool):
    """Weighted limits of finite simplicial sets and categories.

    Example:
        wlim mapspace --sset fixtures/delta2.json --from 0 --to 2 --max 2
        wlim wlimit --weight fixtures/example0.json --diagram fixtures/lattice-cospan.json
        wlim check --suite all
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )
    ctx.obj = Settings(trunc, max_dim, out)
    ctx.with_resource(enumeration_budget(max_cells))


BUILDERS = ("simplex", "boundary", "horn", "cube", "cube-boundary", "cube-horn", "fixture")


@cli.command()
@click.argument("kind", type=click.Choice(BUILDERS))
@click.option("--n", "-n", type=int, default=2, show_default=True, help="Dimension")
@click.option("--k", "-k", type=int, default=1, show_default=True, help="Horn index")
@click.option("--eps", type=click.IntRange(0, 1), default=0, show_default=True, help="Cubical horn side")
@click.option("--name", type=click.Choice(sorted(fixtures.FIXTURES)), help="Fixture name (kind=fixture)")
@click.pass_obj
def build(settings: Settings, kind: str, n: int, k: int, eps: int, name: Optional[str]):
    """Build a standard simplicial set or a named fixture and print its document.

    Example:
        wlim build horn --n 2 --k 2
        wlim build fixture --name example1-weight
    """
    if kind == "fixture":
        if name is None:
            raise click.UsageError("kind 'fixture' needs --name")
        obj = fixtures.FIXTURES[name]()
        doc = serialize.to_document(obj)
        doc["comment"] = name
        _emit(settings, doc)
        return
    makers = {
        "simplex": lambda: standard_simplex(n),
        "boundary": lambda: boundary(n),
        "horn": lambda: horn(n, k),
        "cube": lambda: cube(n),
        "cube-boundary": lambda: cube_boundary(n),
        "cube-horn": lambda: cube_horn(n, k, eps),
    }
    X = makers[kind]()
    _emit(settings, {"kind": kind, **_summary(f"{kind} n={n}", X)})


@cli.command("nerve")
@click.option("--category", "-c", "path", required=True, type=click.Path(exists=True), help="Category document")
@click.pass_obj
def nerve_command(settings: Settings, path: str):
    """Nerve of a finite category, up to --max-dim."""
    C = _load(path, FinCategory, "a category")
    N = nerve(C, settings.max_dim if C.longest_chain() is None else None)
    _emit(settings, _summary("Nerve", N))


@cli.command()
@click.option("--weight", "-w", "path", required=True, type=click.Path(exists=True), help="Set-weight document")
@click.pass_obj
def elements(settings: Settings, path: str):
    """Category of elements of a Set-valued weight, with its projection."""
    W = _load(path, SetWeight, "a set-weight")
    E, P = category_of_elements(W)
    table = Table(title="Elements")
    table.add_column("Object", style="cyan")
    table.add_column("Over", style="green")
    for e in E.objects:
        table.add_row(e, P(e))
    console.print(table)
    _emit(settings, {"category": serialize.category_document(E), "projection": serialize.to_document(P)})


@cli.command("join")
@click.option("--left", "-i", required=True, type=click.Path(exists=True), help="I (sset)")
@click.option("--right", "-j", type=click.Path(exists=True), help="J (sset), for unweighted joins")
@click.option("--weight", "-p", type=click.Path(exists=True), help="p: J~ -> J (smap)")
@click.option("--fat", is_flag=True, help="Fat join instead of the join")
@click.pass_obj
def join_command(settings: Settings, left: str, right: Optional[str], weight: Optional[str], fat: bool):
    """I * J, or I *^p J with --weight; --fat for the cylinder variants.

    Example:
        wlim join --left fixtures/point.json --weight fixtures/example1-weight.json
    """
    I = _load(left, SimplicialSet, "a simplicial set")
    if weight is not None:
        p = _load(weight, SimplicialMap, "a simplicial map")
        built = (weighted_fat_join if fat else weighted_join)(I, p).sset
    elif right is not None:
        J = _load(right, SimplicialSet, "a simplicial set")
        built = (fat_join if fat else join)(I, J).sset
    else:
        raise click.UsageError("give --right for a join or --weight for a weighted join")
    _emit(settings, _summary("Fat join" if fat else "Join", built))


@cli.command("slice")
@click.option("--diagram", "-d", required=True, type=click.Path(exists=True), help="d: J -> Q (smap)")
@click.option("--weight", "-p", type=click.Path(exists=True), help="p: J~ -> J (smap); omit for Q_/d")
@click.option("--fat", is_flag=True, help="Fat weighted slice")
@click.pass_obj
def slice_command(settings: Settings, diagram: str, weight: Optional[str], fat: bool):
    """Weighted slice Q^p_/d up to --trunc."""
    d = _load(diagram, SimplicialMap, "a simplicial map")
    if weight is None:
        if fat:
            raise click.UsageError("--fat needs --weight")
        sliced = slice_over(d, settings.trunc)
    else:
        p = _load(weight, SimplicialMap, "a simplicial map")
        sliced = (fat_weighted_slice if fat else weighted_slice)(p, d, settings.trunc)
    _emit(settings, _summary("Fat weighted slice" if fat else "Weighted slice", sliced.sset))


@cli.command("comma")
@click.option("--f", "f_path", required=True, type=click.Path(exists=True), help="F: A -> B (smap)")
@click.option("--g", "g_path", required=True, type=click.Path(exists=True), help="G: C -> B (smap)")
@click.pass_obj
def comma_command(settings: Settings, f_path: str, g_path: str):
    """Comma object F |_B G up to --trunc."""
    F = _load(f_path, SimplicialMap, "a simplicial map")
    G = _load(g_path, SimplicialMap, "a simplicial map")
    _emit(settings, _summary("Comma", comma(F, G, settings.trunc).sset))


@cli.command()
@click.option("--sset", "-s", "path", required=True, type=click.Path(exists=True), help="J (sset)")
@click.option("--from", "x", required=True, help="Source vertex")
@click.option("--to", "y", required=True, help="Target vertex")
@click.option("--max", "m_max", type=click.IntRange(min=0), help="Largest degree (default: --trunc)")
@click.pass_obj
def mapspace(settings: Settings, path: str, x: str, y: str, m_max: Optional[int]):
    """Mapping space Map(x, y) of the homotopy coherent realization, as flagged necklaces.

    Example:
        wlim mapspace --sset fixtures/delta2.json --from 0 --to 2 --max 2
    """
    J = _load(path, SimplicialSet, "a simplicial set")
    m_max = settings.trunc if m_max is None else m_max
    space = mapping_space(J, x, y, m_max)
    X = space.sset
    report = _summary(f"Map({x}, {y})", X)
    report["necklaces"] = {
        str(m): [space.key_of(g).label() for g in X.level(m)] for m in range(X.dim + 1)
    }
    report["cube"] = next(
        (k for k in range(m_max + 1) if not X.is_empty() and is_isomorphic(X, cube(k)) is not None), None
    )
    if report["cube"] is not None:
        console.print(f"[green]Map({x}, {y}) is the {report['cube']}-cube[/green]")
    _emit(settings, report)


@cli.command()
@click.option("--weight", "-p", "path", required=True, type=click.Path(exists=True), help="p: J~ -> J (smap)")
@click.option("--max", "m_max", type=click.IntRange(min=0), help="Largest degree (default: --trunc)")
@click.pass_obj
def cofweight(settings: Settings, path: str, m_max: Optional[int]):
    """Straightening of p: the value Map(⊥, j) at every vertex j of J."""
    p = _load(path, SimplicialMap, "a simplicial map")
    W = cofibrant_weight(p, settings.trunc if m_max is None else m_max)
    values = {j: _summary(f"value at {j}", W.value(j)) for j in sorted(W.values)}
    _emit(settings, {"values": values})


@cli.command()
@click.option("--sset", "-s", "path", required=True, type=click.Path(exists=True), help="Q (sset)")
@click.option("--vertex", "-t", help="Vertex to test (default: all)")
@click.pass_context
def terminal(ctx: click.Context, path: str, vertex: Optional[str]):
    """Terminal vertices of Q, tested against boundaries up to --max-dim."""
    settings: Settings = ctx.obj
    Q = _load(path, SimplicialSet, "a simplicial set")
    candidates = [vertex] if vertex is not None else list(Q.vertex_names)
    verdicts = {t: is_terminal_vertex(Q, t, settings.max_dim) for t in candidates}
    table = Table(title="Terminal vertices")
    table.add_column("Vertex", style="cyan")
    table.add_column("Verdict")
    for t, v in verdicts.items():
        table.add_row(t, "[green]terminal[/green]" if v.ok else f"[red]{v.status.value}[/red]")
    console.print(table)
    _emit(settings, {"vertices": {t: _verdict(v) for t, v in verdicts.items()}})
    _finish(ctx, any(v.ok for v in verdicts.values()))


@cli.command()
@click.option("--weight", "-w", required=True, type=click.Path(exists=True), help="set-weight or smap p")
@click.option("--diagram", "-d", required=True, type=click.Path(exists=True), help="functor or smap d")
@click.option(
    "--method",
    type=click.Choice(["slice", "lifting"]),
    default="slice",
    show_default=True,
    help="Search for quasi-categorical limits",
)
@click.pass_context
def wlimit(ctx: click.Context, weight: str, diagram: str, method: str):
    """Weighted limit of a diagram: in a finite category, or in a quasi-category.

    Example:
        wlim wlimit --weight fixtures/example0.json --diagram fixtures/lattice-cospan.json
    """
    settings: Settings = ctx.obj
    W = serialize.load(weight)
    D = serialize.load(diagram)
    if isinstance(W, SetWeight) and isinstance(D, CatFunctor):
        found = weighted_limit(W, D)
        via = weighted_limit_via_elements(W, D)
        report = {
            "apex": found.apex if found else None,
            "cone": found.label() if found else None,
            "via_elements": via.apex if via else None,
        }
        ok = found is not None
    elif isinstance(W, SimplicialMap) and isinstance(D, SimplicialMap):
        result = weighted_limit_vertex(W, D, settings.trunc, settings.max_dim, method)
        report = {
            "apex": result.apex,
            "apexes": list(result.apexes),
            "cones": list(result.vertices),
            "verdict": _verdict(result.verdict),
        }
        ok = result.vertex is not None
    else:
        raise SchemaError("give a set-weight with a functor, or a weight map with a diagram map", "/kind")
    if ok:
        console.print(f"[green]Limit apex:[/green] {report['apex']}")
    else:
        console.print("[yellow]No weighted limit found[/yellow]")
    _emit(settings, report)
    _finish(ctx, ok)


@cli.command("end")
@click.option("--weight", "-w", required=True, type=click.Path(exists=True), help="sset-weight")
@click.option("--diagram", "-d", required=True, type=click.Path(exists=True), help="sset-weight used as a diagram")
@click.pass_obj
def end_command(settings: Settings, weight: str, diagram: str):
    """Enriched weighted limit as an end, up to --trunc."""
    W = _load(weight, SSetWeight, "an sset-weight")
    D = _load(diagram, SSetWeight, "an sset-weight")
    _emit(settings, _summary("Weighted end", weighted_end(W, D, settings.trunc).sset))


@cli.command()
@click.option("--f", "f_path", required=True, type=click.Path(exists=True), help="F: A -> B (smap)")
@click.option("--g", "g_path", required=True, type=click.Path(exists=True), help="G: C -> B (smap)")
@click.option(
    "--weight-choice",
    type=click.Choice([COSPAN_COFIBRANT, COMMA]),
    default=COSPAN_COFIBRANT,
    show_default=True,
    help="Weight computing the homotopy pullback",
)
@click.pass_obj
def hopb(settings: Settings, f_path: str, g_path: str, weight_choice: str):
    """Homotopy pullback A x^h_B C as a weighted end."""
    F = _load(f_path, SimplicialMap, "a simplicial map")
    G = _load(g_path, SimplicialMap, "a simplicial map")
    end = homotopy_pullback(F, G, weight_choice, settings.trunc)
    _emit(settings, _summary(f"Homotopy pullback ({weight_choice})", end.sset))


@cli.command()
@click.option("--sset", "-s", "path", required=True, type=click.Path(exists=True), help="Q (sset)")
@click.pass_obj
def ho(settings: Settings, path: str):
    """Homotopy category of a quasi-category."""
    Q = _load(path, SimplicialSet, "a simplicial set")
    H = ho_category(Q).category
    console.print(f"[bold]ho(Q):[/bold] {len(H.objects)} objects, {len(H.non_identities())} non-identity arrows")
    _emit(settings, serialize.category_document(H))


@cli.command("check")
@click.option(
    "--suite",
    "-s",
    "name",
    type=click.Choice(suites()),
    default="all",
    show_default=True,
    help="Which checks to run",
)
@click.pass_context
def check_command(ctx: click.Context, name: str):
    """Run the invariant suite on the built-in fixtures.

    Example:
        wlim check --suite necklaces
    """
    settings: Settings = ctx.obj
    console.print(f"[bold blue]wlim invariant suite:[/bold blue] {name}\n")
    results = run_suite(name)
    table = Table(title="Checks")
    table.add_column("Suite", style="dim")
    table.add_column("Check", style="cyan")
    table.add_column("Status")
    table.add_column("Detail")
    colors = {Status.VERIFIED: "green", Status.COUNTEREXAMPLE: "red", Status.NONE_FOUND: "yellow"}
    for c, v in results:
        color = colors[v.status]
        table.add_row(c.suite, c.name, f"[{color}]{v.status.value}[/{color}]", v.detail)
    console.print(table)
    ok = all(v.ok for _, v in results)
    _emit(settings, {"suite": name, "ok": ok, "checks": {c.name: _verdict(v) for c, v in results}})
    _finish(ctx, ok)


@cli.command()
@click.argument("path", type=click.Path(exists=True))
@click.option("--canonical", is_flag=True, help="Print the canonical form instead of a summary")
@click.pass_obj
def validate(settings: Settings, path: str, canonical: bool):
    """Check a document against the schema and the invariants of its kind."""
    if canonical:
        text = serialize.canonicalize(path)
        if settings.out is not None:
            settings.out.write_text(text)
        else:
            click.echo(text, nl=False)
        return
    obj = serialize.load(path)
    report: dict = {"path": path, "kind": type(obj).__name__, "valid": True}
    if isinstance(obj, SimplicialSet):
        report["f_vector"] = list(obj.f_vector())
    elif isinstance(obj, SimplicialMap):
        report["source_f_vector"] = list(obj.source.f_vector())
        report["target_f_vector"] = list(obj.target.f_vector())
    comment = serialize.comment_of(path)
    if comment:
        report["comment"] = comment
    console.print(f"[green]valid[/green] {path}")
    _emit(settings, report)


def main() -> None:
    cli(prog_name="wlim")


if __name__ == "__main__":
    main()
