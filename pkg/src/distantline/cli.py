"""Command-line interface for distantline."""

import functools
import json
import logging
import sys
from collections import Counter
from pathlib import Path

import click

from distantline import __version__
from distantline.core.config import get_app_dirs, get_config, set_config
from distantline.core.errors import DistantLineError, SpecSyntaxError, TheoremViolationError
from distantline.core.jordan import classify_jordan, enumerate_jordan_isomorphisms
from distantline.core.morphisms import (
    count_dis_automorphisms,
    decompose_product_dis_iso,
    factorize_dis_automorphism,
    factorize_product_dis_iso,
    induced_map,
    is_adj_isomorphism,
    is_dis_isomorphism,
    is_dis_morphism,
    is_par_isomorphism,
)
from distantline.core.projline import enumerate_points, point_literal
from distantline.core.rings import ProductRing
from distantline.export.lines import (
    certificate_export,
    graph_to_dot,
    graph_to_json,
    line_export,
    load_map_file,
    save_map_file,
)
from distantline.spec import parse_ring
from distantline.verify import format_report, run_suite, suite_names

EXIT_FAILURE = 1
EXIT_THEOREM_VIOLATION = 3

logger = logging.getLogger(__name__)


def _configure_logging(verbose: int) -> None:
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def handle_errors(command):
    """Map library errors to exit codes: 1 for failures, 3 for theorem violations."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except TheoremViolationError as e:
            click.echo(f"Theorem violation: {e}", err=True)
            sys.exit(EXIT_THEOREM_VIOLATION)
        except SpecSyntaxError as e:
            click.echo(f"Error: invalid ring spec at byte {e.offset}: {e.message}", err=True)
            sys.exit(EXIT_FAILURE)
        except (DistantLineError, ValueError) as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(EXIT_FAILURE)

    return wrapper


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"Wrote {output}", err=True)
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _json(document) -> str:
    if hasattr(document, "model_dump"):
        document = document.model_dump()
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def _class_summary(line) -> str:
    sizes = Counter(len(c) for c in line.parallel_classes())
    if len(sizes) == 1:
        size, count = next(iter(sizes.items()))
        return f"{count} parallel classes of size {size}"
    parts = ", ".join(f"{count} of size {size}" for size, count in sorted(sizes.items()))
    return f"{sum(sizes.values())} parallel classes ({parts})"


def _degree_summary(name: str, bits) -> str:
    degrees = sorted({b.bit_count() for b in bits})
    if len(degrees) == 1:
        return f"{name} degree {degrees[0]}"
    return f"{name} degrees {degrees[0]}..{degrees[-1]}"


format_option = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Output format."
)
output_option = click.option("--output", type=click.Path(), default=None, help="Write to a file instead of stdout.")


@click.group()
@click.version_option(version=__version__, prog_name="distantline")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output (stderr).")
def cli(verbose):
    """distantline - projective lines over finite rings.

    Rings are given as specs such as "Z4", "GF(2^2)", "M(2,GF(2))",
    "dual(GF(2))" or products like "M(2,GF(2)) x Z4".
    """
    _configure_logging(verbose)


@cli.command("enumerate")
@click.argument("spec")
@click.option("--cap", type=int, default=None, help="Ring order cap for this run.")
@format_option
@output_option
@handle_errors
def enumerate_points_cmd(spec, cap, fmt, output):
    """List the points of P(R) in canonical order.

    Example:

        distantline enumerate Z4
    """
    set_config(get_config().with_overrides(ring_order_cap=cap))
    line = enumerate_points(parse_ring(spec))
    if fmt == "json":
        _emit(_json(line_export(line, include_adjacency=False)), output)
        return
    lines = [f"{len(line)} points, {_class_summary(line)}"]
    lines.extend(f"{i}: {point_literal(p)}" for i, p in enumerate(line.points))
    _emit("\n".join(lines) + "\n", output)


@cli.command()
@click.argument("spec")
@click.option("--cap", type=int, default=None, help="Ring order cap for this run.")
@format_option
@output_option
@handle_errors
def relations(spec, cap, fmt, output):
    """Summarize the distant, parallel and adjacency relations of P(R)."""
    set_config(get_config().with_overrides(ring_order_cap=cap))
    line = enumerate_points(parse_ring(spec))
    if fmt == "json":
        _emit(_json(line_export(line)), output)
        return
    summary = [
        f"{len(line)} points",
        _degree_summary("distant", line.distant_bits),
        _degree_summary("adjacency", line.adjacency_bits()),
        _class_summary(line),
    ]
    _emit(", ".join(summary) + "\n", output)


@cli.command("export-graph")
@click.argument("spec")
@click.option("--which", type=click.Choice(["distant", "adjacency"]), default="distant", help="Relation to export.")
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot", help="Graph file format.")
@output_option
@handle_errors
def export_graph(spec, which, fmt, output):
    """Write the distant or adjacency graph as DOT or JSON."""
    line = enumerate_points(parse_ring(spec))
    text = graph_to_dot(line, which) if fmt == "dot" else graph_to_json(line, which)
    _emit(text, output)


@cli.command()
@click.argument("spec")
@click.option("--cap", type=int, default=None, help="Largest line to count (points).")
@handle_errors
def aut(spec, cap):
    """Count the dis-automorphisms of P(R)."""
    config = get_config()
    if cap is not None:
        set_config(config.with_overrides(counting_cap=cap, listing_cap=min(config.listing_cap, cap)))
    line = enumerate_points(parse_ring(spec))
    result = count_dis_automorphisms(line)
    click.echo(f"{result.count} dis-automorphisms of P({line.ring.name}) ({result.method})")


@cli.command("check-map")
@click.argument("spec")
@click.argument("mapfile", type=click.Path(exists=True))
@click.option("--target", "target_spec", default=None, help="Target ring spec (defaults to SPEC).")
@format_option
@handle_errors
def check_map(spec, mapfile, target_spec, fmt):
    """Evaluate the morphism predicates on a map file."""
    source = enumerate_points(parse_ring(spec))
    target = enumerate_points(parse_ring(target_spec)) if target_spec else source
    f = load_map_file(mapfile, source, target, require_bijection=False)
    verdicts = {
        "dis-morphism": is_dis_morphism(f),
        "dis-isomorphism": is_dis_isomorphism(f),
        "par-isomorphism": is_par_isomorphism(f),
        "adj-isomorphism": is_adj_isomorphism(f),
    }
    if fmt == "json":
        click.echo(_json({"format": 1, **verdicts}), nl=False)
        return
    for name, verdict in verdicts.items():
        click.echo(f"{name}: {'yes' if verdict else 'no'}")


@cli.command()
@click.argument("spec")
@click.argument("mapfile", type=click.Path(exists=True))
@format_option
@handle_errors
def factorize(spec, mapfile, fmt):
    """Write a dis-automorphism as alpha~ followed by gamma~."""
    line = enumerate_points(parse_ring(spec))
    f = load_map_file(mapfile, line, line)
    if isinstance(line.ring, ProductRing):
        certificate = factorize_product_dis_iso(f)
    else:
        certificate = factorize_dis_automorphism(f)
    exported = certificate_export(certificate, line)
    if fmt == "json":
        click.echo(_json(exported), nl=False)
        return
    click.echo(f"kind: {exported.kind}")
    click.echo(f"alpha: {exported.alpha_kind}")
    if exported.sigma is not None:
        click.echo(f"sigma: {exported.sigma}")
    else:
        click.echo(f"beta: {exported.beta}")
    click.echo("gamma: [" + "; ".join(", ".join(row) for row in exported.gamma_literals) + "]")
    click.echo("recomposition: exact")


@cli.command("decompose-product")
@click.argument("spec")
@click.argument("mapfile", type=click.Path(exists=True))
@format_option
@handle_errors
def decompose_product(spec, mapfile, fmt):
    """Split a dis-automorphism of a product line into sigma and component maps."""
    line = enumerate_points(parse_ring(spec))
    decomposition = decompose_product_dis_iso(load_map_file(mapfile, line, line))
    document = {
        "format": 1,
        "sigma": list(decomposition.sigma),
        "components": [list(c.table) for c in decomposition.components],
    }
    if fmt == "json":
        click.echo(_json(document), nl=False)
        return
    click.echo(f"sigma: {document['sigma']}")
    for k, table in enumerate(document["components"]):
        click.echo(f"component {k} -> {decomposition.sigma[k]}: {table}")


@cli.command()
@click.argument("spec")
@click.option("--export-maps", type=click.Path(file_okay=False), default=None,
              help="Write the induced point maps as map files into this directory.")
@click.option("--cap", type=int, default=None, help="Largest ring order to enumerate.")
@format_option
@handle_errors
def jordan(spec, export_maps, cap, fmt):
    """List and classify the Jordan automorphisms of R."""
    set_config(get_config().with_overrides(jordan_cap=cap))
    R = parse_ring(spec)
    omegas = enumerate_jordan_isomorphisms(R)
    entries = []
    for i, omega in enumerate(omegas):
        classification = classify_jordan(omega)
        entry = {"index": i, "kind": classification.kind.value, "map_kind": omega.kind.name.lower()}
        if classification.sigma is not None:
            entry["sigma"] = list(classification.sigma)
        else:
            entry["beta"] = classification.beta
            entry["G"] = [[int(x) for x in r] for r in classification.G] if classification.G is not None else None
        if export_maps:
            f = induced_map(omega)
            entry["map_file"] = save_map_file(Path(export_maps) / f"jordan_{i:03d}.json", f.table)
        entries.append(entry)
    if fmt == "json":
        click.echo(_json({"format": 1, "ring": R.name, "count": len(entries), "maps": entries}), nl=False)
        return
    click.echo(f"{len(entries)} Jordan automorphisms of {R.name}")
    for entry in entries:
        detail = f"sigma={entry['sigma']}" if "sigma" in entry else f"beta={entry['beta']} G={entry['G']}"
        click.echo(f"  {entry['index']}: {entry['kind']} {detail}")


@cli.command()
@click.argument("suite", type=click.Choice(suite_names()))
@click.option("--full", is_flag=True, help="Run exhaustive sweeps instead of samples.")
@click.option("--seed", type=int, default=None, help="Seed for randomized checks.")
@format_option
@click.option("--save", is_flag=True, help="Also keep the receipt in the user reports directory.")
@output_option
def verify(suite, full, seed, fmt, output, save):
    """Run a named acceptance suite.

    Exit status is 0 when every check passes, 1 on a failed check and 3 on
    a theorem violation.
    """
    config = get_config().with_overrides(seed=seed)
    set_config(config)
    try:
        report = run_suite(suite, full=full, seed=config.seed)
    except DistantLineError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_FAILURE)
    if output:
        path = report.save(output)
        click.echo(f"Report written to {path}", err=True)
    if save:
        path = report.save(get_app_dirs()["reports_dir"] / report.receipt_filename())
        click.echo(f"Report written to {path}", err=True)
    model = report.report()
    click.echo(_json(model) if fmt == "json" else format_report(model), nl=fmt != "json")
    if model.status == "violation":
        sys.exit(EXIT_THEOREM_VIOLATION)
    if model.status == "fail":
        sys.exit(EXIT_FAILURE)


def main():
    """Entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
