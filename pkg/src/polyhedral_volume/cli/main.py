"""Main CLI for polyhedral-volume."""

import logging
import math
import sys
from pathlib import Path
from typing import Optional

import click

from polyhedral_volume import __version__
from polyhedral_volume.core.config import Settings, find_config_file
from polyhedral_volume.core.errors import (
    DecompositionError,
    DomainError,
    HypothesisViolated,
    InputError,
    IsTriangularPrism,
    NoSolution,
    NotRealizable,
    ObtuseLabel,
    OddVertexCount,
    PolyhedronError,
    PreconditionViolated,
    TooFewVertices,
)

EXIT_FAILED = 1
EXIT_MALFORMED = 2

format_option = click.option(
    "--format",
    "output_format",
    type=click.Choice(["human", "structured"]),
    default=None,
    help="Output format (default: from settings, normally human)",
)


def _fail(message: object, code: int) -> None:
    click.echo(f"Error: {message}", err=True)
    sys.exit(code)


def _settings(ctx: click.Context) -> Settings:
    return ctx.obj["settings"]


def _format(ctx: click.Context, output_format: Optional[str]) -> str:
    return output_format or _settings(ctx).output_format


def _load(source: str):
    from polyhedral_volume.core.catalog import load_polyhedron

    try:
        return load_polyhedron(source)
    except (InputError, PolyhedronError) as e:
        _fail(e, EXIT_MALFORMED)


def _pi_fraction(text: str, option: str) -> float:
    from polyhedral_volume.core.angles import parse_pi_fraction

    try:
        return float(parse_pi_fraction(text)) * math.pi
    except ValueError as e:
        _fail(f"{option}: {e}", EXIT_MALFORMED)


@click.group()
@click.version_option(version=__version__)
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Settings file (default: pvol.yaml in the current directory)",
)
@click.option("--verbose", "-v", is_flag=True, help="Log debug records to stderr")
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], verbose: bool):
    """Polyhedral-volume: realizability, decomposition and volume bounds."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if config_path is None:
        config_path = find_config_file(Path.cwd())
    settings = Settings.from_yaml(config_path) if config_path else Settings()
    ctx.obj = {"settings": settings}


@cli.command()
@click.argument("source")
@click.option(
    "--generalized",
    is_flag=True,
    help="Allow hyperideal vertices (generalized polyhedra)",
)
@format_option
@click.pass_context
def validate(ctx: click.Context, source: str, generalized: bool, output_format: Optional[str]):
    """Check whether SOURCE is realizable as a non-obtuse hyperbolic polyhedron.

    SOURCE is a YAML file or @name for a built-in polyhedron.
    """
    from polyhedral_volume.core.andreev import check_andreev, check_generalized
    from polyhedral_volume.generators.report import render_realizability, to_structured

    settings = _settings(ctx)
    polyhedron = _load(source)
    checker = check_generalized if generalized else check_andreev
    try:
        report = checker(polyhedron, settings.tolerance)
    except (TooFewVertices, ObtuseLabel, IsTriangularPrism) as e:
        _fail(e, EXIT_FAILED)

    if _format(ctx, output_format) == "structured":
        click.echo(to_structured(report, settings.digits), nl=False)
    else:
        click.echo(render_realizability(report, settings.digits), nl=False)
    if not report.realizable:
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("source")
@click.option(
    "--trials",
    type=click.IntRange(min=1),
    default=None,
    help="Also compare atoroidal components over this many randomized orders",
)
@click.option("--seed", type=int, default=None, help="Seed for randomized orders")
@click.option("--strict", is_flag=True, help="Fail when a split does not lower the complexity")
@format_option
@click.pass_context
def decompose(
    ctx: click.Context,
    source: str,
    trials: Optional[int],
    seed: Optional[int],
    strict: bool,
    output_format: Optional[str],
):
    """Decompose a Coxeter orbifold input into Seifert-fibered and atoroidal pieces."""
    from polyhedral_volume.core.decompose import check_canonicity, decompose_orbifold
    from polyhedral_volume.generators.report import render_decomposition, to_structured

    settings = _settings(ctx)
    polyhedron = _load(source)
    options = dict(
        tolerance=settings.tolerance,
        step_budget=settings.step_budget,
        strict_descent=strict,
    )
    try:
        result = decompose_orbifold(polyhedron, **options)
        canonicity = None
        if trials is not None:
            canonicity = check_canonicity(
                polyhedron, trials=trials, seed=settings.seed if seed is None else seed, **options
            )
    except (PreconditionViolated, DecompositionError) as e:
        _fail(e, EXIT_FAILED)

    name = polyhedron.name or source
    if _format(ctx, output_format) == "structured":
        document = result.to_dict()
        document["name"] = name
        if canonicity is not None:
            document["canonicity"] = {
                "consistent": canonicity.consistent,
                "trials": canonicity.trials,
                "distinct": canonicity.distinct,
            }
        click.echo(to_structured(document, settings.digits), nl=False)
    else:
        click.echo(render_decomposition(result, name, canonicity, settings.digits), nl=False)


@cli.command()
@click.argument("source", required=False)
@click.option(
    "--components",
    "components",
    default=None,
    help="Component fixture (YAML file or @name) instead of a polyhedron",
)
@click.option(
    "--stated/--formula",
    default=True,
    help="With --components: use stated contributions where given (default) or formula values",
)
@format_option
@click.pass_context
def bounds(
    ctx: click.Context,
    source: Optional[str],
    components: Optional[str],
    stated: bool,
    output_format: Optional[str],
):
    """Lower and upper volume bounds for SOURCE."""
    from polyhedral_volume.core.bounds import estimate, estimate_from_components
    from polyhedral_volume.core.catalog import load_components
    from polyhedral_volume.generators.report import (
        render_bounds,
        render_realizability,
        to_structured,
    )

    settings = _settings(ctx)
    structured = _format(ctx, output_format) == "structured"
    if (source is None) == (components is None):
        _fail("give exactly one of SOURCE or --components", EXIT_MALFORMED)

    if components is not None:
        try:
            fixture = load_components(components)
            report = estimate_from_components(fixture, use_stated=stated)
        except InputError as e:
            _fail(e, EXIT_MALFORMED)
        except (HypothesisViolated, OddVertexCount, DomainError) as e:
            _fail(e, EXIT_FAILED)
    else:
        polyhedron = _load(source)
        try:
            report = estimate(polyhedron, settings.tolerance)
        except NotRealizable as e:
            if e.report is not None:
                text = (
                    to_structured(e.report, settings.digits)
                    if structured
                    else render_realizability(e.report, settings.digits)
                )
                click.echo(text, nl=False)
            _fail(e, EXIT_FAILED)
        except (HypothesisViolated, ObtuseLabel) as e:
            _fail(e, EXIT_FAILED)

    if structured:
        click.echo(to_structured(report, settings.digits), nl=False)
    else:
        click.echo(render_bounds(report, settings.digits), nl=False)


@cli.command("cube-volume")
@click.option("--family", type=click.Choice(["c1", "c2"], case_sensitive=False), required=True)
@click.option("--mu", required=True, help="Angle μ as a multiple p/q of π")
@format_option
@click.pass_context
def cube_volume(ctx: click.Context, family: str, mu: str, output_format: Optional[str]):
    """Volume of the cube C_1(μ) or C_2(μ)."""
    from polyhedral_volume.core.numerics import CubeSpec
    from polyhedral_volume.generators.report import render_value, to_structured, value_document

    settings = _settings(ctx)
    spec = CubeSpec(family=family.upper(), mu=_pi_fraction(mu, "--mu"))
    try:
        volume = spec.volume()
        details = {"mu": spec.mu, "edge_length": spec.edge_length}
    except DomainError as e:
        _fail(e, EXIT_MALFORMED)

    title = f"vol {spec.family}(π·{mu})"
    if _format(ctx, output_format) == "structured":
        click.echo(to_structured(value_document(title, volume, details), settings.digits), nl=False)
    else:
        click.echo(render_value(title, volume, details, settings.digits), nl=False)


@cli.command()
@click.option("--theta", required=True, help="Argument θ as a multiple p/q of π")
@format_option
@click.pass_context
def lobachevsky(ctx: click.Context, theta: str, output_format: Optional[str]):
    """The Lobachevsky function Λ(θ)."""
    from polyhedral_volume.core.numerics import lobachevsky as evaluate
    from polyhedral_volume.generators.report import render_value, to_structured, value_document

    settings = _settings(ctx)
    radians = _pi_fraction(theta, "--theta")
    value = evaluate(radians, epsabs=settings.quadrature_tolerance)
    title = f"Λ(π·{theta})"
    details = {"theta": radians}
    if _format(ctx, output_format) == "structured":
        click.echo(to_structured(value_document(title, value, details), settings.digits), nl=False)
    else:
        click.echo(render_value(title, value, details, settings.digits), nl=False)


@cli.command("prism-gen")
@click.option("--n", "n", type=int, required=True, help="Number of lateral faces")
@click.option(
    "--pattern",
    required=True,
    help="alternating | basic:r,s | right-horizontal | single-euclidean | labels:a,b,c",
)
@click.option(
    "--output",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the document here instead of stdout",
)
def prism_gen(n: int, pattern: str, output: Optional[Path]):
    """Generate a labeled prism document."""
    from polyhedral_volume.core.catalog import dump_document
    from polyhedral_volume.generators.prism import generate_prism

    try:
        prism = generate_prism(n, pattern)
    except (InputError, DomainError, PolyhedronError) as e:
        _fail(e, EXIT_MALFORMED)
    except NoSolution as e:
        _fail(e, EXIT_FAILED)

    text = dump_document(prism)
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text)
        click.echo(f"Wrote {prism.name} to {output}", err=True)


@cli.command()
@format_option
@click.pass_context
def catalog(ctx: click.Context, output_format: Optional[str]):
    """List the built-in polyhedra (use them as @name)."""
    from polyhedral_volume.core.catalog import component_fixtures, load_catalog
    from polyhedral_volume.generators.report import to_structured

    entries = load_catalog()
    fixtures = sorted(component_fixtures())
    if _format(ctx, output_format) == "structured":
        document = {
            "polyhedra": [
                {
                    "name": name,
                    "description": entry.description,
                    "vertices": entry.document.vertices,
                    "faces": len(entry.document.faces),
                }
                for name, entry in sorted(entries.items())
            ],
            "component_fixtures": fixtures,
        }
        click.echo(to_structured(document), nl=False)
        return

    click.echo(f"Built-in polyhedra ({len(entries)}):")
    for name, entry in sorted(entries.items()):
        document = entry.document
        click.echo(f"  @{name:<20} {document.vertices:>3} vertices  {entry.description}")
    if fixtures:
        click.echo(f"Component fixtures ({len(fixtures)}):")
        for name in fixtures:
            click.echo(f"  @{name}")


def main():
    """Entry point for the pvol command."""
    cli()


if __name__ == "__main__":
    main()
