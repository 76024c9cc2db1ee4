"""
Command-line front end.

    thompson-links eval "y2*y0"
    thompson-links invariants "H(1)" --json
    thompson-links treelink chain.json
    thompson-links verify monoid --seed 3 --cases 50
    thompson-links render "link(2,y0,y0)" -o hopf.svg

Service errors exit with status 2 (with ``{"error": {...}}`` on stdout under
``--json``); a failed verification suite exits with status 1.
"""
from functools import wraps
from pathlib import Path
import json
import logging
import sys

import click
from pydantic import ValidationError

from app.core.config import settings
from app.core.errors import ThompsonLinkError
from app.core.logging import setup_logging
from app.models.models import (
    DiagramResponse,
    ElementPayload,
    ElementResponse,
    FactorizationResponse,
    LabelledTreePayload,
)
from app.services.dsl import evaluate_expression, resolve_element
from app.services.invariants import element_fingerprint
from app.services.links import jones_diagram
from app.services.monoid import diamond_factorize
from app.services.render import render_element
from app.services.treelink import LabelledTree, describe_tree_link
from app.services.verify import LEFT_TREFOIL, RIGHT_TREFOIL, SUITES, find_knot, run_suite

logger = logging.getLogger(__name__)

KNOTS = {"trefoil": RIGHT_TREFOIL, "left-trefoil": LEFT_TREFOIL}

json_option = click.option("--json", "as_json", is_flag=True, help="Print JSON instead of text.")
crossings_option = click.option(
    "--max-crossings", type=int, default=None, help="Crossing cap for the state sum."
)


def _fail(as_json: bool, error: dict):
    if as_json:
        click.echo(json.dumps({"error": error}))
    else:
        click.echo(f"error: {error['message']}", err=True)
    sys.exit(2)


def handle_errors(command):
    """Turn service and payload errors into exit status 2."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        as_json = kwargs.get("as_json", False)
        try:
            return command(*args, **kwargs)
        except ThompsonLinkError as e:
            logger.error(f"{command.__name__} failed: {e.code}: {e.message}")
            _fail(as_json, e.to_dict())
        except ValidationError as e:
            logger.error(f"{command.__name__} got an invalid payload")
            _fail(as_json, {"type": "invalid_payload", "message": str(e)})

    return wrapper


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def cli(verbose: bool):
    """Thompson group F_3 elements and their links."""
    setup_logging(stream=sys.stderr, level="DEBUG" if verbose else "WARNING")


@cli.command("eval")
@click.argument("expression")
@json_option
@handle_errors
def eval_command(expression: str, as_json: bool):
    """Reduced tree pair of EXPRESSION."""
    f = evaluate_expression(expression)
    if as_json:
        click.echo(ElementResponse.from_element(f, expression).model_dump_json(indent=2))
    else:
        click.echo(ElementPayload.from_element(f).model_dump_json())


@cli.command()
@click.argument("expression")
@json_option
@handle_errors
def factorize(expression: str, as_json: bool):
    """Irreducible factors of EXPRESSION under <>, outermost first."""
    f = evaluate_expression(expression)
    factors = [ElementPayload.from_element(g) for g in diamond_factorize(f).factors]
    if as_json:
        click.echo(FactorizationResponse(expression=expression, factors=factors).model_dump_json(indent=2))
        return
    for factor in factors:
        click.echo(factor.model_dump_json())


@cli.command()
@click.argument("expression")
@json_option
@handle_errors
def link(expression: str, as_json: bool):
    """PD and Gauss codes of the link of EXPRESSION."""
    f = evaluate_expression(expression)
    response = DiagramResponse.from_diagram(jones_diagram(f), f.leaf_count)
    if as_json:
        click.echo(response.model_dump_json(indent=2))
        return
    click.echo(f"components: {response.components}")
    click.echo(f"marked: {response.marked}")
    click.echo(f"crossings: {response.crossings}")
    for line in response.pd:
        click.echo(line)
    for k, row in enumerate(response.gauss):
        click.echo(f"gauss {k}: {' '.join(str(n) for n in row)}")


@cli.command()
@click.argument("expression")
@json_option
@crossings_option
@handle_errors
def invariants(expression: str, as_json: bool, max_crossings):
    """Fingerprint of the pointed link of EXPRESSION."""
    fp = element_fingerprint(evaluate_expression(expression), max_crossings)
    if as_json:
        click.echo(fp.model_dump_json(indent=2))
        return
    click.echo(f"components: {fp.components}")
    click.echo("linking matrix:")
    for row in fp.linking_matrix:
        click.echo("  " + " ".join(f"{n:3d}" for n in row))
    click.echo(f"V: {fp.jones}")
    click.echo(f"V up to units: {fp.unoriented_jones}")
    click.echo(f"V(marked): {fp.marked_jones}")


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@json_option
@crossings_option
@handle_errors
def treelink(path: Path, as_json: bool, max_crossings):
    """Tree link of the labelled tree in PATH (JSON)."""
    payload = LabelledTreePayload.model_validate_json(path.read_text())
    tree = LabelledTree.from_payload(payload.model_dump(), resolve_element)
    response = describe_tree_link(tree, max_crossings)
    if as_json:
        click.echo(response.model_dump_json(indent=2))
        return
    click.echo(f"element: {response.element.model_dump_json()}")
    click.echo(f"plan: {response.plan}")
    for pair, lk in response.linking.items():
        click.echo(f"lk({pair}) = {lk}")
    click.echo(f"components: {response.fingerprint.components}")
    click.echo(f"V: {response.fingerprint.jones}")


@cli.command()
@click.argument("suite", type=click.Choice(list(SUITES)))
@click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True)
@click.option("--cases", type=int, default=settings.DEFAULT_CASES, show_default=True)
@json_option
@crossings_option
@handle_errors
def verify(suite: str, seed: int, cases: int, as_json: bool, max_crossings):
    """Run a property suite; exit status 1 when a check fails."""
    report = run_suite(suite, seed=seed, cases=cases, max_crossings=max_crossings)
    if as_json:
        click.echo(report.model_dump_json(indent=2))
    else:
        status = "PASS" if report.passed else "FAIL"
        click.echo(f"{suite}: {status} ({report.checks} checks, seed={seed}, cases={cases})")
        for failure in report.failures:
            click.echo(f"  {failure}")
    if not report.passed:
        sys.exit(1)


@cli.command()
@click.argument("expression")
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write the SVG here instead of stdout.")
@handle_errors
def render(expression: str, output):
    """SVG picture of the tree pair of EXPRESSION."""
    svg = render_element(evaluate_expression(expression), title=expression)
    if output is None:
        click.echo(svg, nl=False)
        return
    output.write_text(svg)
    logger.info(f"Wrote {output}")


@cli.command()
@click.argument("knot", type=click.Choice(list(KNOTS)))
@click.option("--max-vertices", type=int, default=settings.TREFOIL_SEARCH_DEPTH, show_default=True)
@json_option
@handle_errors
def search(knot: str, max_vertices: int, as_json: bool):
    """Smallest element whose link is KNOT (matched by Jones polynomial)."""
    found = find_knot(KNOTS[knot], max_vertices)
    if found is None:
        if as_json:
            click.echo(json.dumps({"found": None}))
        else:
            click.echo(f"no element with up to {max_vertices} vertices per tree")
        sys.exit(1)
    if as_json:
        click.echo(ElementResponse.from_element(found).model_dump_json(indent=2))
    else:
        click.echo(ElementPayload.from_element(found).model_dump_json())


if __name__ == "__main__":
    cli()
