# The MIT License (MIT)
# Copyright (c) 2024 by the xcube development team and contributors
#
# Permission is hereby granted, free of charge, to any person obtaining a
# copy of this software and associated documentation files (the "Software"),
# to deal in the Software without restriction, including without limitation
# the rights to use, copy, modify, merge, publish, distribute, sublicense,
# and/or sell copies of the Software, and to permit persons to whom the
# Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NON INFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING
# FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER
# DEALINGS IN THE SOFTWARE.

import logging

import click

from .constants import CLI_NAME
from .constants import COMMAND_NAMES
from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import LOG
from .constants import SCHEDULERS
from .reports import dump_json
from .runner import RunConfig
from .runner import run


def _configure_logging(verbose: int):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
    LOG.setLevel(level)


def _execute(ctx: click.Context, command: str, name: str, **kwargs):
    options = {k: v for k, v in kwargs.items() if v is not None}
    options["timing"] = not options.pop("no_timing", False)
    options.update(ctx.obj or {})
    status, report = run(RunConfig(command=command, name=name, **options))
    if command == "selftest" and "result" in report:
        click.echo(report["result"]["table"], err=True)
    click.echo(dump_json(report), nl=False)
    if "error" in report:
        click.echo(f"Error: {report['error']}", err=True)
    ctx.exit(status)


def _space_options(func):
    func = click.option("--field", "-f", default="5", help="Order 'q' or 'p^k'.")(func)
    return click.option("--dim", "-d", type=int, default=3, help="Dimension d.")(func)


def _run_options(func):
    for option in reversed(
        [
            click.option(
                "--budget",
                type=int,
                default=DEFAULT_ENUMERATION_BUDGET,
                help="Maximum number of subspaces or subsets to enumerate.",
            ),
            click.option("--out", "-o", help="Write the JSON report to this file."),
            click.option(
                "--no-timing",
                is_flag=True,
                help="Omit the wall time, making reports reproducible.",
            ),
            click.option(
                "--assert-bound",
                is_flag=True,
                help="Exit with status 2 if a bound is violated.",
            ),
        ]
    ):
        func = option(func)
    return func


def _input_options(func):
    func = click.option("--input", "-i", help="JSON line set or design to load.")(func)
    return click.option("--construction", "-c", help="Used without --input.")(func)


@click.group(name=CLI_NAME)
@click.option("--verbose", "-v", count=True, help="Increase the log level.")
@click.option(
    "--scheduler",
    type=click.Choice(SCHEDULERS),
    default="synchronous",
    help="How enumeration blocks are evaluated.",
)
@click.option("--progress", is_flag=True, help="Show progress bars.")
@click.pass_context
def cli(ctx: click.Context, verbose: int, scheduler: str, progress: bool):
    """Higgledy-piggledy lines and subspace designs over finite fields."""
    _configure_logging(verbose)
    ctx.obj = dict(scheduler=scheduler, progress=progress)


@cli.command()
@click.argument("name", type=click.Choice(COMMAND_NAMES["construct"]))
@_space_options
@click.option("--count", "-n", type=int, help="Number of lines.")
@click.option("--s", "s", type=int, help="Dimension of the test subspaces.")
@click.option("--r", "r", type=int, help="Folding parameter.")
@click.option("--t", "t", type=int, help="Number of conditions.")
@click.option("--seed", type=int, help="Random seed.")
@_run_options
@click.pass_context
def construct(ctx: click.Context, name: str, **kwargs):
    """Build a line set or a subspace design.

    For the designs gk-frs and gk-mult, --dim is the polynomial degree.
    """
    _execute(ctx, "construct", name, **kwargs)


@cli.command()
@click.argument("name", type=click.Choice(COMMAND_NAMES["verify"]))
@_space_options
@_input_options
@click.option("--count", "-n", type=int, help="Number of lines constructed.")
@click.option("--t", "t", type=int, help="Multiplicity of the blocking check.")
@click.option("--seed", type=int, help="Random seed.")
@_run_options
@click.pass_context
def verify(ctx: click.Context, name: str, **kwargs):
    """Check a property of a line set."""
    _execute(ctx, "verify", name, **kwargs)


@cli.command()
@click.argument("name", type=click.Choice(COMMAND_NAMES["design"]))
@_space_options
@_input_options
@click.option("--count", "-n", type=int, help="Members or samples used.")
@click.option("--s", "s", type=int, help="Dimension of the test subspaces.")
@click.option("--r", "r", type=int, help="Folding parameter.")
@click.option("--t", "t", type=int, help="Number of conditions.")
@click.option(
    "--mode",
    "-m",
    type=click.Choice(["weak", "strong", "frs", "mult"]),
    help="Measurement or Wronskian mode.",
)
@click.option("--seed", type=int, help="Random seed.")
@_run_options
@click.pass_context
def design(ctx: click.Context, name: str, **kwargs):
    """Measure a subspace design or check its Wronskian degree bound."""
    _execute(ctx, "design", name, **kwargs)


@cli.command()
@click.argument("name", type=click.Choice(COMMAND_NAMES["search"]))
@_space_options
@click.option("--max-size", type=int, help="Largest subset size searched.")
@click.option(
    "--strategy",
    type=click.Choice(["exhaustive", "random-restart"]),
    default="exhaustive",
)
@click.option(
    "--with-transversal",
    is_flag=True,
    help="Only accept generator sets having a common transversal.",
)
@click.option("--count", "-n", type=int, help="Samples per size when random.")
@click.option("--seed", type=int, help="Random seed.")
@_run_options
@click.pass_context
def search(ctx: click.Context, name: str, **kwargs):
    """Search for a smallest generator set of lines."""
    _execute(ctx, "search", name, **kwargs)


@cli.command()
@click.argument("name", type=click.Choice(COMMAND_NAMES["selftest"]), default="all")
@_run_options
@click.pass_context
def selftest(ctx: click.Context, name: str, **kwargs):
    """Run the acceptance checks and print a summary table."""
    _execute(ctx, "selftest", name, **kwargs)
