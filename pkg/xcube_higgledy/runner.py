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

import dataclasses
import time
from typing import Any, Callable, Optional

import jsonschema
import numpy as np
from xcube.util.jsonschema import JsonObjectSchema

from . import __version__
from .constants import ANCHORS
from .constants import COMMAND_NAMES
from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import DEFAULT_PLUECKER_BUDGET
from .constants import DESIGN_CONSTRUCTIONS
from .constants import EXIT_BOUND_VIOLATED
from .constants import EXIT_BUDGET_REFUSED
from .constants import EXIT_INCONSISTENT
from .constants import EXIT_INVALID
from .constants import EXIT_OK
from .constants import LOG
from .constants import RUN_PARAMETERS
from .constants import TOOL_NAME
from .constructions import LineSet
from .constructions import fano_concurrent
from .constructions import higgledy_family
from .constructions import pg3_examples
from .constructions import plane_triangle
from .constructions import random_lineset
from .constructions import tangent_family
from .designs import DesignFamily
from .designs import DesignParams
from .designs import design_lines
from .designs import gk_frs_design
from .designs import gk_mult_design
from .error import BudgetExceededError
from .error import HiggledyError
from .error import InconsistencyError
from .field import parse_field
from .pluecker import line_to_pluecker
from .pluecker import pluecker_rank
from .projective import SpaceSpec
from .projective import random_subspace
from .reports import design_family_to_dict
from .reports import design_report_to_dict
from .reports import dump_json
from .reports import field_summary
from .reports import generator_report_to_dict
from .reports import lineset_to_dict
from .reports import pluecker_to_dict
from .reports import load_input
from .reports import search_result_to_dict
from .reports import sufficiency_report_to_dict
from .reports import witness_to_dict
from .reports import wronskian_report_to_dict
from .search import search_minimal_generator
from .selftest import run_selftest
from .verification import ConsistencyLedger
from .verification import build_transversal_small
from .verification import check_sufficiency
from .verification import find_transversal_geometric
from .verification import find_transversal_pluecker
from .verification import is_generator_lineset
from .verification import is_tfold_blocking
from .verification import lineset_points
from .verification import lower_bound
from .verification import measure_design
from .verification import wronskian_degree_check

DEFAULT_WRONSKIAN_SAMPLES = 200


@dataclasses.dataclass
class RunConfig:
    """Configuration of one command line run.

    Fields left at None take the default of the selected operation.
    """

    command: str
    name: str
    field: str = "5"
    dim: int = 3
    count: Optional[int] = None
    s: Optional[int] = None
    r: int = 1
    t: Optional[int] = None
    mode: Optional[str] = None
    strategy: str = "exhaustive"
    with_transversal: bool = False
    construction: Optional[str] = None
    max_size: Optional[int] = None
    budget: int = DEFAULT_ENUMERATION_BUDGET
    pluecker_budget: int = DEFAULT_PLUECKER_BUDGET
    seed: int = 0
    assert_bound: bool = False
    timing: bool = True
    scheduler: str = "synchronous"
    progress: bool = False
    input: Optional[str] = None
    out: Optional[str] = None

    @classmethod
    def get_params_schema(cls) -> JsonObjectSchema:
        return JsonObjectSchema(
            description="Describes the parameters of a higgledy run.",
            properties=RUN_PARAMETERS,
            required=["command", "name"],
            additional_properties=False,
        )

    def to_dict(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items() if v is not None}

    def validate(self):
        """Check the configuration before any enumeration starts.

        Raises:
            HiggledyError: if the configuration is malformed
        """
        try:
            self.get_params_schema().validate_instance(self.to_dict())
        except jsonschema.ValidationError as e:
            raise HiggledyError(f"Invalid configuration: {e.message}") from e
        if self.name not in COMMAND_NAMES[self.command]:
            raise HiggledyError(
                f"Unknown {self.command} name {self.name!r}, expected one of"
                f" {', '.join(COMMAND_NAMES[self.command])}"
            )
        parse_field(self.field)


@dataclasses.dataclass
class Outcome:
    result: dict
    bound_violated: bool = False
    partial: bool = False
    failed: bool = False


def _space(config: RunConfig) -> SpaceSpec:
    return SpaceSpec(config.dim, parse_field(config.field))


def _design_params(config: RunConfig) -> DesignParams:
    return DesignParams(
        q=parse_field(config.field).q,
        d=config.dim,
        t=config.t if config.t is not None else 2,
        s=config.s if config.s is not None else 1,
        r=config.r,
    )


def construct(config: RunConfig, name: Optional[str] = None) -> LineSet | DesignFamily:
    """Build the line set or design family named *name*."""
    name = name or config.name
    if name in DESIGN_CONSTRUCTIONS:
        params = _design_params(config)
        if name == "gk-frs":
            return gk_frs_design(params)
        return gk_mult_design(params)
    space = _space(config)
    if name == "tangents":
        ts = None if config.count is None else range(config.count)
        return tangent_family(space, ts)
    if name == "diverted":
        return higgledy_family(space, config.count)
    if name == "triangle":
        return plane_triangle(space)
    if name == "fano":
        return fano_concurrent(space)
    if name == "random":
        if config.count is None:
            raise HiggledyError("A random line set needs --count")
        return random_lineset(space, config.count, np.random.default_rng(config.seed))
    return pg3_examples(space, name, budget=config.budget)


def _load(config: RunConfig, default: str, kind: type) -> Any:
    if config.input is not None:
        obj = load_input(config.input)
    else:
        obj = construct(config, config.construction or default)
    if not isinstance(obj, kind):
        raise HiggledyError(f"Expected a {kind.__name__}, got a {type(obj).__name__}")
    return obj


def _enumeration_kwargs(config: RunConfig) -> dict:
    return dict(
        budget=config.budget, scheduler=config.scheduler, progress=config.progress
    )


def _run_construct(config: RunConfig) -> Outcome:
    obj = construct(config)
    if isinstance(obj, DesignFamily):
        return Outcome(design_family_to_dict(obj))
    return Outcome(lineset_to_dict(obj))


def _run_verify(config: RunConfig) -> Outcome:
    lineset = _load(config, "diverted", LineSet)
    kwargs = _enumeration_kwargs(config)
    summary = dict(lineset=lineset_to_dict(lineset))
    if config.name == "generator":
        report = is_generator_lineset(lineset, **kwargs)
        return Outcome(dict(summary, **generator_report_to_dict(report)))
    if config.name == "transversal":
        geometric = find_transversal_geometric(lineset, **kwargs)
        pluecker = find_transversal_pluecker(
            lineset, pluecker_budget=config.pluecker_budget, **kwargs
        )
        if (geometric is None) != (pluecker is None):
            raise InconsistencyError(
                "Geometric and Plücker transversal finders disagree"
            )
        return Outcome(
            dict(
                summary,
                exists=geometric is not None,
                geometric=witness_to_dict(geometric),
                pluecker=witness_to_dict(pluecker),
            )
        )
    if config.name == "blocking":
        t = config.t if config.t is not None else 1
        points = lineset_points(lineset)
        blocking = is_tfold_blocking(points, t, lineset.space, budget=config.budget)
        return Outcome(dict(summary, t=t, points=len(points), verdict=blocking))
    if config.name == "small-transversal":
        witness = build_transversal_small(lineset)
        meets_all = len(witness.meeting_points) == len(lineset)
        if not meets_all:
            raise InconsistencyError("Constructed transversal misses a line")
        return Outcome(dict(summary, transversal=witness_to_dict(witness)))
    if config.name == "consistency":
        report = check_sufficiency(lineset, ledger=ConsistencyLedger(), **kwargs)
        return Outcome(dict(summary, **sufficiency_report_to_dict(report)))
    rank = pluecker_rank(lineset)
    independent = rank == len(lineset)
    vectors = [pluecker_to_dict(line_to_pluecker(line)) for line in lineset]
    return Outcome(
        dict(summary, rank=rank, independent=independent, vectors=vectors),
        bound_violated=not independent,
    )


def _run_design(config: RunConfig) -> Outcome:
    family = _load(config, "gk-mult", DesignFamily)
    summary = dict(
        construction=family.construction,
        parameters=family.params.to_dict(),
        members=len(family),
    )
    if config.name == "measure":
        s = config.s if config.s is not None else family.params.s
        reports = measure_design(family, s, **_enumeration_kwargs(config))
        weak, strong = reports["weak"], reports["strong"]
        if weak.measured > strong.measured:
            raise InconsistencyError(
                f"Weak parameter {weak.measured} exceeds strong {strong.measured}"
            )
        selected = config.mode if config.mode in ("weak", "strong") else "strong"
        return Outcome(
            dict(
                summary,
                mode=selected,
                weak=design_report_to_dict(weak),
                strong=design_report_to_dict(strong),
            ),
            bound_violated=reports[selected].satisfied is False,
        )
    if config.name == "wronskian":
        mode = config.mode if config.mode in ("frs", "mult") else family.mode
        rng = np.random.default_rng(config.seed)
        samples = config.count or DEFAULT_WRONSKIAN_SAMPLES
        s = config.s if config.s is not None else family.params.s
        reports = [
            wronskian_degree_check(
                random_subspace(family.space, s, rng).rows, mode, family.params
            )
            for _ in range(samples)
        ]
        degrees = [r.degree for r in reports if r.degree is not None]
        holds = all(r.holds for r in reports)
        return Outcome(
            dict(
                summary,
                mode=mode,
                samples=samples,
                bound=reports[0].bound,
                max_degree=max(degrees, default=None),
                zero=sum(1 for r in reports if not r.nonzero),
                holds=holds,
                first=wronskian_report_to_dict(reports[0]),
            ),
            bound_violated=not holds,
        )
    lineset = design_lines(family, config.count)
    report = check_sufficiency(
        lineset, ledger=ConsistencyLedger(), **_enumeration_kwargs(config)
    )
    return Outcome(
        dict(
            summary,
            lineset=lineset_to_dict(lineset),
            **sufficiency_report_to_dict(report),
        )
    )


def _run_search(config: RunConfig) -> Outcome:
    space = _space(config)
    max_size = config.max_size or lower_bound(space.d)
    result = search_minimal_generator(
        space,
        max_size,
        strategy=config.strategy,
        budget=config.budget,
        seed=config.seed,
        restarts=config.count or 1000,
        with_transversal=config.with_transversal,
    )
    below = result.size is not None and result.size < result.lower_bound
    return Outcome(
        search_result_to_dict(result), bound_violated=below, partial=result.partial
    )


def _run_selftest(config: RunConfig) -> Outcome:
    suite = run_selftest(
        quick=config.name == "quick", budget=config.budget, timing=config.timing
    )
    return Outcome(suite, partial=suite["partial"], failed=not suite["passed"])


_RUNNERS: dict[str, Callable[[RunConfig], Outcome]] = dict(
    construct=_run_construct,
    verify=_run_verify,
    design=_run_design,
    search=_run_search,
    selftest=_run_selftest,
)


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one run and build its report.

    Returns:
        The exit status and the JSON compatible report. Status 0 means
        success, 1 invalid input, 2 a violated bound under ``assert_bound``,
        3 a budget refusal and 4 an internal inconsistency.
    """
    start = time.perf_counter()
    report = dict(
        tool=TOOL_NAME,
        version=__version__,
        config=config.to_dict(),
        anchor=ANCHORS.get(config.name),
    )
    try:
        config.validate()
        report["field"] = field_summary(parse_field(config.field))
        LOG.info(f"Running {config.command} {config.name}")
        outcome = _RUNNERS[config.command](config)
        report["result"] = outcome.result
        report["bound_violated"] = outcome.bound_violated
        if outcome.failed:
            status = EXIT_INCONSISTENT
        elif outcome.partial:
            status = EXIT_BUDGET_REFUSED
        elif outcome.bound_violated and config.assert_bound:
            status = EXIT_BOUND_VIOLATED
        else:
            status = EXIT_OK
    except BudgetExceededError as e:
        LOG.warning(str(e))
        report["error"] = str(e)
        status = EXIT_BUDGET_REFUSED
    except InconsistencyError as e:
        LOG.error(str(e))
        report["error"] = str(e)
        status = EXIT_INCONSISTENT
    except HiggledyError as e:
        LOG.error(str(e))
        report["error"] = str(e)
        status = EXIT_INVALID
    report["status"] = status
    if config.timing:
        report["wall_time"] = round(time.perf_counter() - start, 6)
    if config.out is not None:
        with open(config.out, "w") as fp:
            fp.write(dump_json(report))
    return status, report
