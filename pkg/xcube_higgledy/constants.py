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

from xcube.util.jsonschema import (
    JsonArraySchema,
    JsonBooleanSchema,
    JsonIntegerSchema,
    JsonObjectSchema,
    JsonStringSchema,
)

LOG = logging.getLogger("xcube.higgledy")

TOOL_NAME = "xcube-higgledy"
CLI_NAME = "higgledy"

# budgets
DEFAULT_ENUMERATION_BUDGET = 10**8
DEFAULT_PLUECKER_BUDGET = 10**6
DEFAULT_FIELD_ORDER_LIMIT = 2**16
DEFAULT_CHUNK_SIZE = 2**14

# exit statuses
EXIT_OK = 0
EXIT_INVALID = 1
EXIT_BOUND_VIOLATED = 2
EXIT_BUDGET_REFUSED = 3
EXIT_INCONSISTENT = 4

SCHEDULERS = ("synchronous", "threads")

COMMANDS = ("construct", "verify", "design", "search", "selftest")
CONSTRUCTION_NAMES = (
    "tangents",
    "diverted",
    "triangle",
    "fano",
    "three-ruling",
    "plus-exterior",
    "plus-two-secants",
    "random",
    "gk-frs",
    "gk-mult",
)
LINESET_CONSTRUCTIONS = CONSTRUCTION_NAMES[:8]
DESIGN_CONSTRUCTIONS = CONSTRUCTION_NAMES[8:]
VERIFY_NAMES = (
    "generator",
    "transversal",
    "blocking",
    "small-transversal",
    "consistency",
    "pluecker-rank",
)
DESIGN_NAMES = ("measure", "wronskian", "lines")
SEARCH_NAMES = ("minimal",)
COMMAND_NAMES = dict(
    construct=CONSTRUCTION_NAMES,
    verify=VERIFY_NAMES,
    design=DESIGN_NAMES,
    search=SEARCH_NAMES,
    selftest=("all", "quick"),
)

# anchors naming the result each report or self-test row exercises
ANCHORS = {
    "tangents": "Lemma, moment curve tangents have Pluecker coordinates "
    "(j-i) t^(i+j-1)",
    "diverted": "Theorem, 2d-1 diverted tangents form a generator set",
    "triangle": "Example, three lines in general position generate PG(2,q)",
    "fano": "Remark, three concurrent lines generate PG(2,2)",
    "three-ruling": "Example, three lines of one ruling of the hyperbolic "
    "quadric are not generated for q > 2",
    "plus-exterior": "Example, a ruling triple plus a line disjoint from the "
    "quadric generates",
    "plus-two-secants": "Example, a ruling triple plus two lines without a "
    "common opposite line generates",
    "random": "Definition, uniformly sampled distinct lines",
    "gk-frs": "Construction, subspace design from folded Reed-Solomon "
    "evaluation conditions",
    "gk-mult": "Construction, subspace design from multiplicity conditions",
    "generator": "Definition, generator set: the traces of the lines span "
    "every hyperplane",
    "transversal": "Theorem, lines without a co-dimension two transversal "
    "form a generator set",
    "blocking": "Definition, t-fold blocking set: every hyperplane holds at "
    "least t points",
    "small-transversal": "Lemma, floor(d/2)+d-1 lines always have a "
    "co-dimension two transversal",
    "consistency": "Theorem, no transversal implies generator; Lemma, a "
    "generator set with transversal has at least q+1 lines",
    "pluecker-rank": "Lemma, Pluecker vectors of distinct moment curve "
    "tangents are independent",
    "measure": "Definition, weak and strong (s,A) subspace design parameters",
    "wronskian": "Lemma, degree bound of the folded Wronskian determinant",
    "lines": "Proposition, a co-dimension two subspace design yields lines "
    "in higgledy-piggledy position",
    "minimal": "Theorem, a generator set of lines in PG(d,q) has at least "
    "floor(d/2)+d elements",
    "coincidence": "Remark, diverted tangents are the tangents if char > d",
    "char-equals-dim": "Remark, if char = d only H_0d meets every tangent",
    "oracle-equivalence": "Proposition, the Pluecker system is solvable iff "
    "a transversal exists",
    "grassmannian": "Lemma, dimension and degree of the Grassmannian",
    "all": "Acceptance checks, one row per result",
    "quick": "Acceptance checks, one row per result, reduced parameters",
}

# parameter schemas
SCHEMA_FIELD = JsonStringSchema(
    title="Finite field",
    description="Field order given as 'q' or 'p^k', for example '7' or '2^3'.",
    pattern=r"^\s*[0-9]+\s*(\^\s*[0-9]+\s*)?$",
)
SCHEMA_DIM = JsonIntegerSchema(title="Projective dimension d", minimum=2)
SCHEMA_COUNT = JsonIntegerSchema(
    title="Number of lines or samples", minimum=1, nullable=True
)
SCHEMA_BUDGET = JsonIntegerSchema(
    title="Enumeration budget",
    description="Maximum number of subspaces or subsets enumerated by a run.",
    minimum=1,
    default=DEFAULT_ENUMERATION_BUDGET,
)

RUN_PARAMETERS = dict(
    command=JsonStringSchema(title="Sub-command", enum=list(COMMANDS)),
    name=JsonStringSchema(title="Construction, check, or search name", min_length=1),
    field=SCHEMA_FIELD,
    dim=SCHEMA_DIM,
    count=SCHEMA_COUNT,
    s=JsonIntegerSchema(title="Dimension s of the test subspaces", minimum=1),
    r=JsonIntegerSchema(title="Folding parameter r", minimum=1, default=1),
    t=JsonIntegerSchema(title="Number of conditions t", minimum=1),
    mode=JsonStringSchema(
        title="Measurement mode", enum=["weak", "strong", "frs", "mult"]
    ),
    strategy=JsonStringSchema(
        title="Search strategy",
        enum=["exhaustive", "random-restart"],
        default="exhaustive",
    ),
    with_transversal=JsonBooleanSchema(
        title="Require the generator set to have a common transversal",
        default=False,
    ),
    construction=JsonStringSchema(
        title="Construction used when no input file is given",
        enum=list(CONSTRUCTION_NAMES),
    ),
    max_size=JsonIntegerSchema(title="Largest subset size searched", minimum=1),
    budget=SCHEMA_BUDGET,
    pluecker_budget=JsonIntegerSchema(minimum=1, default=DEFAULT_PLUECKER_BUDGET),
    seed=JsonIntegerSchema(title="Random seed", minimum=0, default=0),
    assert_bound=JsonBooleanSchema(
        title="Exit with status 2 when a bound is violated", default=False
    ),
    timing=JsonBooleanSchema(title="Record the wall time", default=True),
    scheduler=JsonStringSchema(enum=list(SCHEDULERS), default="synchronous"),
    progress=JsonBooleanSchema(default=False),
    input=JsonStringSchema(title="Input JSON file", min_length=1),
    out=JsonStringSchema(title="Output JSON file", min_length=1),
)

SCHEMA_FIELD_SPEC = JsonObjectSchema(
    properties=dict(
        p=JsonIntegerSchema(minimum=2),
        k=JsonIntegerSchema(minimum=1),
        modulus=JsonArraySchema(items=JsonIntegerSchema(minimum=0), nullable=True),
    ),
    required=["p", "k"],
    additional_properties=False,
)
SCHEMA_ROWS = JsonArraySchema(
    items=JsonArraySchema(items=JsonIntegerSchema(minimum=0), min_items=1),
    min_items=1,
)

LINESET_SCHEMA = JsonObjectSchema(
    properties=dict(
        type=JsonStringSchema(const="LineSet"),
        field=SCHEMA_FIELD_SPEC,
        dim=SCHEMA_DIM,
        construction=JsonStringSchema(),
        parameters=JsonObjectSchema(additional_properties=True),
        tags=JsonArraySchema(items=JsonIntegerSchema(minimum=0), nullable=True),
        lines=JsonArraySchema(items=SCHEMA_ROWS),
    ),
    required=["type", "field", "dim", "lines"],
    additional_properties=True,
)

DESIGN_FAMILY_SCHEMA = JsonObjectSchema(
    properties=dict(
        type=JsonStringSchema(const="DesignFamily"),
        field=SCHEMA_FIELD_SPEC,
        label_field=SCHEMA_FIELD_SPEC,
        construction=JsonStringSchema(enum=list(DESIGN_CONSTRUCTIONS)),
        parameters=JsonObjectSchema(
            properties=dict(
                q=JsonIntegerSchema(minimum=2),
                d=JsonIntegerSchema(minimum=1),
                r=JsonIntegerSchema(minimum=1),
                t=JsonIntegerSchema(minimum=1),
                s=JsonIntegerSchema(minimum=1),
            ),
            required=["q", "d", "r", "t", "s"],
            additional_properties=False,
        ),
        members=JsonArraySchema(
            items=JsonObjectSchema(
                properties=dict(
                    label=JsonIntegerSchema(minimum=0),
                    codim=JsonIntegerSchema(minimum=0),
                    rows=JsonArraySchema(
                        items=JsonArraySchema(items=JsonIntegerSchema(minimum=0))
                    ),
                ),
                required=["label", "codim", "rows"],
                additional_properties=False,
            )
        ),
    ),
    required=["type", "field", "construction", "parameters", "members"],
    additional_properties=True,
)
