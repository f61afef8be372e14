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

import json
from typing import Any, Optional

import jsonschema

from ._utils import jsonify
from .constants import DESIGN_FAMILY_SCHEMA
from .constants import LINESET_SCHEMA
from .constructions import LineSet
from .designs import DesignFamily
from .designs import DesignParams
from .designs import PolySubspace
from .designs import coefficient_space
from .error import HiggledyError
from .field import FieldSpec
from .field import field_create
from .pluecker import PlueckerVector
from .projective import Hyperplane
from .projective import SpaceSpec
from .projective import Subspace
from .projective import kernel_rows
from .projective import rref
from .search import SearchResult
from .verification import DesignReport
from .verification import GeneratorReport
from .verification import SufficiencyReport
from .verification import TransversalWitness
from .verification import WronskianReport


def field_to_dict(field: FieldSpec) -> dict:
    return dict(
        p=field.p,
        k=field.k,
        modulus=None if field.modulus is None else list(field.modulus),
    )


def field_from_dict(data: dict) -> FieldSpec:
    """Rebuild a field, keeping a non-canonical modulus if one is given."""
    field = field_create(data["p"], data["k"])
    modulus = data.get("modulus")
    if field.k == 1 or modulus is None or tuple(modulus) == field.modulus:
        return field
    if len(modulus) != field.k + 1 or modulus[-1] != 1:
        raise HiggledyError(
            f"Modulus {modulus} is not a monic polynomial of degree {field.k}"
        )
    custom = FieldSpec(field.p, field.k, tuple(modulus))
    try:
        custom.gf
    except ValueError as e:
        raise HiggledyError(f"Modulus {modulus} is not irreducible: {e}") from e
    return custom


def field_summary(field: FieldSpec) -> dict:
    return dict(name=str(field), q=field.q, **field_to_dict(field))


def subspace_to_list(subspace: Optional[Subspace]) -> Optional[list]:
    return None if subspace is None else subspace.to_list()


def hyperplane_to_list(hyperplane: Optional[Hyperplane]) -> Optional[list]:
    return None if hyperplane is None else list(hyperplane.vector)


def pluecker_to_dict(vector: PlueckerVector) -> dict:
    return dict(
        flavor=vector.flavor,
        coords=list(vector.coords),
        nonzero=[list(triple) for triple in vector.to_triples()],
    )


def _validate(schema, data: Any, what: str):
    try:
        schema.validate_instance(data)
    except jsonschema.ValidationError as e:
        raise HiggledyError(f"Invalid {what}: {e.message}") from e


def lineset_to_dict(lineset: LineSet) -> dict:
    return dict(
        type="LineSet",
        field=field_to_dict(lineset.space.field),
        dim=lineset.space.d,
        construction=lineset.construction,
        parameters=jsonify(dict(lineset.parameters)),
        tags=None if lineset.tags is None else list(lineset.tags),
        lines=[subspace_to_list(line) for line in lineset],
    )


def lineset_from_dict(data: dict) -> LineSet:
    """Load a line set, bringing every line into canonical form.

    Raises:
        HiggledyError: if *data* violates the line set schema, an entry is
            out of range or a line does not have rank two
    """
    _validate(LINESET_SCHEMA, data, "line set")
    space = SpaceSpec(data["dim"], field_from_dict(data["field"]))
    lines = []
    for rows in data["lines"]:
        if any(v >= space.q for row in rows for v in row):
            raise HiggledyError(f"Entries of {rows} must be below {space.q}")
        line = rref(rows, space)
        if line.rank != 2:
            raise HiggledyError(f"Rows {rows} span a subspace of rank {line.rank}")
        lines.append(line)
    tags = data.get("tags")
    return LineSet(
        space,
        tuple(lines),
        construction=data.get("construction", "custom"),
        tags=None if tags is None else tuple(tags),
        parameters=data.get("parameters") or {},
    )


def design_family_to_dict(family: DesignFamily) -> dict:
    return dict(
        type="DesignFamily",
        field=field_to_dict(family.space.field),
        label_field=field_to_dict(family.label_field),
        construction=family.construction,
        parameters=family.params.to_dict(),
        members=[
            dict(label=m.label, codim=m.codim, rows=[list(r) for r in m.rows])
            for m in family.members
        ],
    )


def design_family_from_dict(data: dict) -> DesignFamily:
    _validate(DESIGN_FAMILY_SCHEMA, data, "design family")
    params = DesignParams(**data["parameters"])
    space = coefficient_space(params)
    if field_from_dict(data["field"]) != space.field:
        raise HiggledyError(f"Design field must be {space.field}")
    gf = space.gf
    members = []
    for member in data["members"]:
        rows = member["rows"]
        if rows:
            conditions = kernel_rows(gf(rows))
        else:
            conditions = gf.Identity(space.n)
        poly_subspace = PolySubspace.from_conditions(space, member["label"], conditions)
        if poly_subspace.codim != member["codim"]:
            raise HiggledyError(
                f"Member {member['label']} has co-dimension {poly_subspace.codim},"
                f" not {member['codim']}"
            )
        members.append(poly_subspace)
    return DesignFamily(
        data["construction"],
        params,
        space,
        field_from_dict(data["label_field"]),
        tuple(members),
    )


def load_json(path: str) -> Any:
    try:
        with open(path) as fp:
            return json.load(fp)
    except (OSError, json.JSONDecodeError) as e:
        raise HiggledyError(f"Cannot read {path}: {e}") from e


def load_input(path: str) -> LineSet | DesignFamily:
    """Load a line set or a design family, depending on its ``type``.

    The file may also be a run report whose result is such an object.
    """
    data = load_json(path)
    if isinstance(data, dict) and isinstance(data.get("result"), dict):
        data = data["result"]
    kind = data.get("type") if isinstance(data, dict) else None
    if kind == "LineSet":
        return lineset_from_dict(data)
    if kind == "DesignFamily":
        return design_family_from_dict(data)
    raise HiggledyError(f"{path} holds neither a LineSet nor a DesignFamily")


def dump_json(data: Any) -> str:
    return json.dumps(jsonify(data), indent=2, sort_keys=True) + "\n"


def witness_to_dict(witness: Optional[TransversalWitness]) -> Optional[dict]:
    if witness is None:
        return None
    return dict(
        subspace=subspace_to_list(witness.subspace),
        meeting_points=[subspace_to_list(p) for p in witness.meeting_points],
        method=witness.method,
        index=witness.index,
    )


def generator_report_to_dict(report: GeneratorReport) -> dict:
    return dict(
        verdict=report.verdict,
        hyperplanes=report.hyperplanes,
        histogram={str(k): v for k, v in sorted(report.histogram.items())},
        counterexample=hyperplane_to_list(report.counterexample),
        counterexample_rank=report.counterexample_rank,
    )


def sufficiency_report_to_dict(report: SufficiencyReport) -> dict:
    return dict(
        lines=report.lines,
        q=report.q,
        generator=report.generator,
        transversal=witness_to_dict(report.transversal),
        consistent=report.consistent,
        violations=list(report.violations),
    )


def design_report_to_dict(report: DesignReport) -> dict:
    return dict(
        mode=report.mode,
        s=report.s,
        measured=report.measured,
        witness=[list(row) for row in report.witness],
        subspaces=report.subspaces,
        members=report.members,
        claimed_bound=jsonify(report.claimed_bound),
        original_bound=jsonify(report.original_bound),
        satisfied=report.satisfied,
    )


def wronskian_report_to_dict(report: WronskianReport) -> dict:
    return dict(
        mode=report.mode,
        basis=[list(row) for row in report.basis],
        coefficients=list(report.coefficients),
        degree=report.degree,
        bound=report.bound,
        nonzero=report.nonzero,
        holds=report.holds,
    )


def search_result_to_dict(result: SearchResult) -> dict:
    return dict(
        strategy=result.strategy,
        max_size=result.max_size,
        with_transversal=result.with_transversal,
        size=result.size,
        found=None if result.found is None else lineset_to_dict(result.found),
        certified_sizes=list(result.certified_sizes),
        examined=result.examined,
        partial=result.partial,
        refused_size=result.refused_size,
        transversal=witness_to_dict(result.transversal),
        seed=result.seed,
        lower_bound=result.lower_bound,
    )
