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
from typing import Iterable, Iterator, Literal, Mapping, Optional, Sequence

import galois
import numpy as np

from .constants import DEFAULT_CHUNK_SIZE
from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import LOG
from .error import HiggledyError
from .field import FieldSpec
from .field import Scalar
from .field import as_ints
from .field import enumerate_elements
from .field import field_create
from .field import int_embed
from .pluecker import PlueckerVector
from .pluecker import pair_indices
from .projective import SpaceSpec
from .projective import Subspace
from .projective import batch_rank
from .projective import check_budget
from .projective import gaussian_binomial
from .projective import iter_rref_blocks
from .projective import random_subspace
from .projective import rows_tuple
from .projective import rref

Pg3Variant = Literal["three-ruling", "plus-exterior", "plus-two-secants"]
PG3_VARIANTS = ("three-ruling", "plus-exterior", "plus-two-secants")


@dataclasses.dataclass(frozen=True)
class Injection:
    """An injective map φ from {0, ..., d} into the field with φ(0)=0, φ(1)=1."""

    field: FieldSpec
    values: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise HiggledyError(f"Injection values {self.values} are not distinct")
        if self.values[:2] != (0, 1)[: len(self.values)]:
            raise HiggledyError("An injection must map 0 to 0 and 1 to 1")
        if any(not 0 <= v < self.field.q for v in self.values):
            raise HiggledyError(f"Injection values {self.values} not in {self.field}")

    @property
    def d(self) -> int:
        return len(self.values) - 1

    def __call__(self, k: int) -> Scalar:
        return self.field.element(self.values[k])


@dataclasses.dataclass(frozen=True)
class LineSet:
    """An ordered collection of pairwise distinct lines of one space.

    Attributes:
        space: the ambient projective space
        lines: the lines in canonical form
        construction: name of the construction which produced the set
        tags: optional enumeration indices of the curve parameters t
        parameters: free-form construction parameters
    """

    space: SpaceSpec
    lines: tuple[Subspace, ...]
    construction: str = "custom"
    tags: Optional[tuple[int, ...]] = None
    parameters: Mapping = dataclasses.field(default_factory=dict, compare=False)

    def __post_init__(self):
        for line in self.lines:
            if line.space != self.space:
                raise HiggledyError(f"Line {line.rows} is not a line of {self.space}")
            if line.rank != 2:
                raise HiggledyError(f"Subspace {line.rows} is not a line")
        if len(set(self.lines)) != len(self.lines):
            raise HiggledyError("A line set must not contain duplicate lines")
        if self.tags is not None and len(self.tags) != len(self.lines):
            raise HiggledyError(
                f"Got {len(self.tags)} tags for {len(self.lines)} lines"
            )

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.lines)

    @property
    def matrices(self) -> galois.FieldArray:
        """All line bases as an array of shape (L, 2, n)."""
        rows = np.array([line.rows for line in self.lines], dtype=np.int64)
        return self.space.gf(rows.reshape(len(self.lines), 2, self.space.n))

    def subset(self, indices: Iterable[int], construction: str = None) -> "LineSet":
        indices = list(indices)
        return LineSet(
            self.space,
            tuple(self.lines[i] for i in indices),
            construction=construction or self.construction,
            tags=None if self.tags is None else tuple(self.tags[i] for i in indices),
        )


def _powers(t: Scalar, d: int) -> galois.FieldArray:
    gf = t.field.gf
    return gf(t.index) ** np.arange(d + 1)


def moment_point(t: Scalar, space: SpaceSpec) -> Subspace:
    """The point a(t) = (1, t, ..., t^d) of the moment curve."""
    return rref(_powers(t, space.d)[np.newaxis, :], space)


def _curve_line(t: Scalar, phi_values: Sequence[Scalar], space: SpaceSpec) -> Subspace:
    gf = space.gf
    a = _powers(t, space.d)
    coefficients = gf([phi.index for phi in phi_values])
    b = gf.Zeros(space.n)
    b[1:] = coefficients[1:] * a[:-1]
    return rref(np.stack([as_ints(a), as_ints(b)]), space)


def moment_tangent(t: Scalar, space: SpaceSpec) -> Subspace:
    """The tangent line through a(t) and its formal derivative."""
    embedded = [int_embed(k, space.field) for k in range(space.n)]
    return _curve_line(t, embedded, space)


def default_injection(space: SpaceSpec) -> Injection:
    """The injection k -> k mod p when p > d, a greedy one otherwise.

    Raises:
        HiggledyError: if the field has at most d elements
    """
    field = space.field
    if field.q <= space.d:
        raise HiggledyError(
            f"No injection of {space.n} values into {field} exists"
        )
    if field.p > space.d:
        embedded = tuple(int_embed(k, field).index for k in range(space.n))
        return Injection(field, embedded)
    values = [0, 1]
    for candidate in range(field.q):
        if len(values) == space.n:
            break
        if candidate not in values:
            values.append(candidate)
    return Injection(field, tuple(values))


def diverted_tangent(t: Scalar, phi: Injection, space: SpaceSpec) -> Subspace:
    """The line through a(t) and b(t), b_j(t) = φ(j) t^(j-1)."""
    if phi.d != space.d or phi.field != space.field:
        raise HiggledyError(f"Injection does not match {space}")
    return _curve_line(t, [phi(k) for k in range(space.n)], space)


def _curve_pluecker(
    t: Scalar, coefficients: Sequence[int], space: SpaceSpec
) -> PlueckerVector:
    gf = space.gf
    tt = gf(t.index)
    values = gf.Zeros(len(pair_indices(space.n)))
    for k, (i, j) in enumerate(pair_indices(space.n)):
        values[k] = (gf(coefficients[j]) - gf(coefficients[i])) * tt ** (i + j - 1)
    return PlueckerVector.from_array(space, "primal", values)


def diverted_pluecker_closed_form(
    t: Scalar, phi: Injection, space: SpaceSpec
) -> PlueckerVector:
    """Coordinates (φ(j) - φ(i)) t^(i+j-1) of a diverted tangent."""
    return _curve_pluecker(t, phi.values, space)


def tangent_pluecker_closed_form(t: Scalar, space: SpaceSpec) -> PlueckerVector:
    """Coordinates (j - i) t^(i+j-1) of a moment curve tangent."""
    embedded = [int_embed(k, space.field).index for k in range(space.n)]
    return _curve_pluecker(t, embedded, space)


def higgledy_family(
    space: SpaceSpec, count: Optional[int] = None, phi: Optional[Injection] = None
) -> LineSet:
    """Diverted tangents at the first *count* field elements, 2d-1 by default."""
    count = 2 * space.d - 1 if count is None else count
    if count > space.q:
        raise HiggledyError(
            f"Need {count} distinct parameters but {space.field} has {space.q}"
        )
    if count < 2 * space.d - 1:
        LOG.warning(
            f"Only {count} diverted tangents requested, fewer than {2 * space.d - 1}"
        )
    phi = default_injection(space) if phi is None else phi
    ts = enumerate_elements(space.field)[:count]
    lines = tuple(diverted_tangent(t, phi, space) for t in ts)
    return LineSet(
        space,
        lines,
        construction="diverted",
        tags=tuple(t.index for t in ts),
        parameters=dict(phi=list(phi.values)),
    )


def tangent_family(space: SpaceSpec, ts: Optional[Iterable[int]] = None) -> LineSet:
    """Moment curve tangents at the given parameters, all elements by default."""
    ts = range(space.q) if ts is None else list(ts)
    elements = [space.field.element(t) for t in ts]
    lines = tuple(moment_tangent(t, space) for t in elements)
    return LineSet(
        space, lines, construction="tangents", tags=tuple(t.index for t in elements)
    )


def plane_triangle(space: SpaceSpec) -> LineSet:
    """The coordinate lines x_0 = 0, x_1 = 0 and x_2 = 0 of PG(2, q)."""
    if space.d != 2:
        raise HiggledyError(f"The triangle lives in a plane, not in {space}")
    unit = np.eye(3, dtype=np.int64)
    lines = tuple(
        rref([unit[c] for c in range(3) if c != i], space) for i in range(3)
    )
    return LineSet(space, lines, construction="triangle")


def fano_concurrent(space: Optional[SpaceSpec] = None) -> LineSet:
    """Three lines of PG(2, 2) through the point (1, 0, 0)."""
    if space is None:
        space = SpaceSpec(2, field_create(2))
    if space.d != 2 or space.q != 2:
        raise HiggledyError(f"The concurrent example lives in PG(2,2), not in {space}")
    lines = tuple(
        rref([[1, 0, 0], other], space) for other in ([0, 1, 0], [0, 0, 1], [0, 1, 1])
    )
    return LineSet(space, lines, construction="fano")


def ruling_line(space: SpaceSpec, a: int, b: int) -> Subspace:
    """Line span{(a,0,b,0), (0,a,0,b)} of the quadric x_0 x_3 = x_1 x_2."""
    return rref([[a, 0, b, 0], [0, a, 0, b]], space)


def opposite_line(space: SpaceSpec, c: int, d: int) -> Subspace:
    """Line span{(c,d,0,0), (0,0,c,d)} of the opposite ruling."""
    return rref([[c, d, 0, 0], [0, 0, c, d]], space)


def ruling_parameters(field: FieldSpec) -> list[tuple[int, int]]:
    """Homogeneous parameters (t:1) for all t, followed by (1:0)."""
    return [(t, 1) for t in range(field.q)] + [(1, 0)]


def _line_point_stack(lines: galois.FieldArray) -> galois.FieldArray:
    # (N, 2, n) -> (N, q+1, n), all points of every line
    gf = type(lines)
    coefficients = np.concatenate(
        [block[:, 0, :] for _, block in iter_rref_blocks(gf, 2, 1)]
    )
    return (coefficients[np.newaxis, :, :, np.newaxis] * lines[:, np.newaxis]).sum(
        axis=2
    )


def quadric_hits(lines: galois.FieldArray) -> np.ndarray:
    """Number of points of each line on the quadric x_0 x_3 = x_1 x_2."""
    points = _line_point_stack(lines)
    values = points[..., 0] * points[..., 3] - points[..., 1] * points[..., 2]
    return np.count_nonzero(as_ints(values) == 0, axis=-1)


def _lines_meeting(lines: galois.FieldArray, other: Subspace) -> np.ndarray:
    other_rows = np.broadcast_to(as_ints(other.matrix), (lines.shape[0], 2, 4))
    stacked = np.concatenate([as_ints(lines), other_rows], axis=1)
    return batch_rank(type(lines)(stacked)) < 4


def _all_lines(space: SpaceSpec, budget: Optional[int]) -> galois.FieldArray:
    check_budget("lines", gaussian_binomial(space.n, 2, space.q), budget)
    return np.concatenate(
        [
            block
            for _, block in iter_rref_blocks(
                space.gf, space.n, 2, DEFAULT_CHUNK_SIZE
            )
        ]
    )


def pg3_examples(
    space: SpaceSpec,
    variant: Pg3Variant = "three-ruling",
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
) -> LineSet:
    """Line sets built on the hyperbolic quadric x_0 x_3 = x_1 x_2 of PG(3, q).

    The three ruling lines have parameters 0, 1 and infinity. The
    ``"plus-exterior"`` variant adds the first line missing the quadric,
    ``"plus-two-secants"`` adds the first pair of lines which meet the
    quadric without lying on it and have no common opposite line.

    Raises:
        HiggledyError: if the space is not three-dimensional or the searched
            lines do not exist over this field
    """
    if space.d != 3:
        raise HiggledyError(f"The quadric examples live in PG(3,q), not in {space}")
    if variant not in PG3_VARIANTS:
        raise HiggledyError(f"Unknown quadric example {variant!r}")
    rulings = tuple(ruling_line(space, a, b) for a, b in [(0, 1), (1, 1), (1, 0)])
    if variant == "three-ruling":
        return LineSet(space, rulings, construction=variant)

    lines = _all_lines(space, budget)
    hits = quadric_hits(lines)
    if variant == "plus-exterior":
        exterior = np.flatnonzero(hits == 0)
        if exterior.size == 0:
            raise HiggledyError(f"No line of {space} misses the quadric")
        extra = (Subspace(space, rows_tuple(as_ints(lines[exterior[0]]))),)
    else:
        candidates = np.flatnonzero((hits > 0) & (hits <= 2))
        opposite = [
            opposite_line(space, c, d) for c, d in ruling_parameters(space.field)
        ]
        masks = np.stack(
            [_lines_meeting(lines[candidates], o) for o in opposite], axis=1
        ).astype(np.int64)
        overlap = masks @ masks.T
        pairs = np.argwhere(np.triu(overlap == 0, k=1))
        if pairs.size == 0:
            raise HiggledyError(
                f"No two lines of {space} meet the quadric without a common"
                " opposite line"
            )
        i, j = pairs[0]
        extra = tuple(
            Subspace(space, rows_tuple(as_ints(lines[candidates[k]]))) for k in (i, j)
        )
    LOG.info(f"Quadric example {variant!r} over {space.field} found {len(extra)} lines")
    return LineSet(space, rulings + extra, construction=variant)


def random_lineset(space: SpaceSpec, size: int, rng: np.random.Generator) -> LineSet:
    """*size* distinct lines sampled uniformly at random."""
    total = gaussian_binomial(space.n, 2, space.q)
    if size > total:
        raise HiggledyError(f"{space} has only {total} lines, {size} requested")
    lines = []
    while len(lines) < size:
        line = random_subspace(space, 2, rng)
        if line not in lines:
            lines.append(line)
    return LineSet(space, tuple(lines), construction="random")
