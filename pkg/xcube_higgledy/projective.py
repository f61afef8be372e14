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
import itertools
from typing import Iterable, Iterator, Optional, Sequence, Union

import galois
import numpy as np

from .constants import DEFAULT_CHUNK_SIZE
from .constants import DEFAULT_ENUMERATION_BUDGET
from .field import FieldSpec
from .field import as_ints
from .error import BudgetExceededError
from .error import HiggledyError

RowsLike = Union[galois.FieldArray, np.ndarray, Sequence[Sequence[int]]]


@dataclasses.dataclass(frozen=True)
class SpaceSpec:
    """The projective space PG(d, q)."""

    d: int
    field: FieldSpec

    def __post_init__(self):
        if self.d < 2:
            raise HiggledyError(
                f"Projective dimension must be at least 2, got {self.d}"
            )

    @property
    def n(self) -> int:
        """Dimension of the underlying vector space."""
        return self.d + 1

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def gf(self) -> type[galois.FieldArray]:
        return self.field.gf

    def __str__(self) -> str:
        return f"PG({self.d},{self.field.q})"


@dataclasses.dataclass(frozen=True)
class Subspace:
    """A projective subspace given by its reduced row echelon basis.

    Rows hold enumeration indices of field elements. Two subspaces are
    equal exactly when their canonical matrices are equal. Use
    :func:`rref` to build instances from arbitrary spanning rows.
    """

    space: SpaceSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.rows:
            raise HiggledyError("A subspace needs at least one row")
        if any(len(row) != self.space.n for row in self.rows):
            raise HiggledyError(
                f"Rows of a subspace of {self.space} must have length {self.space.n}"
            )

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def projective_dim(self) -> int:
        return len(self.rows) - 1

    @property
    def matrix(self) -> galois.FieldArray:
        return self.space.gf(np.array(self.rows, dtype=np.int64))

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(row) if v) for row in self.rows)

    def contains(self, other: "Subspace") -> bool:
        """Whether *other* is a subspace of this one."""
        _check_same_space(self, other)
        stacked = np.concatenate([self.matrix, other.matrix])
        return _rank(stacked) == self.rank

    def to_list(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


@dataclasses.dataclass(frozen=True)
class Hyperplane:
    """A hyperplane given by its dual coordinate vector.

    The vector is normalized so that its first nonzero entry is 1.
    """

    space: SpaceSpec
    vector: tuple[int, ...]

    def __post_init__(self):
        if len(self.vector) != self.space.n:
            raise HiggledyError(
                f"Dual vector of {self.space} must have length {self.space.n}"
            )
        nonzero = [v for v in self.vector if v]
        if not nonzero or nonzero[0] != 1:
            raise HiggledyError(
                f"Dual vector {self.vector} must be nonzero with leading entry 1"
            )

    @classmethod
    def from_subspace(cls, subspace: Subspace) -> "Hyperplane":
        if subspace.rank != subspace.space.d:
            raise HiggledyError(
                f"Expected a subspace of rank {subspace.space.d}, got {subspace.rank}"
            )
        (vector,) = annihilator(subspace).rows
        return cls(subspace.space, vector)

    @property
    def subspace(self) -> Subspace:
        gf = self.space.gf
        return rref(kernel_rows(gf([list(self.vector)])), self.space)

    def contains(self, subspace: Subspace) -> bool:
        gf = self.space.gf
        values = subspace.matrix @ gf(list(self.vector))
        return not np.any(values)


@dataclasses.dataclass(frozen=True)
class BlockSpec:
    """A contiguous range of RREF matrices sharing one pivot pattern.

    Attributes:
        pivots: pivot column of every row
        free: positions ``(row, column)`` of the free entries, the first one
            being the most significant base-q digit
        start: first index within the pivot pattern
        stop: index after the last one within the pivot pattern
        offset: global enumeration index of the matrix at *start*
    """

    pivots: tuple[int, ...]
    free: tuple[tuple[int, int], ...]
    start: int
    stop: int
    offset: int

    @property
    def size(self) -> int:
        return self.stop - self.start


def rows_tuple(ints: np.ndarray) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in ints)


def _check_same_space(*subspaces: Subspace):
    spaces = {s.space for s in subspaces}
    if len(spaces) > 1:
        raise HiggledyError("Subspaces belong to different ambient spaces")


def _as_field_array(rows: RowsLike, space: SpaceSpec) -> galois.FieldArray:
    if isinstance(rows, galois.FieldArray):
        if type(rows) is not space.gf:
            raise HiggledyError(f"Rows are not over {space.field}")
        return rows
    array = np.array(rows, dtype=np.int64)
    if array.ndim == 1:
        array = array[np.newaxis, :]
    if array.ndim != 2 or array.shape[1] != space.n:
        raise HiggledyError(f"Rows must have length {space.n} for {space}")
    if np.any(array < 0):
        if space.field.k != 1:
            raise HiggledyError("Negative entries are only accepted over prime fields")
        array = array % space.q
    return space.gf(array)


def rref_array(matrix: galois.FieldArray) -> galois.FieldArray:
    """Reduced row echelon form without its zero rows."""
    reduced = matrix.row_reduce()
    keep = np.any(as_ints(reduced) != 0, axis=1)
    return reduced[keep]


def _rank(matrix: galois.FieldArray) -> int:
    return rref_array(matrix).shape[0]


def rref(rows: RowsLike, space: SpaceSpec) -> Subspace:
    """Canonical form of the row space spanned by *rows*.

    Raises:
        HiggledyError: if all rows are zero
    """
    reduced = rref_array(_as_field_array(rows, space))
    if reduced.shape[0] == 0:
        raise HiggledyError("Cannot form a subspace from zero rows only")
    return Subspace(space, rows_tuple(as_ints(reduced)))


def kernel_rows(matrix: galois.FieldArray) -> galois.FieldArray:
    """A basis of the right kernel of *matrix*, one vector per row.

    The basis has no rows when the kernel is trivial.
    """
    gf = type(matrix)
    n = matrix.shape[-1]
    rank = _rank(matrix) if matrix.shape[0] else 0
    if rank == 0:
        return gf.Identity(n)
    if rank == n:
        return gf.Zeros((0, n))
    return matrix.null_space()


def annihilator(subspace: Subspace) -> Optional[Subspace]:
    """The dual subspace, None when *subspace* is the whole space."""
    basis = kernel_rows(subspace.matrix)
    if basis.shape[0] == 0:
        return None
    return rref(basis, subspace.space)


def span(subspaces: Iterable[Subspace]) -> Subspace:
    subspaces = list(subspaces)
    if not subspaces:
        raise HiggledyError("Cannot span an empty collection of subspaces")
    _check_same_space(*subspaces)
    space = subspaces[0].space
    return rref(np.concatenate([s.matrix for s in subspaces]), space)


def meet(s1: Subspace, s2: Subspace) -> Optional[Subspace]:
    """Intersection of two subspaces, computed through their annihilators.

    Returns:
        The intersection, or None when it is empty.
    """
    _check_same_space(s1, s2)
    duals = [kernel_rows(s.matrix) for s in (s1, s2)]
    stacked = np.concatenate(duals)
    if stacked.shape[0] == 0:
        return s1
    basis = kernel_rows(stacked)
    if basis.shape[0] == 0:
        return None
    return rref(basis, s1.space)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if not 0 <= k <= n:
        raise HiggledyError(f"Gaussian binomial needs 0 <= k <= n, got {k}, {n}")
    numerator = 1
    denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    count, rest = divmod(numerator, denominator)
    assert rest == 0
    return count


def check_budget(what: str, count: int, budget: Optional[int]):
    if budget is not None and count > budget:
        raise BudgetExceededError(what, count, budget)


def iter_block_specs(
    n: int, r: int, q: int, chunk: int = DEFAULT_CHUNK_SIZE
) -> Iterator[BlockSpec]:
    """Split the enumeration of rank-r RREF matrices with n columns into blocks.

    Pivot patterns are visited in lexicographic order, the matrices of one
    pattern by counting their free entries in base q.
    """
    offset = 0
    for pivots in itertools.combinations(range(n), r):
        free = tuple(
            (i, j)
            for i in range(r)
            for j in range(pivots[i] + 1, n)
            if j not in pivots
        )
        total = q ** len(free)
        for start in range(0, total, chunk):
            stop = min(start + chunk, total)
            yield BlockSpec(pivots, free, start, stop, offset + start)
        offset += total


def block_matrices(
    spec: BlockSpec, n: int, gf: type[galois.FieldArray]
) -> galois.FieldArray:
    """Materialize the matrices of a block as an array of shape (N, r, n)."""
    q = gf.order
    r = len(spec.pivots)
    index = np.arange(spec.start, spec.stop, dtype=np.int64)
    mats = np.zeros((index.size, r, n), dtype=np.int64)
    for i, column in enumerate(spec.pivots):
        mats[:, i, column] = 1
    m = len(spec.free)
    for pos, (i, j) in enumerate(spec.free):
        mats[:, i, j] = (index // q ** (m - 1 - pos)) % q
    return gf(mats)


def iter_rref_blocks(
    gf: type[galois.FieldArray], n: int, r: int, chunk: int = DEFAULT_CHUNK_SIZE
) -> Iterator[tuple[int, galois.FieldArray]]:
    """Stream all rank-r RREF matrices with n columns in enumeration order.

    Yields:
        Pairs of the global index of the first matrix and an array of
        shape (N, r, n).
    """
    for spec in iter_block_specs(n, r, gf.order, chunk):
        yield spec.offset, block_matrices(spec, n, gf)


def enumerate_subspaces(
    space: SpaceSpec,
    projective_dim: int,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
) -> Iterator[Subspace]:
    """Stream every subspace of the given projective dimension exactly once.

    Raises:
        BudgetExceededError: before streaming, if the count exceeds *budget*
    """
    if not 0 <= projective_dim <= space.d:
        raise HiggledyError(
            f"Projective dimension {projective_dim} out of range for {space}"
        )
    r = projective_dim + 1
    check_budget("subspaces", gaussian_binomial(space.n, r, space.q), budget)
    for _, block in iter_rref_blocks(space.gf, space.n, r):
        for mat in as_ints(block):
            yield Subspace(space, rows_tuple(mat))


def enumerate_hyperplanes(
    space: SpaceSpec, budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[Hyperplane]:
    check_budget("hyperplanes", gaussian_binomial(space.n, 1, space.q), budget)
    for _, block in iter_rref_blocks(space.gf, space.n, 1):
        for mat in as_ints(block):
            yield Hyperplane(space, tuple(int(v) for v in mat[0]))


def points_on(subspace: Subspace) -> list[Subspace]:
    """All points of *subspace*, in enumeration order of their coefficients."""
    basis = subspace.matrix
    points = []
    for _, coeffs in iter_rref_blocks(subspace.space.gf, subspace.rank, 1):
        vectors = coeffs[:, 0, :] @ basis
        for vector in as_ints(vectors):
            points.append(Subspace(subspace.space, (tuple(int(v) for v in vector),)))
    return points


def normalize_rows(array: galois.FieldArray) -> galois.FieldArray:
    """Scale every nonzero row so that its first nonzero entry is 1."""
    ints = as_ints(array)
    nonzero = ints != 0
    first = np.asarray(np.argmax(nonzero, axis=-1))
    leading = np.take_along_axis(ints, first[..., np.newaxis], axis=-1)
    leading[leading == 0] = 1
    gf = type(array)
    return array / gf(leading)


def batch_rank(mats: galois.FieldArray) -> np.ndarray:
    """Ranks of a stack of matrices of shape (N, m, n) by batched elimination."""
    a = mats.copy()
    count, m, n = a.shape
    rank = np.zeros(count, dtype=np.int64)
    if count == 0 or m == 0:
        return rank
    row_index = np.arange(m)
    for column in range(n):
        candidates = (as_ints(a[:, :, column]) != 0) & (
            row_index[np.newaxis, :] >= rank[:, np.newaxis]
        )
        has_pivot = candidates.any(axis=1)
        if not has_pivot.any():
            continue
        sel = np.flatnonzero(has_pivot)
        source = np.argmax(candidates[sel], axis=1)
        target = rank[sel]
        source_rows = a[sel, source].copy()
        target_rows = a[sel, target].copy()
        a[sel, target] = source_rows
        a[sel, source] = target_rows
        pivot_rows = a[sel, target] / a[sel, target, column][:, np.newaxis]
        a[sel, target] = pivot_rows
        factors = a[sel, :, column].copy()
        factors[np.arange(sel.size), target] = 0
        a[sel] = a[sel] - factors[:, :, np.newaxis] * pivot_rows[:, np.newaxis, :]
        rank[sel] += 1
    return rank


def random_subspace(space: SpaceSpec, rank: int, rng: np.random.Generator) -> Subspace:
    """A uniformly random subspace of the given rank."""
    if not 1 <= rank <= space.n:
        raise HiggledyError(f"Rank {rank} out of range for {space}")
    while True:
        rows = rng.integers(0, space.q, size=(rank, space.n))
        reduced = rref_array(space.gf(rows))
        if reduced.shape[0] == rank:
            return Subspace(space, rows_tuple(as_ints(reduced)))


def rref_at_index(
    gf: type[galois.FieldArray], n: int, r: int, index: int
) -> galois.FieldArray:
    """The rank-r RREF matrix at a global enumeration index."""
    q = gf.order
    for spec in iter_block_specs(n, r, q, chunk=q ** (n * r)):
        if spec.offset <= index < spec.offset + spec.size:
            start = index - spec.offset
            local = BlockSpec(spec.pivots, spec.free, start, start + 1, index)
            return block_matrices(local, n, gf)[0]
    raise HiggledyError(f"Enumeration index {index} out of range")
