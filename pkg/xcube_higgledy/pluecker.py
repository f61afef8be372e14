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
import functools
import itertools
import math
from typing import Iterable, Literal

import galois
import numpy as np

from .error import HiggledyError
from .field import Scalar
from .field import as_ints
from .projective import SpaceSpec
from .projective import Subspace
from .projective import annihilator
from .projective import kernel_rows
from .projective import normalize_rows
from .projective import rref
from .projective import rref_array

Flavor = Literal["primal", "dual"]
FLAVORS = ("primal", "dual")


@functools.lru_cache(maxsize=None)
def pair_indices(n: int) -> tuple[tuple[int, int], ...]:
    """Coordinate pairs (i, j), i < j < n, in lexicographic order."""
    return tuple(itertools.combinations(range(n), 2))


@functools.lru_cache(maxsize=None)
def _pair_arrays(n: int) -> tuple[np.ndarray, np.ndarray]:
    pairs = np.array(pair_indices(n), dtype=np.int64).reshape(-1, 2)
    return pairs[:, 0], pairs[:, 1]


@functools.lru_cache(maxsize=None)
def _quadruple_arrays(n: int) -> tuple[np.ndarray, ...]:
    position = {pair: k for k, pair in enumerate(pair_indices(n))}
    columns = [[] for _ in range(6)]
    for i1, i2, i3, i4 in itertools.combinations(range(n), 4):
        for slot, pair in enumerate(
            [(i1, i2), (i3, i4), (i1, i3), (i2, i4), (i1, i4), (i2, i3)]
        ):
            columns[slot].append(position[pair])
    return tuple(np.array(c, dtype=np.int64) for c in columns)


@dataclasses.dataclass(frozen=True)
class PlueckerVector:
    """Normalized Plücker coordinates of a line or of a co-dimension two subspace.

    Coordinates are listed in the order of :func:`pair_indices`, the first
    nonzero one equals 1. The flavor tells primal line coordinates from
    dual coordinates of co-dimension two subspaces.
    """

    space: SpaceSpec
    flavor: Flavor
    coords: tuple[int, ...]

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise HiggledyError(f"Unknown Plücker flavor {self.flavor!r}")
        expected = len(pair_indices(self.space.n))
        if len(self.coords) != expected:
            raise HiggledyError(
                f"Expected {expected} Plücker coordinates, got {len(self.coords)}"
            )
        if not any(self.coords):
            raise HiggledyError("Plücker coordinates must not all vanish")

    @classmethod
    def from_array(
        cls, space: SpaceSpec, flavor: Flavor, array: galois.FieldArray
    ) -> "PlueckerVector":
        if not np.any(as_ints(array)):
            raise HiggledyError("Plücker coordinates must not all vanish")
        normalized = as_ints(normalize_rows(array))
        return cls(space, flavor, tuple(int(v) for v in normalized))

    @property
    def array(self) -> galois.FieldArray:
        return self.space.gf(list(self.coords))

    def coord(self, i: int, j: int) -> Scalar:
        """The coordinate V_ij, antisymmetric in (i, j)."""
        if i == j:
            return self.space.field.element(0)
        if i > j:
            return -self.coord(j, i)
        position = pair_indices(self.space.n).index((i, j))
        return self.space.field.element(self.coords[position])

    def to_triples(self) -> list[tuple[int, int, int]]:
        """Nonzero coordinates as sorted ``(i, j, value)`` triples."""
        return [
            (i, j, v)
            for (i, j), v in zip(pair_indices(self.space.n), self.coords)
            if v
        ]


@dataclasses.dataclass(frozen=True)
class GrassmannSpec:
    """The Grassmannian of m-dimensional subspaces of an (m+n)-dimensional space."""

    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise HiggledyError(
                f"Grassmannian needs positive dimensions, got ({self.m}, {self.n})"
            )


def wedge_rows(a: galois.FieldArray, b: galois.FieldArray) -> galois.FieldArray:
    """Unnormalized coordinates a_i b_j - a_j b_i, batched over leading axes."""
    first, second = _pair_arrays(a.shape[-1])
    return a[..., first] * b[..., second] - a[..., second] * b[..., first]


def line_to_pluecker(line: Subspace) -> PlueckerVector:
    if line.rank != 2:
        raise HiggledyError(f"Expected a line, got a subspace of rank {line.rank}")
    a, b = line.matrix
    return PlueckerVector.from_array(line.space, "primal", wedge_rows(a, b))


def codim2_to_pluecker(subspace: Subspace) -> PlueckerVector:
    space = subspace.space
    if subspace.rank != space.d - 1:
        raise HiggledyError(
            f"Expected a subspace of rank {space.d - 1}, got {subspace.rank}"
        )
    x, y = annihilator(subspace).matrix
    return PlueckerVector.from_array(space, "dual", wedge_rows(x, y))


def pairing(hvec: PlueckerVector, lvec: PlueckerVector) -> Scalar:
    """Sum of H_ij L_ij; zero exactly when the subspace meets the line."""
    if hvec.flavor != "dual" or lvec.flavor != "primal":
        raise HiggledyError(
            "Pairing needs dual coordinates of a co-dimension two subspace"
            " and primal coordinates of a line"
        )
    if hvec.space != lvec.space:
        raise HiggledyError(f"Cannot pair vectors of {hvec.space} and {lvec.space}")
    value = np.sum(hvec.array * lvec.array)
    return hvec.space.field.element(int(value))


def relation_values(coords: galois.FieldArray) -> galois.FieldArray:
    """Values of all quadratic relations, batched over leading axes.

    The last axis of *coords* holds coordinates in pair order.
    """
    n = _n_from_pairs(coords.shape[-1])
    i12, i34, i13, i24, i14, i23 = _quadruple_arrays(n)
    return (
        coords[..., i12] * coords[..., i34]
        - coords[..., i13] * coords[..., i24]
        + coords[..., i14] * coords[..., i23]
    )


def relations_hold(coords: galois.FieldArray) -> np.ndarray:
    values = relation_values(coords)
    return ~np.any(as_ints(values) != 0, axis=-1)


def plucker_relations_hold(vector: PlueckerVector) -> bool:
    return bool(relations_hold(vector.array))


def alternating_matrix(vector: PlueckerVector) -> galois.FieldArray:
    n = vector.space.n
    matrix = vector.space.gf.Zeros((n, n))
    values = vector.array
    for k, (i, j) in enumerate(pair_indices(n)):
        matrix[i, j] = values[k]
        matrix[j, i] = -values[k]
    return matrix


def pluecker_decompose(vector: PlueckerVector) -> Subspace:
    """The line (primal) or co-dimension two subspace (dual) with these coordinates.

    Rows i and j of the alternating matrix span the underlying two-dimensional
    space, where (i, j) is the first nonzero coordinate.

    Raises:
        HiggledyError: if the quadratic relations are violated
    """
    if not plucker_relations_hold(vector):
        raise HiggledyError(
            f"Plücker vector {vector.to_triples()} is not decomposable"
        )
    k = next(k for k, v in enumerate(vector.coords) if v)
    i, j = pair_indices(vector.space.n)[k]
    matrix = alternating_matrix(vector)
    rows = matrix[[i, j]]
    if vector.flavor == "primal":
        return rref(rows, vector.space)
    return rref(kernel_rows(rows), vector.space)


def pluecker_rank(lines: Iterable[Subspace]) -> int:
    """Rank of the matrix of primal Plücker vectors of *lines*."""
    lines = list(lines)
    if not lines:
        return 0
    rows = np.array([line_to_pluecker(line).coords for line in lines], dtype=np.int64)
    return rref_array(lines[0].space.gf(rows)).shape[0]


def grassmann_dim(g: GrassmannSpec) -> int:
    return g.m * g.n


def grassmann_degree(g: GrassmannSpec) -> int:
    """Degree of the Grassmannian in its Plücker embedding.

    Equals (mn)! times the product of i! over i < n divided by the
    product of (m+i)! over i < n.
    """
    numerator = math.factorial(g.m * g.n)
    denominator = 1
    for i in range(g.n):
        numerator *= math.factorial(i)
        denominator *= math.factorial(g.m + i)
    degree, rest = divmod(numerator, denominator)
    if rest:
        raise HiggledyError(f"Degree formula of {g} is not integral")
    return degree


def _n_from_pairs(count: int) -> int:
    n = int((1 + math.isqrt(1 + 8 * count)) // 2)
    if n * (n - 1) // 2 != count:
        raise HiggledyError(f"{count} is not a number of coordinate pairs")
    return n
