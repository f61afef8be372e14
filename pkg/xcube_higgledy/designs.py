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
import math
from fractions import Fraction
from typing import Literal, Optional

import galois
import numpy as np

from .constants import LOG
from .constructions import LineSet
from .error import HiggledyError
from .error import InconsistencyError
from .field import FieldSpec
from .field import as_ints
from .field import field_create
from .field import parse_field
from .field import primitive_element
from .projective import SpaceSpec
from .projective import Subspace
from .projective import kernel_rows
from .projective import rows_tuple
from .projective import rref_array

DesignMode = Literal["frs", "mult"]
DESIGN_MODES = ("frs", "mult")
CONSTRUCTION_MODES = {"gk-frs": "frs", "gk-mult": "mult"}


@dataclasses.dataclass(frozen=True)
class DesignParams:
    """Parameters of the folded Reed-Solomon and multiplicity subspace designs.

    Polynomials of degree at most d form the coefficient space GF(q)^(d+1).
    Each member is cut out by t evaluation conditions, folded r times,
    and the design is tested against s-dimensional subspaces.
    """

    q: int
    d: int
    t: int
    s: int = 1
    r: int = 1

    def __post_init__(self):
        if min(self.q, self.d, self.t, self.s, self.r) < 1:
            raise HiggledyError(f"Design parameters must be positive: {self}")
        if self.d < 2:
            raise HiggledyError(f"Polynomial degree must be at least 2, got {self.d}")
        if not self.s <= self.t <= self.d + 1 < self.q:
            raise HiggledyError(
                f"Design parameters need s <= t <= d+1 < q,"
                f" got s={self.s}, t={self.t}, d+1={self.d + 1}, q={self.q}"
            )

    @property
    def m(self) -> int:
        return self.d + 1

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class PolySubspace:
    """A linear subspace H of the polynomial coefficient space.

    Attributes:
        space: coefficient space, coordinate c is the coefficient of X^c
        label: enumeration index of the parameter α in its field
        codim: co-dimension of H
        rows: reduced row echelon basis of H, empty when H is zero
        conditions: reduced row echelon basis of the annihilator of H
    """

    space: SpaceSpec
    label: int
    codim: int
    rows: tuple[tuple[int, ...], ...]
    conditions: tuple[tuple[int, ...], ...]

    @classmethod
    def from_conditions(
        cls, space: SpaceSpec, label: int, conditions: galois.FieldArray
    ) -> "PolySubspace":
        reduced = rref_array(conditions)
        basis = kernel_rows(reduced)
        if basis.shape[0]:
            basis = rref_array(basis)
        return cls(
            space,
            label,
            reduced.shape[0],
            rows_tuple(as_ints(basis)),
            rows_tuple(as_ints(reduced)),
        )

    @property
    def dim(self) -> int:
        return self.space.n - self.codim

    @property
    def condition_matrix(self) -> galois.FieldArray:
        return self.space.gf(
            np.array(self.conditions, dtype=np.int64).reshape(self.codim, self.space.n)
        )


@dataclasses.dataclass(frozen=True)
class DesignFamily:
    """A family of polynomial subspaces produced by one design construction."""

    construction: str
    params: DesignParams
    space: SpaceSpec
    label_field: FieldSpec
    members: tuple[PolySubspace, ...]

    def __post_init__(self):
        if self.construction not in CONSTRUCTION_MODES:
            raise HiggledyError(f"Unknown design construction {self.construction!r}")

    @property
    def mode(self) -> DesignMode:
        return CONSTRUCTION_MODES[self.construction]

    def __len__(self) -> int:
        return len(self.members)


def coefficient_space(params: DesignParams) -> SpaceSpec:
    return SpaceSpec(params.d, parse_field(str(params.q)))


def gk_frs_design(params: DesignParams) -> DesignFamily:
    """Folded Reed-Solomon design H_α = {P : P(α ω^i) = 0, i < t}.

    The parameters α run over the nonzero elements of GF(q^r) in enumeration
    order. α is accepted when it generates GF(q^r) over GF(q), its set
    S_α = {α^(q^j) ω^i} has r t elements and S_α is disjoint from the sets
    of all previously accepted parameters. For r > 1, q must be prime.

    Raises:
        HiggledyError: if r t exceeds d + 1, or r > 1 over a non-prime q
    """
    if params.r * params.t > params.d + 1:
        raise HiggledyError(
            f"r t = {params.r * params.t} conditions exceed d+1 = {params.d + 1}"
        )
    space = coefficient_space(params)
    base = space.field
    if params.r > 1 and base.k != 1:
        raise HiggledyError(f"Folding r > 1 needs a prime q, got q={params.q}")
    ext = base if params.r == 1 else field_create(base.p, params.r)
    gf_ext = ext.gf
    # the prime subfield shares its indices with GF(p^r)
    omega = gf_ext(primitive_element(base).index)
    exponents = np.arange(params.d + 1)
    used: set[int] = set()
    members = []
    for index in range(1, ext.q):
        alpha = gf_ext(index)
        conjugates = {int(alpha ** (params.q**j)) for j in range(params.r)}
        if len(conjugates) != params.r:
            continue
        betas = [alpha * omega**i for i in range(params.t)]
        orbit = {
            int(beta ** (params.q**j)) for beta in betas for j in range(params.r)
        }
        if len(orbit) != params.r * params.t or orbit & used:
            continue
        used |= orbit
        rows = []
        for beta in betas:
            values = as_ints(beta**exponents)
            if params.r == 1:
                rows.append(values)
            else:
                for digit in range(params.r):
                    rows.append((values // base.p**digit) % base.p)
        member = PolySubspace.from_conditions(
            space, index, space.gf(np.array(rows, dtype=np.int64))
        )
        if member.codim != params.r * params.t:
            raise InconsistencyError(
                f"H_α for α={index} has co-dimension {member.codim},"
                f" expected {params.r * params.t}"
            )
        members.append(member)
    LOG.info(f"Folded Reed-Solomon design over {ext} has {len(members)} members")
    return DesignFamily("gk-frs", params, space, ext, tuple(members))


def falling_factorial(c: int, k: int) -> int:
    return math.perm(c, k)


def gk_mult_design(params: DesignParams) -> DesignFamily:
    """Multiplicity design H_α = {P : P^(k)(α) = 0, k < t} for all α in GF(q).

    Formal derivatives are used, which needs q prime and d + 1 < q.
    """
    space = coefficient_space(params)
    field = space.field
    if field.k != 1:
        raise HiggledyError(
            f"Multiplicity designs need a prime field, got q={params.q}"
        )
    gf = space.gf
    members = []
    for index in range(field.q):
        alpha = gf(index)
        conditions = gf.Zeros((params.t, space.n))
        for k in range(params.t):
            for c in range(k, space.n):
                factor = gf(falling_factorial(c, k) % field.p)
                conditions[k, c] = factor * alpha ** (c - k)
        member = PolySubspace.from_conditions(space, index, conditions)
        if member.codim != params.t:
            raise InconsistencyError(
                f"H_α for α={index} has co-dimension {member.codim},"
                f" expected {params.t}"
            )
        members.append(member)
    return DesignFamily("gk-mult", params, space, field, tuple(members))


def design_lines(family: DesignFamily, count: Optional[int] = None) -> LineSet:
    """The lines H_α^⊥ of PG(d, q) dual to co-dimension two members.

    Raises:
        HiggledyError: if a member does not have co-dimension two
    """
    members = family.members if count is None else family.members[:count]
    lines = []
    for member in members:
        if member.codim != 2:
            raise HiggledyError(
                f"Member α={member.label} has co-dimension {member.codim}, not 2"
            )
        lines.append(Subspace(family.space, member.conditions))
    return LineSet(
        family.space,
        tuple(lines),
        construction="design-lines",
        tags=tuple(m.label for m in members),
        parameters=dict(design=family.construction, **family.params.to_dict()),
    )


def gk_bounds(params: DesignParams, mode: DesignMode) -> dict[str, Fraction]:
    """Bounds on the strong design parameter A, as exact fractions.

    Returns:
        ``original`` (d s / (r (t - s + 1))) and ``improved`` bounds, the
        latter being the one claimed for the given construction mode.
    """
    if mode not in DESIGN_MODES:
        raise HiggledyError(f"Unknown design mode {mode!r}")
    d, s, t, r = params.d, params.s, params.t, params.r
    denominator = t - s + 1
    original = Fraction(d * s, r * denominator)
    if mode == "frs":
        improved = (Fraction(d) - Fraction(s - 1, 2)) * s / (r * denominator)
    else:
        improved = Fraction((d - s + 1) * s, denominator)
    return dict(original=original, improved=improved)
