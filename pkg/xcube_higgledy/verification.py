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
from fractions import Fraction
from typing import Iterable, Iterator, Literal, Optional, Sequence

import galois
import numpy as np

from ._utils import map_blocks
from .constants import DEFAULT_CHUNK_SIZE
from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import DEFAULT_PLUECKER_BUDGET
from .constants import LOG
from .constructions import Injection
from .constructions import LineSet
from .designs import DesignFamily
from .designs import DesignMode
from .designs import DesignParams
from .designs import coefficient_space
from .designs import gk_bounds
from .error import BudgetExceededError
from .error import HiggledyError
from .error import InconsistencyError
from .field import as_ints
from .field import int_embed
from .field import primitive_element
from .pluecker import PlueckerVector
from .pluecker import line_to_pluecker
from .pluecker import pair_indices
from .pluecker import pluecker_decompose
from .pluecker import relations_hold
from .projective import BlockSpec
from .projective import Hyperplane
from .projective import SpaceSpec
from .projective import Subspace
from .projective import batch_rank
from .projective import block_matrices
from .projective import check_budget
from .projective import gaussian_binomial
from .projective import iter_block_specs
from .projective import iter_rref_blocks
from .projective import kernel_rows
from .projective import meet
from .projective import points_on
from .projective import rows_tuple
from .projective import rref
from .projective import rref_array
from .projective import rref_at_index

MeasureMode = Literal["weak", "strong"]
MEASURE_MODES = ("weak", "strong")


@dataclasses.dataclass(frozen=True)
class TransversalWitness:
    """A co-dimension two subspace meeting every line of a line set.

    Attributes:
        subspace: the transversal H
        meeting_points: one point of H on each line, in line order
        method: algorithm which found H
        index: enumeration index of H's annihilator, if enumerated
    """

    subspace: Subspace
    meeting_points: tuple[Subspace, ...]
    method: str
    index: Optional[int] = None


@dataclasses.dataclass(frozen=True)
class GeneratorReport:
    """Outcome of a hyperplane generation check.

    Attributes:
        verdict: True if every hyperplane is spanned by its traces
        hyperplanes: number of hyperplanes checked
        histogram: number of hyperplanes per rank of the spanned traces
        counterexample: first hyperplane which is not spanned
        counterexample_rank: rank spanned in the counterexample
    """

    verdict: bool
    hyperplanes: int
    histogram: dict[int, int]
    counterexample: Optional[Hyperplane] = None
    counterexample_rank: Optional[int] = None


@dataclasses.dataclass(frozen=True)
class SufficiencyReport:
    lines: int
    q: int
    generator: bool
    transversal: Optional[TransversalWitness]
    violations: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


@dataclasses.dataclass(frozen=True)
class DesignReport:
    """Measured weak or strong subspace design parameter.

    Attributes:
        mode: ``"weak"`` counts the members meeting W nontrivially,
            ``"strong"`` sums the intersection dimensions
        s: dimension of the test subspaces W
        measured: maximum of the statistic over all W
        witness: the first W realizing the maximum
        subspaces: number of subspaces W enumerated
        claimed_bound: bound claimed for the construction, if applicable
        original_bound: the weaker bound d s / (r (t - s + 1)), if applicable
        members: number of members of the family
    """

    mode: MeasureMode
    s: int
    measured: int
    witness: tuple[tuple[int, ...], ...]
    subspaces: int
    members: int
    claimed_bound: Optional[Fraction] = None
    original_bound: Optional[Fraction] = None

    @property
    def satisfied(self) -> Optional[bool]:
        if self.claimed_bound is None:
            return None
        return self.measured <= self.claimed_bound


@dataclasses.dataclass(frozen=True)
class WronskianReport:
    """Degree of the folded (or derivative) Wronskian of a polynomial basis.

    Attributes:
        mode: ``"frs"`` or ``"mult"``
        basis: the degree-echelonized basis, ascending coefficients
        coefficients: ascending coefficients of L(X), empty when L is zero
        degree: degree of L(X), None when L is zero
        bound: the degree bound of the mode
    """

    mode: DesignMode
    basis: tuple[tuple[int, ...], ...]
    coefficients: tuple[int, ...]
    degree: Optional[int]
    bound: int

    @property
    def nonzero(self) -> bool:
        return self.degree is not None

    @property
    def holds(self) -> bool:
        return self.degree is None or self.degree <= self.bound


class ConsistencyLedger:
    """Collects checked line sets and the implications they must satisfy.

    A line set without a co-dimension two transversal must be a generator
    set, and a generator set with a transversal must have at least q + 1
    lines.
    """

    def __init__(self):
        self.entries: list[dict] = []

    def record(self, lineset: LineSet, generator: bool, has_transversal: bool):
        violations = []
        if not has_transversal and not generator:
            violations.append(
                "no co-dimension two transversal but not a generator set"
            )
        if generator and has_transversal and len(lineset) < lineset.space.q + 1:
            violations.append(
                f"generator set with a transversal has only {len(lineset)} lines,"
                f" fewer than q+1 = {lineset.space.q + 1}"
            )
        self.entries.append(
            dict(
                space=str(lineset.space),
                construction=lineset.construction,
                lines=len(lineset),
                generator=generator,
                transversal=has_transversal,
                violations=violations,
            )
        )
        for violation in violations:
            LOG.error(f"Inconsistency in {lineset.space}: {violation}")
        return violations

    @property
    def violations(self) -> list[str]:
        return [v for entry in self.entries for v in entry["violations"]]

    @property
    def consistent(self) -> bool:
        return not self.violations

    def assert_consistent(self):
        if not self.consistent:
            raise InconsistencyError("; ".join(self.violations))

    def to_dict(self) -> dict:
        return dict(
            checked=len(self.entries),
            consistent=self.consistent,
            violations=self.violations,
        )


def lower_bound(d: int) -> int:
    """Minimum size of a generator set of lines in PG(d, q), q large enough."""
    return d // 2 + d


def lemma_small_size(d: int) -> int:
    """Largest line set size which always admits a co-dimension two transversal."""
    return d // 2 + d - 1


def _line_rows(lineset: LineSet) -> tuple[galois.FieldArray, galois.FieldArray]:
    mats = lineset.matrices
    return mats[:, 0, :], mats[:, 1, :]


def lineset_points(lineset: LineSet) -> list[Subspace]:
    """The distinct points covered by the lines, in first-seen order."""
    points = {}
    for line in lineset:
        for point in points_on(line):
            points.setdefault(point, None)
    return list(points)


def is_tfold_blocking(
    points: Iterable[Subspace],
    t: int,
    space: SpaceSpec,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
) -> bool:
    """Whether every hyperplane contains at least *t* of the points."""
    if t < 1:
        raise HiggledyError(f"Blocking multiplicity must be positive, got {t}")
    rows = [p.rows[0] for p in points]
    if not rows:
        return False
    matrix = space.gf(np.array(rows, dtype=np.int64))
    check_budget("hyperplanes", gaussian_binomial(space.n, 1, space.q), budget)
    for _, block in iter_rref_blocks(space.gf, space.n, 1, chunk):
        incidences = as_ints(block[:, 0, :] @ matrix.T) == 0
        if np.any(incidences.sum(axis=1) < t):
            return False
    return True


def _generator_block(
    spec: BlockSpec,
    gf: type[galois.FieldArray],
    n: int,
    a: galois.FieldArray,
    b: galois.FieldArray,
):
    u = block_matrices(spec, n, gf)[:, 0, :]
    ua = u @ a.T
    ub = u @ b.T
    contained = (as_ints(ua) == 0) & (as_ints(ub) == 0)
    # trace of a line not in the hyperplane: (u.b) a - (u.a) b
    trace = ub[:, :, np.newaxis] * a[np.newaxis] - ua[:, :, np.newaxis] * b[np.newaxis]
    first = np.where(
        contained[..., np.newaxis], as_ints(a)[np.newaxis], as_ints(trace)
    )
    second = np.where(contained[..., np.newaxis], as_ints(b)[np.newaxis], 0)
    ranks = batch_rank(gf(np.concatenate([first, second], axis=1)))
    histogram = np.bincount(ranks, minlength=n)
    failing = np.flatnonzero(ranks < n - 1)
    if failing.size == 0:
        return histogram, None
    k = failing[0]
    return histogram, (tuple(int(v) for v in as_ints(u[k])), int(ranks[k]))


def is_generator_lineset(
    lineset: LineSet,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
    scheduler: str = "synchronous",
    progress: bool = False,
) -> GeneratorReport:
    """Check whether the points of the lines form a generator set.

    Every hyperplane Π collects Π ∩ ℓ for each line ℓ, which is a point or,
    when ℓ lies in Π, the whole line. The set is a generator set when these
    traces span every Π. The empty line set is not a generator set.
    """
    space = lineset.space
    count = gaussian_binomial(space.n, 1, space.q)
    check_budget("hyperplanes", count, budget)
    if len(lineset) == 0:
        first = as_ints(rref_at_index(space.gf, space.n, 1, 0))[0]
        hyperplane = Hyperplane(space, tuple(int(v) for v in first))
        return GeneratorReport(False, count, {0: count}, hyperplane, 0)
    a, b = _line_rows(lineset)
    func = functools.partial(_generator_block, gf=space.gf, n=space.n, a=a, b=b)
    results = map_blocks(
        func,
        iter_block_specs(space.n, 1, space.q, chunk),
        scheduler=scheduler,
        progress=progress,
        desc="Hyperplanes",
    )
    histogram = np.zeros(space.n, dtype=np.int64)
    failure = None
    for block_histogram, block_failure in results:
        histogram += block_histogram
        if failure is None and block_failure is not None:
            failure = block_failure
    histogram = {r: int(c) for r, c in enumerate(histogram) if c}
    if failure is None:
        return GeneratorReport(True, count, histogram)
    vector, rank = failure
    return GeneratorReport(False, count, histogram, Hyperplane(space, vector), rank)


def meeting_points(subspace: Subspace, lineset: LineSet) -> tuple[Subspace, ...]:
    """A point of *subspace* on each line.

    Raises:
        InconsistencyError: if some line misses the subspace
    """
    points = []
    for line in lineset:
        common = meet(subspace, line)
        if common is None:
            raise InconsistencyError(
                f"Transversal {subspace.rows} misses the line {line.rows}"
            )
        points.append(Subspace(subspace.space, (common.rows[0],)))
    return tuple(points)


def _witness(
    dual_rows: galois.FieldArray, lineset: LineSet, method: str, index=None
) -> TransversalWitness:
    subspace = rref(kernel_rows(dual_rows), lineset.space)
    return TransversalWitness(
        subspace, meeting_points(subspace, lineset), method, index
    )


def _transversal_block(
    spec: BlockSpec,
    gf: type[galois.FieldArray],
    n: int,
    a: galois.FieldArray,
    b: galois.FieldArray,
):
    duals = block_matrices(spec, n, gf)
    x = duals[:, 0, :]
    y = duals[:, 1, :]
    # <x,a><y,b> - <x,b><y,a> vanishes iff H = x^⊥ ∩ y^⊥ meets span{a, b}
    det = (x @ a.T) * (y @ b.T) - (x @ b.T) * (y @ a.T)
    hits = np.flatnonzero(~np.any(as_ints(det) != 0, axis=1))
    if hits.size == 0:
        return None
    k = hits[0]
    return spec.offset + int(k), as_ints(duals[k])


def find_transversal_geometric(
    lineset: LineSet,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
    scheduler: str = "synchronous",
    progress: bool = False,
) -> Optional[TransversalWitness]:
    """Search all co-dimension two subspaces for one meeting every line.

    Subspaces are visited in the enumeration order of their annihilators,
    the rank-2 RREF matrices of the dual space.

    Returns:
        The first transversal, or None.

    Raises:
        BudgetExceededError: if there are more subspaces than *budget*
    """
    space = lineset.space
    check_budget(
        "co-dimension two subspaces", gaussian_binomial(space.n, 2, space.q), budget
    )
    gf = space.gf
    if len(lineset) == 0:
        return _witness(rref_at_index(gf, space.n, 2, 0), lineset, "geometric", 0)
    a, b = _line_rows(lineset)
    func = functools.partial(_transversal_block, gf=gf, n=space.n, a=a, b=b)
    results = map_blocks(
        func,
        iter_block_specs(space.n, 2, space.q, chunk),
        scheduler=scheduler,
        progress=progress,
        desc="Co-dimension two subspaces",
        stop_when=lambda result: result is not None,
    )
    for result in results:
        if result is not None:
            index, dual_rows = result
            return _witness(gf(dual_rows), lineset, "geometric", index)
    return None


def _pluecker_solutions(
    equations: galois.FieldArray, space: SpaceSpec, budget: Optional[int]
) -> Iterator[PlueckerVector]:
    gf = space.gf
    width = len(pair_indices(space.n))
    if equations.shape[0] == 0:
        basis = gf.Identity(width)
    else:
        basis = kernel_rows(equations)
        if basis.shape[0] == 0:
            return
        basis = rref_array(basis)
    nullity = basis.shape[0]
    check_budget("projective Plücker solutions", space.q**nullity, budget)
    # RREF basis: c @ basis is normalized whenever c is
    for _, coeffs in iter_rref_blocks(gf, nullity, 1):
        vectors = coeffs[:, 0, :] @ basis
        decomposable = relations_hold(vectors)
        for row in as_ints(vectors[decomposable]):
            yield PlueckerVector(space, "dual", tuple(int(v) for v in row))


def iter_pluecker_solutions(
    lineset: LineSet, budget: Optional[int] = DEFAULT_PLUECKER_BUDGET
) -> Iterator[PlueckerVector]:
    """All decomposable dual vectors H with Σ H_ij L_ij = 0 for every line.

    Raises:
        BudgetExceededError: if the projective nullspace has more than
            *budget* points
    """
    space = lineset.space
    width = len(pair_indices(space.n))
    rows = np.array(
        [line_to_pluecker(line).coords for line in lineset], dtype=np.int64
    ).reshape(len(lineset), width)
    return _pluecker_solutions(space.gf(rows), space, budget)


def find_transversal_pluecker(
    lineset: LineSet,
    pluecker_budget: Optional[int] = DEFAULT_PLUECKER_BUDGET,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
    scheduler: str = "synchronous",
    progress: bool = False,
) -> Optional[TransversalWitness]:
    """Find a transversal by solving the linear Plücker system.

    The projective points of the nullspace are filtered by the quadratic
    relations and the first survivor is decomposed. When the nullspace is
    too large to enumerate, the geometric search is used instead.
    """
    try:
        first = next(iter(iter_pluecker_solutions(lineset, pluecker_budget)), None)
    except BudgetExceededError as e:
        LOG.warning(f"{e}, falling back to the geometric transversal search")
        return find_transversal_geometric(
            lineset,
            budget=budget,
            chunk=chunk,
            scheduler=scheduler,
            progress=progress,
        )
    if first is None:
        return None
    subspace = pluecker_decompose(first)
    return TransversalWitness(subspace, meeting_points(subspace, lineset), "pluecker")


def tangent_identity_transversals(
    space: SpaceSpec,
    phi: Optional[Injection] = None,
    budget: Optional[int] = DEFAULT_PLUECKER_BUDGET,
) -> list[PlueckerVector]:
    """Transversals of the formal family of (diverted) tangents.

    Requiring Σ H_ij (φ(j) - φ(i)) t^(i+j-1) to vanish as a polynomial in t
    gives one linear equation per exponent. Without *phi*, the tangent
    coefficients j - i are used.
    """
    if phi is None:
        values = [int_embed(k, space.field).index for k in range(space.n)]
    else:
        values = list(phi.values)
    gf = space.gf
    pairs = pair_indices(space.n)
    equations = gf.Zeros((2 * space.d - 1, len(pairs)))
    for k, (i, j) in enumerate(pairs):
        equations[i + j - 1, k] = gf(values[j]) - gf(values[i])
    return list(_pluecker_solutions(equations, space, budget))


def _rank_of(rows: list, gf: type[galois.FieldArray]) -> int:
    if not rows:
        return 0
    return rref_array(gf(np.stack([as_ints(r) for r in rows]))).shape[0]


def _extend(
    rows: list, candidates: Iterable, target: int, gf: type[galois.FieldArray]
) -> list:
    """Greedily add candidates which raise the rank until it reaches *target*."""
    rows = list(rows)
    for candidate in candidates:
        rank = _rank_of(rows, gf)
        if rank >= target:
            break
        if _rank_of(rows + [candidate], gf) > rank:
            rows.append(candidate)
    return rows


def build_transversal_small(lineset: LineSet) -> TransversalWitness:
    """Construct a transversal of at most floor(d/2) + d - 1 lines.

    The first floor(d/2) lines are extended to a hyperplane Π, the other
    lines meet Π in points, and a hyperplane of Π through these points
    meets every line.

    Raises:
        HiggledyError: if there are too many lines
    """
    space = lineset.space
    limit = lemma_small_size(space.d)
    if len(lineset) > limit:
        raise HiggledyError(
            f"Only line sets of at most {limit} lines have a guaranteed"
            f" transversal in {space}, got {len(lineset)}"
        )
    gf = space.gf
    lines = list(lineset)
    head = lines[: space.d // 2]
    rest = lines[space.d // 2 :]
    units = list(gf.Identity(space.n))
    rows = _extend([row for line in head for row in line.matrix], units, space.d, gf)
    plane = rref(np.stack([as_ints(r) for r in rows]), space)
    if plane.rank != space.d:
        raise InconsistencyError(f"Extended span has rank {plane.rank}, not {space.d}")
    points = []
    for line in rest:
        common = meet(plane, line)
        if common is None:
            raise InconsistencyError(f"Line {line.rows} misses the hyperplane")
        points.append(common.matrix[0])
    rows = _extend(points, list(plane.matrix), space.d - 1, gf)
    subspace = rref(np.stack([as_ints(r) for r in rows]), space)
    if subspace.rank != space.d - 1:
        raise InconsistencyError(
            f"Constructed subspace has rank {subspace.rank}, expected {space.d - 1}"
        )
    return TransversalWitness(
        subspace, meeting_points(subspace, lineset), "constructive"
    )


def check_sufficiency(
    lineset: LineSet,
    ledger: Optional[ConsistencyLedger] = None,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
    scheduler: str = "synchronous",
    progress: bool = False,
) -> SufficiencyReport:
    """Check that a line set without transversal is a generator set.

    Also checks that a generator set with a transversal has at least
    q + 1 lines.

    Raises:
        InconsistencyError: if an implication fails
    """
    kwargs = dict(budget=budget, chunk=chunk, scheduler=scheduler, progress=progress)
    generator = is_generator_lineset(lineset, **kwargs).verdict
    transversal = find_transversal_geometric(lineset, **kwargs)
    ledger = ConsistencyLedger() if ledger is None else ledger
    violations = ledger.record(lineset, generator, transversal is not None)
    report = SufficiencyReport(
        len(lineset), lineset.space.q, generator, transversal, tuple(violations)
    )
    if violations:
        raise InconsistencyError("; ".join(violations))
    return report


def _design_block(
    spec: BlockSpec,
    gf: type[galois.FieldArray],
    n: int,
    conditions: Sequence[galois.FieldArray],
):
    w = block_matrices(spec, n, gf)
    s = w.shape[1]
    dims = np.zeros((w.shape[0], len(conditions)), dtype=np.int64)
    for i, c in enumerate(conditions):
        # dim(H ∩ W) = s - rank(W C^T)
        products = (w[:, :, np.newaxis, :] * c[np.newaxis, np.newaxis]).sum(axis=-1)
        dims[:, i] = s - batch_rank(products)
    weak = np.count_nonzero(dims, axis=1)
    strong = dims.sum(axis=1)
    if np.any(weak > strong):
        raise InconsistencyError("Weak design count exceeds the strong sum")
    k_weak = int(np.argmax(weak))
    k_strong = int(np.argmax(strong))
    return (
        (int(weak[k_weak]), spec.offset + k_weak),
        (int(strong[k_strong]), spec.offset + k_strong),
    )


def measure_design(
    family: DesignFamily,
    s: int,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    chunk: int = DEFAULT_CHUNK_SIZE,
    scheduler: str = "synchronous",
    progress: bool = False,
) -> dict[str, DesignReport]:
    """Measure the weak and the strong design parameter in one pass."""
    space = family.space
    if not 1 <= s <= space.n:
        raise HiggledyError(f"Subspace dimension s={s} out of range 1..{space.n}")
    count = gaussian_binomial(space.n, s, space.q)
    check_budget(f"{s}-dimensional subspaces", count, budget)
    conditions = [m.condition_matrix for m in family.members]
    func = functools.partial(
        _design_block, gf=space.gf, n=space.n, conditions=conditions
    )
    results = map_blocks(
        func,
        iter_block_specs(space.n, s, space.q, chunk),
        scheduler=scheduler,
        progress=progress,
        desc=f"{s}-dimensional subspaces",
    )
    best = {}
    for mode, position in (("weak", 0), ("strong", 1)):
        value, index = -1, -1
        for result in results:
            if result[position][0] > value:
                value, index = result[position]
        best[mode] = (value, index)
    try:
        bounds = gk_bounds(dataclasses.replace(family.params, s=s), family.mode)
    except HiggledyError:
        bounds = dict(original=None, improved=None)
    reports = {}
    for mode, (value, index) in best.items():
        witness = rref_at_index(space.gf, space.n, s, index)
        reports[mode] = DesignReport(
            mode,
            s,
            value,
            rows_tuple(as_ints(witness)),
            count,
            len(family),
            claimed_bound=bounds["improved"],
            original_bound=bounds["original"],
        )
    return reports


def design_measure(
    family: DesignFamily, s: int, mode: MeasureMode = "strong", **kwargs
) -> DesignReport:
    """Measured weak or strong (s, A) design parameter of a family.

    Every s-dimensional subspace W is enumerated. The weak statistic counts
    the members with dim(H ∩ W) > 0, the strong one sums these dimensions.
    """
    if mode not in MEASURE_MODES:
        raise HiggledyError(f"Unknown design measurement mode {mode!r}")
    return measure_design(family, s, **kwargs)[mode]


def _is_zero_poly(poly: galois.Poly) -> bool:
    return not np.any(as_ints(poly.coeffs))


def _leibniz_det(entries: list[list[galois.Poly]], gf) -> galois.Poly:
    size = len(entries)
    total = galois.Poly.Zero(field=gf)
    for perm in itertools.permutations(range(size)):
        inversions = sum(
            1 for i in range(size) for j in range(i + 1, size) if perm[i] > perm[j]
        )
        term = galois.Poly.One(field=gf)
        for i in range(size):
            term = term * entries[i][perm[i]]
        total = total - term if inversions % 2 else total + term
    return total


def wronskian_bound(mode: DesignMode, d: int, s: int) -> int:
    if mode == "frs":
        return d * s - math.comb(s, 2)
    if mode == "mult":
        return s * (d - s + 1)
    raise HiggledyError(f"Unknown design mode {mode!r}")


def wronskian_degree_check(
    basis: Sequence[Sequence[int]], mode: DesignMode, params: DesignParams
) -> WronskianReport:
    """Degree of the top s x s minor L(X) of the folded Wronskian matrix.

    Row i of the matrix holds P_j(ω^i X) in ``"frs"`` mode and the i-th
    formal derivative of P_j in ``"mult"`` mode. The basis is first
    echelonized so that the degrees are strictly increasing.

    Raises:
        HiggledyError: if the basis is dependent or has more than t elements
    """
    space = coefficient_space(params)
    gf = space.gf
    matrix = gf(np.array(basis, dtype=np.int64).reshape(-1, space.n))
    s = matrix.shape[0]
    if s > params.t:
        raise HiggledyError(f"Basis of {s} polynomials exceeds t = {params.t}")
    reduced = rref_array(matrix[:, ::-1].copy())
    if reduced.shape[0] != s:
        raise HiggledyError("Polynomial basis is linearly dependent")
    echelon = as_ints(reduced)[::-1, ::-1]
    polys = [galois.Poly(gf(row.copy()), order="asc") for row in echelon]
    omega = gf(primitive_element(space.field).index)
    exponents = np.arange(space.n)
    entries = []
    for i in range(s):
        row = []
        for j in range(s):
            if mode == "frs":
                scaled = gf(echelon[j].copy()) * (omega**i) ** exponents
                row.append(galois.Poly(scaled, order="asc"))
            elif mode == "mult":
                row.append(polys[j].derivative(i) if i else polys[j])
            else:
                raise HiggledyError(f"Unknown design mode {mode!r}")
        entries.append(row)
    det = _leibniz_det(entries, gf)
    bound = wronskian_bound(mode, params.d, s)
    if _is_zero_poly(det):
        return WronskianReport(mode, rows_tuple(echelon), (), None, bound)
    coefficients = tuple(int(v) for v in as_ints(det.coeffs)[::-1])
    return WronskianReport(mode, rows_tuple(echelon), coefficients, det.degree, bound)

