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
import math
from typing import Literal, Optional

import galois
import numpy as np

from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import LOG
from .constructions import LineSet
from .error import HiggledyError
from .error import InconsistencyError
from .field import as_ints
from .projective import SpaceSpec
from .projective import Subspace
from .projective import check_budget
from .projective import gaussian_binomial
from .projective import iter_rref_blocks
from .projective import rows_tuple
from .verification import ConsistencyLedger
from .verification import TransversalWitness
from .verification import find_transversal_geometric
from .verification import is_generator_lineset
from .verification import lower_bound

Strategy = Literal["exhaustive", "random-restart"]
STRATEGIES = ("exhaustive", "random-restart")
DEFAULT_RESTARTS = 1000


@dataclasses.dataclass(frozen=True)
class FlagCertificates:
    """Incidence masks certifying that line sets are not generator sets.

    For a flag (Π, H) of a hyperplane Π and a hyperplane H of Π, row f of
    *flags* marks the lines whose trace in Π lies in H. A set of lines is
    not a generator set exactly when one flag marks all of its lines.

    Attributes:
        space: the ambient space
        lines: all lines in enumeration order, shape (N, 2, n)
        flags: boolean masks of shape (F, N)
        transversals: if computed, boolean masks of shape (T, N) marking
            the lines met by each co-dimension two subspace
    """

    space: SpaceSpec
    lines: galois.FieldArray
    flags: np.ndarray
    transversals: Optional[np.ndarray] = None

    def lineset(self, indices, construction: str = "search") -> LineSet:
        lines = tuple(
            Subspace(self.space, rows_tuple(as_ints(self.lines[i]))) for i in indices
        )
        return LineSet(
            self.space, lines, construction=construction, tags=tuple(indices)
        )

    def is_generator(self, indices) -> bool:
        return not self.flags[:, list(indices)].all(axis=1).any()

    def has_transversal(self, indices) -> bool:
        if self.transversals is None:
            raise HiggledyError("Transversal masks were not computed")
        return bool(self.transversals[:, list(indices)].all(axis=1).any())


def _all_rref(gf: type[galois.FieldArray], n: int, r: int) -> galois.FieldArray:
    return np.concatenate([block for _, block in iter_rref_blocks(gf, n, r)])


def build_flag_certificates(
    space: SpaceSpec,
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    with_transversal: bool = False,
) -> FlagCertificates:
    """Compute the flag masks, and optionally the transversal masks."""
    gf = space.gf
    n_lines = gaussian_binomial(space.n, 2, space.q)
    n_points = gaussian_binomial(space.n, 1, space.q)
    per_point = gaussian_binomial(space.d, 1, space.q)
    check_budget("flag incidences", n_points * per_point * n_lines, budget)
    lines = _all_rref(gf, space.n, 2)
    a = lines[:, 0, :]
    b = lines[:, 1, :]
    points = _all_rref(gf, space.n, 1)[:, 0, :]
    pa = points @ a.T
    pb = points @ b.T
    zero_a = as_ints(pa) == 0
    zero_b = as_ints(pb) == 0
    pivots = np.argmax(as_ints(points) != 0, axis=1)
    masks = []
    for u in range(n_points):
        ys = np.flatnonzero(as_ints(points[:, pivots[u]]) == 0)
        contained = zero_a[u] & zero_b[u]
        # trace (u.b) a - (u.a) b lies in y^⊥
        det = pb[u][np.newaxis] * pa[ys] - pa[u][np.newaxis] * pb[ys]
        in_y = zero_a[ys] & zero_b[ys]
        masks.append(
            np.where(contained[np.newaxis], in_y, as_ints(det) == 0)
        )
    flags = np.concatenate(masks)
    transversals = None
    if with_transversal:
        check_budget("transversal incidences", n_lines * n_lines, budget)
        duals = _all_rref(gf, space.n, 2)
        x = duals[:, 0, :]
        y = duals[:, 1, :]
        det = (x @ a.T) * (y @ b.T) - (x @ b.T) * (y @ a.T)
        transversals = as_ints(det) == 0
    LOG.info(f"{flags.shape[0]} flag certificates for {n_lines} lines of {space}")
    return FlagCertificates(space, lines, flags, transversals)


@dataclasses.dataclass(frozen=True)
class SearchResult:
    """Outcome of a search for a small generator set.

    Attributes:
        strategy: the search strategy used
        max_size: largest subset size considered
        found: the first generator set found, if any
        certified_sizes: sizes for which all subsets were shown to fail
        examined: number of subsets covered
        partial: True if the budget stopped the search early
        refused_size: subset size refused by the budget
        transversal: a common transversal of *found*, if one exists
    """

    space: SpaceSpec
    strategy: Strategy
    max_size: int
    with_transversal: bool
    found: Optional[LineSet]
    certified_sizes: tuple[int, ...]
    examined: int
    partial: bool = False
    refused_size: Optional[int] = None
    transversal: Optional[TransversalWitness] = None
    seed: Optional[int] = None

    @property
    def size(self) -> Optional[int]:
        return None if self.found is None else len(self.found)

    @property
    def lower_bound(self) -> int:
        return lower_bound(self.space.d)


class ExhaustiveSearch:
    """Visit all k-subsets of lines in lexicographic order for k = 1, 2, ...

    For each prefix of k - 2 lines, the flags marking the prefix are
    collected in a matrix B; the pair (i, j) completes a generator set
    exactly when no row of B marks both, i.e. (B^T B)_ij = 0.
    """

    def __init__(self, certificates: FlagCertificates, budget: Optional[int]):
        self._certificates = certificates
        self._budget = budget

    def _first_of_size(self, k: int, with_transversal: bool) -> Optional[tuple]:
        cert = self._certificates
        flags = cert.flags
        n_lines = flags.shape[1]
        if k == 1:
            for i in range(n_lines):
                if cert.is_generator([i]) and (
                    not with_transversal or cert.has_transversal([i])
                ):
                    return (i,)
            return None
        for prefix in itertools.combinations(range(n_lines), k - 2):
            start = prefix[-1] + 1 if prefix else 0
            if n_lines - start < 2:
                continue
            rows = flags[:, list(prefix)].all(axis=1)
            marked = flags[rows][:, start:].astype(np.float64)
            covered = marked.T @ marked
            candidates = np.triu(covered == 0, k=1)
            if with_transversal:
                t_rows = cert.transversals[:, list(prefix)].all(axis=1)
                met = cert.transversals[t_rows][:, start:].astype(np.float64)
                candidates &= (met.T @ met) > 0
            pairs = np.argwhere(candidates)
            if pairs.size:
                i, j = pairs[0]
                return (*prefix, start + int(i), start + int(j))
        return None

    def search(self, max_size: int, with_transversal: bool) -> dict:
        n_lines = self._certificates.flags.shape[1]
        certified = []
        examined = 0
        for k in range(1, max_size + 1):
            total = math.comb(n_lines, k)
            if self._budget is not None and examined + total > self._budget:
                LOG.warning(
                    f"Budget {self._budget} refuses the {total} subsets of size {k}"
                )
                return dict(
                    found=None,
                    certified_sizes=tuple(certified),
                    examined=examined,
                    partial=True,
                    refused_size=k,
                )
            found = self._first_of_size(k, with_transversal)
            if found is not None:
                return dict(
                    found=found, certified_sizes=tuple(certified), examined=examined
                )
            LOG.info(f"No subset of {k} lines qualifies, {total} subsets certified")
            certified.append(k)
            examined += total
        return dict(found=None, certified_sizes=tuple(certified), examined=examined)


class RandomRestartSearch:
    """Sample random k-subsets for k = 1, 2, ..., without minimality proof."""

    def __init__(
        self,
        certificates: FlagCertificates,
        rng: np.random.Generator,
        restarts: int = DEFAULT_RESTARTS,
    ):
        self._certificates = certificates
        self._rng = rng
        self._restarts = restarts

    def search(self, max_size: int, with_transversal: bool) -> dict:
        cert = self._certificates
        n_lines = cert.flags.shape[1]
        examined = 0
        for k in range(1, min(max_size, n_lines) + 1):
            for _ in range(self._restarts):
                subset = tuple(
                    sorted(int(i) for i in self._rng.choice(n_lines, k, replace=False))
                )
                examined += 1
                if cert.is_generator(subset) and (
                    not with_transversal or cert.has_transversal(subset)
                ):
                    return dict(found=subset, certified_sizes=(), examined=examined)
        return dict(found=None, certified_sizes=(), examined=examined)


def search_minimal_generator(
    space: SpaceSpec,
    max_size: int,
    strategy: Strategy = "exhaustive",
    budget: Optional[int] = DEFAULT_ENUMERATION_BUDGET,
    seed: Optional[int] = 0,
    restarts: int = DEFAULT_RESTARTS,
    with_transversal: bool = False,
    ledger: Optional[ConsistencyLedger] = None,
) -> SearchResult:
    """Search for a smallest generator set of lines.

    The exhaustive strategy certifies every size below the returned one.
    With *with_transversal*, only generator sets having a co-dimension two
    transversal qualify.

    Args:
        space: the ambient space
        max_size: largest subset size considered
        strategy: ``"exhaustive"`` or ``"random-restart"``
        budget: maximum number of flag incidences computed, and of subsets
            covered by an exhaustive search
        seed: seed of the random-restart strategy
        restarts: samples per size of the random-restart strategy
        with_transversal: require a common transversal
        ledger: optional ledger recording the found set

    Returns:
        The search result; when the budget stops an exhaustive search,
        ``partial`` is set and the certified sizes are reported.

    Raises:
        BudgetExceededError: if the budget refuses the flag certificates
    """
    if max_size < 1:
        raise HiggledyError(f"Maximum subset size must be positive, got {max_size}")
    certificates = build_flag_certificates(
        space, budget=budget, with_transversal=with_transversal
    )
    if strategy == "exhaustive":
        searcher = ExhaustiveSearch(certificates, budget)
    elif strategy == "random-restart":
        searcher = RandomRestartSearch(
            certificates, np.random.default_rng(seed), restarts=restarts
        )
    else:
        raise HiggledyError(f"Unknown search strategy {strategy!r}")
    outcome = searcher.search(max_size, with_transversal)
    found = outcome.pop("found")
    lineset = None
    transversal = None
    if found is not None:
        lineset = certificates.lineset(found)
        if not is_generator_lineset(lineset).verdict:
            raise InconsistencyError(
                f"Flag certificates accepted the non-generator set {found}"
            )
        transversal = find_transversal_geometric(lineset)
        if with_transversal and transversal is None:
            raise InconsistencyError(f"Line set {found} has no transversal")
        ledger = ConsistencyLedger() if ledger is None else ledger
        violations = ledger.record(lineset, True, transversal is not None)
        if violations:
            raise InconsistencyError("; ".join(violations))
    return SearchResult(
        space,
        strategy,
        max_size,
        with_transversal,
        lineset,
        transversal=transversal,
        seed=seed if strategy == "random-restart" else None,
        **outcome,
    )

