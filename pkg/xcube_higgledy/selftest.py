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

import itertools
import math
import time
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
import pandas as pd

from .constants import ANCHORS
from .constants import DEFAULT_ENUMERATION_BUDGET
from .constants import LOG
from .constructions import LineSet
from .constructions import fano_concurrent
from .constructions import higgledy_family
from .constructions import pg3_examples
from .constructions import plane_triangle
from .constructions import random_lineset
from .constructions import tangent_family
from .designs import DesignParams
from .designs import gk_frs_design
from .designs import gk_mult_design
from .error import BudgetExceededError
from .error import HiggledyError
from .field import parse_field
from .pluecker import GrassmannSpec
from .pluecker import grassmann_degree
from .pluecker import grassmann_dim
from .pluecker import pluecker_decompose
from .projective import SpaceSpec
from .projective import meet
from .projective import random_subspace
from .projective import rref
from .search import build_flag_certificates
from .search import search_minimal_generator
from .verification import ConsistencyLedger
from .verification import build_transversal_small
from .verification import find_transversal_geometric
from .verification import find_transversal_pluecker
from .verification import is_generator_lineset
from .verification import iter_pluecker_solutions
from .verification import lemma_small_size
from .verification import measure_design
from .verification import tangent_identity_transversals
from .verification import wronskian_degree_check


def _space(d: int, q: int) -> SpaceSpec:
    return SpaceSpec(d, parse_field(str(q)))


class SelfTest:
    """Runs the acceptance checks, sharing one consistency ledger.

    Each check returns a pair of a verdict and a short detail string.
    In quick mode the parameters are reduced to a few seconds in total.
    """

    def __init__(self, quick: bool = False, budget: int = DEFAULT_ENUMERATION_BUDGET):
        self._quick = quick
        self._budget = budget
        self.ledger = ConsistencyLedger()
        self.partial = False

    def _examine(self, lineset: LineSet) -> tuple[bool, bool]:
        generator = is_generator_lineset(lineset, budget=self._budget).verdict
        transversal = find_transversal_geometric(lineset, budget=self._budget)
        self.ledger.record(lineset, generator, transversal is not None)
        return generator, transversal is not None

    def triangle(self) -> tuple[bool, str]:
        orders = (2, 3) if self._quick else (2, 3, 4, 5, 7)
        for q in orders:
            triangle = plane_triangle(_space(2, q))
            generator, _ = self._examine(triangle)
            if not generator:
                return False, f"triangle of PG(2,{q}) is no generator set"
            for pair in itertools.combinations(range(3), 2):
                subset = triangle.subset(pair)
                report = is_generator_lineset(subset, budget=self._budget)
                common = meet(*subset.lines)
                if report.verdict or not report.counterexample.contains(common):
                    return False, f"pair {pair} in PG(2,{q}) has no proper witness"
        return True, f"q in {orders}"

    def fano(self) -> tuple[bool, str]:
        generator, _ = self._examine(fano_concurrent())
        return generator, "three concurrent lines of PG(2,2)"

    def quadric(self) -> tuple[bool, str]:
        # over GF(2) the three ruling lines are the whole regulus
        ruling = pg3_examples(_space(3, 2), "three-ruling")
        generator, transversal = self._examine(ruling)
        if not generator or not transversal:
            return False, f"PG(3,2): ruling {generator}, transversal {transversal}"
        for q in (3, 4):
            generator, _ = self._examine(pg3_examples(_space(3, q), "three-ruling"))
            if generator:
                return False, f"PG(3,{q}): three ruling lines generate"
        for q in (2, 3):
            extended = pg3_examples(_space(3, q), "plus-exterior")
            generator, _ = self._examine(extended)
            if not generator:
                return False, f"PG(3,{q}): ruling with exterior line fails"
        return True, "ruling generates only in PG(3,2), exterior line for q <= 3"

    def diverted(self) -> tuple[bool, str]:
        cases = [(2, 5), (3, 5)]
        if not self._quick:
            cases += [(3, 7), (4, 9), (4, 11)]
        for d, q in cases:
            lineset = higgledy_family(_space(d, q))
            generator, transversal = self._examine(lineset)
            pluecker = find_transversal_pluecker(lineset, budget=self._budget)
            if not generator or transversal or pluecker is not None:
                return False, f"PG({d},{q}) diverted tangents fail"
        return True, f"(d,q) in {cases}"

    def coincidence(self) -> tuple[bool, str]:
        cases = [(3, 7)] if self._quick else [(3, 7), (4, 11)]
        for d, q in cases:
            space = _space(d, q)
            diverted = higgledy_family(space, count=q)
            if diverted.lines != tangent_family(space).lines:
                return False, f"PG({d},{q}) diverted tangents differ from tangents"
        return True, f"(d,q) in {cases}"

    def char_equals_dim(self) -> tuple[bool, str]:
        space = _space(3, 3)
        solutions = tangent_identity_transversals(space)
        if [s.to_triples() for s in solutions] != [[(0, 3, 1)]]:
            return False, f"{len(solutions)} formal solutions"
        expected = rref([[0, 1, 0, 0], [0, 0, 1, 0]], space)
        if pluecker_decompose(solutions[0]) != expected:
            return False, "H_03 does not decompose to x_0 = x_3 = 0"
        finite = list(iter_pluecker_solutions(tangent_family(space)))
        if solutions[0] not in finite:
            return False, "finite tangents miss the H_03 transversal"
        return True, f"unique formal solution, {len(finite)} finite solutions"

    def small_transversal(self) -> tuple[bool, str]:
        samples = 50 if self._quick else 1000
        rng = np.random.default_rng(0)
        for d in (3, 4):
            space = _space(d, 5)
            for _ in range(samples):
                lineset = random_lineset(space, lemma_small_size(d), rng)
                witness = build_transversal_small(lineset)
                if len(witness.meeting_points) != len(lineset):
                    return False, f"transversal misses a line in {space}"
        return True, f"{samples} samples in PG(3,5) and PG(4,5)"

    def lower_bound(self) -> tuple[bool, str]:
        q = 3 if self._quick else 4
        result = search_minimal_generator(_space(3, q), 3, budget=self._budget)
        if result.partial:
            self.partial = True
            return True, f"partial, sizes {result.certified_sizes} certified"
        if result.found is not None:
            self.ledger.record(result.found, True, result.transversal is not None)
            return False, f"generator set of {result.size} lines in PG(3,{q})"
        return True, f"no generator set of at most 3 lines in PG(3,{q})"

    def _finders_agree(self, lineset: LineSet, generator: Optional[bool]) -> bool:
        geometric = find_transversal_geometric(lineset, budget=self._budget)
        solutions = iter_pluecker_solutions(lineset)
        pluecker = next(iter(solutions), None)
        if generator is not None:
            self.ledger.record(lineset, generator, geometric is not None)
        return (geometric is None) == (pluecker is None)

    def oracle_equivalence(self) -> tuple[bool, str]:
        max_k, samples = (2, 20) if self._quick else (4, 500)
        space = _space(3, 2)
        certificates = build_flag_certificates(space, budget=self._budget)
        n_lines = certificates.flags.shape[1]
        for k in range(1, max_k + 1):
            for subset in itertools.combinations(range(n_lines), k):
                lineset = certificates.lineset(subset)
                if not self._finders_agree(
                    lineset, certificates.is_generator(subset)
                ):
                    return False, f"finders disagree on {subset} in {space}"
        rng = np.random.default_rng(0)
        space = _space(3, 5)
        for _ in range(samples):
            lineset = random_lineset(space, int(rng.integers(2, 7)), rng)
            if not self._finders_agree(lineset, None):
                return False, f"finders disagree on a random set in {space}"
        return True, f"k <= {max_k} in PG(3,2), {samples} random sets in PG(3,5)"

    def grassmannian(self) -> tuple[bool, str]:
        for d in range(2, 11):
            expected = Fraction(math.comb(2 * d - 1, d), 2 * d - 1)
            if grassmann_degree(GrassmannSpec(2, d - 1)) != expected:
                return False, f"degree of G(2,{d - 1}) is wrong"
        g = GrassmannSpec(2, 2)
        ok = grassmann_degree(g) == 2 and grassmann_dim(g) == 4
        return ok, "2 <= d <= 10, G(2,2) has degree 2 and dimension 4"

    def design_bounds(self) -> tuple[bool, str]:
        cases = [(gk_frs_design, DesignParams(q=7, d=3, t=2, s=2, r=1), 5)]
        if not self._quick:
            cases.append((gk_mult_design, DesignParams(q=11, d=3, t=2, s=2), 4))
        details = []
        for build, params, bound in cases:
            reports = measure_design(build(params), params.s, budget=self._budget)
            weak, strong = reports["weak"].measured, reports["strong"].measured
            details.append(f"q={params.q}: weak {weak}, strong {strong}")
            if strong > bound or weak > strong:
                return False, "; ".join(details)
        return True, "; ".join(details)

    def wronskian(self) -> tuple[bool, str]:
        samples = 20 if self._quick else 200
        params = DesignParams(q=11, d=5, t=2, s=2)
        space = _space(5, 11)
        rng = np.random.default_rng(0)
        for mode in ("frs", "mult"):
            for _ in range(samples):
                basis = random_subspace(space, 2, rng).rows
                report = wronskian_degree_check(basis, mode, params)
                if not report.holds or (mode == "mult" and not report.nonzero):
                    return False, f"{mode} Wronskian of {basis} fails"
        return True, f"{samples} samples per mode, q=11, d=5"

    def consistency(self) -> tuple[bool, str]:
        return self.ledger.consistent, f"{len(self.ledger.entries)} line sets"

    def checks(self) -> list[tuple[str, str, Callable[[], tuple[bool, str]]]]:
        return [
            ("triangle", "triangle", self.triangle),
            ("fano", "fano", self.fano),
            ("quadric", "three-ruling", self.quadric),
            ("diverted", "diverted", self.diverted),
            ("coincidence", "coincidence", self.coincidence),
            ("char-equals-dim", "char-equals-dim", self.char_equals_dim),
            ("small-transversal", "small-transversal", self.small_transversal),
            ("lower-bound", "minimal", self.lower_bound),
            ("oracle-equivalence", "oracle-equivalence", self.oracle_equivalence),
            ("grassmannian", "grassmannian", self.grassmannian),
            ("design-bounds", "measure", self.design_bounds),
            ("wronskian", "wronskian", self.wronskian),
            ("consistency", "consistency", self.consistency),
        ]


def run_selftest(
    quick: bool = False,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    timing: bool = True,
) -> dict:
    """Run all acceptance checks and tabulate their outcome.

    A check raising :class:`BudgetExceededError` counts as a partial pass,
    any other error of this package as a failure.
    """
    suite = SelfTest(quick=quick, budget=budget)
    rows = []
    for name, key, check in suite.checks():
        start = time.perf_counter()
        try:
            passed, detail = check()
        except BudgetExceededError as e:
            suite.partial = True
            passed, detail = True, f"partial, {e}"
        except HiggledyError as e:
            passed, detail = False, f"error: {e}"
        row = dict(
            name=name, anchor=ANCHORS[key], passed=bool(passed), detail=detail
        )
        if timing:
            row["seconds"] = round(time.perf_counter() - start, 3)
        LOG.info(f"Self-test {name}: {'pass' if passed else 'FAIL'} ({detail})")
        rows.append(row)
    table = pd.DataFrame(rows).set_index("name")
    return dict(
        quick=quick,
        passed=bool(table["passed"].all()),
        partial=suite.partial,
        criteria=rows,
        table=table.to_string(),
    )
