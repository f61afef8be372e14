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
import unittest
from fractions import Fraction

import numpy as np

from xcube_higgledy.constructions import LineSet
from xcube_higgledy.constructions import fano_concurrent
from xcube_higgledy.constructions import higgledy_family
from xcube_higgledy.constructions import pg3_examples
from xcube_higgledy.constructions import plane_triangle
from xcube_higgledy.constructions import random_lineset
from xcube_higgledy.constructions import tangent_family
from xcube_higgledy.designs import DesignParams
from xcube_higgledy.designs import gk_frs_design
from xcube_higgledy.designs import gk_mult_design
from xcube_higgledy.error import BudgetExceededError
from xcube_higgledy.error import HiggledyError
from xcube_higgledy.error import InconsistencyError
from xcube_higgledy.field import parse_field
from xcube_higgledy.pluecker import pluecker_decompose
from xcube_higgledy.projective import SpaceSpec
from xcube_higgledy.projective import meet
from xcube_higgledy.projective import points_on
from xcube_higgledy.projective import rref
from xcube_higgledy.verification import ConsistencyLedger
from xcube_higgledy.verification import build_transversal_small
from xcube_higgledy.verification import check_sufficiency
from xcube_higgledy.verification import design_measure
from xcube_higgledy.verification import find_transversal_geometric
from xcube_higgledy.verification import find_transversal_pluecker
from xcube_higgledy.verification import is_generator_lineset
from xcube_higgledy.verification import is_tfold_blocking
from xcube_higgledy.verification import iter_pluecker_solutions
from xcube_higgledy.verification import lemma_small_size
from xcube_higgledy.verification import lineset_points
from xcube_higgledy.verification import lower_bound
from xcube_higgledy.verification import measure_design
from xcube_higgledy.verification import tangent_identity_transversals
from xcube_higgledy.verification import wronskian_bound
from xcube_higgledy.verification import wronskian_degree_check


def _space(d: int, q: int) -> SpaceSpec:
    return SpaceSpec(d, parse_field(str(q)))


class GeneratorTest(unittest.TestCase):

    def test_triangle(self):
        for q in (2, 3, 4, 5):
            triangle = plane_triangle(_space(2, q))
            report = is_generator_lineset(triangle)
            self.assertTrue(report.verdict)
            self.assertEqual(q * q + q + 1, report.hyperplanes)
            self.assertEqual(report.hyperplanes, sum(report.histogram.values()))
            self.assertIsNone(report.counterexample)

    def test_two_lines_fail_through_common_point(self):
        triangle = plane_triangle(_space(2, 5))
        for pair in itertools.combinations(range(3), 2):
            subset = triangle.subset(pair)
            report = is_generator_lineset(subset)
            self.assertFalse(report.verdict)
            self.assertEqual(1, report.counterexample_rank)
            self.assertTrue(report.counterexample.contains(meet(*subset.lines)))

    def test_fano(self):
        self.assertTrue(is_generator_lineset(fano_concurrent()).verdict)

    def test_concurrent_lines_fail_for_q_above_two(self):
        space = _space(2, 3)
        others = ([0, 1, 0], [0, 0, 1], [0, 1, 1])
        lines = tuple(rref([[1, 0, 0], other], space) for other in others)
        self.assertFalse(is_generator_lineset(LineSet(space, lines)).verdict)

    def test_quadric_examples(self):
        # over GF(2) the ruling lines are the whole regulus and generate
        ruling = pg3_examples(_space(3, 2))
        self.assertTrue(is_generator_lineset(ruling).verdict)
        witness = find_transversal_geometric(ruling)
        self.assertIsNotNone(witness)
        self.assertEqual(3, len(witness.meeting_points))
        ledger = ConsistencyLedger()
        ledger.record(ruling, True, True)
        self.assertTrue(ledger.consistent)
        for q in (3, 4):
            ruling = pg3_examples(_space(3, q))
            report = is_generator_lineset(ruling)
            self.assertFalse(report.verdict)
            self.assertEqual(2, report.counterexample_rank)
        for q in (2, 3):
            extended = pg3_examples(_space(3, q), "plus-exterior")
            self.assertTrue(is_generator_lineset(extended).verdict)

    def test_diverted_tangents(self):
        lineset = higgledy_family(_space(3, 5))
        self.assertTrue(is_generator_lineset(lineset).verdict)
        self.assertIsNone(find_transversal_geometric(lineset))
        self.assertIsNone(find_transversal_pluecker(lineset))

    def test_empty_lineset(self):
        space = _space(3, 3)
        report = is_generator_lineset(LineSet(space, ()))
        self.assertFalse(report.verdict)
        self.assertEqual((1, 0, 0, 0), report.counterexample.vector)
        self.assertEqual({0: 40}, report.histogram)

    def test_budget(self):
        with self.assertRaises(BudgetExceededError) as cm:
            is_generator_lineset(higgledy_family(_space(3, 5)), budget=10)
        self.assertEqual(
            "Refusing to enumerate 156 hyperplanes, the budget is 10",
            f"{cm.exception}",
        )

    def test_schedulers_agree(self):
        for lineset in (pg3_examples(_space(3, 3)), higgledy_family(_space(3, 5))):
            self.assertEqual(
                is_generator_lineset(lineset, chunk=8),
                is_generator_lineset(lineset, chunk=8, scheduler="threads"),
            )

    def test_unknown_scheduler(self):
        with self.assertRaises(HiggledyError) as cm:
            is_generator_lineset(fano_concurrent(), scheduler="processes")
        self.assertEqual(
            "Unknown scheduler 'processes', use one of synchronous, threads",
            f"{cm.exception}",
        )


class TransversalTest(unittest.TestCase):

    def test_ruling_lines_have_transversal(self):
        lineset = pg3_examples(_space(3, 3))
        geometric = find_transversal_geometric(lineset)
        self.assertEqual("geometric", geometric.method)
        self.assertEqual(3, len(geometric.meeting_points))
        for point, line in zip(geometric.meeting_points, lineset):
            self.assertTrue(line.contains(point))
            self.assertTrue(geometric.subspace.contains(point))
        pluecker = find_transversal_pluecker(lineset)
        self.assertEqual("pluecker", pluecker.method)
        self.assertEqual(3, len(pluecker.meeting_points))

    def test_pluecker_fallback(self):
        lineset = pg3_examples(_space(3, 3)).subset([0])
        witness = find_transversal_pluecker(lineset, pluecker_budget=1)
        self.assertEqual("geometric", witness.method)

    def test_finders_agree(self):
        space = _space(3, 2)
        rng = np.random.default_rng(3)
        for _ in range(30):
            lineset = random_lineset(space, int(rng.integers(1, 6)), rng)
            self.assertEqual(
                find_transversal_geometric(lineset) is None,
                find_transversal_pluecker(lineset) is None,
            )

    def test_moment_tangents_in_characteristic_three(self):
        space = _space(3, 3)
        formal = tangent_identity_transversals(space)
        self.assertEqual(1, len(formal))
        self.assertEqual([(0, 3, 1)], formal[0].to_triples())
        self.assertEqual(
            rref([[0, 1, 0, 0], [0, 0, 1, 0]], space), pluecker_decompose(formal[0])
        )
        finite = list(iter_pluecker_solutions(tangent_family(space)))
        self.assertIn(formal[0], finite)
        self.assertGreater(len(finite), 1)

    def test_formal_tangents_in_large_characteristic(self):
        self.assertEqual([], tangent_identity_transversals(_space(3, 5)))

    def test_small_transversal(self):
        rng = np.random.default_rng(11)
        for d in (3, 4):
            space = _space(d, 5)
            for _ in range(10):
                lineset = random_lineset(space, lemma_small_size(d), rng)
                witness = build_transversal_small(lineset)
                self.assertEqual("constructive", witness.method)
                self.assertEqual(d - 1, witness.subspace.rank)
                self.assertEqual(len(lineset), len(witness.meeting_points))

    def test_small_transversal_too_many_lines(self):
        lineset = higgledy_family(_space(3, 5), count=4)
        with self.assertRaises(HiggledyError) as cm:
            build_transversal_small(lineset)
        self.assertEqual(
            "Only line sets of at most 3 lines have a guaranteed transversal"
            " in PG(3,5), got 4",
            f"{cm.exception}",
        )

    def test_bounds(self):
        self.assertEqual(4, lower_bound(3))
        self.assertEqual(3, lemma_small_size(3))
        self.assertEqual(6, lower_bound(4))
        self.assertEqual(5, lemma_small_size(4))


class SufficiencyTest(unittest.TestCase):

    def test_check_sufficiency(self):
        ledger = ConsistencyLedger()
        report = check_sufficiency(higgledy_family(_space(3, 5)), ledger=ledger)
        self.assertTrue(report.generator)
        self.assertIsNone(report.transversal)
        self.assertTrue(report.consistent)
        report = check_sufficiency(pg3_examples(_space(3, 3)), ledger=ledger)
        self.assertFalse(report.generator)
        self.assertIsNotNone(report.transversal)
        self.assertEqual(
            dict(checked=2, consistent=True, violations=[]), ledger.to_dict()
        )

    def test_ledger_violations(self):
        ledger = ConsistencyLedger()
        lineset = pg3_examples(_space(3, 3))
        self.assertEqual(
            ["no co-dimension two transversal but not a generator set"],
            ledger.record(lineset, False, False),
        )
        self.assertEqual(
            [
                "generator set with a transversal has only 3 lines,"
                " fewer than q+1 = 4"
            ],
            ledger.record(lineset, True, True),
        )
        self.assertFalse(ledger.consistent)
        with self.assertRaises(InconsistencyError):
            ledger.assert_consistent()


class BlockingTest(unittest.TestCase):

    def test_blocking(self):
        space = _space(2, 3)
        line = rref([[1, 0, 0], [0, 1, 0]], space)
        points = points_on(line)
        self.assertTrue(is_tfold_blocking(points, 1, space))
        self.assertFalse(is_tfold_blocking(points, 2, space))
        self.assertFalse(is_tfold_blocking([], 1, space))
        with self.assertRaises(HiggledyError) as cm:
            is_tfold_blocking(points, 0, space)
        self.assertEqual(
            "Blocking multiplicity must be positive, got 0", f"{cm.exception}"
        )

    def test_lineset_points(self):
        triangle = plane_triangle(_space(2, 2))
        points = lineset_points(triangle)
        self.assertEqual(6, len(points))
        self.assertEqual(len(points), len(set(points)))


class DesignMeasureTest(unittest.TestCase):

    def test_frs_strong_bound(self):
        params = DesignParams(q=7, d=3, t=2, s=2)
        reports = measure_design(gk_frs_design(params), 2)
        weak, strong = reports["weak"], reports["strong"]
        self.assertEqual(2850, strong.subspaces)
        self.assertEqual(3, strong.members)
        self.assertLessEqual(weak.measured, strong.measured)
        self.assertLessEqual(strong.measured, 5)
        self.assertEqual(Fraction(5), strong.claimed_bound)
        self.assertEqual(Fraction(6), strong.original_bound)
        self.assertTrue(strong.satisfied)
        self.assertEqual(2, len(strong.witness))

    def test_design_measure(self):
        family = gk_mult_design(DesignParams(q=5, d=3, t=2, s=2))
        strong = design_measure(family, 2)
        self.assertEqual("strong", strong.mode)
        self.assertEqual(
            design_measure(family, 2, mode="weak"),
            measure_design(family, 2)["weak"],
        )
        with self.assertRaises(HiggledyError) as cm:
            design_measure(family, 2, mode="average")
        self.assertEqual(
            "Unknown design measurement mode 'average'", f"{cm.exception}"
        )
        with self.assertRaises(HiggledyError) as cm:
            measure_design(family, 5)
        self.assertEqual("Subspace dimension s=5 out of range 1..4", f"{cm.exception}")


class WronskianTest(unittest.TestCase):

    def setUp(self):
        self.params = DesignParams(q=11, d=5, t=2, s=2)

    def test_bounds(self):
        self.assertEqual(9, wronskian_bound("frs", 5, 2))
        self.assertEqual(8, wronskian_bound("mult", 5, 2))

    def test_low_degree_basis(self):
        basis = [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]
        mult = wronskian_degree_check(basis, "mult", self.params)
        self.assertEqual((1,), mult.coefficients)
        self.assertEqual(0, mult.degree)
        self.assertTrue(mult.nonzero)
        self.assertTrue(mult.holds)
        frs = wronskian_degree_check(basis, "frs", self.params)
        self.assertEqual(1, frs.degree)
        self.assertEqual(9, frs.bound)

    def test_random_bases(self):
        space = _space(5, 11)
        rng = np.random.default_rng(5)
        for mode in ("frs", "mult"):
            for _ in range(10):
                rows = rng.integers(0, 11, size=(2, 6))
                if len({tuple(r) for r in rows}) < 2:
                    continue
                basis = rref(rows, space).rows
                if len(basis) < 2:
                    continue
                report = wronskian_degree_check(basis, mode, self.params)
                self.assertTrue(report.holds)

    def test_invalid_basis(self):
        with self.assertRaises(HiggledyError) as cm:
            wronskian_degree_check(
                [[1, 0, 0, 0, 0, 0], [2, 0, 0, 0, 0, 0]], "mult", self.params
            )
        self.assertEqual("Polynomial basis is linearly dependent", f"{cm.exception}")
        with self.assertRaises(HiggledyError) as cm:
            wronskian_degree_check(
                [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]],
                "mult",
                self.params,
            )
        self.assertEqual("Basis of 3 polynomials exceeds t = 2", f"{cm.exception}")
