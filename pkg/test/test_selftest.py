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

import unittest

from xcube_higgledy.constants import ANCHORS
from xcube_higgledy.selftest import SelfTest
from xcube_higgledy.selftest import run_selftest


class SelfTestTest(unittest.TestCase):

    def test_quick(self):
        suite = run_selftest(quick=True, timing=False)
        failed = [row for row in suite["criteria"] if not row["passed"]]
        self.assertEqual([], failed)
        self.assertTrue(suite["passed"])
        self.assertEqual(13, len(suite["criteria"]))
        self.assertNotIn("seconds", suite["criteria"][0])
        self.assertIn("lower-bound", suite["table"])

    def test_anchors(self):
        suite = run_selftest(quick=True, timing=False)
        anchors = {row["name"]: row["anchor"] for row in suite["criteria"]}
        self.assertEqual(
            "Theorem, 2d-1 diverted tangents form a generator set",
            anchors["diverted"],
        )
        self.assertEqual(ANCHORS["minimal"], anchors["lower-bound"])
        self.assertEqual(13, len(set(anchors.values())))
        for anchor in anchors.values():
            self.assertIn(anchor, suite["table"])

    def test_single_checks(self):
        suite = SelfTest(quick=True)
        passed, detail = suite.triangle()
        self.assertTrue(passed)
        passed, detail = suite.fano()
        self.assertTrue(passed)
        self.assertTrue(suite.ledger.consistent)

    def test_quadric(self):
        suite = SelfTest(quick=True)
        passed, detail = suite.quadric()
        self.assertTrue(passed)
        self.assertEqual(
            "ruling generates only in PG(3,2), exterior line for q <= 3", detail
        )
        self.assertEqual(5, len(suite.ledger.entries))
        self.assertTrue(suite.ledger.consistent)

    def test_partial(self):
        suite = run_selftest(quick=True, budget=10, timing=False)
        self.assertTrue(suite["partial"])
