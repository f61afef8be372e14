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
import os
import tempfile
import unittest

from click.testing import CliRunner

from xcube_higgledy.cli import cli


class CliTest(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner()

    def invoke(self, *args: str):
        return self.runner.invoke(cli, list(args))

    def test_help(self):
        result = self.invoke("--help")
        self.assertEqual(0, result.exit_code)
        for command in ("construct", "verify", "design", "search", "selftest"):
            self.assertIn(command, result.output)

    def test_construct(self):
        result = self.invoke(
            "construct", "triangle", "-f", "4", "-d", "2", "--no-timing"
        )
        self.assertEqual(0, result.exit_code)
        report = json.loads(result.stdout)
        self.assertEqual(0, report["status"])
        self.assertEqual("LineSet", report["result"]["type"])
        self.assertEqual(3, len(report["result"]["lines"]))
        self.assertEqual(
            dict(name="GF(2^2)", q=4, p=2, k=2, modulus=[1, 1, 1]), report["field"]
        )

    def test_verify_with_input(self):
        with tempfile.TemporaryDirectory() as tmp_dir:
            path = os.path.join(tmp_dir, "lines.json")
            result = self.invoke("construct", "diverted", "-o", path)
            self.assertEqual(0, result.exit_code)
            result = self.invoke("verify", "generator", "-i", path)
            self.assertEqual(0, result.exit_code)
            self.assertTrue(json.loads(result.stdout)["result"]["verdict"])

    def test_scheduler(self):
        result = self.invoke(
            "--scheduler", "threads", "verify", "transversal", "-c", "three-ruling"
        )
        self.assertEqual(0, result.exit_code)
        report = json.loads(result.stdout)
        self.assertEqual("threads", report["config"]["scheduler"])
        self.assertTrue(report["result"]["exists"])

    def test_exit_codes(self):
        result = self.invoke("verify", "generator", "--budget", "10")
        self.assertEqual(3, result.exit_code)
        self.assertIn(
            "Refusing to enumerate 156 hyperplanes, the budget is 10", result.output
        )
        result = self.invoke("construct", "triangle", "-f", "6")
        self.assertEqual(1, result.exit_code)
        result = self.invoke(
            "verify",
            "pluecker-rank",
            "-f",
            "7",
            "-c",
            "tangents",
            "-n",
            "7",
            "--assert-bound",
        )
        self.assertEqual(2, result.exit_code)

    def test_invalid_name(self):
        result = self.invoke("search", "maximal")
        self.assertEqual(2, result.exit_code)
        self.assertIn("Invalid value for 'NAME'", result.output)

    def test_search(self):
        result = self.invoke(
            "search", "minimal", "-f", "2", "-d", "2", "--max-size", "3", "--no-timing"
        )
        self.assertEqual(0, result.exit_code)
        report = json.loads(result.stdout)
        self.assertEqual(3, report["result"]["size"])
        self.assertEqual([1, 2], report["result"]["certified_sizes"])
