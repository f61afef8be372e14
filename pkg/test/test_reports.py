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
from fractions import Fraction

from xcube_higgledy.constructions import higgledy_family
from xcube_higgledy.constructions import plane_triangle
from xcube_higgledy.designs import DesignParams
from xcube_higgledy.designs import gk_frs_design
from xcube_higgledy.designs import gk_mult_design
from xcube_higgledy.error import HiggledyError
from xcube_higgledy.field import field_create
from xcube_higgledy.field import parse_field
from xcube_higgledy.projective import SpaceSpec
from xcube_higgledy.reports import design_family_from_dict
from xcube_higgledy.reports import design_family_to_dict
from xcube_higgledy.reports import dump_json
from xcube_higgledy.reports import field_from_dict
from xcube_higgledy.reports import field_summary
from xcube_higgledy.reports import field_to_dict
from xcube_higgledy.reports import lineset_from_dict
from xcube_higgledy.reports import lineset_to_dict
from xcube_higgledy.reports import load_input
from xcube_higgledy.reports import load_json
from xcube_higgledy.reports import pluecker_to_dict
from xcube_higgledy.pluecker import line_to_pluecker


class FieldDictTest(unittest.TestCase):

    def test_prime_field(self):
        field = field_create(7)
        self.assertEqual(dict(p=7, k=1, modulus=None), field_to_dict(field))
        self.assertEqual(field, field_from_dict(field_to_dict(field)))
        self.assertEqual(
            dict(name="GF(7)", q=7, p=7, k=1, modulus=None), field_summary(field)
        )

    def test_extension_field(self):
        field = field_create(2, 3)
        self.assertEqual(dict(p=2, k=3, modulus=[1, 0, 1, 1]), field_to_dict(field))
        self.assertEqual(field, field_from_dict(field_to_dict(field)))

    def test_custom_modulus(self):
        field = field_from_dict(dict(p=2, k=3, modulus=[1, 1, 0, 1]))
        self.assertEqual((1, 1, 0, 1), field.modulus)
        self.assertEqual(8, field.q)

    def test_invalid_modulus(self):
        with self.assertRaises(HiggledyError) as cm:
            field_from_dict(dict(p=2, k=3, modulus=[1, 1, 0, 0]))
        self.assertEqual(
            "Modulus [1, 1, 0, 0] is not a monic polynomial of degree 3",
            f"{cm.exception}",
        )
        with self.assertRaises(HiggledyError) as cm:
            field_from_dict(dict(p=2, k=3, modulus=[1, 0, 0, 1]))
        self.assertTrue(
            f"{cm.exception}".startswith("Modulus [1, 0, 0, 1] is not irreducible")
        )


class LineSetDictTest(unittest.TestCase):

    def setUp(self):
        self.space = SpaceSpec(3, parse_field("5"))

    def test_round_trip(self):
        lineset = higgledy_family(self.space)
        data = lineset_to_dict(lineset)
        self.assertEqual("LineSet", data["type"])
        self.assertEqual("diverted", data["construction"])
        self.assertEqual(5, len(data["lines"]))
        self.assertEqual(lineset.lines, lineset_from_dict(data).lines)

    def test_lines_are_canonicalized(self):
        data = dict(
            type="LineSet",
            field=dict(p=5, k=1),
            dim=3,
            lines=[[[0, 2, 0, 0], [3, 1, 0, 0]]],
        )
        lineset = lineset_from_dict(data)
        self.assertEqual(((1, 0, 0, 0), (0, 1, 0, 0)), lineset.lines[0].rows)
        self.assertEqual("custom", lineset.construction)
        self.assertIsNone(lineset.tags)

    def test_invalid(self):
        base = dict(type="LineSet", field=dict(p=5, k=1), dim=3)
        with self.assertRaises(HiggledyError) as cm:
            lineset_from_dict(base)
        self.assertEqual(
            "Invalid line set: 'lines' is a required property", f"{cm.exception}"
        )
        with self.assertRaises(HiggledyError) as cm:
            lineset_from_dict(dict(base, lines=[[[1, 0, 0, 0], [2, 0, 0, 0]]]))
        self.assertEqual(
            "Rows [[1, 0, 0, 0], [2, 0, 0, 0]] span a subspace of rank 1",
            f"{cm.exception}",
        )
        with self.assertRaises(HiggledyError) as cm:
            lineset_from_dict(dict(base, lines=[[[1, 0, 0, 0], [0, 7, 0, 0]]]))
        self.assertEqual(
            "Entries of [[1, 0, 0, 0], [0, 7, 0, 0]] must be below 5",
            f"{cm.exception}",
        )

    def test_pluecker_to_dict(self):
        line = plane_triangle(SpaceSpec(2, parse_field("3"))).lines[0]
        data = pluecker_to_dict(line_to_pluecker(line))
        self.assertEqual("primal", data["flavor"])
        self.assertEqual(3, len(data["coords"]))
        self.assertEqual(1, len(data["nonzero"]))


class DesignFamilyDictTest(unittest.TestCase):

    def test_round_trip(self):
        for family in (
            gk_frs_design(DesignParams(q=7, d=3, t=2, s=2)),
            gk_mult_design(DesignParams(q=5, d=3, t=2, s=2)),
        ):
            data = json.loads(dump_json(design_family_to_dict(family)))
            self.assertEqual("DesignFamily", data["type"])
            restored = design_family_from_dict(data)
            self.assertEqual(family.members, restored.members)
            self.assertEqual(family.params, restored.params)
            self.assertEqual(family.construction, restored.construction)

    def test_invalid(self):
        family = gk_mult_design(DesignParams(q=5, d=3, t=2, s=2))
        data = design_family_to_dict(family)
        data["members"][0]["codim"] += 1
        with self.assertRaises(HiggledyError) as cm:
            design_family_from_dict(data)
        label = data["members"][0]["label"]
        self.assertEqual(
            f"Member {label} has co-dimension 2, not 3", f"{cm.exception}"
        )
        data = design_family_to_dict(family)
        data["construction"] = "gk-other"
        with self.assertRaises(HiggledyError) as cm:
            design_family_from_dict(data)
        self.assertTrue(f"{cm.exception}".startswith("Invalid design family: "))


class LoadTest(unittest.TestCase):

    def setUp(self):
        self.tmp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp_dir.cleanup()

    def _write(self, name: str, text: str) -> str:
        path = os.path.join(self.tmp_dir.name, name)
        with open(path, "w") as fp:
            fp.write(text)
        return path

    def test_dump_json(self):
        text = dump_json(dict(b=(1, 2), a=Fraction(3, 2), c=Fraction(4, 2)))
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(
            dict(a=dict(numerator=3, denominator=2), b=[1, 2], c=2), json.loads(text)
        )
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_load_lineset_and_report(self):
        lineset = plane_triangle(SpaceSpec(2, parse_field("4")))
        data = lineset_to_dict(lineset)
        path = self._write("lineset.json", dump_json(data))
        self.assertEqual(lineset.lines, load_input(path).lines)
        path = self._write("report.json", dump_json(dict(status=0, result=data)))
        self.assertEqual(lineset.lines, load_input(path).lines)

    def test_load_errors(self):
        path = self._write("other.json", dump_json(dict(type="Other")))
        with self.assertRaises(HiggledyError) as cm:
            load_input(path)
        self.assertEqual(
            f"{path} holds neither a LineSet nor a DesignFamily", f"{cm.exception}"
        )
        path = self._write("broken.json", "{")
        with self.assertRaises(HiggledyError) as cm:
            load_json(path)
        self.assertTrue(f"{cm.exception}".startswith(f"Cannot read {path}: "))
