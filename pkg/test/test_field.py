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

from xcube_higgledy.error import BudgetExceededError
from xcube_higgledy.error import FieldZeroDivisionError
from xcube_higgledy.error import HiggledyError
from xcube_higgledy.field import FieldSpec
from xcube_higgledy.field import enumerate_elements
from xcube_higgledy.field import field_create
from xcube_higgledy.field import int_embed
from xcube_higgledy.field import inv
from xcube_higgledy.field import parse_field
from xcube_higgledy.field import primitive_element
from xcube_higgledy.field import smallest_monic_irreducible


class FieldCreateTest(unittest.TestCase):

    def test_prime_field(self):
        field = field_create(5)
        self.assertEqual(FieldSpec(5, 1, None), field)
        self.assertEqual(5, field.q)
        self.assertEqual("GF(5)", str(field))

    def test_extension_field(self):
        field = field_create(2, 3)
        self.assertEqual((1, 0, 1, 1), field.modulus)
        self.assertEqual(8, field.q)
        self.assertEqual("GF(2^3)", str(field))
        self.assertEqual((1, 1, 1), field_create(2, 2).modulus)
        self.assertEqual((1, 0, 1), field_create(3, 2).modulus)

    def test_smallest_monic_irreducible(self):
        self.assertEqual((1, 1, 1), smallest_monic_irreducible(5, 2))
        self.assertEqual((1, 0, 0, 1, 1), smallest_monic_irreducible(2, 4))

    def test_invalid(self):
        with self.assertRaises(HiggledyError) as cm:
            field_create(4)
        self.assertEqual("Characteristic 4 is not a prime", f"{cm.exception}")
        with self.assertRaises(HiggledyError) as cm:
            field_create(2, 0)
        self.assertEqual("Extension degree must be positive, got 0", f"{cm.exception}")
        with self.assertRaises(BudgetExceededError) as cm:
            field_create(2, 17)
        self.assertEqual(
            "Refusing to enumerate 131072 field elements, the budget is 65536",
            f"{cm.exception}",
        )

    def test_parse_field(self):
        self.assertEqual(field_create(7), parse_field("7"))
        self.assertEqual(field_create(3, 2), parse_field("9"))
        self.assertEqual(field_create(3, 2), parse_field(" 3 ^ 2 "))
        with self.assertRaises(HiggledyError) as cm:
            parse_field("6")
        self.assertEqual("Field order 6 is not a prime power", f"{cm.exception}")
        with self.assertRaises(HiggledyError) as cm:
            parse_field("GF(5)")
        self.assertEqual(
            "Malformed field 'GF(5)', expected 'q' or 'p^k'", f"{cm.exception}"
        )


class ScalarTest(unittest.TestCase):

    def test_prime_field_arithmetic(self):
        field = field_create(5)
        two, three, four = (field.element(i) for i in (2, 3, 4))
        self.assertEqual(2, (three * four).index)
        self.assertEqual(1, (three + three).index)
        self.assertEqual(4, (two - three).index)
        self.assertEqual(4, (two / three).index)
        self.assertEqual(3, (-two).index)
        self.assertEqual(3, inv(two).index)
        self.assertEqual(1, (two**4).index)
        self.assertEqual(3, (two**-1).index)

    def test_extension_arithmetic(self):
        field = field_create(2, 3)
        x = field.element(2)
        self.assertEqual((0, 1, 0), x.coeffs)
        # x^3 = x^2 + 1
        self.assertEqual(5, (x**3).index)
        self.assertEqual("x^2+1", str(x**3))
        self.assertEqual(1, (x**7).index)
        self.assertEqual(0, (x + x).index)
        gf9 = field_create(3, 2)
        y = gf9.element(3)
        self.assertEqual(2, (y * y).index)
        self.assertEqual("x+2", str(gf9.element(5)))
        self.assertEqual("2x", str(gf9.element(6)))

    def test_division_by_zero(self):
        field = field_create(5)
        with self.assertRaises(FieldZeroDivisionError) as cm:
            field.element(1) / field.element(0)
        self.assertEqual("Division by zero in GF(5)", f"{cm.exception}")
        self.assertIsInstance(cm.exception, ZeroDivisionError)
        with self.assertRaises(ZeroDivisionError):
            inv(field.element(0))

    def test_mixed_fields(self):
        with self.assertRaises(HiggledyError) as cm:
            field_create(5).element(1) + field_create(7).element(1)
        self.assertEqual(
            "Cannot combine elements of GF(5) and GF(7)", f"{cm.exception}"
        )

    def test_element_range(self):
        with self.assertRaises(HiggledyError) as cm:
            field_create(5).element(5)
        self.assertEqual("Element index 5 out of range for GF(5)", f"{cm.exception}")

    def test_enumerate_elements(self):
        elements = enumerate_elements(field_create(2, 2))
        self.assertEqual([0, 1, 2, 3], [e.index for e in elements])
        self.assertTrue(elements[0].is_zero())

    def test_primitive_element(self):
        self.assertEqual(1, primitive_element(field_create(2)).index)
        self.assertEqual(2, primitive_element(field_create(5)).index)
        self.assertEqual(3, primitive_element(field_create(7)).index)
        self.assertEqual(2, primitive_element(field_create(2, 2)).index)

    def test_int_embed(self):
        self.assertEqual(2, int_embed(7, field_create(5)).index)
        self.assertEqual(1, int_embed(4, field_create(3, 2)).index)
        self.assertEqual(0, int_embed(3, field_create(3, 2)).index)


class FieldAxiomsTest(unittest.TestCase):

    ORDERS = ("2", "3", "4", "5", "7", "8", "9", "11", "13", "16")

    def test_axioms(self):
        for order in self.ORDERS:
            field = parse_field(order)
            with self.subTest(field=str(field)):
                elements = enumerate_elements(field)
                zero, one = elements[0], elements[1]
                for a, b in itertools.product(elements, repeat=2):
                    self.assertEqual((a + b).index, (b + a).index)
                    self.assertEqual((a * b).index, (b * a).index)
                    self.assertEqual(a.index, (a - b + b).index)
                for a, b, c in itertools.product(elements, repeat=3):
                    self.assertEqual(((a + b) + c).index, (a + (b + c)).index)
                    self.assertEqual(((a * b) * c).index, (a * (b * c)).index)
                    self.assertEqual((a * (b + c)).index, (a * b + a * c).index)
                for a in elements:
                    self.assertEqual(a.index, (a + zero).index)
                    self.assertEqual(a.index, (a * one).index)
                    self.assertTrue((a + -a).is_zero())
                    if not a.is_zero():
                        self.assertEqual(1, (a * inv(a)).index)

    def test_primitive_element_order(self):
        for order in self.ORDERS:
            field = parse_field(order)
            with self.subTest(field=str(field)):
                omega = primitive_element(field)
                powers = [(omega**i).index for i in range(field.q - 1)]
                self.assertEqual(field.q - 1, len(set(powers)))
                self.assertNotIn(0, powers)
                self.assertEqual(1, (omega ** (field.q - 1)).index)
