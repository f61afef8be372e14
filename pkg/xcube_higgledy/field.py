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
import re
from typing import Literal, Optional

import galois
import numpy as np

from .constants import DEFAULT_FIELD_ORDER_LIMIT
from .constants import LOG
from .error import BudgetExceededError
from .error import FieldZeroDivisionError
from .error import HiggledyError

ArithOp = Literal["add", "sub", "mul", "div"]

_FIELD_PATTERN = re.compile(r"^\s*([0-9]+)\s*(?:\^\s*([0-9]+)\s*)?$")


@dataclasses.dataclass(frozen=True)
class FieldSpec:
    """The finite field GF(p^k).

    Elements are identified with their enumeration index: the coefficient
    vector of an element in the powers of the modulus root, read as a
    base-p integer with the constant coefficient as least significant digit.
    This coincides with the integer representation of ``galois`` arrays,
    so ``field.gf(index)`` is the element with that index.

    Attributes:
        p: the characteristic, a prime
        k: the extension degree
        modulus: ascending coefficients of the monic modulus of degree k,
            None for prime fields
    """

    p: int
    k: int = 1
    modulus: Optional[tuple[int, ...]] = None

    @property
    def q(self) -> int:
        return self.p**self.k

    @property
    def gf(self) -> type[galois.FieldArray]:
        return _galois_field(self.p, self.k, self.modulus)

    def element(self, index: int) -> "Scalar":
        return Scalar.from_index(self, index)

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


@dataclasses.dataclass(frozen=True)
class Scalar:
    """An element of a :class:`FieldSpec`, stored as its coefficient vector."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    @classmethod
    def from_index(cls, field: FieldSpec, index: int) -> "Scalar":
        if not 0 <= index < field.q:
            raise HiggledyError(f"Element index {index} out of range for {field}")
        coeffs = []
        for _ in range(field.k):
            index, digit = divmod(index, field.p)
            coeffs.append(digit)
        return cls(field, tuple(coeffs))

    @property
    def index(self) -> int:
        return sum(c * self.field.p**i for i, c in enumerate(self.coeffs))

    @property
    def value(self) -> galois.FieldArray:
        return self.field.gf(self.index)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "Scalar") -> "Scalar":
        return arith(self, other, "add")

    def __sub__(self, other: "Scalar") -> "Scalar":
        return arith(self, other, "sub")

    def __mul__(self, other: "Scalar") -> "Scalar":
        return arith(self, other, "mul")

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return arith(self, other, "div")

    def __neg__(self) -> "Scalar":
        return neg(self)

    def __pow__(self, exponent: int) -> "Scalar":
        return power(self, exponent)

    def __int__(self) -> int:
        return self.index

    def __str__(self) -> str:
        if self.field.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i in reversed(range(self.field.k)):
            c = self.coeffs[i]
            if c == 0:
                continue
            monomial = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not monomial:
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            else:
                terms.append(f"{c}{monomial}")
        return "+".join(terms) if terms else "0"


@functools.lru_cache(maxsize=None)
def _galois_field(
    p: int, k: int, modulus: Optional[tuple[int, ...]]
) -> type[galois.FieldArray]:
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
    return galois.GF(p**k, irreducible_poly=poly)


def smallest_monic_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Find the lexicographically smallest monic irreducible polynomial.

    Candidates are compared by their coefficients from degree 0 upwards.

    Args:
        p: prime characteristic
        k: degree, at least 2

    Returns:
        Ascending coefficients, the last one being 1.
    """
    prime_field = galois.GF(p)
    for low in itertools.product(range(p), repeat=k):
        coeffs = (*low, 1)
        if low[0] == 0:
            continue
        if galois.Poly(list(coeffs), field=prime_field, order="asc").is_irreducible():
            return coeffs
    raise HiggledyError(f"No irreducible polynomial of degree {k} over GF({p})")


def field_create(
    p: int, k: int = 1, order_limit: int = DEFAULT_FIELD_ORDER_LIMIT
) -> FieldSpec:
    """Create the field GF(p^k) with its canonical modulus.

    Args:
        p: the characteristic
        k: the extension degree
        order_limit: largest accepted field order

    Returns:
        The field specification.

    Raises:
        HiggledyError: if p is not a prime or k is not positive
        BudgetExceededError: if p^k exceeds *order_limit*
    """
    if k < 1:
        raise HiggledyError(f"Extension degree must be positive, got {k}")
    if p < 2 or not galois.is_prime(p):
        raise HiggledyError(f"Characteristic {p} is not a prime")
    if p**k > order_limit:
        raise BudgetExceededError("field elements", p**k, order_limit)
    if k == 1:
        return FieldSpec(p, 1, None)
    modulus = smallest_monic_irreducible(p, k)
    LOG.debug(f"Modulus of GF({p}^{k}) is {modulus}")
    return FieldSpec(p, k, modulus)


def parse_field(text: str, order_limit: int = DEFAULT_FIELD_ORDER_LIMIT) -> FieldSpec:
    """Parse a field given as ``"q"`` or ``"p^k"``."""
    match = _FIELD_PATTERN.match(str(text))
    if match is None:
        raise HiggledyError(f"Malformed field {text!r}, expected 'q' or 'p^k'")
    base = int(match.group(1))
    if match.group(2) is not None:
        return field_create(base, int(match.group(2)), order_limit=order_limit)
    if base < 2:
        raise HiggledyError(f"Field order {base} is not a prime power")
    primes, exponents = galois.factors(base)
    if len(primes) != 1:
        raise HiggledyError(f"Field order {base} is not a prime power")
    return field_create(int(primes[0]), int(exponents[0]), order_limit=order_limit)


def _check_same_field(a: Scalar, b: Scalar):
    if a.field != b.field:
        raise HiggledyError(f"Cannot combine elements of {a.field} and {b.field}")


def arith(a: Scalar, b: Scalar, op: ArithOp) -> Scalar:
    """Apply a binary field operation.

    Raises:
        FieldZeroDivisionError: if *op* is ``"div"`` and *b* is zero
    """
    _check_same_field(a, b)
    x, y = a.value, b.value
    if op == "add":
        z = x + y
    elif op == "sub":
        z = x - y
    elif op == "mul":
        z = x * y
    elif op == "div":
        if b.is_zero():
            raise FieldZeroDivisionError(f"Division by zero in {a.field}")
        z = x / y
    else:
        raise HiggledyError(f"Unknown field operation {op!r}")
    return Scalar.from_index(a.field, int(z))


def neg(a: Scalar) -> Scalar:
    return Scalar.from_index(a.field, int(-a.value))


def inv(a: Scalar) -> Scalar:
    if a.is_zero():
        raise FieldZeroDivisionError(f"Zero has no inverse in {a.field}")
    return Scalar.from_index(a.field, int(np.reciprocal(a.value)))


def power(a: Scalar, exponent: int) -> Scalar:
    """Raise *a* to an integer power by square-and-multiply."""
    if exponent < 0:
        return power(inv(a), -exponent)
    result = a.field.gf(1)
    base = a.value
    while exponent:
        if exponent & 1:
            result = result * base
        base = base * base
        exponent >>= 1
    return Scalar.from_index(a.field, int(result))


def enumerate_elements(field: FieldSpec) -> list[Scalar]:
    """All field elements, index 0 is zero and index 1 is one."""
    return [Scalar.from_index(field, i) for i in range(field.q)]


def primitive_element(field: FieldSpec) -> Scalar:
    """The first element in enumeration order generating the multiplicative group.

    GF(2) has the trivial group, its generator is 1.
    """
    if field.q == 2:
        return Scalar.from_index(field, 1)
    gf = field.gf
    for index in range(1, field.q):
        if int(gf(index).multiplicative_order()) == field.q - 1:
            return Scalar.from_index(field, index)
    raise HiggledyError(f"No primitive element found in {field}")


def int_embed(n: int, field: FieldSpec) -> Scalar:
    """Image of the integer *n* in the prime subfield."""
    return Scalar.from_index(field, n % field.p)


def as_ints(array: galois.FieldArray) -> np.ndarray:
    """Enumeration indices of the entries of a field array."""
    return array.view(np.ndarray).astype(np.int64)
