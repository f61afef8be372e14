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


class HiggledyError(Exception):
    """Raised for invalid input and violated preconditions."""


class FieldZeroDivisionError(HiggledyError, ZeroDivisionError):
    """Raised when dividing by the zero element of a finite field."""


class BudgetExceededError(HiggledyError):
    """Raised before an enumeration whose size exceeds the configured budget.

    Args:
        what: human readable name of the enumerated objects
        count: number of objects the enumeration would visit
        budget: the configured maximum
    """

    def __init__(self, what: str, count: int, budget: int):
        super().__init__(
            f"Refusing to enumerate {count} {what}, the budget is {budget}"
        )
        self.what = what
        self.count = count
        self.budget = budget


class InconsistencyError(HiggledyError):
    """Raised when a proven implication fails on computed data.

    This can only be caused by an implementation defect.
    """
