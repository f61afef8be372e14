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

"""Higgledy-piggledy line sets in PG(d, q): constructions and exact checks."""

__version__ = "0.1.0.dev0"

from .field import FieldSpec
from .field import Scalar
from .field import field_create
from .field import parse_field
from .projective import SpaceSpec
from .projective import Subspace
from .projective import Hyperplane
from .pluecker import PlueckerVector
from .pluecker import GrassmannSpec
from .constructions import Injection
from .constructions import LineSet
from .designs import DesignFamily
from .designs import DesignParams
from .designs import PolySubspace
from .error import BudgetExceededError
from .error import HiggledyError
from .error import InconsistencyError
