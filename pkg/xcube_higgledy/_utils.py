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

from fractions import Fraction
from typing import Any, Callable, Iterable, Optional, TypeVar

import dask
import tqdm
from tqdm.dask import TqdmCallback

from .constants import LOG
from .constants import SCHEDULERS
from .error import HiggledyError

S = TypeVar("S")
R = TypeVar("R")


def map_blocks(
    func: Callable[[S], R],
    specs: Iterable[S],
    scheduler: str = "synchronous",
    progress: bool = False,
    desc: Optional[str] = None,
    stop_when: Optional[Callable[[R], bool]] = None,
) -> list[R]:
    """Evaluate *func* on every block specification.

    With the ``"synchronous"`` scheduler the blocks are evaluated in order
    and evaluation stops after the first result for which *stop_when* is
    true. With ``"threads"`` all blocks are evaluated as dask tasks.
    In both cases the results are returned in block order, so reductions
    over them do not depend on the scheduler.

    Args:
        func: block function
        specs: block specifications
        scheduler: ``"synchronous"`` or ``"threads"``
        progress: if True, a progress bar is shown
        desc: description of the progress bar
        stop_when: optional early exit predicate, synchronous only

    Returns:
        The results of the evaluated blocks, in block order.
    """
    if scheduler not in SCHEDULERS:
        raise HiggledyError(
            f"Unknown scheduler {scheduler!r}, use one of {', '.join(SCHEDULERS)}"
        )
    specs = list(specs)
    LOG.debug(f"Evaluating {len(specs)} blocks with the {scheduler} scheduler")
    if scheduler == "synchronous":
        results = []
        for spec in tqdm.tqdm(specs, total=len(specs), desc=desc, disable=not progress):
            result = func(spec)
            results.append(result)
            if stop_when is not None and stop_when(result):
                break
        return results
    tasks = [dask.delayed(func)(spec) for spec in specs]
    with TqdmCallback(desc=desc, disable=not progress):
        results = dask.compute(*tasks, scheduler="threads")
    return list(results)


def jsonify(value: Any) -> Any:
    """Convert tuples and fractions into JSON compatible values."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return value.numerator
        return dict(numerator=value.numerator, denominator=value.denominator)
    if isinstance(value, dict):
        return {str(k): jsonify(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonify(v) for v in value]
    if hasattr(value, "item") and callable(value.item):
        return value.item()
    return value
