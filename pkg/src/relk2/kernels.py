"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``RELK2_PURE=1`` to force the pure twin (useful for benchmarking and for
ruling the extension out when debugging).  The compiled kernels refuse inputs
outside their int64 envelope by raising OverflowError; the wrappers here
rerun those calls on the pure big-int implementation, so callers never see
the difference.
"""

import os
from array import array

from . import _kernels_py as _pure

if os.environ.get("RELK2_PURE"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

IMPLEMENTATION = _impl.IMPLEMENTATION


def table(seq):
    """Pack a flat index table once so repeated kernel calls skip conversion."""
    if isinstance(seq, array) and seq.typecode == "q":
        return seq
    return array("q", seq)


def convolve(a, b, idx, m):
    try:
        return _impl.convolve(a, b, idx, m)
    except OverflowError:
        return _pure.convolve(a, b, idx, m)


def rref(rows, ncols, p):
    try:
        return _impl.rref(rows, ncols, p)
    except OverflowError:
        return _pure.rref(rows, ncols, p)


def echelon_int(rows, ncols):
    try:
        return _impl.echelon_int(rows, ncols)
    except OverflowError:
        return _pure.echelon_int(rows, ncols)


def ds_rows(n, mul, add, neg, ideal):
    try:
        return _impl.ds_rows(n, mul, add, neg, ideal)
    except OverflowError:
        return _pure.ds_rows(n, mul, add, neg, ideal)
