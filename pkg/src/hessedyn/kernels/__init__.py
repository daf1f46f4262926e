"""Numeric kernels: a compiled extension when built, numpy otherwise.

Set ``HESSEDYN_PURE=1`` to force the numpy implementation.
"""

import os

import numpy as np

from . import _pykernels

UNRESOLVED = _pykernels.UNRESOLVED

if os.environ.get("HESSEDYN_PURE"):
    _impl = _pykernels
    BACKEND = "numpy"
else:
    try:
        from . import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "numpy"

eval_program = _impl.eval_program
aberth = _impl.aberth
basin_grid = _impl.basin_grid


def pack_program(stages):
    """Pack ``ratmap`` stages (objects with ``deg``, ``c0``, ``c1``) into flat arrays."""
    degs = np.array([st.deg for st in stages], dtype=np.int64)
    offs = np.zeros(len(stages) + 1, dtype=np.int64)
    offs[1:] = np.cumsum(degs + 1)
    c0 = np.concatenate([np.asarray(st.c0, dtype=np.complex128) for st in stages])
    c1 = np.concatenate([np.asarray(st.c1, dtype=np.complex128) for st in stages])
    return degs, offs, c0, c1
