"""Kernel backend selection.

The numba lane is used when numba imports cleanly; set EDCHROM_DISABLE_NUMBA=1
(or any of "true"/"yes") to force the pure-numpy fallback.  The active lane is
exposed as module-level functions plus ``NAME`` for diagnostics.
"""

from __future__ import annotations

import os

from . import numpy_backend

_DISABLE = os.environ.get("EDCHROM_DISABLE_NUMBA", "0").strip().lower() in (
    "1", "true", "yes", "on",
)

if not _DISABLE:
    try:
        from . import numba_backend as _active
    except ImportError:
        _active = numpy_backend
else:
    _active = numpy_backend

NAME = _active.NAME
solve_p_grid = _active.solve_p_grid
secular_roots_grid = _active.secular_roots_grid
weno5_grid = _active.weno5_grid
solve_many = _active.solve_many
block_tridiag_solve = _active.block_tridiag_solve
