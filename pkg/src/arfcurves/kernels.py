"""Backend selection for the semigroup kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise,
or when ``ARFCURVES_PURE_PYTHON=1`` is set, the pure-Python twin is used.
"""

from __future__ import annotations

import os

from . import _kernels_py as py_backend

c_backend = None
if os.environ.get("ARFCURVES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as c_backend  # type: ignore[no-redef]
    except ImportError:
        c_backend = None

backend = c_backend if c_backend is not None else py_backend
BACKEND = "cython" if c_backend is not None else "python"

generate = backend.generate
blowup = backend.blowup
multiplicities = backend.multiplicities
is_arf = backend.is_arf
minimal_generators = backend.minimal_generators
