import itertools
import os
import subprocess
import sys
from math import gcd
from functools import reduce

import pytest

from arfcurves import kernels


def _gen_sets():
    for k in (1, 2, 3):
        for g in itertools.combinations(range(2, 14), k):
            if reduce(gcd, g) == 1:
                yield g


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.skipif(kernels.c_backend is None, reason="compiled kernels not built")
def test_backends_agree():
    c, py = kernels.c_backend, kernels.py_backend
    for g in _gen_sets():
        tc, cc = c.generate(g)
        tp, cp = py.generate(g)
        assert (bytes(tc), cc) == (bytes(tp), cp)
        assert c.multiplicities(tc, cc) == py.multiplicities(tp, cp)
        assert bool(c.is_arf(tc, cc)) == bool(py.is_arf(tp, cp))
        assert list(c.minimal_generators(tc, cc)) == list(py.minimal_generators(tp, cp))


def test_pure_python_switch():
    env = dict(os.environ, ARFCURVES_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from arfcurves import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def test_generate_rejects_gcd():
    for backend in filter(None, (kernels.c_backend, kernels.py_backend)):
        with pytest.raises(ValueError):
            backend.generate([4, 6])
