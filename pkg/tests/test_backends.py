import os
import subprocess
import sys

import numpy as np
import pytest

from ortholab import _backend

python_kernels = _backend.load("python")
needs_compiled = pytest.mark.skipif(not _backend.compiled_available(),
                                    reason="compiled extension not built")

XS = np.concatenate([-np.geomspace(1e-9, 1e9, 200), np.linspace(0.0, 1.0, 201)])


@needs_compiled
def test_dilog_kernels_agree():
    compiled = _backend.load("compiled")
    for x in XS:
        assert compiled.li2(x) == pytest.approx(python_kernels.li2(x), rel=1e-15, abs=1e-16)
        assert compiled.rogers_l(x) == pytest.approx(python_kernels.rogers_l(x), rel=1e-15, abs=1e-16)
    np.testing.assert_allclose(compiled.rogers_l_array(XS), python_kernels.rogers_l_array(XS),
                               rtol=1e-15, atol=1e-16)


@needs_compiled
@pytest.mark.parametrize("l,t", [(0.5, 0.5), (0.5, 3.0), (1.0, 1.0001), (2.0, 6.0), (4.0, 30.0)])
def test_density_kernels_agree(l, t):
    compiled = _backend.load("compiled")
    c = compiled.rho_integral(l, t, 1e-10, 11)
    p = python_kernels.rho_integral(l, t, 1e-10, 11)
    assert c[2] and p[2]
    assert c[0] == pytest.approx(p[0], rel=1e-12)


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.load("fortran")


def test_pure_python_switch():
    env = dict(os.environ, ORTHOLAB_PURE_PYTHON="1")
    code = ("import ortholab, math; from ortholab._backend import BACKEND; "
            "print(BACKEND, repr(ortholab.rogers_l(0.5) - math.pi**2/12), ortholab.rho(1.0, 2.0) > 0)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, err, positive = out.stdout.split()
    assert name == "python" and abs(float(err)) < 1e-15 and positive == "True"
