import os
import subprocess
import sys

import numpy as np
import pytest

from compop import _accel

pytestmark = pytest.mark.skipif(_accel.numba_kernels is None, reason="numba not installed")


def _random_complex(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def test_backends_agree_cauchy(rng):
    for n, m in [(1, 1), (7, 13), (128, 128)]:
        p, q = _random_complex(rng, n), _random_complex(rng, m)
        assert np.allclose(_accel.numpy_kernels.cauchy_product(p, q),
                           _accel.numba_kernels.cauchy_product(p, q), rtol=0, atol=1e-12)


def test_backends_agree_reciprocal(rng):
    c = _random_complex(rng, 5)
    c[0] = 3.0
    for n in (1, 3, 64):
        assert np.allclose(_accel.numpy_kernels.reciprocal(c, n),
                           _accel.numba_kernels.reciprocal(c, n), rtol=1e-12, atol=1e-14)


def test_backends_agree_power_columns(rng):
    h = _random_complex(rng, 48) * 0.5 ** np.arange(48)
    phi = _random_complex(rng, 48) * 0.6 ** np.arange(48)
    A = _accel.numpy_kernels.power_columns(h, phi, 48)
    B = _accel.numba_kernels.power_columns(h, phi, 48)
    assert np.allclose(A, B, rtol=0, atol=1e-12 * np.max(np.abs(A)))


def test_backends_agree_blaschke():
    t1, b1 = _accel.numpy_kernels.blaschke_terms(0.3 - 2j, 1000)
    t2, b2 = _accel.numba_kernels.blaschke_terms(0.3 - 2j, 1000)
    assert np.allclose(t1, t2, rtol=1e-14, atol=0)
    assert np.allclose(b1, b2, rtol=1e-14, atol=0)


def test_select_backend():
    assert _accel.select_backend("numpy") is _accel.numpy_kernels
    assert _accel.select_backend(" NUMBA ") is _accel.numba_kernels
    with pytest.raises(ValueError):
        _accel.select_backend("cuda")


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, COMPOP_BACKEND="numpy")
    out = subprocess.run(
        [sys.executable, "-c", "from compop._accel import kernels; print(kernels.name)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "numpy"
