"""Hot numerical kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time from the ``COMPOP_BACKEND``
environment variable (``numba`` by default, ``numpy`` to force the
fallback).  If numba cannot be imported the numpy path is used silently.

Both implementations are always importable as ``numpy_kernels`` and
``numba_kernels`` (the latter is ``None`` without numba) so tests and the
benchmark can compare them directly.
"""
import os
from types import SimpleNamespace

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None


# --------------------------------------------------------------------------
# pure numpy
# --------------------------------------------------------------------------

def _np_cauchy_product(p, q):
    n = min(p.shape[0], q.shape[0])
    return np.convolve(p[:n], q[:n])[:n]


def _np_reciprocal(c, n):
    q = np.zeros(n, dtype=np.complex128)
    inv0 = 1.0 / c[0]
    q[0] = inv0
    deg = c.shape[0] - 1
    for m in range(1, n):
        k = min(m, deg)
        # sum_{j=1..k} c_j q_{m-j}
        q[m] = -inv0 * np.dot(c[1:k + 1], q[m - 1::-1][:k])
    return q


def _np_power_columns(h, phi, n):
    out = np.empty((n, n), dtype=np.complex128)
    col = h[:n].copy()
    for k in range(n):
        out[:, k] = col
        col = np.convolve(col, phi[:n])[:n]
    return out


def _np_blaschke_terms(b, n_max):
    n = np.arange(1, n_max + 1, dtype=np.float64)
    bn = 1.0 + n * np.conj(b)
    terms = bn.real / (1.0 + bn.real ** 2 + bn.imag ** 2)
    const = b.real / (2.0 * (1.0 + abs(b)) ** 2)
    bounds = const / n
    return terms, bounds


numpy_kernels = SimpleNamespace(
    name="numpy",
    cauchy_product=_np_cauchy_product,
    reciprocal=_np_reciprocal,
    power_columns=_np_power_columns,
    blaschke_terms=_np_blaschke_terms,
)


# --------------------------------------------------------------------------
# numba
# --------------------------------------------------------------------------

def _nb_cauchy_product(p, q):
    n = min(p.shape[0], q.shape[0])
    out = np.zeros(n, dtype=np.complex128)
    for m in range(n):
        s = 0j
        for k in range(m + 1):
            s += p[k] * q[m - k]
        out[m] = s
    return out


def _nb_reciprocal(c, n):
    q = np.zeros(n, dtype=np.complex128)
    inv0 = 1.0 / c[0]
    q[0] = inv0
    deg = c.shape[0] - 1
    for m in range(1, n):
        s = 0j
        for k in range(1, min(m, deg) + 1):
            s += c[k] * q[m - k]
        q[m] = -inv0 * s
    return q


def _nb_power_columns(h, phi, n):
    # build transposed so each recurrence step reads and writes contiguous rows
    cols = np.zeros((n, n), dtype=np.complex128)
    for m in range(n):
        cols[0, m] = h[m]
    for k in range(1, n):
        prev = cols[k - 1]
        for m in range(n):
            s = 0j
            for j in range(m + 1):
                s += prev[j] * phi[m - j]
            cols[k, m] = s
    return np.ascontiguousarray(cols.T)


def _nb_blaschke_terms(b, n_max):
    terms = np.empty(n_max, dtype=np.float64)
    bounds = np.empty(n_max, dtype=np.float64)
    br = b.real
    bi = -b.imag
    const = br / (2.0 * (1.0 + abs(b)) ** 2)
    for i in range(n_max):
        n = i + 1.0
        re = 1.0 + n * br
        im = n * bi
        terms[i] = re / (1.0 + re * re + im * im)
        bounds[i] = const / n
    return terms, bounds


if numba is not None:
    _jit = numba.njit(cache=True, nogil=True)
    numba_kernels = SimpleNamespace(
        name="numba",
        cauchy_product=_jit(_nb_cauchy_product),
        reciprocal=_jit(_nb_reciprocal),
        power_columns=_jit(_nb_power_columns),
        blaschke_terms=_jit(_nb_blaschke_terms),
    )
else:  # pragma: no cover
    numba_kernels = None


def select_backend(name=None):
    """Return the kernel namespace for ``name`` (or the env default)."""
    if name is None:
        name = os.environ.get("COMPOP_BACKEND", "numba")
    name = name.strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")
    if name == "numba" and numba_kernels is not None:
        return numba_kernels
    return numpy_kernels


kernels = select_backend()
