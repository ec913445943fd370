"""Truncated complex power series at the origin.

A :class:`PowerSeries` of order ``N`` holds the Taylor coefficients
``c_0 ... c_{N-1}``; higher coefficients are unknown, not zero.  Binary
operations between series of different orders truncate to the smaller one.
"""
from __future__ import annotations

import numpy as np

from ._accel import kernels


class DivisionBySingularSeries(ZeroDivisionError):
    pass


class PoleInsideDisk(ValueError):
    pass


class PowerSeries:
    """Truncated Taylor series ``sum c_m z**m``, ``m < order``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=np.complex128).ravel()
        if c.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def monomial(cls, k: int, order: int) -> "PowerSeries":
        c = np.zeros(order, dtype=np.complex128)
        if k < order:
            c[k] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order: int) -> "PowerSeries":
        c = np.zeros(order, dtype=np.complex128)
        c[0] = value
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size

    def __len__(self):
        return self._c.size

    def __getitem__(self, i):
        return self._c[i]

    def __repr__(self):
        return f"PowerSeries({self._c!r})"

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self._c[:order])

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        if np.isscalar(other):
            return PowerSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return series_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c * other)
        if isinstance(other, PowerSeries):
            return series_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return PowerSeries(self._c / other)
        if isinstance(other, PowerSeries):
            return series_mul(self, series_recip(other))
        return NotImplemented

    def __call__(self, z):
        """Evaluate the truncated polynomial (Horner)."""
        return np.polynomial.polynomial.polyval(z, self._c)

    def allclose(self, other, atol=1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.allclose(self._c[:n], other.coeffs[:n], rtol=0, atol=atol))


def series_add(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    n = min(p.order, q.order)
    return PowerSeries(p.coeffs[:n] + q.coeffs[:n])


def series_mul(p: PowerSeries, q: PowerSeries) -> PowerSeries:
    """Cauchy product truncated to the smaller order."""
    return PowerSeries(kernels.cauchy_product(p.coeffs, q.coeffs))


def series_recip(p: PowerSeries, order: int | None = None) -> PowerSeries:
    """``1/p`` by the triangular recurrence on the coefficients.

    ``order`` defaults to ``p.order``; a longer order treats the missing
    coefficients of ``p`` as zero (useful for polynomial denominators).
    """
    c = p.coeffs
    if c[0] == 0:
        raise DivisionBySingularSeries("constant term is zero")
    n = p.order if order is None else order
    return PowerSeries(kernels.reciprocal(np.ascontiguousarray(c), n))


def lft_series(alpha, beta, gamma, delta, order: int) -> PowerSeries:
    """Taylor series of ``(alpha*z + beta)/(gamma*z + delta)``."""
    alpha, beta, gamma, delta = (complex(x) for x in (alpha, beta, gamma, delta))
    if delta == 0:
        raise PoleInsideDisk("pole at the origin (delta == 0)")
    if gamma != 0 and abs(delta / gamma) <= 1.0:
        raise PoleInsideDisk(f"pole at {-delta / gamma} lies in the closed unit disk")
    den = series_recip(PowerSeries([delta, gamma]), order)
    num = np.zeros(order, dtype=np.complex128)
    num[0] = beta
    if order > 1:
        num[1] = alpha
    return series_mul(PowerSeries(num), den)


def taylor_via_sampling(f, radius: float, order: int, samples: int | None = None) -> PowerSeries:
    """Taylor coefficients of ``f`` from its values on ``|z| = radius``.

    Discrete Fourier inversion with ``samples`` equispaced points (default
    ``8*order``, at least ``4*order``).  ``f`` must be analytic on the closed
    disk of that radius and accept a complex ndarray.  Aliasing error is about
    ``|c_{m+M}| r**M`` and round-off grows like ``r**-m``, so accuracy drops
    for the last coefficients when ``radius`` is small.
    """
    if not 0 < radius < 1:
        raise ValueError(f"sampling radius must lie in (0, 1), got {radius}")
    m_samples = 8 * order if samples is None else samples
    if m_samples < 4 * order:
        raise ValueError(f"need at least {4 * order} samples, got {m_samples}")
    nodes = radius * np.exp(2j * np.pi * np.arange(m_samples) / m_samples)
    values = np.asarray(f(nodes), dtype=np.complex128)
    c = np.fft.fft(values)[:order] / m_samples
    c /= radius ** np.arange(order)
    return PowerSeries(c)
