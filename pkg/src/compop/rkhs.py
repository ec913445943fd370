"""Hardy space of the right half-plane: basis, kernels and truncated matrices.

Inner product: ``<f, g> = (1/2pi) * integral f(iy) conj(g(iy)) dy``.  Under
this normalisation ``k_alpha(w) = 1/(w + conj(alpha))`` reproduces point
values and ``||k_alpha||^2 = 1/(2 Re alpha)``.

Orthonormal basis (Cayley image of the disk monomials)::

    e_n(w) = sqrt(2) * (w - 1)**n / (w + 1)**(n + 1)

Matrix convention: ``A[m, n] = <C_phi e_n, e_m>``.  Column ``n`` is the
coefficient vector of ``C_phi e_n``, so ``A @ v`` is the coefficient vector
of ``C_phi f`` when ``v`` is that of ``f``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ._accel import kernels
from .series import lft_series, taylor_via_sampling
from .symbol import AffineSymbol, cayley, to_disk_model

BASIS_SCALE = math.sqrt(2.0)


class PointNotInHalfPlane(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def _require_half_plane(w, closed=False):
    re = np.real(w)
    if np.any(re < 0) if closed else np.any(re <= 0):
        raise PointNotInHalfPlane(f"point(s) outside the open right half-plane: {w}")


def eval_basis(n: int, w, boundary: bool = False):
    """``e_n(w)``, by repeated multiplication with ``(w-1)/(w+1)``.

    ``boundary=True`` also admits points on the imaginary axis (boundary values).
    """
    w = np.asarray(w, dtype=np.complex128)
    _require_half_plane(w, closed=boundary)
    ratio = (w - 1) / (w + 1)
    val = BASIS_SCALE / (w + 1)
    for _ in range(n):
        val = val * ratio
    return val[()] if val.ndim == 0 else val


def basis_values(N: int, w) -> np.ndarray:
    """``[e_0(w), ..., e_{N-1}(w)]`` along the last axis."""
    w = np.asarray(w, dtype=np.complex128)
    _require_half_plane(w)
    ratio = (w - 1) / (w + 1)
    powers = ratio[..., None] ** np.arange(N)
    return (BASIS_SCALE / (w + 1))[..., None] * powers


def kernel(alpha, w):
    """Reproducing kernel ``k_alpha(w) = 1/(w + conj(alpha))``."""
    return 1.0 / (w + np.conj(alpha))


@dataclass(frozen=True)
class KernelVector:
    alpha: complex
    coeffs: np.ndarray

    @property
    def size(self) -> int:
        return self.coeffs.size

    def partial_norms(self) -> np.ndarray:
        """Partial sums of ``|c_n|^2``; they increase to ``1/(2 Re alpha)``."""
        return np.cumsum(np.abs(self.coeffs) ** 2)

    def evaluate(self, w):
        return basis_values(self.size, w) @ self.coeffs


def kernel_vector(alpha: complex, N: int) -> KernelVector:
    """First ``N`` basis coefficients ``conj(e_n(alpha))`` of ``k_alpha``."""
    alpha = complex(alpha)
    if alpha.real <= 0:
        raise PointNotInHalfPlane(f"Re(alpha) must be > 0, got {alpha}")
    c = np.conj(basis_values(N, alpha))
    c.setflags(write=False)
    return KernelVector(alpha, c)


def inner(u, v) -> complex:
    """``<u, v>`` on coefficient vectors (linear in ``u``).

    Vectors of different lengths are compared on their common prefix; the
    missing coefficients are zero.
    """
    n = min(len(u), len(v))
    return complex(np.vdot(v[:n], u[:n]))


def hardy_coefficients(f, N: int, radius: float = 0.95, samples: int | None = None) -> np.ndarray:
    """Basis coefficients of ``f`` via the Cayley pullback to the disk.

    The pullback is ``sqrt(2) * f(cayley(z)) / (1 - z)``; its Taylor
    coefficients are the coordinates of ``f`` in the basis ``e_n``.
    """

    def pullback(z):
        return BASIS_SCALE * f(cayley(z)) / (1 - z)

    return taylor_via_sampling(pullback, radius, N, samples).coeffs


@dataclass(frozen=True)
class TruncatedOperator:
    """Compression of ``C_phi`` to ``span(e_0, ..., e_{N-1})``."""

    symbol: AffineSymbol
    matrix: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> np.ndarray:
        """Compression of the adjoint."""
        return self.matrix.conj().T

    def apply(self, v) -> np.ndarray:
        return apply(self, v)

    def norm(self) -> float:
        return operator_norm(self)


def assemble_matrix(s: AffineSymbol, N: int) -> TruncatedOperator:
    """N x N matrix of ``C_phi``; column ``n`` holds the coefficients of ``h * Phi**n``."""
    if N < 1:
        raise ValueError(f"matrix size must be >= 1, got {N}")
    model = to_disk_model(s)
    phi = lft_series(model.alpha, model.beta, model.gamma, model.delta, N)
    h = lft_series(0, 2, model.gamma, model.delta, N)
    A = kernels.power_columns(np.ascontiguousarray(h.coeffs), np.ascontiguousarray(phi.coeffs), N)
    A.setflags(write=False)
    return TruncatedOperator(s, A)


def operator_norm(T: TruncatedOperator) -> float:
    """Largest singular value of the truncation."""
    return float(np.linalg.norm(T.matrix, 2))


def apply(T: TruncatedOperator, v) -> np.ndarray:
    v = np.asarray(v)
    if v.shape != (T.size,):
        raise DimensionMismatch(f"expected a vector of length {T.size}, got shape {v.shape}")
    return T.matrix @ v


# --------------------------------------------------------------------------
# boundary quadrature (independent check of the basis normalisation)
# --------------------------------------------------------------------------

_PANELS = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 64.0, 256.0, 1024.0, 4096.0)


def boundary_inner_product(f, g, cutoff: float = 1e4) -> complex:
    """``(1/2pi) * integral f(iy) conj(g(iy)) dy`` by adaptive quadrature.

    Panels cover ``|y| <= cutoff``; each tail beyond it is estimated as
    ``cutoff * F(+-cutoff)``, exact to leading order for integrands decaying
    like ``1/y**2``.
    """

    def integrand(y):
        return f(1j * y) * np.conj(g(1j * y))

    edges = [p for p in _PANELS if p < cutoff] + [cutoff]
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        for sign in (1.0, -1.0):
            re, _ = integrate.quad(lambda y: (integrand(sign * y)).real, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-12)
            im, _ = integrate.quad(lambda y: (integrand(sign * y)).imag, lo, hi, limit=200, epsabs=1e-13, epsrel=1e-12)
            total += re + 1j * im
    total += cutoff * (integrand(cutoff) + integrand(-cutoff))
    return complex(total / (2 * math.pi))


# --------------------------------------------------------------------------
# export
# --------------------------------------------------------------------------

def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def matrix_to_csv(T: TruncatedOperator) -> str:
    """Row-major CSV; each row lists ``re,im`` pairs for its N entries."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in T.matrix:
        cells = []
        for z in row:
            cells.extend((_fmt(z.real), _fmt(z.imag)))
        writer.writerow(cells)
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    vals = np.array([[float(x) for x in r] for r in rows])
    return vals[:, 0::2] + 1j * vals[:, 1::2]


def matrix_to_json(T: TruncatedOperator) -> str:
    doc = {
        "symbol": T.symbol.as_dict(),
        "N": T.size,
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in T.matrix],
    }
    return json.dumps(doc)


def matrix_from_json(text: str) -> TruncatedOperator:
    doc = json.loads(text)
    sym = doc["symbol"]
    entries = np.array(doc["entries"], dtype=float)
    if entries.shape != (doc["N"], doc["N"], 2):
        raise DimensionMismatch(f"entries shape {entries.shape} does not match N={doc['N']}")
    A = entries[..., 0] + 1j * entries[..., 1]
    return TruncatedOperator(AffineSymbol(sym["a"], complex(sym["re_b"], sym["im_b"])), A)
