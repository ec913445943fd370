"""Affine self-maps of the right half-plane and their exact classification.

An affine symbol ``phi(w) = a*w + b`` with ``a > 0`` and ``Re(b) >= 0``
induces a bounded composition operator on the Hardy space of the right
half-plane.  Everything here is closed-form: no truncation, no iteration.
"""
from __future__ import annotations

import cmath
import enum
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

# Parameters this close to a classification boundary (but not on it) trigger
# a NearBoundaryWarning; classification itself never snaps.
NEAR_BOUNDARY = 1e-12


class UnboundedSymbol(ValueError):
    """The map does not induce a bounded composition operator."""


class NearBoundaryWarning(UserWarning):
    """A parameter sits within NEAR_BOUNDARY of a classification boundary."""


@dataclass(frozen=True)
class AffineSymbol:
    """The map ``w -> a*w + b``."""

    a: float
    b: complex

    def __post_init__(self):
        try:
            a = float(self.a)
        except TypeError:
            raise UnboundedSymbol(f"dilation a must be real, got {self.a!r}") from None
        b = complex(self.b)
        if not (math.isfinite(a) and cmath.isfinite(b)):
            raise UnboundedSymbol(f"non-finite parameters a={self.a!r}, b={self.b!r}")
        if a <= 0:
            raise UnboundedSymbol(f"a must be > 0, got {a!r}")
        if b.real < 0:
            raise UnboundedSymbol(f"Re(b) must be >= 0, got {b.real!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __call__(self, w):
        return self.a * w + self.b

    def compose(self, inner: "AffineSymbol") -> "AffineSymbol":
        """Return ``self o inner``."""
        return AffineSymbol(self.a * inner.a, self.a * inner.b + self.b)

    @property
    def is_identity(self) -> bool:
        return self.a == 1.0 and self.b == 0

    @property
    def is_automorphism(self) -> bool:
        return self.b.real == 0.0

    def as_dict(self) -> dict:
        return {"a": self.a, "re_b": self.b.real, "im_b": self.b.imag}

    def __str__(self):
        return f"w -> {self.a!r}*w + ({self.b.real!r}{self.b.imag:+.17g}i)"


def make_symbol(a: float, b: complex) -> AffineSymbol:
    """Validate ``(a, b)`` and build the symbol; raises UnboundedSymbol."""
    return AffineSymbol(a, b)


class SymbolClass(enum.Enum):
    PARABOLIC_AUTOMORPHISM = "parabolic_automorphism"
    HYPERBOLIC_AUTOMORPHISM = "hyperbolic_automorphism"
    PARABOLIC_NON_AUTOMORPHISM = "parabolic_non_automorphism"
    HYPERBOLIC_TYPE_I = "hyperbolic_type_I"
    HYPERBOLIC_TYPE_II = "hyperbolic_type_II"


@dataclass(frozen=True)
class PropertyProfile:
    bounded: bool
    norm: float
    normal: bool
    self_adjoint: bool
    unitary: bool
    complex_symmetric: bool
    cyclic: bool
    hypercyclic: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def symbol_class(s: AffineSymbol) -> SymbolClass:
    a, re_b = s.a, s.b.real
    if re_b == 0.0:
        if a == 1.0:
            return SymbolClass.PARABOLIC_AUTOMORPHISM
        return SymbolClass.HYPERBOLIC_AUTOMORPHISM
    if a == 1.0:
        return SymbolClass.PARABOLIC_NON_AUTOMORPHISM
    if a < 1.0:
        return SymbolClass.HYPERBOLIC_TYPE_I
    return SymbolClass.HYPERBOLIC_TYPE_II


def classify(s: AffineSymbol) -> tuple[SymbolClass, PropertyProfile]:
    """Class of ``s`` and the predicted properties of its composition operator.

    Comparisons with ``a == 1`` and ``Re(b) == 0`` are exact.  Inputs within
    ``NEAR_BOUNDARY`` of either boundary emit a NearBoundaryWarning.
    """
    a, b = s.a, s.b
    if 0 < abs(a - 1.0) < NEAR_BOUNDARY or 0 < abs(b.real) < NEAR_BOUNDARY:
        warnings.warn(
            f"symbol {s} lies within {NEAR_BOUNDARY:g} of a classification "
            "boundary; classification uses the exact parameters",
            NearBoundaryWarning,
            stacklevel=2,
        )
    cls = symbol_class(s)
    parabolic = a == 1.0
    automorphism = b.real == 0.0
    normal = parabolic or automorphism
    profile = PropertyProfile(
        bounded=True,
        norm=math.sqrt(1.0 / a),
        normal=normal,
        self_adjoint=parabolic and b.imag == 0.0 and b.real >= 0.0,
        unitary=parabolic and automorphism,
        complex_symmetric=normal,
        cyclic=(not automorphism) and a >= 1.0,
        hypercyclic=False,
    )
    return cls, profile


def iterate(s: AffineSymbol, n: int) -> AffineSymbol:
    """The ``n``-th compositional iterate ``phi o ... o phi``."""
    if n < 0:
        raise ValueError(f"iterate count must be >= 0, got {n}")
    if s.a == 1.0:
        return AffineSymbol(1.0, n * s.b)
    an = s.a ** n
    return AffineSymbol(an, (1.0 - an) * s.b / (1.0 - s.a))


class FixedPoint(NamedTuple):
    value: Optional[complex]
    in_half_plane: bool
    identity: bool = False


def fixed_point(s: AffineSymbol) -> FixedPoint:
    """Finite fixed point of ``s``.

    ``value`` is None for translations (no finite fixed point) and for the
    identity (every point fixed; flagged with ``identity=True``).
    """
    if s.a == 1.0:
        if s.b == 0:
            return FixedPoint(None, False, identity=True)
        return FixedPoint(None, False)
    fp = s.b / (1.0 - s.a)
    return FixedPoint(fp, fp.real > 0)


def angular_derivative(s: AffineSymbol) -> float:
    """``lim w/phi(w)`` as ``w -> infinity``; the operator norm is its square root."""
    return 1.0 / s.a


def predicted_norm(s: AffineSymbol) -> float:
    return math.sqrt(angular_derivative(s))


class AdjointSymbol(NamedTuple):
    scale: float
    symbol: AffineSymbol


def adjoint_symbol(s: AffineSymbol) -> AdjointSymbol:
    """``(c, psi)`` with ``C_phi^* = c * C_psi``."""
    inv = 1.0 / s.a
    return AdjointSymbol(inv, AffineSymbol(inv, inv * s.b.conjugate()))


# --------------------------------------------------------------------------
# Cayley conjugation to the unit disk
# --------------------------------------------------------------------------

def cayley(z):
    """Disk to half-plane: ``(1+z)/(1-z)``."""
    return (1 + z) / (1 - z)


def cayley_inverse(w):
    """Half-plane to disk: ``(w-1)/(w+1)``."""
    return (w - 1) / (w + 1)


@dataclass(frozen=True)
class DiskModel:
    """Weighted composition data ``g -> weight * (g o phi_disk)`` on the disk.

    ``phi_disk(z) = (alpha*z + beta)/(gamma*z + delta)``.  Weight polynomials
    hold ascending coefficients.  Coefficients are not normalised.
    """

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    weight_num: np.ndarray
    weight_den: np.ndarray

    @property
    def determinant(self) -> complex:
        return self.alpha * self.delta - self.beta * self.gamma

    def phi(self, z):
        return (self.alpha * z + self.beta) / (self.gamma * z + self.delta)

    def weight(self, z):
        num = np.polynomial.polynomial.polyval(z, self.weight_num)
        den = np.polynomial.polynomial.polyval(z, self.weight_den)
        return num / den

    def weight_poles(self) -> np.ndarray:
        den = np.trim_zeros(np.asarray(self.weight_den, dtype=complex), "b")
        if den.size <= 1:
            return np.empty(0, dtype=complex)
        return np.polynomial.polynomial.polyroots(den)

    def check(self, n_points: int = 64, margin: float = 1e-12) -> None:
        """Spot-check the model invariants; raises ValueError on violation."""
        if self.determinant == 0:
            raise ValueError("degenerate linear fractional map (zero determinant)")
        poles = self.weight_poles()
        if poles.size and np.min(np.abs(poles)) <= 1.0:
            raise ValueError(f"weight has a pole in the closed disk: {poles}")
        rng = np.random.default_rng(0)
        radii = np.sqrt(rng.uniform(0.0, 0.999, n_points))
        z = radii * np.exp(2j * np.pi * rng.uniform(size=n_points))
        if np.max(np.abs(self.phi(z))) >= 1.0 - margin:
            raise ValueError("phi_disk does not map the sampled disk points into the disk")


def to_disk_model(s: AffineSymbol) -> DiskModel:
    """Conjugate ``C_phi`` by the Cayley unitary.

    ``phi_disk = cayley_inverse o phi o cayley`` and the weight is
    ``(1 + cayley(z)) / (1 + phi(cayley(z)))``.
    """
    a, b = complex(s.a), s.b
    return DiskModel(
        alpha=a - b + 1,
        beta=a + b - 1,
        gamma=a - b - 1,
        delta=a + b + 1,
        weight_num=np.array([2.0 + 0j]),
        weight_den=np.array([a + b + 1, a - b - 1]),
    )
