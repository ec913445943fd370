"""Random symbol generators shared by the tests."""
import numpy as np

from compop.symbol import AffineSymbol


def displacement(s):
    """Pseudo-hyperbolic distance between 1 and phi(1)."""
    w = s(1.0)
    return abs(w - 1) / abs(w + 1)


def _log_uniform(rng, lo, hi):
    return float(np.exp(rng.uniform(np.log(lo), np.log(hi))))


def random_symbol(rng, regime):
    """One symbol from ``regime``.

    Regimes: "parabolic_auto", "hyperbolic_auto", "automorphism",
    "parabolic_non_auto", "self_adjoint", "type_I", "type_II", "hyperbolic_non_auto", "any".
    """
    if regime == "any":
        regime = rng.choice(["parabolic_auto", "hyperbolic_auto", "parabolic_non_auto", "type_I", "type_II"])
    if regime == "automorphism":
        regime = rng.choice(["parabolic_auto", "hyperbolic_auto"])
    if regime == "hyperbolic_non_auto":
        regime = rng.choice(["type_I", "type_II"])
    im = rng.uniform(-2, 2)
    re = rng.uniform(0.1, 2)
    if regime == "parabolic_auto":
        return AffineSymbol(1.0, complex(0.0, im))
    if regime == "hyperbolic_auto":
        a = _log_uniform(rng, 0.25, 4)
        return AffineSymbol(a if a != 1.0 else 2.0, complex(0.0, im))
    if regime == "parabolic_non_auto":
        return AffineSymbol(1.0, complex(re, im))
    if regime == "self_adjoint":
        return AffineSymbol(1.0, complex(rng.uniform(0, 3), 0.0))
    if regime == "type_I":
        return AffineSymbol(rng.uniform(0.25, 0.8), complex(rng.uniform(0.25, 2), im))
    if regime == "type_II":
        return AffineSymbol(rng.uniform(1.25, 4), complex(rng.uniform(0.25, 2), im))
    raise ValueError(regime)


def resolved_symbols(rng, regime, count, max_displacement=0.7):
    """``count`` symbols from ``regime`` whose displacement is at most ``max_displacement``."""
    out = []
    while len(out) < count:
        s = random_symbol(rng, regime)
        if displacement(s) <= max_displacement:
            out.append(s)
    return out
