import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from compop import rkhs
from compop.series import (
    DivisionBySingularSeries,
    PoleInsideDisk,
    PowerSeries,
    lft_series,
    series_add,
    series_mul,
    series_recip,
    taylor_via_sampling,
)
from compop.symbol import make_symbol, to_disk_model

finite = st.floats(-2, 2, allow_nan=False, allow_infinity=False)
complexes = st.builds(complex, finite, finite)


def coeff_arrays(max_order=64):
    return st.integers(1, max_order).flatmap(
        lambda n: hnp.arrays(np.complex128, n, elements=complexes)
    )


def test_mul_examples():
    p = PowerSeries([1, 1, 0, 0])
    q = PowerSeries([1, -1, 0, 0])
    assert np.array_equal((p * q).coeffs, [1, 0, -1, 0])
    r = PowerSeries([0.3, 2j, -1, 5])
    assert np.array_equal((r * PowerSeries.constant(1, 4)).coeffs, r.coeffs)
    geom = PowerSeries(np.ones(8))
    assert np.array_equal(series_mul(geom, PowerSeries([1, -1] + [0] * 6)).coeffs, [1, 0, 0, 0, 0, 0, 0, 0])


def test_mixed_orders_truncate():
    p = PowerSeries([1, 2, 3, 4, 5])
    q = PowerSeries([1, 1])
    assert (p + q).order == 2
    assert (p * q).order == 2
    assert series_add(p, q).coeffs.tolist() == [2, 3]


def test_scalar_arithmetic():
    p = PowerSeries([1, 2])
    assert (p + 1).coeffs.tolist() == [2, 2]
    assert (1 - p).coeffs.tolist() == [0, -2]
    assert (2 * p).coeffs.tolist() == [2, 4]
    assert (p / 2).coeffs.tolist() == [0.5, 1]
    assert p(0.5) == 2


def test_power_series_is_read_only():
    p = PowerSeries([1, 2])
    with pytest.raises(ValueError):
        p.coeffs[0] = 3


def test_recip_examples():
    assert np.allclose(series_recip(PowerSeries([1, -1, 0, 0, 0])).coeffs, np.ones(5), atol=0)
    assert np.array_equal(series_recip(PowerSeries([2, -1]), 3).coeffs, [0.5, 0.25, 0.125])
    with pytest.raises(DivisionBySingularSeries):
        series_recip(PowerSeries([0, 1]))


@given(coeff_arrays(), st.floats(0.5, 3), st.floats(0, 2 * math.pi))
def test_recip_roundtrip(c, c0_mod, c0_arg):
    # |c_0| >= 0.5 and sum_{k>=1} |c_k| <= |c_0|/2, so 1/p stays analytic past the unit circle
    c = c.copy()
    c[0] = c0_mod * complex(math.cos(c0_arg), math.sin(c0_arg))
    tail = np.sum(np.abs(c[1:]))
    if tail > c0_mod / 2:
        c[1:] *= (c0_mod / 2) / tail
    p = PowerSeries(c)
    back = series_recip(series_recip(p))
    assert np.max(np.abs(back.coeffs - p.coeffs)) < 1e-12


@given(st.integers(2, 256), st.floats(1.2, 5), st.floats(0, 2 * math.pi), st.floats(0.1, 3))
@settings(max_examples=50)
def test_recip_residual_for_outside_roots(n, root_mod, theta, scale):
    # denominator scale*(1 - z/root), root outside |z| >= 1.2
    root = root_mod * complex(math.cos(theta), math.sin(theta))
    p = PowerSeries([scale, -scale / root])
    q = series_recip(p, n)
    prod = series_mul(PowerSeries(np.r_[p.coeffs, np.zeros(n - 2)]), q)
    expected = np.zeros(n)
    expected[0] = 1
    assert np.max(np.abs(prod.coeffs - expected)) < 1e-11


@given(coeff_arrays(256), coeff_arrays(256), coeff_arrays(256))
@settings(max_examples=40)
def test_mul_commutative_associative(a, b, c):
    p, q, r = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert np.max(np.abs((p * q).coeffs - (q * p).coeffs), initial=0) < 1e-13
    lhs = ((p * q) * r).coeffs
    rhs = (p * (q * r)).coeffs
    scale = max(1.0, np.max(np.abs(lhs), initial=0))
    assert np.max(np.abs(lhs - rhs), initial=0) < 1e-13 * scale * 256


def test_lft_series_examples():
    assert np.array_equal(lft_series(1, 0, 0, 1, 4).coeffs, [0, 1, 0, 0])
    assert np.allclose(lft_series(0, 2, -2, 4, 3).coeffs, [0.5, 0.25, 0.125], atol=0)
    with pytest.raises(PoleInsideDisk):
        lft_series(1, 0, 2, 1, 4)
    with pytest.raises(PoleInsideDisk):
        lft_series(1, 1, 1, 0, 4)


def test_lft_series_direct_evaluation(rng):
    for _ in range(30):
        gamma = complex(*rng.normal(size=2))
        pole_mod = rng.uniform(1.3, 4)
        delta = -gamma * pole_mod * np.exp(1j * rng.uniform(0, 2 * np.pi))
        alpha, beta = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        s = lft_series(alpha, beta, gamma, delta, 64)
        z = 0.2
        assert abs(s(z) - (alpha * z + beta) / (gamma * z + delta)) < 1e-9


def test_sampling_examples():
    c = taylor_via_sampling(lambda z: z ** 2, 0.5, 4).coeffs
    assert np.allclose(c, [0, 0, 1, 0], atol=1e-10)
    c = taylor_via_sampling(lambda z: 1 / (2 - z), 0.9, 8).coeffs
    assert np.allclose(c, series_recip(PowerSeries([2, -1]), 8).coeffs, atol=1e-8)
    c = taylor_via_sampling(np.exp, 0.5, 12).coeffs
    assert np.allclose(c, [1 / math.factorial(m) for m in range(12)], atol=1e-10)


def test_sampling_argument_checks():
    with pytest.raises(ValueError):
        taylor_via_sampling(np.exp, 1.0, 4)
    with pytest.raises(ValueError):
        taylor_via_sampling(np.exp, 0.5, 4, samples=8)


@pytest.mark.parametrize("a,b", [(1, 0), (2, 1), (0.5, 1 + 1j), (1, 2j), (4, 0), (1, 1 + 3j)])
def test_sampling_cross_validates_matrix_recurrences(a, b):
    """Columns h*Phi**n built by recurrences agree with sampled Taylor coefficients."""
    s = make_symbol(a, b)
    m = to_disk_model(s)
    N = 64
    A = rkhs.assemble_matrix(s, N).matrix
    for n in (0, 1, 5, 17):
        sampled = taylor_via_sampling(lambda z: m.weight(z) * m.phi(z) ** n, 0.95, N).coeffs
        assert np.max(np.abs(sampled - A[:, n])) < 1e-9
    assert np.max(np.abs(taylor_via_sampling(m.phi, 0.95, N).coeffs
                         - lft_series(m.alpha, m.beta, m.gamma, m.delta, N).coeffs)) < 1e-10
