import math
from fractions import Fraction

import numpy as np
import pytest

from bestshot.numerics import (
    BracketError,
    GAUSS_ORDER,
    IntegrationError,
    find_root_monotone,
    integrate_1d,
    integrate_triangle,
    integrate_triangle_u2_outer,
)


def test_integrate_1d_examples():
    assert integrate_1d(lambda u: np.ones_like(u), 0.0, 1.0) == pytest.approx(
        1.0, abs=1e-13
    )
    assert integrate_1d(lambda u: u**3, 0.0, 1.0) == pytest.approx(0.25, abs=1e-13)
    assert integrate_1d(lambda u: u**3 * (1 - u**2), 0.0, 1.0) == pytest.approx(
        1.0 / 12.0, abs=1e-13
    )


def test_integrate_1d_empty_and_invalid():
    assert integrate_1d(lambda u: u, 0.3, 0.3) == 0.0
    with pytest.raises(ValueError):
        integrate_1d(lambda u: u, 1.0, 0.0)


def test_integrate_1d_nonsmooth_adaptive():
    # kink forces refinement; exact value 2 * (1/2)**2 / 2 = 0.25
    val = integrate_1d(lambda u: np.abs(u - 0.5), 0.0, 1.0)
    assert val == pytest.approx(0.25, rel=1e-10)


def test_integrate_1d_log_endpoint_singularity():
    val = integrate_1d(lambda u: -np.log1p(-u), 0.0, 1.0 - 1e-15)
    assert val == pytest.approx(1.0, rel=1e-9)


def test_integrate_1d_rejects_nonfinite():
    with np.errstate(invalid="ignore"):
        with pytest.raises(IntegrationError):
            integrate_1d(lambda u: np.sqrt(u - 0.5), 0.0, 1.0)  # NaN below 0.5


def test_triangle_examples():
    assert integrate_triangle(lambda u1, u2: np.ones_like(u2), 0.0) == pytest.approx(
        0.5, abs=1e-13
    )
    assert integrate_triangle(lambda u1, u2: np.ones_like(u2), 0.4) == pytest.approx(
        0.18, abs=1e-13
    )
    assert integrate_triangle(lambda u1, u2: u1 * u2, 0.0) == pytest.approx(
        0.125, abs=1e-13
    )


def test_triangle_orientations_agree():
    def g(u1, u2):
        return np.asarray(u1) ** 2 * np.sqrt(np.asarray(u2) + 0.1)

    a = integrate_triangle(g, 0.2)
    b = integrate_triangle_u2_outer(g, 0.2)
    assert a == pytest.approx(b, rel=1e-11)


@pytest.mark.parametrize("a,b", [(0, 0), (3, 2), (10, 7), (31, 31), (40, 20)])
def test_triangle_polynomial_exactness(a, b):
    # int_0^1 int_0^{u1} u1^a u2^b du2 du1 = 1 / ((b+1)(a+b+2))
    exact = float(Fraction(1, (b + 1) * (a + b + 2)))
    for tri in (integrate_triangle, integrate_triangle_u2_outer):
        got = tri(lambda u1, u2: u1**a * u2**b, 0.0)
        assert abs(got - exact) <= 1e-13


def test_triangle_outer_lo_restriction():
    # int_{0.5}^{1} du1 int_{0}^{u1} du2 1 = 0.375
    val = integrate_triangle(lambda u1, u2: np.ones_like(u2), 0.0, outer_lo=0.5)
    assert val == pytest.approx(0.375, abs=1e-13)
    with pytest.raises(ValueError):
        integrate_triangle(lambda u1, u2: u2, 0.5, outer_lo=0.2)


def test_gauss_order_is_32():
    assert GAUSS_ORDER == 32


def test_find_root_examples():
    assert find_root_monotone(lambda x: x * x - 0.25, 0.0, 1.0) == pytest.approx(
        0.5, abs=5e-12
    )
    # ND cutoff equation for uniform, n=2, m=2, omega=0.4
    root = find_root_monotone(lambda x: x + 2 * x**4 - 1.2, 0.0, 1.0)
    assert root == pytest.approx(0.705245039807982168, abs=5e-12)
    with pytest.raises(BracketError):
        find_root_monotone(lambda x: x - 0.4, 0.5, 1.0)
    with pytest.raises(BracketError):
        find_root_monotone(lambda x: x - 1.4, 0.0, 1.0)


def test_find_root_endpoint_roots():
    assert find_root_monotone(lambda x: x, 0.0, 1.0) == 0.0
    assert find_root_monotone(lambda x: x - 1.0, 0.999999999999, 1.0) == pytest.approx(
        1.0, abs=1e-11
    )


def test_find_root_deterministic_bits():
    def h(x):
        return math.tanh(3.0 * (x - 0.3127)) + 0.05 * x

    runs = {find_root_monotone(h, 0.0, 1.0) for _ in range(5)}
    assert len(runs) == 1


def test_find_root_tolerance_scales():
    root = find_root_monotone(lambda x: x**3 - 0.2, 0.0, 1.0, tol=1e-6)
    assert abs(root - 0.2 ** (1.0 / 3.0)) <= 1e-6
