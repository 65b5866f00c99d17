import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lambdavar import (CoeffTensor, cubical_partial_sum, dirichlet_kernel, f_star, fourier_coefficients,
                       rectangular_partial_sum)
from lambdavar import sources
from lambdavar.fourier import FourierError, directional_limit, partial_sum_table
from lambdavar.grid import FunctionSource


def test_constant_coefficients():
    c = fourier_coefficients(sources.constant(2, 1.0), 4)
    assert c[(0, 0)] == pytest.approx(1.0, abs=1e-15)
    mask = np.ones(c.coeffs.shape, bool)
    mask[4, 4] = False
    assert np.max(np.abs(c.coeffs[mask])) <= 1e-12


def test_cosine_coefficients():
    src = FunctionSource(lambda x, y: np.cos(x), 2)
    c = fourier_coefficients(src, 3)
    assert c[(1, 0)] == pytest.approx(0.5, abs=1e-14)
    assert c[(-1, 0)] == pytest.approx(0.5, abs=1e-14)
    assert abs(c[(0, 0)]) < 1e-14 and abs(c[(1, 1)]) < 1e-14


def test_coefficients_against_riemann_oracle():
    f = lambda x: np.exp(np.sin(x)) + (x > 1.0) * (x < 2.5)
    src = FunctionSource(f, 1)
    c = fourier_coefficients(src, 5, M=4096)
    for n in range(-5, 6):
        assert c[(n,)] == pytest.approx(oracles.fourier_coefficient_1d(f, n, 4096), abs=1e-13)


def test_undersampling_rejected():
    with pytest.raises(FourierError):
        fourier_coefficients(sources.square_wave(), 8, M=20)


def test_hermitian_symmetry_and_json(tmp_path):
    c = fourier_coefficients(sources.smooth_bump(2), 6)
    assert c.hermitian_defect() <= 1e-14
    p = tmp_path / "c.json"
    c.dump(p)
    import json
    back = CoeffTensor.from_json(json.loads(p.read_text()))
    np.testing.assert_array_equal(back.coeffs, c.coeffs)
    assert back.N == (6, 6)


@settings(max_examples=25, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(a, b):
    s1, s2 = sources.smooth_bump(2), sources.sin_product(2)
    combo = FunctionSource(lambda x, y: a * s1.evaluator(x, y) + b * s2.evaluator(x, y), 2)
    c1, c2, c = (fourier_coefficients(s, 4) for s in (s1, s2, combo))
    np.testing.assert_allclose(c.coeffs, a * c1.coeffs + b * c2.coeffs, atol=1e-12)


def test_parseval_smooth():
    src = sources.smooth_bump(2)
    c = fourier_coefficients(src, 24)
    x = 2 * np.pi * np.arange(256) / 256
    X, Y = np.meshgrid(x, x, indexing="ij")
    energy = np.mean(src(X, Y) ** 2)
    assert np.sum(np.abs(c.coeffs) ** 2) == pytest.approx(energy, rel=1e-12)


def test_dirichlet_kernel_values():
    assert dirichlet_kernel(7, 0.0) == 7.5
    assert dirichlet_kernel(7, 2 * np.pi) == 7.5
    assert dirichlet_kernel(4, np.pi) == pytest.approx(0.5, abs=1e-14)
    assert dirichlet_kernel(5, np.pi) == pytest.approx(-0.5, abs=1e-14)
    u = np.linspace(0.1, 3.0, 7)
    direct = 0.5 + sum(np.cos(k * u) for k in range(1, 9))
    np.testing.assert_allclose(dirichlet_kernel(8, u), direct, atol=1e-13)


def test_dirichlet_kernel_integral():
    for N in (1, 5, 20):
        M = 4096
        u = 2 * np.pi * np.arange(M) / M - np.pi
        assert np.sum(dirichlet_kernel(N, u)) * 2 * np.pi / M == pytest.approx(np.pi, abs=1e-10)


def test_constant_partial_sums():
    c = fourier_coefficients(sources.constant(2, 1.0), 8)
    for N in ((0, 0), (3, 8), (8, 8)):
        assert rectangular_partial_sum(c, N, (0.3, 5.0)) == pytest.approx(1.0, abs=1e-13)


@pytest.mark.parametrize("N", [16, 32, 64, 128, 256])
def test_square_wave_at_jumps(N):
    c = fourier_coefficients(sources.square_wave(), N)
    assert abs(rectangular_partial_sum(c, N, (0.0,))) <= 1e-10
    assert abs(rectangular_partial_sum(c, N, (np.pi,))) <= 1e-10


def test_square_wave_interior():
    c = fourier_coefficients(sources.square_wave(), 256)
    assert abs(rectangular_partial_sum(c, 256, (np.pi / 2,)) - 1.0) <= 2e-2
    x = np.pi / 2
    series = 4 / np.pi * sum(np.sin((2 * k + 1) * x) / (2 * k + 1) for k in range(128))
    assert rectangular_partial_sum(c, 256, (x,)) == pytest.approx(series, abs=1e-3)


def test_partial_sum_against_direct_lattice_sum():
    c = fourier_coefficients(sources.quadrant_jump(2, extent=(2.0, 2.5)), 6)
    x = (0.4, 1.3)
    direct = sum(c[(n1, n2)] * np.exp(1j * (n1 * x[0] + n2 * x[1]))
                 for n1 in range(-3, 4) for n2 in range(-5, 6))
    assert rectangular_partial_sum(c, (3, 5), x) == pytest.approx(direct.real, abs=1e-14)
    tab = partial_sum_table(c, [2, 6], x)
    assert tab[0, 1] == rectangular_partial_sum(c, (2, 6), x)
    assert cubical_partial_sum(c, 6, x) == tab[1, 1]


def test_directional_limits_quadrant():
    src = sources.quadrant_jump(2)
    rep = f_star(src, (0.0, 0.0))
    assert rep.regular
    assert rep.limits[(1, 1)][0] == 1.0
    for delta in ((1, -1), (-1, 1), (-1, -1)):
        assert rep.limits[delta][0] == 0.0
    assert rep.f_star == 0.25


def test_directional_limits_sign_sine():
    src = FunctionSource(lambda x, y: np.sign(np.sin(x)), 2)
    assert directional_limit(src, (np.pi, 1.0), (1, 1))[0] == -1.0
    assert directional_limit(src, (np.pi, 1.0), (-1, 1))[0] == 1.0
    assert f_star(sources.square_wave(), (np.pi,)).f_star == 0.0


def test_continuous_point_value():
    src = sources.smooth_bump(2)
    rep = f_star(src, (1.0, 2.0))
    assert rep.regular
    assert rep.f_star == pytest.approx(src.at((1.0, 2.0)), abs=1e-6)
