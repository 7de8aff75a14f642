"""Graded-grid quadrature and the discrete operator chain."""

import math

import numpy as np
import pytest

from nlfrac import (
    DerivativeSpec,
    GradedGrid,
    ParameterOutOfRangeError,
    SampledFunction,
    default_grading_exponent,
    derivative_grid,
    laplace_numeric,
    nth_level_derivative_grid,
    quadrature_matrix,
    read_xy,
    rl_integral_grid,
    write_csv,
)

from conftest import TRULY_2L


def _sample(grid, fn, sigma=None):
    return SampledFunction(grid, fn(grid.nodes), singular_exponent=sigma)


def test_grid_nodes_shape_and_monotonicity():
    g = GradedGrid(5.0, 256, 3.0)
    assert g.nodes.shape == (256,)
    assert g.nodes[-1] == pytest.approx(5.0)
    assert np.all(np.diff(g.nodes) > 0)
    assert np.all(g.nodes > 0)


def test_uniform_grid_when_r_is_one():
    g = GradedGrid(1.0, 100, 1.0)
    assert np.allclose(np.diff(g.nodes), g.nodes[0])


def test_grid_validation():
    with pytest.raises(ParameterOutOfRangeError):
        GradedGrid(-1.0, 100)
    with pytest.raises(ParameterOutOfRangeError):
        GradedGrid(1.0, 0)
    with pytest.raises(ParameterOutOfRangeError):
        GradedGrid(1.0, 100, r=0.5)


def test_default_grading_clamps():
    assert default_grading_exponent(TRULY_2L) == pytest.approx(2.0 / 0.6)
    # strongly singular solution: 2 / 0.2 = 10 hits the cap
    assert default_grading_exponent(DerivativeSpec(1, 0.2, (0.0,))) == 6.0
    caputo = DerivativeSpec(1, 0.5, (0.5,))
    assert default_grading_exponent(caputo) == 2.0


def test_integral_of_smooth_power():
    # relative error at the first few graded nodes is dominated by
    # interpolating sqrt(x) linearly across [0, x_1]; judge the interior
    g = GradedGrid(2.0, 4096, 2.0)
    out = rl_integral_grid(0.5, _sample(g, lambda x: np.sqrt(x)))
    want = math.gamma(1.5) / math.gamma(2.0) * g.nodes
    err = np.max((np.abs(out.values - want) / np.abs(want))[256:])
    assert err < 5e-6


def test_integral_converges_at_second_order():
    # the rule is exact on piecewise-linear data, so the probe needs
    # curvature for the error to be visible at all
    errs = []
    for m in (512, 1024, 2048):
        g = GradedGrid(1.0, m, 2.0)
        out = rl_integral_grid(0.7, _sample(g, lambda x: x**2))
        want = math.gamma(3.0) / math.gamma(3.7) * g.nodes**2.7
        errs.append(np.max(np.abs(out.values - want)))
    assert errs[0] / errs[1] > 2.5
    assert errs[1] / errs[2] > 2.5


def test_quadrature_matrix_matches_operator():
    g = GradedGrid(3.0, 512, 2.0)
    f = _sample(g, lambda x: np.cos(x))
    W = quadrature_matrix(0.6, g)
    np.testing.assert_allclose(W @ f.values, rl_integral_grid(0.6, f).values,
                               rtol=1e-12, atol=1e-14)


def test_declared_singularity_is_integrated_accurately():
    # x^sigma integrands with sigma < 0 need the declared-exponent path
    sigma = -0.4
    g = GradedGrid(1.0, 2048, 4.0)
    f = SampledFunction(g, g.nodes**sigma, singular_exponent=sigma)
    out = rl_integral_grid(0.5, f)
    want = math.gamma(sigma + 1.0) / math.gamma(sigma + 1.5) * g.nodes ** (sigma + 0.5)
    err = np.max(np.abs(out.values - want) / np.abs(want))
    assert err < 1e-6


def test_derivative_grid_on_smooth():
    g = GradedGrid(2.0, 4096, 2.0)
    out = derivative_grid(_sample(g, lambda x: x**2))
    inner = slice(10, -10)
    err = np.max(np.abs(out.values[inner] - 2.0 * g.nodes[inner]))
    assert err < 1e-4


def test_discrete_derivative_annihilates_kernel():
    spec = TRULY_2L
    g = GradedGrid(2.0, 2048, default_grading_exponent(spec))
    sg = spec.sigma[1]
    f = SampledFunction(g, g.nodes**sg, singular_exponent=sg)
    out = nth_level_derivative_grid(spec, f)
    # scale against the input magnitude away from the endpoints
    inner = slice(64, -8)
    scale = np.max(np.abs(f.values[inner]))
    assert np.max(np.abs(out.values[inner])) / scale < 5e-3


def test_discrete_derivative_of_monomial():
    spec = DerivativeSpec(1, 0.5, (0.5,))
    g = GradedGrid(2.0, 4096, 3.0)
    mu = 1.5
    out = nth_level_derivative_grid(spec, _sample(g, lambda x: x**mu))
    want = math.gamma(mu + 1.0) / math.gamma(mu + 1.0 - 0.5) * g.nodes ** (mu - 0.5)
    inner = slice(64, -8)
    err = np.max(np.abs(out.values[inner] - want[inner]) / np.abs(want[inner]))
    assert err < 1e-3


def test_laplace_numeric_exponential():
    g = GradedGrid(40.0, 4096, 2.0)
    f = _sample(g, lambda x: np.exp(-2.0 * x))
    # truncation past x_max costs about exp(-80), far below tolerance
    for s in (1.0, 2.0, 5.0):
        got = laplace_numeric(f, None, s)
        assert got == pytest.approx(1.0 / (s + 2.0), rel=1e-5)


def test_laplace_numeric_power_tail():
    # declared singular part plus matching tail reproduce the transform
    # of x^-0.5 to special-function accuracy: the sampled remainder is
    # identically zero, so only the two analytic pieces contribute
    g = GradedGrid(5.0, 512, 2.0)
    f = SampledFunction(g, g.nodes**-0.5, singular_exponent=-0.5)
    for s in (1.0, 2.0, 5.0):
        got = laplace_numeric(f, ((1.0, -0.5),), s)
        assert got == pytest.approx(math.sqrt(math.pi / s), rel=1e-10)


def test_csv_roundtrip(tmp_path):
    g = GradedGrid(1.0, 64, 2.0)
    f = SampledFunction(g, g.nodes**-0.3, singular_exponent=-0.3)
    path = str(tmp_path / "f.csv")
    write_csv(f, path)
    x, y, sigma = read_xy(path)
    np.testing.assert_allclose(x, g.nodes, rtol=0, atol=0)
    np.testing.assert_allclose(y, f.values, rtol=0, atol=0)
    assert sigma == pytest.approx(-0.3)


def test_csv_roundtrip_without_sigma(tmp_path):
    g = GradedGrid(1.0, 32, 1.0)
    f = SampledFunction(g, np.sin(g.nodes))
    path = str(tmp_path / "g.csv")
    write_csv(f, path)
    x, y, sigma = read_xy(path)
    assert sigma is None
    np.testing.assert_allclose(y, np.sin(x), rtol=0, atol=0)
