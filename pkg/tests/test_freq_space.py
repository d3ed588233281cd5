import math

import numpy as np
import pytest

from hfourier.freq_space import (
    BoundaryPoint,
    FreqFunction,
    FreqPoint,
    LambdaGrid,
    distance,
    freq_seminorm,
    integrate,
    l1m_norm,
    weight_d0,
)
from hfourier.profiles import heat_profile, profile_gauss, profile_to_freq_function
from hfourier.distributions import make_f_gamma


def random_point(rng, kind=None):
    kind = kind or rng.choice(["int", "bdry"])
    if kind == "int":
        lam = float(rng.uniform(0.05, 3.0)) * float(rng.choice([-1.0, 1.0]))
        return FreqPoint((int(rng.integers(0, 6)),), (int(rng.integers(0, 6)),), lam)
    sgn = float(rng.choice([-1.0, 1.0]))
    return BoundaryPoint((sgn * float(rng.uniform(0.1, 3.0)),), (int(rng.integers(-3, 4)),))


def test_distance_examples():
    assert distance(FreqPoint((1,), (1,), 0.5), BoundaryPoint((1.0,), (0,))) == pytest.approx(0.5)
    p = FreqPoint((2,), (3,), -0.7)
    assert distance(p, p) == 0.0
    assert distance(BoundaryPoint((1.0,), (2,)), BoundaryPoint((2.5,), (0,))) == pytest.approx(3.5)


def test_distance_symmetry_and_triangle():
    rng = np.random.default_rng(21)
    for _ in range(2000):
        p, q, r = (random_point(rng) for _ in range(3))
        dpq = distance(p, q)
        assert dpq == pytest.approx(distance(q, p), abs=1e-14)
        assert dpq <= distance(p, r) + distance(r, q) + 1e-12


def test_distance_interior_to_boundary_continuity():
    b = BoundaryPoint((1.2,), (1,))
    prev = math.inf
    for n in (4, 16, 64, 256):
        lam = 1.2 / (2 * n + 2)
        d = distance(FreqPoint((n,), (n + 1,), lam), b)
        assert d < prev
        prev = d
    assert prev < 2e-2


def test_boundary_point_validation():
    BoundaryPoint((0.0,), (0,))  # distinguished origin is fine
    with pytest.raises(ValueError):
        BoundaryPoint((1.0, -2.0), (0, 0))
    with pytest.raises(ValueError):
        BoundaryPoint((0.0, 1.0), (0, 0))
    with pytest.raises(ValueError):
        FreqPoint((0,), (0,), 0.0)


def test_weight_examples():
    assert weight_d0(FreqPoint((0,), (0,), 0.7)) == pytest.approx(0.7)
    assert weight_d0(FreqPoint((1,), (0,), 2.0)) == pytest.approx(5.0)
    assert weight_d0(FreqPoint((0,), (1,), 2.0)) == pytest.approx(5.0)


# ---- lambda grid -----------------------------------------------------------

def test_lambda_grid_structure():
    grid = LambdaGrid(1e-4, 16.0, 160)
    assert len(grid.lam) == 320
    assert np.all(grid.lam[1:] > grid.lam[:-1])
    assert np.allclose(grid.lam, -grid.lam[::-1])
    assert 0.0 not in grid.lam


def test_lambda_grid_quadrature_accuracy():
    grid = LambdaGrid(1e-4, 16.0, 160)
    pos = grid.lam > 0
    got = np.sum(np.exp(-4 * grid.lam[pos]) * grid.lam[pos] * grid.weights[pos])
    want = 1.0 / 16.0 - math.exp(-64) * 0  # integral over (0, 16], tail negligible
    assert got == pytest.approx(want, rel=2e-6)


def test_lambda_grid_json_roundtrip():
    grid = LambdaGrid(1e-3, 8.0, 40)
    clone = LambdaGrid.from_json(grid.to_json())
    assert np.array_equal(clone.lam, grid.lam)
    assert "ratio" in grid.to_json()


# ---- integration -----------------------------------------------------------

def test_integrate_zero():
    grid = LambdaGrid(1e-3, 8.0, 80)
    zero = FreqFunction(lambda n, m, lam: np.zeros_like(lam, dtype=complex), diagonal=True)
    res = integrate(zero, grid, 8)
    assert res.value == 0
    assert res.tail_bound == 0


def test_integrate_indicator():
    # indicator of |lam| <= 1 on the lowest diagonal entry: integral of |lam|
    grid = LambdaGrid(1e-4, 16.0, 160)
    ind = FreqFunction(
        lambda n, m, lam: ((np.abs(lam) <= 1.0) & (n == (0,)) & (m == (0,))).astype(complex),
        diagonal=True,
    )
    res = integrate(ind, grid, 2)
    # the jump falls inside one geometric cell; expect cell-size accuracy
    # (refinement is not monotone for a discontinuous integrand)
    assert res.value.real == pytest.approx(1.0, abs=5e-2)


def test_integrate_heat_series():
    grid = LambdaGrid(1e-4, 16.0, 160)
    res = integrate(heat_profile(1.0), grid, 400)
    # sum over odd squares gives pi^2 / 64
    assert res.value.real == pytest.approx(math.pi**2 / 64, abs=2e-4)
    assert res.tail_bound < 2e-3


def test_l1m_norm_family():
    grid = LambdaGrid(1e-4, 16.0, 160)
    f1 = make_f_gamma(1.0, 1)
    vals = []
    for lam_min in (4e-4, 2e-4, 1e-4):
        g = LambdaGrid(lam_min, 16.0, 160)
        vals.append(l1m_norm(f1, 4, g, 24).value.real)
    deltas = [abs(vals[i + 1] - vals[i]) for i in range(2)]
    assert deltas[1] < 0.8 * deltas[0]

    f2 = make_f_gamma(2.0, 1)
    a = l1m_norm(f2, 4, LambdaGrid(1e-3, 16.0, 160), 24).value.real
    b = l1m_norm(f2, 4, LambdaGrid(1e-5, 16.0, 160), 24).value.real
    slope = (b - a) / math.log(1e2)
    expected = 2.0 * sum((2 * n + 1.0) ** -2 for n in range(25))
    assert slope == pytest.approx(expected, rel=0.05)


# ---- seminorms -------------------------------------------------------------

def test_freq_seminorm_zero():
    zero = FreqFunction(lambda n, m, lam: np.zeros_like(lam, dtype=complex), diagonal=True)
    assert freq_seminorm(zero, 2, 1, n_sup=4) == 0.0


def test_freq_seminorm_heat_sup():
    grid = LambdaGrid(1e-4, 16.0, 160)
    v = freq_seminorm(heat_profile(1.0), 0, 0, n_sup=8, grid=grid)
    # N = N' = 0 bracket is 3|theta| with the extra signed-difference term
    # vanishing on even diagonal data; sup of 2|theta| approaches 2
    assert v == pytest.approx(2.0, abs=5e-3)


def test_freq_seminorm_monotone_in_weight():
    grid = LambdaGrid(1e-3, 8.0, 64)
    th = profile_to_freq_function(profile_gauss(1.0))
    a = freq_seminorm(th, 0, 1, n_sup=6, grid=grid)
    b = freq_seminorm(th, 1, 1, n_sup=6, grid=grid)
    c = freq_seminorm(th, 2, 1, n_sup=6, grid=grid)
    assert a <= b <= c
    assert np.isfinite(c)


def test_freq_seminorm_profile_finite_depth3():
    # stability of the operator-power seminorms on a profile fixture
    grid = LambdaGrid(1e-3, 8.0, 48)
    th = profile_to_freq_function(profile_gauss(1.0))
    vals = [freq_seminorm(th, N, Np, n_sup=5, grid=grid) for N in (0, 3) for Np in (0, 2, 3)]
    assert all(np.isfinite(v) for v in vals)


def test_l1_bound_by_seminorm():
    # integral norm controlled by the weighted sup seminorm at K = 2d + 2
    grid = LambdaGrid(1e-4, 16.0, 160)
    for th in (heat_profile(1.0), heat_profile(0.25),
               profile_to_freq_function(profile_gauss(1.0))):
        wrapped = FreqFunction(
            lambda n, m, lam, _t=th: np.abs(_t(n, m, lam)).astype(complex),
            diagonal=th.diagonal, band=th.band,
        )
        l1 = integrate(wrapped, grid, 64).value.real
        sem = freq_seminorm(th, 4, 0, n_sup=24, grid=grid)
        assert l1 <= 10.0 * sem


def test_value_at_origin_extrapolation():
    grid = LambdaGrid(1e-5, 8.0, 160)
    th = heat_profile(1.0)
    assert th.value_at_origin(grid) == pytest.approx(1.0, abs=1e-12)
    # strip the boundary evaluator to force the sqrt-extrapolation path
    bare = FreqFunction(th._interior, d=1, diagonal=True)
    assert bare.value_at_origin(grid).real == pytest.approx(1.0, abs=2e-2)
