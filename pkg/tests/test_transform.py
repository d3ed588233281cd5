import math

import numpy as np
import pytest

from hfourier.fields import SampledField
from hfourier.freq_space import FreqFunction, LambdaGrid
from hfourier.profiles import heat_profile
from hfourier.transform import (
    SpectralTable,
    forward_direct,
    forward_factored,
    forward_table_direct,
    inverse_at_point,
    inverse_on_grid,
    multiplier_apply,
    plancherel_norms,
    rep_matrix_coeff,
    spectral_product,
    spectral_product_boundary,
    table_from_csv,
    table_to_csv,
    transpose_transform,
)

EXTENT, POINTS = (6.0, 6.0, 6.0), (33, 33, 33)


def gauss_field(a=1.0, b=1.0):
    return SampledField.from_function(
        lambda y, e, s: np.exp(-a * (y**2 + e**2) - b * s**2), 1, EXTENT, POINTS
    )


def gauss_hat_exact(n, lam, a=1.0, b=1.0):
    """Transform of exp(-a |Y|^2 - b s^2): diagonal, from the generating
    kernel of the Hermite basis (independent oracle)."""
    t = abs(lam)
    rho = (a - t) / (a + t)
    return (
        math.pi**1.5 / math.sqrt(b) * math.exp(-(lam**2) / (4 * b)) * rho**n / (a + t)
    )


@pytest.fixture(scope="module")
def f_unit():
    return gauss_field()


@pytest.fixture(scope="module")
def small_grid():
    return LambdaGrid(0.3, 3.0, 6)


@pytest.fixture(scope="module")
def unit_table(f_unit, small_grid):
    return forward_factored(f_unit, 8, small_grid)


def test_forward_direct_zero():
    z = SampledField.zeros_like(gauss_field())
    assert forward_direct(z, (0,), (0,), 0.7) == 0


def test_forward_direct_gaussian_diagonal(f_unit):
    for n, lam in [(0, 0.5), (1, 0.7), (2, -0.7), (4, 0.35), (0, -1.5)]:
        got = forward_direct(f_unit, (n,), (n,), lam)
        assert got == pytest.approx(gauss_hat_exact(n, lam), abs=5e-10)
    # radial data has no off-diagonal weight
    assert abs(forward_direct(f_unit, (0,), (2,), 0.8)) < 1e-12


def test_forward_direct_anisotropic_widths():
    f = gauss_field(a=0.5, b=1.5)
    for n, lam in [(0, 0.4), (2, 0.9), (1, -1.2)]:
        got = forward_direct(f, (n,), (n,), lam)
        assert got == pytest.approx(gauss_hat_exact(n, lam, a=0.5, b=1.5), abs=1e-8)


def test_conjugation_symmetry_real_field(f_unit):
    for n, m, lam in [((0,), (1,), 0.6), ((2,), (2,), 1.1)]:
        a = forward_direct(f_unit, n, m, lam)
        b = forward_direct(f_unit, n, m, -lam)
        assert b == pytest.approx(np.conj(a), abs=1e-12)


def test_factored_matches_oracle_and_direct(f_unit, small_grid, unit_table):
    for il, lam in enumerate(small_grid.lam):
        for n in range(6):
            want = gauss_hat_exact(n, lam)
            # accuracy floor set by the 33-point sampling of the field
            assert unit_table.values[n, n, il] == pytest.approx(want, abs=3e-7)
    for n, m, lam in [((0,), (1,), small_grid.lam[1]), ((3,), (2,), small_grid.lam[-2])]:
        a = unit_table.entry(n, m, lam)
        b = forward_direct(f_unit, n, m, lam)
        assert a == pytest.approx(b, abs=1e-9)


def test_factored_zero_field(small_grid):
    z = SampledField.zeros_like(gauss_field())
    table = forward_factored(z, 4, small_grid)
    assert np.abs(table.values).max() == 0.0


def test_rep_matrix_route(f_unit):
    for n, lam in [(0, 0.5), (2, -0.7), (3, 2.0)]:
        got = rep_matrix_coeff(f_unit, lam, (n,), (n,))
        assert got == pytest.approx(gauss_hat_exact(n, lam), abs=1e-6)
    assert abs(rep_matrix_coeff(f_unit, 0.8, (0,), (2,))) < 1e-12


def test_rep_matrix_identity_limit():
    # a narrow normalized bump at the group origin acts like the identity:
    # the matrix tends to the Kronecker delta as the width shrinks
    lam = 0.3
    gaps = []
    for w, pts in ((0.8, 45), (0.4, 61)):
        norm = 1.0 / (math.pi ** 1.5 * w ** 3)
        f = SampledField.from_function(
            lambda y, e, s: norm * np.exp(-(y**2 + e**2 + s**2) / w**2),
            1, (4, 4, 4), (pts, pts, pts),
        )
        d00 = rep_matrix_coeff(f, lam, (0,), (0,))
        d11 = rep_matrix_coeff(f, lam, (1,), (1,))
        off = rep_matrix_coeff(f, lam, (0,), (1,))
        assert abs(off) < 0.02
        gaps.append(abs(d00 - 1.0) + abs(d11 - 1.0))
    assert gaps[1] < 0.35 * gaps[0]  # quadratic approach to the identity
    assert gaps[1] < 0.2


def test_remap_rescales_l2():
    # the change of variables (x, x') -> ((x-x')/2, lam(x+x')) multiplies
    # squared norms by 1/|lam| in one dimension
    def phi(u, v):
        return np.exp(-(u**2) - 0.5 * v**2) * (1 + 0.3 * u * v)

    # closed form of the flat squared norm of phi
    flat = math.sqrt(math.pi**2 / 2.0) * (1.0 + 0.09 / 8.0)
    xi, om = np.polynomial.legendre.leggauss(240)
    for lam in (0.5, 2.0):
        L = 6.0 + 6.0 / (2.0 * lam)
        x = L * xi
        w = L * om
        X, Xp = np.meshgrid(x, x, indexing="ij")
        W2 = np.outer(w, w)
        lhs = np.sum(np.abs(phi((X - Xp) / 2.0, lam * (X + Xp))) ** 2 * W2)
        assert lhs == pytest.approx(flat / abs(lam), rel=1e-8)


def test_inverse_round_trip_short():
    grid = LambdaGrid(1e-3, 10.0, 80)
    f = gauss_field(a=0.5)
    table = forward_factored(f, 20, grid)
    rec, tail = inverse_on_grid(
        table.as_freq_function(), grid, 20, extents=(2.0, 2.0, 2.0), points=(9, 9, 9),
        assume_symmetric=True,
    )
    truth = SampledField.from_function(
        lambda y, e, s: np.exp(-0.5 * (y**2 + e**2) - s**2), 1, (2.0, 2.0, 2.0), (9, 9, 9)
    )
    rel = np.abs(rec.samples - truth.samples).max() / np.abs(truth.samples).max()
    assert rel < 2e-2


def test_inverse_at_point_matches_grid():
    grid = LambdaGrid(1e-3, 10.0, 80)
    theta = heat_profile(1.0)
    v = inverse_at_point(theta, np.array([0.5, 0.0, 0.6]), grid, n_max=48)
    fld, _ = inverse_on_grid(theta, grid, 48, extents=(1.0, 1.0, 1.2), points=(5, 5, 5),
                             n_cap=48, assume_symmetric=True)
    iy = int(np.argmin(np.abs(fld.y_axis - 0.5)))
    ks = int(np.argmin(np.abs(fld.s_axis - 0.6)))
    assert v == pytest.approx(complex(fld.samples[iy, 2, ks]), abs=2e-4)


def test_plancherel_scaling_invariance(f_unit, small_grid, unit_table):
    phys, res = plancherel_norms(f_unit, unit_table)
    scaled = SampledField(2.5 * f_unit.samples, 1, f_unit.extents)
    table2 = SpectralTable(2.5 * unit_table.values, small_grid, 1)
    phys2, res2 = plancherel_norms(scaled, table2)
    assert res.value.real / phys == pytest.approx(res2.value.real / phys2, rel=1e-12)


def test_spectral_product_zero_and_semigroup():
    zero = FreqFunction(lambda n, m, lam: np.zeros_like(lam, dtype=complex), diagonal=True)
    v, tail = spectral_product(heat_profile(1.0), zero, (0,), (0,), 0.5, ell_max=8)
    assert v == 0 and tail == 0
    for lam in (0.3, -1.1):
        for n in range(4):
            v, _ = spectral_product(heat_profile(0.7), heat_profile(0.5), (n,), (n,), lam, 24)
            want = heat_profile(1.2)((n,), (n,), np.array([lam]))[0]
            assert v == pytest.approx(want, abs=1e-14)


def test_boundary_product_commutes():
    h1, h2 = heat_profile(1.0), heat_profile(0.3)
    a = spectral_product_boundary(h1, h2, (0.7,), (0,))
    b = spectral_product_boundary(h2, h1, (0.7,), (0,))
    assert a == b
    assert a.real == pytest.approx(math.exp(-4 * 1.3 * 0.7), abs=1e-14)


def test_multiplier():
    th = heat_profile(1.0)
    ident = multiplier_apply(lambda r: np.ones_like(np.asarray(r, dtype=float)), th)
    la = np.array([0.8])
    assert ident((2,), (2,), la)[0] == th((2,), (2,), la)[0]
    heat = multiplier_apply(lambda r: np.exp(-0.5 * r), th)
    assert heat((1,), (1,), la)[0] == pytest.approx(heat_profile(1.5)((1,), (1,), la)[0])
    # boundary values follow the multiplier at zero frequency
    assert heat.at_boundary((0.4,), (0,)) == pytest.approx(th.at_boundary((0.4,), (0,)))


def test_transpose_reflection():
    grid = LambdaGrid(1e-3, 10.0, 64)
    th = heat_profile(1.0)
    tr, _ = transpose_transform(th, grid, 16, extents=(1.5, 1.5, 2.0), points=(7, 7, 9),
                                n_cap=64)
    inv, _ = inverse_on_grid(th, grid, 16, extents=(1.5, 1.5, 2.0), points=(7, 7, 9),
                             n_cap=64)
    want = math.pi**2 * inv.samples[:, ::-1, ::-1]
    assert np.abs(tr.samples - want).max() < 1e-14


def test_table_csv_roundtrip(tmp_path, unit_table):
    path = tmp_path / "table.csv"
    table_to_csv(unit_table, path)
    clone = table_from_csv(path)
    assert np.array_equal(clone.values, unit_table.values)
    assert np.array_equal(clone.grid.lam, unit_table.grid.lam)


def test_table_off_grid_lambda(unit_table):
    with pytest.raises(KeyError):
        unit_table.entry((0,), (0,), 0.123456)


def test_integrate_table_squared_heat(f_unit):
    # Plancherel pieces: frequency norm of the transform is finite and positive
    grid = LambdaGrid(1e-3, 8.0, 48)
    table = forward_factored(f_unit, 10, grid)
    phys, res = plancherel_norms(f_unit, table)
    assert res.value.real > 0
    assert res.value.imag == pytest.approx(0.0, abs=1e-12)


def _unit_gauss_hat():
    def entry(n, m, lam):
        lam = np.asarray(lam, dtype=float)
        if tuple(n) != tuple(m):
            return np.zeros(lam.shape, dtype=complex)
        t = np.abs(lam)
        k = n[0]
        return (math.pi**1.5 * np.exp(-(lam**2) / 4.0)
                * (1.0 - t) ** k / (1.0 + t) ** (k + 1)) + 0j

    def entry_dlam(n, m, lam):
        lam = np.asarray(lam, dtype=float)
        if tuple(n) != tuple(m):
            return np.zeros(lam.shape, dtype=complex)
        t = np.abs(lam)
        k = n[0]
        dlog = -lam / 2.0 + np.sign(lam) * (-k / (1.0 - t) - (k + 1) / (1.0 + t))
        return entry(n, m, lam) * dlog

    return FreqFunction(entry, d=1, dlam=entry_dlam, diagonal=True, label="gauss-hat")


def test_transposed_weight_identities():
    # push the frequency operators through the inverse transform: the
    # frequency Laplacian emerges as multiplication by -|Y|^2, the lambda
    # derivative as multiplication by -i s
    from hfourier.diff_ops import delta_hat, dlambda_hat, lift

    grid = LambdaGrid(1e-3, 10.0, 80)
    theta = _unit_gauss_hat()
    ext, pts = (2.5, 2.5, 2.5), (11, 11, 11)
    base, _ = inverse_on_grid(theta, grid, 24, extents=ext, points=pts,
                              assume_symmetric=True, n_cap=400)

    lap = lift(delta_hat, theta)
    lap.diagonal = True
    f_lap, _ = inverse_on_grid(lap, grid, 24, extents=ext, points=pts,
                               assume_symmetric=True, n_cap=400)
    y = base.y_axis[:, None, None]
    e = base.eta_axis[None, :, None]
    want = -(y**2 + e**2) * base.samples
    scale = np.abs(want).max()
    assert np.abs(f_lap.samples - want).max() / scale < 2e-3

    dl = lift(dlambda_hat, theta)
    dl.diagonal = True
    f_dl, _ = inverse_on_grid(dl, grid, 24, extents=ext, points=pts, n_cap=400)
    s = base.s_axis[None, None, :]
    want2 = -1j * s * base.samples
    scale2 = max(np.abs(want2).max(), 1e-3)
    assert np.abs(f_dl.samples - want2).max() / scale2 < 2e-3


def test_two_dimensional_direct_routes():
    # coarse-grid spot check of the dimension-generic paths against the
    # tensor closed form of the isotropic Gaussian transform
    f2 = SampledField.from_function(
        lambda y1, y2, e1, e2, s: np.exp(-(y1**2 + y2**2 + e1**2 + e2**2 + s**2)),
        2, (5, 5, 5), (17, 17, 17),
    )

    def exact2(n, m, lam):
        if tuple(n) != tuple(m):
            return 0.0
        t = abs(lam)
        rho = (1 - t) / (1 + t)
        return math.pi**2.5 * math.exp(-(lam**2) / 4) * rho ** sum(n) / (1 + t) ** 2

    for n, m, lam in [((0, 0), (0, 0), 0.6), ((1, 0), (1, 0), 0.8),
                      ((1, 1), (1, 1), -0.5), ((0, 1), (1, 0), 0.7)]:
        got = forward_direct(f2, n, m, lam)
        assert got == pytest.approx(exact2(n, m, lam), abs=5e-4)
    got = rep_matrix_coeff(f2, 0.8, (1, 0), (1, 0))
    assert got == pytest.approx(exact2((1, 0), (1, 0), 0.8), abs=5e-4)
    table = forward_table_direct(f2, 1, LambdaGrid(0.5, 1.0, 2))
    assert table.values.shape == (2, 2, 2, 2, 4)
    for il, lam in enumerate(table.grid.lam):
        assert table.values[0, 0, 0, 0, il] == pytest.approx(
            exact2((0, 0), (0, 0), lam), abs=5e-4
        )
