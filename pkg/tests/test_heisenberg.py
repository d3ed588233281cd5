import math

import numpy as np
import pytest

from hfourier.fields import SampledField, field_from_csv, field_to_csv, read_field, write_field
from hfourier.heisenberg import (
    apply_phys_op,
    convolve,
    dilate,
    group_inverse,
    group_mul,
    left_translate,
    phys_seminorm,
)


def gauss(y, e, s):
    return np.exp(-(y**2 + e**2 + s**2))


def small_field(fn=gauss, extent=5.0, points=33):
    return SampledField.from_function(fn, 1, (extent,) * 3, (points,) * 3)


# ---- group law -------------------------------------------------------------

def test_group_law_example():
    assert np.allclose(group_mul([1, 0, 0], [0, 1, 0]), [1, 1, -2])


def test_inverse_is_negation():
    rng = np.random.default_rng(0)
    for _ in range(10):
        w = rng.normal(size=3)
        assert np.allclose(group_mul(w, group_inverse(w)), 0.0, atol=1e-14)


def test_associativity():
    rng = np.random.default_rng(1)
    for _ in range(25):
        a, b, c = rng.normal(size=(3, 3)) * 2
        lhs = group_mul(group_mul(a, b), c)
        rhs = group_mul(a, group_mul(b, c))
        assert np.abs(lhs - rhs).max() < 1e-12


def test_dilation():
    assert np.allclose(dilate(2.0, [1, 1, 1]), [2, 2, 4])
    w = np.array([0.3, -1.0, 0.5])
    assert np.allclose(dilate(1.0, w), w)
    rng = np.random.default_rng(2)
    for _ in range(10):
        a, b = rng.normal(size=(2, 3))
        t = float(rng.uniform(0.5, 3.0))
        assert np.abs(dilate(t, group_mul(a, b)) - group_mul(dilate(t, a), dilate(t, b))).max() < 1e-12
    with pytest.raises(ValueError):
        dilate(-1.0, w)


def test_dilation_d2():
    w = np.array([1.0, 2.0, 0.5, -1.0, 3.0])
    out = dilate(2.0, w, d=2)
    assert np.allclose(out, [2, 4, 1, -2, 12])


# ---- convolution -----------------------------------------------------------

def test_convolve_zero():
    f = small_field()
    z = SampledField.zeros_like(f)
    out = convolve(f, z)
    assert np.abs(out.samples).max() == 0.0


def test_convolve_gaussian_origin():
    f = SampledField.from_function(gauss, 1, (6, 6, 6), (33, 33, 33))
    c = convolve(f, f)
    i0 = 16
    # closed form: integral of exp(-2(y^2+eta^2+s^2))
    assert c.samples[i0, i0, i0].real == pytest.approx((math.pi / 2) ** 1.5, abs=1e-10)
    assert np.abs(c.samples.imag).max() < 1e-14


def test_young_inequality():
    rng = np.random.default_rng(5)
    for _ in range(2):
        a, b = rng.uniform(0.8, 1.6, size=2)
        f = small_field(lambda y, e, s: np.exp(-a * (y**2 + e**2 + s**2)), points=21)
        g = small_field(lambda y, e, s: np.exp(-b * (y**2 + e**2 + s**2)), points=21)
        c = convolve(f, g)
        assert c.l1_norm() <= f.l1_norm() * g.l1_norm() * (1 + 1e-10)


def test_convolve_grid_mismatch():
    f = small_field(points=21)
    g = small_field(points=33)
    with pytest.raises(ValueError):
        convolve(f, g)


def test_convolution_associativity_coarse():
    def bump(a):
        return lambda y, e, s: np.exp(-a * (y**2 + e**2 + s**2))

    f = SampledField.from_function(bump(1.2), 1, (4.2,) * 3, (21,) * 3)
    g = SampledField.from_function(bump(1.6), 1, (4.2,) * 3, (21,) * 3)
    h = SampledField.from_function(bump(2.0), 1, (4.2,) * 3, (21,) * 3)
    lhs = convolve(convolve(f, g), h)
    rhs = convolve(f, convolve(g, h))
    scale = np.abs(lhs.samples).max()
    assert np.abs(lhs.samples - rhs.samples).max() / scale < 5e-2


# ---- operators -------------------------------------------------------------

def test_x_field_on_vertical_coordinate():
    f = SampledField.from_function(lambda y, e, s: s + 0j, 1, (4, 4, 4), (33, 33, 33))
    X = apply_phys_op("X", f)
    want = np.broadcast_to(2 * f.eta_axis[None, :, None], f.samples.shape)
    assert np.abs(X.samples - want)[4:-4, 4:-4, 4:-4].max() < 1e-12


def test_laplacian_on_quadratic():
    f = SampledField.from_function(lambda y, e, s: (y**2 + e**2) + 0j, 1, (4, 4, 4), (33, 33, 33))
    L = apply_phys_op("laplacian", f)
    assert np.abs(L.samples[4:-4, 4:-4, 4:-4] - 4.0).max() < 1e-10


def test_primitive_on_even_and_odd():
    fe = small_field()
    assert np.abs(apply_phys_op("P", fe).samples).max() == 0.0
    fo = SampledField.from_function(
        lambda y, e, s: np.exp(-(y**2 + e**2)) * s * np.exp(-(s**2)), 1, (5, 5, 5), (65, 65, 65)
    )
    got = apply_phys_op("P", fo)
    want = SampledField.from_function(
        lambda y, e, s: -0.5 * np.exp(-(y**2 + e**2)) * np.exp(-(s**2)), 1, (5, 5, 5), (65, 65, 65)
    )
    # trapezoid accuracy is second order in the vertical spacing
    assert np.abs(got.samples - want.samples).max() < 3e-3


def test_primitive_derivative_identity():
    fo = SampledField.from_function(
        lambda y, e, s: (0.3 + s + 0.2 * s**2) * gauss(y, e, s), 1, (5, 5, 5), (49, 49, 49)
    )
    dP = apply_phys_op("S", apply_phys_op("P", fo))
    odd = 0.5 * (fo.samples - fo.samples[..., ::-1])
    assert np.abs(dP.samples - odd).max() < 1.5e-2


def test_commutator_gives_vertical_field():
    f = small_field(lambda y, e, s: np.exp(-(y**2 + e**2 + s**2)) * (1 + 0.3 * y * s), points=41)
    XiX = apply_phys_op("Xi", apply_phys_op("X", f))
    XXi = apply_phys_op("X", apply_phys_op("Xi", f))
    S = apply_phys_op("S", f)
    resid = 0.25 * (XiX.samples - XXi.samples) - S.samples
    inner = resid[6:-6, 6:-6, 6:-6]
    assert np.abs(inner).max() < 1.5e-2


def test_multiplications():
    f = small_field()
    y = f.y_axis[:, None, None]
    e = f.eta_axis[None, :, None]
    s = f.s_axis[None, None, :]
    assert np.allclose(apply_phys_op("M2", f).samples, (y**2 + e**2) * f.samples)
    assert np.allclose(apply_phys_op("M0", f).samples, -1j * s * f.samples)
    assert np.allclose(apply_phys_op("MH", f).samples, (y**2 + e**2 - 1j * s) * f.samples)
    assert np.allclose(apply_phys_op("Mplus", f).samples, (y + 1j * e) * f.samples)
    assert np.allclose(apply_phys_op("Mminus", f).samples, (y - 1j * e) * f.samples)
    with pytest.raises(ValueError):
        apply_phys_op("nope", f)


def test_left_invariance_fourth_order():
    w = np.array([0.3, -0.2, 0.4])

    def err(points):
        f = SampledField.from_function(gauss, 1, (5, 5, 5), (points,) * 3)
        lhs = apply_phys_op("X", left_translate(f, w))
        rhs = left_translate(apply_phys_op("X", f), w)
        k = points // 6
        return np.abs(lhs.samples - rhs.samples)[k:-k, k:-k, k:-k].max()

    e1, e2 = err(21), err(41)
    assert e2 < e1 / 8.0  # fourth-order-ish decay under refinement


def test_right_invariant_fields_differ():
    f = small_field(lambda y, e, s: np.exp(-(y**2 + e**2 + s**2)) * (1 + s))
    a = apply_phys_op("X", f).samples
    b = apply_phys_op("Xtilde", f).samples
    assert np.abs(a - b).max() > 1e-3


# ---- seminorms -------------------------------------------------------------

def test_seminorm_zero_and_gaussian():
    z = SampledField.zeros_like(small_field())
    assert phys_seminorm(z, 2) == 0.0
    f = small_field()
    assert phys_seminorm(f, 0) == pytest.approx(1.0, abs=1e-12)


def test_seminorm_monotone():
    rng = np.random.default_rng(9)
    a = rng.uniform(0.8, 1.5)
    f = small_field(lambda y, e, s: np.exp(-a * (y**2 + e**2 + s**2)) * (1 + 0.2 * y), points=21)
    vals = [phys_seminorm(f, N) for N in range(3)]
    assert vals[0] <= vals[1] <= vals[2]


def test_seminorm_l2_variant():
    f = small_field(points=21)
    v = phys_seminorm(f, 1, variant="l2")
    assert v > math.sqrt(f.l2_norm_sq())
    with pytest.raises(ValueError):
        phys_seminorm(f, 1, variant="bogus")


# ---- containers ------------------------------------------------------------

def test_binary_roundtrip(tmp_path):
    rng = np.random.default_rng(11)
    f = small_field(points=9)
    f.samples += 1j * rng.normal(size=f.samples.shape)
    path = tmp_path / "field.hfld"
    write_field(f, path)
    g = read_field(path)
    assert g.d == 1 and g.extents == f.extents
    assert np.array_equal(g.samples, f.samples)


def test_binary_bad_magic(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"NOTAFLD" + b"\x00" * 64)
    with pytest.raises(ValueError):
        read_field(path)


def test_csv_roundtrip(tmp_path):
    f = small_field(points=9)
    path = tmp_path / "field.csv"
    field_to_csv(f, path)
    g = field_from_csv(path)
    assert np.allclose(g.samples, f.samples, rtol=0, atol=0)
    assert g.extents == f.extents


def test_interp_reproduces_grid_and_zero_outside():
    f = small_field(points=17)
    pts = np.stack(np.meshgrid(f.y_axis, f.eta_axis, f.s_axis, indexing="ij"), axis=-1)
    vals = f.interp(pts.reshape(-1, 3)).reshape(f.samples.shape)
    assert np.abs(vals - f.samples).max() < 1e-12
    outside = f.interp(np.array([[20.0, 0.0, 0.0], [0.0, 0.0, -30.0]]))
    assert np.abs(outside).max() == 0.0
