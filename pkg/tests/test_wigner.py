import math

import numpy as np
import pytest
from scipy.special import j0

from hfourier.wigner import boundary_kernel, wigner_eval, wigner_eval_full


def test_orthonormality_at_origin():
    for n, m, want in [(0, 0, 1.0), (2, 2, 1.0), (1, 3, 0.0), (4, 0, 0.0)]:
        v = wigner_eval((n,), (m,), 0.7, [0.0, 0.0])
        assert v == pytest.approx(want, abs=1e-13)


@pytest.mark.parametrize("lam", [0.5, -1.3, 2.0, 0.05])
def test_ground_pair_gaussian(lam):
    # closed form for n = m = 0: exp(-|lam| |Y|^2)
    Y = np.array([0.7, -0.4])
    v = wigner_eval((0,), (0,), lam, Y)
    assert v == pytest.approx(math.exp(-abs(lam) * float(np.sum(Y**2))), abs=1e-13)


def test_symmetry_and_bound():
    rng = np.random.default_rng(12)
    for _ in range(20):
        n, m = (int(v) for v in rng.integers(0, 5, 2))
        lam = float(rng.choice([0.3, -1.0, 2.7]))
        Y = rng.normal(size=2) * 2
        a = wigner_eval((n,), (m,), lam, Y)
        b = wigner_eval((m,), (n,), -lam, Y)
        assert abs(a - (-1.0) ** (n + m) * b) < 1e-12
        assert abs(a) <= 1 + 1e-12


def test_batch_matches_scalar():
    Ys = np.array([[0.3, 0.1], [1.0, -0.5], [0.0, 2.0]])
    batch = wigner_eval((2,), (1,), 0.8, Ys)
    for i, Y in enumerate(Ys):
        assert batch[i] == pytest.approx(wigner_eval((2,), (1,), 0.8, Y), abs=1e-14)


def test_residual_reported():
    v, resid = wigner_eval_full((3,), (2,), 0.9, np.array([0.5, 0.5]))
    assert resid < 1e-12


def test_two_dimensional_factorization():
    lam = 0.6
    Y = np.array([0.4, -0.2, 0.9, 0.3])  # (y1, y2, eta1, eta2)
    v = wigner_eval((1, 0), (2, 0), lam, Y)
    v1 = wigner_eval((1,), (2,), lam, np.array([0.4, 0.9]))
    v2 = wigner_eval((0,), (0,), lam, np.array([-0.2, 0.3]))
    assert v == pytest.approx(v1 * v2, abs=1e-13)


def test_wigner_rejects_zero_lambda():
    with pytest.raises(ValueError):
        wigner_eval((0,), (0,), 0.0, [0.0, 0.0])


def test_eigenrelation_finite_difference():
    # the sub-Laplacian acting on e^{i s lam} W(., Y) multiplies it by
    # -4 |lam| (2 m + d); checked by fourth-order stencils in (y, eta, s)
    n, m, lam = 1, 2, 0.8
    y0, e0 = 0.45, -0.3
    h = 0.02

    def F(y, e, s):
        return np.exp(1j * s * lam) * wigner_eval((n,), (m,), lam, np.array([y, e]))

    def d2(fn, axis):
        # second derivative along one slot via 5-point stencil
        offs = np.array([-2, -1, 0, 1, 2]) * h
        coef = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / (12.0 * h * h)
        vals = []
        for o in offs:
            args = [y0, e0, 0.0]
            args[axis] += o
            vals.append(F(*args))
        return np.dot(coef, vals)

    def d1(axis):
        offs = np.array([-2, -1, 1, 2]) * h
        coef = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * h)
        vals = []
        for o in offs:
            args = [y0, e0, 0.0]
            args[axis] += o
            vals.append(F(*args))
        return np.dot(coef, vals)

    def d1d1(ax1, ax2):
        offs = np.array([-2, -1, 1, 2]) * h
        coef = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * h)
        acc = 0.0
        for o1, c1 in zip(offs, coef):
            for o2, c2 in zip(offs, coef):
                args = [y0, e0, 0.0]
                args[ax1] += o1
                args[ax2] += o2
                acc += c1 * c2 * F(*args)
        return acc

    # X^2 + Xi^2 expanded in flat derivatives at the point
    lap = (
        d2(F, 0) + d2(F, 1)
        + 4.0 * (e0 * d1d1(0, 2) - y0 * d1d1(1, 2))
        + 4.0 * (y0**2 + e0**2) * d2(F, 2)
    )
    want = -4.0 * abs(lam) * (2 * m + 1) * F(y0, e0, 0.0)
    assert abs(lap - want) / abs(want) < 1e-4


# ---- boundary kernel --------------------------------------------------------

def test_kernel_kronecker_at_origin():
    assert boundary_kernel((1.0,), (0,), [0.0, 0.0]) == pytest.approx(1.0)
    assert abs(boundary_kernel((1.0,), (3,), [0.0, 0.0])) < 1e-15


@pytest.mark.parametrize("xd,y,e", [(0.5, 0.3, -1.1), (2.0, 1.0, 0.7), (0.25, -2.0, 0.4)])
def test_kernel_bessel_oracle(xd, y, e):
    r = math.hypot(y, e)
    got = boundary_kernel((xd,), (0,), [y, e])
    assert got == pytest.approx(j0(2 * math.sqrt(xd) * r), abs=1e-12)


def test_kernel_modulus_bound():
    rng = np.random.default_rng(13)
    pts = rng.normal(size=(200, 2)) * 2.5
    for xd, k in [(0.5, 0), (1.0, 1), (2.0, 2), (-1.5, -1)]:
        vals = boundary_kernel((xd,), (k,), pts)
        assert np.abs(vals).max() <= 1 + 1e-12


def test_kernel_origin_point():
    assert boundary_kernel((0.0,), (0,), [1.0, 2.0]) == pytest.approx(1.0)
    assert boundary_kernel((0.0,), (1,), [1.0, 2.0]) == 0.0


def test_kernel_sign_validation():
    with pytest.raises(ValueError):
        boundary_kernel((1.0, -1.0), (0, 0), [0.0, 0.0, 0.0, 0.0])


def test_kernel_tensor_product():
    Y = np.array([0.3, -0.6, 0.8, 0.2])
    v = boundary_kernel((0.5, 0.5), (1, 0), Y)
    v1 = boundary_kernel((0.5,), (1,), np.array([0.3, 0.8]))
    v2 = boundary_kernel((0.5,), (0,), np.array([-0.6, 0.2]))
    assert v == pytest.approx(v1 * v2, abs=1e-13)


def test_boundary_limit_first_order():
    Y = np.array([0.8, -0.5])
    for xd, k in [(1.0, 0), (0.5, 1)]:
        K = boundary_kernel((xd,), (k,), Y)
        errs = []
        lams = []
        for nn in (16, 32, 64, 128):
            lam = xd / (2 * nn + k + 1)
            lams.append(lam)
            errs.append(abs(wigner_eval((nn,), (nn + k,), lam, Y) - K))
        cs = [e / l for e, l in zip(errs, lams)]
        assert all(errs[i + 1] < errs[i] for i in range(3))
        assert max(cs[2:]) <= max(cs[:2]) * 1.05  # constant in |W - K| <= C lam is stable
