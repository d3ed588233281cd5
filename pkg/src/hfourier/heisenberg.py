"""Physical-space structure of H^d.

Group law on w = (y, eta, s):

    w . w' = (y + y', eta + eta', s + s' + 2<eta, y'> - 2<eta', y>),

with inverse -w and parabolic dilations (Y, s) -> (aY, a^2 s).  The module
also carries the left/right-invariant vector fields, the sub-Laplacian,
weight and multiplication operators, the vertical primitive P, group
convolution of sampled fields, and Schwartz-type seminorms.
"""

import math
from itertools import product

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .fields import SampledField

__all__ = [
    "group_mul",
    "group_inverse",
    "dilate",
    "convolve",
    "apply_phys_op",
    "phys_seminorm",
    "PHYS_OPS",
]


# ---- group law -----------------------------------------------------------

def _split(w, d):
    w = np.asarray(w, dtype=float)
    if w.shape[-1] != 2 * d + 1:
        raise ValueError(f"point length {w.shape[-1]} != 2 d + 1")
    return w[..., :d], w[..., d : 2 * d], w[..., -1]


def group_mul(w1, w2, d=1):
    """Product w1 . w2 in H^d; inputs are arrays (..., 2 d + 1)."""
    y1, e1, s1 = _split(w1, d)
    y2, e2, s2 = _split(w2, d)
    s = s1 + s2 + 2.0 * np.sum(e1 * y2, axis=-1) - 2.0 * np.sum(e2 * y1, axis=-1)
    return np.concatenate(
        [y1 + y2, e1 + e2, s[..., None]], axis=-1
    )


def group_inverse(w):
    return -np.asarray(w, dtype=float)


def dilate(a, w, d=1):
    """Parabolic dilation (Y, s) -> (a Y, a^2 s), a > 0."""
    if a <= 0:
        raise ValueError("dilation parameter must be positive")
    y, e, s = _split(w, d)
    return np.concatenate([a * y, a * e, (a * a * s)[..., None]], axis=-1)


# ---- group convolution ---------------------------------------------------

def _cubic_weights(t):
    return (
        -t * (t - 1) * (t - 2) / 6.0,
        (t + 1) * (t - 1) * (t - 2) / 2.0,
        -(t + 1) * t * (t - 2) / 2.0,
        (t + 1) * t * (t - 1) / 6.0,
    )


def convolve(f, g):
    """Group convolution (f * g)(w) = integral f(w . v^{-1}) g(v) dv.

    Riemann-sum realization on the shared grid.  The y/eta components of
    w . v^{-1} land back on the lattice, so off-grid evaluation reduces to
    the vertical coordinate, where f is interpolated by 4-point cubic
    Lagrange weights with zero extension outside the box.  Cost is
    quadratic in the number of Y-grid points.
    """
    if not f.same_grid(g):
        raise ValueError("convolution requires matching grids")
    d = f.d
    F = f.samples
    G = g.samples
    y_ax, e_ax = f.y_axis, f.eta_axis
    ny, ne, ns = len(y_ax), len(e_ax), F.shape[-1]
    hs = f.spacings[-1]
    vol = f.cell_volume
    cy, ce, cs = (ny - 1) // 2, (ne - 1) // 2, (ns - 1) // 2

    y_shape = F.shape[: 2 * d]
    out = np.zeros_like(F)

    # output Y coordinates as (..., d) blocks for the twist term
    mesh_y = np.meshgrid(*([y_ax] * d + [e_ax] * d), indexing="ij")
    out_y = np.stack(mesh_y[:d], axis=-1)   # (..., d)
    out_e = np.stack(mesh_y[d:], axis=-1)

    koff = np.arange(-(ns - 1), ns)         # all s-index differences
    pad_lead = 2 * ns                       # zeros so out-of-box gathers read 0

    for yi in product(*(range(ny) for _ in range(d)), *(range(ne) for _ in range(d))):
        gblock = G[yi]                      # (ns,) samples of g at fixed Y'
        if not np.any(gblock):
            continue
        yp = np.array([y_ax[yi[a]] for a in range(d)])
        ep = np.array([e_ax[yi[d + a]] for a in range(d)])

        # f at lattice differences: shifted[I] = F[I - J + center], zero fill
        shifted = np.zeros(y_shape + (ns,), dtype=complex)
        src, dst = [], []
        okay = True
        for a in range(2 * d):
            n_ax = ny if a < d else ne
            c_ax = cy if a < d else ce
            off = yi[a] - c_ax              # src = dst - off
            lo = max(0, off)
            hi = min(n_ax, n_ax + off)
            if lo >= hi:
                okay = False
                break
            dst.append(slice(lo, hi))
            src.append(slice(lo - off, hi - off))
        if not okay:
            continue
        shifted[tuple(dst)] = F[tuple(src)]

        # twist: s-argument is s - s' + c with c = 2(<eta', y> - <eta, y'>)
        c = 2.0 * (np.sum(out_y * ep, axis=-1) - np.sum(out_e * yp, axis=-1))
        u = c / hs
        b0 = np.floor(u)
        t = u - b0
        w0, w1, w2, w3 = _cubic_weights(t)
        base = b0.astype(np.int64) + cs     # grid index below (0*hs + c) - s_min - (ns-1)

        padded = np.zeros(y_shape + (ns + 2 * pad_lead,), dtype=complex)
        padded[..., pad_lead : pad_lead + ns] = shifted
        # center tap for s = k*hs + c sits at padded index k + base + pad_lead
        gather = koff.reshape((1,) * len(y_shape) + (-1,)) + base[..., None] + pad_lead
        gather = np.clip(gather, 1, padded.shape[-1] - 3)
        fvals = (
            w0[..., None] * np.take_along_axis(padded, gather - 1, axis=-1)
            + w1[..., None] * np.take_along_axis(padded, gather, axis=-1)
            + w2[..., None] * np.take_along_axis(padded, gather + 1, axis=-1)
            + w3[..., None] * np.take_along_axis(padded, gather + 2, axis=-1)
        )

        # out[.., i] += sum_j fvals[.., i - j + ns - 1] g[j]
        win = np.lib.stride_tricks.sliding_window_view(fvals, ns, axis=-1)
        out += win @ gblock[::-1]

    return SampledField(out * vol, d, f.extents)


# ---- differential / multiplication operators ------------------------------

def _deriv(arr, axis, h):
    """Fourth-order first derivative; one-sided stencils at the edges."""
    a = np.moveaxis(arr, axis, 0)
    out = np.empty_like(a)
    out[2:-2] = (-a[4:] + 8 * a[3:-1] - 8 * a[1:-3] + a[:-4]) / (12 * h)
    out[0] = (-25 * a[0] + 48 * a[1] - 36 * a[2] + 16 * a[3] - 3 * a[4]) / (12 * h)
    out[1] = (-3 * a[0] - 10 * a[1] + 18 * a[2] - 6 * a[3] + a[4]) / (12 * h)
    out[-2] = (3 * a[-1] + 10 * a[-2] - 18 * a[-3] + 6 * a[-4] - a[-5]) / (12 * h)
    out[-1] = (25 * a[-1] - 48 * a[-2] + 36 * a[-3] - 16 * a[-4] + 3 * a[-5]) / (12 * h)
    return np.moveaxis(out, 0, axis)


def _coord_mesh(fld, block, j):
    # broadcastable coordinate array for y_j (block 0) or eta_j (block 1)
    ax = fld.y_axis if block == 0 else fld.eta_axis
    axis = j if block == 0 else fld.d + j
    shape = [1] * fld.samples.ndim
    shape[axis] = len(ax)
    return ax.reshape(shape)


def _s_mesh(fld):
    shape = [1] * fld.samples.ndim
    shape[-1] = fld.points[-1]
    return fld.s_axis.reshape(shape)


def _field_X(fld, j, sign=+1):
    hy, _, hs = fld.spacings
    eta_j = _coord_mesh(fld, 1, j)
    return _deriv(fld.samples, j, hy) + sign * 2.0 * eta_j * _deriv(fld.samples, fld.samples.ndim - 1, hs)


def _field_Xi(fld, j, sign=+1):
    _, he, hs = fld.spacings
    y_j = _coord_mesh(fld, 0, j)
    return _deriv(fld.samples, fld.d + j, he) - sign * 2.0 * y_j * _deriv(fld.samples, fld.samples.ndim - 1, hs)


def _abs_Y_sq(fld):
    total = 0.0
    for j in range(fld.d):
        total = total + _coord_mesh(fld, 0, j) ** 2 + _coord_mesh(fld, 1, j) ** 2
    return total


def _op_samples(fld, name, j):
    nd = fld.samples.ndim
    hy, he, hs = fld.spacings
    if name == "X":
        return _field_X(fld, j)
    if name == "Xi":
        return _field_Xi(fld, j)
    if name == "Xtilde":
        return _field_X(fld, j, sign=-1)
    if name == "Xitilde":
        return _field_Xi(fld, j, sign=-1)
    if name == "S":
        return _deriv(fld.samples, nd - 1, hs)
    if name == "laplacian":
        total = np.zeros_like(fld.samples)
        for jj in range(fld.d):
            step = SampledField(_field_X(fld, jj), fld.d, fld.extents)
            total = total + _field_X(step, jj)
            step = SampledField(_field_Xi(fld, jj), fld.d, fld.extents)
            total = total + _field_Xi(step, jj)
        return total
    if name == "M2":
        return _abs_Y_sq(fld) * fld.samples
    if name == "M0":
        return -1j * _s_mesh(fld) * fld.samples
    if name == "MH":
        return (_abs_Y_sq(fld) - 1j * _s_mesh(fld)) * fld.samples
    if name == "Mplus":
        return (_coord_mesh(fld, 0, j) + 1j * _coord_mesh(fld, 1, j)) * fld.samples
    if name == "Mminus":
        return (_coord_mesh(fld, 0, j) - 1j * _coord_mesh(fld, 1, j)) * fld.samples
    if name == "P":
        # half the cumulative vertical integral of the odd part,
        # lower limit realized at the bottom of the s-grid
        odd = fld.samples - fld.samples[..., ::-1]
        prim = cumulative_trapezoid(odd, dx=hs, axis=-1, initial=0.0)
        return 0.5 * prim
    raise ValueError(f"unknown operator {name!r}")


PHYS_OPS = (
    "X", "Xi", "S", "Xtilde", "Xitilde", "laplacian",
    "M2", "M0", "MH", "Mplus", "Mminus", "P",
)


def apply_phys_op(op, fld, j=0):
    """Apply a named physical-space operator to a sampled field.

    ``op`` is one of ``PHYS_OPS``; ``j`` selects the coordinate for the
    per-coordinate families (X, Xi, their right-invariant tilde versions,
    and the multiplications by y_j +/- i eta_j).  Derivatives use
    fourth-order centered stencils (one-sided at the box edges); P uses a
    cumulative trapezoid along s.
    """
    if op not in PHYS_OPS:
        raise ValueError(f"unknown operator tag {op!r}")
    if not (0 <= j < fld.d):
        raise ValueError(f"coordinate {j} out of range")
    return SampledField(_op_samples(fld, op, j), fld.d, fld.extents)


def left_translate(fld, w):
    """Samples of v -> f(w . v); interpolation-based, used by invariance tests."""
    d = fld.d
    axes = [fld.y_axis] * d + [fld.eta_axis] * d + [fld.s_axis]
    mesh = np.meshgrid(*axes, indexing="ij")
    pts = np.stack(mesh, axis=-1)
    moved = group_mul(np.asarray(w, dtype=float), pts.reshape(-1, 2 * d + 1), d=d)
    vals = fld.interp(moved)
    return SampledField(vals.reshape(fld.samples.shape), d, fld.extents)


# ---- seminorms -------------------------------------------------------------

def _weight_pow(fld, n):
    w = 1.0 + _abs_Y_sq(fld) + _s_mesh(fld) ** 2
    return w ** (n / 2.0)


def phys_seminorm(fld, N, variant="sup", K=None):
    """Schwartz seminorm of a sampled field.

    ``variant='sup'`` returns  max_{|a| <= N} sup |(1 + |Y|^2 + s^2)^{N/2} d^a f|
    with derivatives by repeated fourth-order differencing.

    ``variant='l2'`` returns the L2-based family
    sqrt(||f||^2 + ||M_H^K f||^2 + ||Lap^K f||^2) with K defaulting to N;
    M_H multiplies by |Y|^2 - i s.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    if variant == "l2":
        K = N if K is None else K
        mh = fld
        lap = fld
        for _ in range(K):
            mh = apply_phys_op("MH", mh)
            lap = apply_phys_op("laplacian", lap)
        return math.sqrt(fld.l2_norm_sq() + mh.l2_norm_sq() + lap.l2_norm_sq())
    if variant != "sup":
        raise ValueError("variant must be 'sup' or 'l2'")

    nd = fld.samples.ndim
    steps = list(fld.spacings[:1]) * fld.d + list(fld.spacings[1:2]) * fld.d + [fld.spacings[2]]
    weight = _weight_pow(fld, N)
    best = 0.0

    def rec(arr, remaining, start_axis):
        nonlocal best
        best = max(best, float(np.abs(weight * arr).max()))
        if remaining == 0:
            return
        for ax in range(start_axis, nd):
            rec(_deriv(arr, ax, steps[ax]), remaining - 1, ax)

    rec(fld.samples, N, 0)
    return best
