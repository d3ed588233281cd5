"""Tempered distributions on the group and on its frequency set.

A distribution is a finite linear combination of tagged terms.  Physical
side: function-backed, the point mass at the group origin, the constant
one, and g (x) 1 (a function of Y only).  Frequency side: moderate-growth
function-backed, the diagonal trace functional, point mass at the
distinguished boundary origin, finite parts of supercritical diagonal
powers, and densities against the boundary measure.

The boundary measure is normalized as the vague limit of concentrating
frequency profiles:

    <mu, theta> = 2^{-d-1} sum_k ( int_{(R_-)^d} + int_{(R_+)^d} )
                  theta(x., k) dx.

(the half in front of the orthant sum makes lim_{eps -> 0}
iota(psi(./eps)/eps) = mu exact for unit-integral psi; the transform of a
vertical-constant tensor then carries the factor 2 pi).
"""

import math
from dataclasses import dataclass

import numpy as np


from .freq_space import FreqFunction, LambdaGrid, integrate, multi_indices
from .wigner import boundary_kernel

__all__ = [
    "Distribution",
    "pair",
    "fourier_distribution",
    "g_hat_boundary",
    "make_f_gamma",
    "PairResult",
]

_PHYS_KINDS = {"phys_function", "phys_dirac", "phys_one", "phys_g_tensor_one"}
_FREQ_KINDS = {
    "freq_function",
    "freq_identity_sum",
    "freq_dirac_origin",
    "freq_finite_part",
    "freq_boundary_measure",
}


@dataclass
class Distribution:
    """Finite linear combination of tagged terms: [(coeff, kind, payload)]."""

    terms: list
    d: int = 1

    def __post_init__(self):
        sides = set()
        for coeff, kind, payload in self.terms:
            if kind in _PHYS_KINDS:
                sides.add("phys")
            elif kind in _FREQ_KINDS:
                sides.add("freq")
            else:
                raise ValueError(f"unknown distribution kind {kind!r}")
            if kind == "freq_finite_part":
                gamma = float(payload)
                if not (self.d + 1 < gamma < self.d + 1.5):
                    raise ValueError("finite-part exponent must lie in (d+1, d+3/2)")
        if len(sides) > 1:
            raise ValueError("cannot mix physical and frequency terms")
        self.side = sides.pop() if sides else "freq"

    @classmethod
    def single(cls, kind, payload=None, coeff=1.0, d=1):
        return cls([(coeff, kind, payload)], d=d)

    def __add__(self, other):
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        return Distribution(self.terms + other.terms, d=self.d)

    def scaled(self, c):
        return Distribution([(c * a, k, p) for a, k, p in self.terms], d=self.d)


@dataclass
class PairResult:
    value: complex
    tail_bound: float


def _diagonal_band_sum(theta, grid, d, atol=1e-6, n_cap=20000):
    """sum over the support band around the diagonal of the measure sum;
    the diagonal extent adapts with a power-decay tail estimate (d = 1)."""
    lam = grid.lam
    meas = np.abs(lam) ** d * grid.weights
    band = theta.band if theta.band is not None else 0
    if d > 1:
        total = 0.0 + 0.0j
        for n in multi_indices(d, 24):
            total += np.sum(theta(n, n, lam) * meas)
        return complex(total), math.inf
    total = 0.0 + 0.0j
    prev = None
    n = 0
    tail = math.inf
    strip = 0.0
    P = grid.points_per_sign
    while n <= n_cap:
        size = 0.0
        for k in range(-band, band + 1):
            if n + k < 0:
                continue
            vals = theta((n,), (n + k,), lam)
            total += np.sum(vals * meas)
            size += abs(np.sum(vals * meas))
            strip += (abs(vals[P - 1]) + abs(vals[P])) * grid.lambda_min ** (d + 1) / (d + 1)
        if prev is not None and n >= 8:
            if size == 0.0:
                tail = 0.0
                break
            if size < prev:
                p = math.log(prev / size) / math.log(n / (n - 1.0))
                if p > 1.05:
                    tail = size * n / (p - 1.0)
                    if tail < atol:
                        break
        prev = size
        n += 1
    return complex(total), float(tail + strip)


def _identity_sum(theta, grid, d, atol=1e-6, n_cap=20000):
    """sum_n int theta(n, n, lam) |lam|^d dlam (the trace functional)."""
    diag = FreqFunction(
        lambda n, m, lam: theta(n, m, lam) if tuple(n) == tuple(m) else np.zeros_like(lam, dtype=complex),
        d=d,
        diagonal=True,
    )
    return _diagonal_band_sum(diag, grid, d, atol=atol, n_cap=n_cap)


def _finite_part(gamma, theta, grid, d, atol=1e-7, n_cap=4000):
    """Symmetrized, origin-subtracted integral of the supercritical power.

    The covered grid is completed by the exact tail of the constant part:
    beyond lambda_max the test function has decayed and the integrand is
    -2 theta(0^) (|lam|(2n+d))^{-gamma} |lam|^d, whose integral is
    analytic (the whole point of gamma < d + 3/2 < gamma + 1/2 is that it
    still converges at infinity).
    """
    theta0 = theta.value_at_origin(grid)
    pos = grid.lam[grid.lam > 0]
    wpos = grid.weights[grid.lam > 0]
    total = 0.0 + 0.0j
    zeta = 0.0
    prev = None
    tail = math.inf
    n = 0
    while n <= n_cap:
        tp = theta((n,) * d, (n,) * d, pos)
        tm = theta((n,) * d, (n,) * d, -pos)
        density = (tp + tm - 2.0 * theta0) / (pos * (2.0 * n + d)) ** gamma
        # half of both half-lines equals one signed half-line of the
        # even-symmetrized integrand
        row = np.sum(density * pos**d * wpos)
        total += row
        zeta += (2.0 * n + d) ** (-gamma)
        size = abs(row)
        if prev is not None and n >= 8 and size < prev:
            p = math.log(prev / size) / math.log(n / (n - 1.0))
            if p > 1.05:
                tail = size * n / (p - 1.0)
                if tail < atol:
                    break
        prev = size
        n += 1
    # remainder of the diagonal zeta-type sum, integral estimate
    zeta += (2.0 * n + d) ** (1.0 - gamma) / (2.0 * (gamma - 1.0))
    beyond = -2.0 * theta0 * zeta * grid.lambda_max ** (d + 1.0 - gamma) / (gamma - d - 1.0)
    return complex(total + beyond), float(tail)


def _halfline_rule(x_max=28.0, panels=12, q=24):
    xi, om = np.polynomial.legendre.leggauss(q)
    edges = np.concatenate([[0.0], np.geomspace(0.02, x_max, panels)])
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (a + b) + 0.5 * (b - a) * xi)
        ws.append(0.5 * (b - a) * om)
    return np.concatenate(xs), np.concatenate(ws)


def _boundary_measure_pair(density, theta, d, k_band=None, x_max=28.0):
    """2^{-d-1} sum_k (both orthants) density * theta against dx (d = 1)."""
    if d != 1:
        raise ValueError("boundary-measure pairing implemented for d = 1")
    if k_band is None:
        k_band = theta.band if theta.band is not None else 8
    xs, ws = _halfline_rule(x_max)
    total = 0.0 + 0.0j
    ks = list(range(-k_band, k_band + 1))
    for sign in (-1.0, 1.0):
        sx = sign * xs
        if hasattr(density, "batch"):
            dens = density.batch(sx, ks)  # (len(xs), len(ks))
        else:
            dens = np.array([[density((v,), (k,)) for k in ks] for v in sx])
        thv = np.array([[theta.at_boundary((v,), (k,)) for k in ks] for v in sx])
        total += np.sum(dens * thv * ws[:, None])
    return 0.25 * complex(total)


def pair(T, theta, grid=None, n_max=24, atol=1e-6):
    """Pairing of a frequency-side distribution with a test function.

    Returns a :class:`PairResult` with the value and a truncation-tail
    estimate (zero for the exact point evaluations).
    """
    if T.side != "freq":
        raise ValueError("pair a frequency-side distribution (transform first)")
    grid = grid if grid is not None else LambdaGrid()
    value = 0.0 + 0.0j
    tail = 0.0
    for coeff, kind, payload in T.terms:
        if kind == "freq_function":
            res = integrate(_product_fn(payload, theta), grid, n_max)
            value += coeff * res.value
            tail += abs(coeff) * res.tail_bound
        elif kind == "freq_identity_sum":
            v, t = _identity_sum(theta, grid, T.d, atol=atol)
            value += coeff * v
            tail += abs(coeff) * t
        elif kind == "freq_dirac_origin":
            value += coeff * theta.value_at_origin(grid)
        elif kind == "freq_finite_part":
            v, t = _finite_part(float(payload), theta, grid, T.d, atol=atol)
            value += coeff * v
            tail += abs(coeff) * t
        elif kind == "freq_boundary_measure":
            value += coeff * _boundary_measure_pair(payload, theta, T.d)
        else:  # pragma: no cover
            raise ValueError(kind)
    return PairResult(complex(value), float(tail))


def _product_fn(psi, theta):
    band = None
    if psi.band is not None and theta.band is not None:
        band = min(psi.band, theta.band)

    def interior(n, m, lam):
        return psi(n, m, lam) * theta(n, m, lam)

    return FreqFunction(interior, d=psi.d, diagonal=psi.diagonal or theta.diagonal, band=band)


def g_hat_boundary(g, xdot, k):
    """Boundary transform of a Y-only function: quadrature of the conjugate
    boundary kernel against g over its grid."""
    d = g.d
    mesh = np.meshgrid(*([g.y_axis] * d + [g.eta_axis] * d), indexing="ij")
    Y = np.stack(mesh, axis=-1).reshape(-1, 2 * d)
    kern = np.conj(boundary_kernel(xdot, k, Y)).reshape(g.samples.shape)
    return complex(np.sum(kern * g.samples) * g.cell_area)


def g_hat_boundary_batch(g, xs, k_list, M=512):
    """Vectorized d = 1 boundary transform over many boundary abscissae.

    Swaps the kernel's angular integral outside the Y-quadrature: for each
    angle the Y-sum is a plain 2-d Fourier sum of g, reused for every k.
    Returns an array of shape (len(xs), len(k_list)).
    """
    if g.d != 1:
        raise ValueError("batch boundary transform implemented for d = 1")
    xs = np.asarray(xs, dtype=float)
    z = -math.pi + 2.0 * math.pi * np.arange(M) / M
    y = g.y_axis
    eta = g.eta_axis
    out = np.empty((len(xs), len(k_list)), dtype=complex)
    kvec = np.asarray(k_list)
    for i, xv in enumerate(xs):
        amp = 2.0 * math.sqrt(abs(xv)) if xv != 0 else 0.0
        sgn = 1.0 if xv >= 0 else -1.0
        py = amp * np.sin(z)                      # (M,)
        pe = amp * sgn * np.cos(z)
        Ey = np.exp(-1j * np.outer(y, py))        # (Ny, M)
        Ee = np.exp(-1j * np.outer(eta, pe))      # (Ne, M)
        A = np.einsum("ye,ym,em->m", g.samples, Ey, Ee, optimize=True) * g.cell_area
        phases = np.exp(-1j * np.outer(kvec, z))  # (K, M)
        out[i] = (phases @ A) / M
    return out


class GHatDensity:
    """Boundary density (G g)(x., k) with a vectorized batch evaluator."""

    def __init__(self, g):
        self.g = g

    def __call__(self, xdot, k):
        return g_hat_boundary(self.g, xdot, k)

    def batch(self, xs, k_list):
        return g_hat_boundary_batch(self.g, xs, k_list)


def fourier_distribution(T, grid=None, n_max=24, phys_pipeline=None):
    """Fourier transform of a physical-side distribution, term by term.

    Closed forms: the origin point mass maps to the diagonal trace
    functional; the constant one to pi^{d+1}/2^{d-1} times the point mass
    at the distinguished boundary origin; g (x) 1 to 2 pi (G g) against
    the boundary measure.  Function-backed terms go through the factored
    transform (``phys_pipeline`` overrides the table builder).
    """
    if T.side != "phys":
        raise ValueError("expected a physical-side distribution")
    d = T.d
    out = []
    for coeff, kind, payload in T.terms:
        if kind == "phys_dirac":
            out.append((coeff, "freq_identity_sum", None))
        elif kind == "phys_one":
            out.append((coeff * math.pi ** (d + 1) / 2.0 ** (d - 1), "freq_dirac_origin", None))
        elif kind == "phys_g_tensor_one":
            out.append((coeff * 2.0 * math.pi, "freq_boundary_measure", GHatDensity(payload)))
        elif kind == "phys_function":
            from .transform import forward_factored

            builder = phys_pipeline or forward_factored
            table = builder(payload, n_max, grid if grid is not None else LambdaGrid())
            out.append((coeff, "freq_function", table.as_freq_function()))
        else:  # pragma: no cover
            raise ValueError(kind)
    return Distribution(out, d=d)


def make_f_gamma(gamma, d=1):
    """Diagonal power family (|lam| (2|m| + d))^{-gamma} delta_{n,m}."""
    if gamma <= 0:
        raise ValueError("gamma must be positive")

    def interior(n, m, lam):
        lam = np.asarray(lam, dtype=float)
        if tuple(n) != tuple(m):
            return np.zeros(lam.shape, dtype=complex)
        return (np.abs(lam) * (2.0 * sum(m) + d)) ** (-gamma) + 0j

    return FreqFunction(interior, d=d, diagonal=True, label=f"f_gamma({gamma})")
