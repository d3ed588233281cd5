"""Metric-measure structure of the frequency set and its completion.

Interior points are (n, m, lam) with n, m in N^d and lam != 0; the
completion adds boundary points (x., k) with x. in (R_-)^d u (R_+)^d and
k in Z^d (componentwise one strict sign, plus the distinguished origin).
The distance is

    interior-interior : |lam(n+m) - lam'(n'+m')|_1 + |(m-n)-(m'-n')|_1 + |lam-lam'|
    interior-boundary : |lam(n+m) - x.|_1 + |m-n-k|_1 + |lam|
    boundary-boundary : |x. - x.'|_1 + |k - k'|_1

and integration against the natural measure is the (n, m)-sum of
|lam|^d dlam integrals.  Every truncated sum returns a value together
with a tail estimate.
"""

import json
import math
from dataclasses import dataclass
from itertools import product

import numpy as np

__all__ = [
    "FreqPoint",
    "BoundaryPoint",
    "FreqFunction",
    "LambdaGrid",
    "IntegralResult",
    "distance",
    "weight_d0",
    "integrate",
    "freq_seminorm",
    "l1m_norm",
    "multi_indices",
]


# ---- points ---------------------------------------------------------------

@dataclass(frozen=True)
class FreqPoint:
    """Interior frequency point (n, m, lam), lam != 0."""

    n: tuple
    m: tuple
    lam: float

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(v) for v in self.n))
        object.__setattr__(self, "m", tuple(int(v) for v in self.m))
        if len(self.n) != len(self.m):
            raise ValueError("index lengths differ")
        if any(v < 0 for v in self.n + self.m):
            raise ValueError("indices must be nonnegative")
        if self.lam == 0:
            raise ValueError("lam must be nonzero")

    @property
    def d(self):
        return len(self.n)


@dataclass(frozen=True)
class BoundaryPoint:
    """Boundary point (x., k); all x.-components share one strict sign.

    The distinguished origin (all components zero, k = 0) is admitted as
    the closure point of the boundary half-lines.
    """

    xdot: tuple
    k: tuple

    def __post_init__(self):
        object.__setattr__(self, "xdot", tuple(float(v) for v in self.xdot))
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        if len(self.xdot) != len(self.k):
            raise ValueError("xdot and k lengths differ")
        signs = {v > 0 for v in self.xdot if v != 0}
        if any(v == 0 for v in self.xdot):
            if any(v != 0 for v in self.xdot) or any(self.k):
                raise ValueError("only the distinguished origin may have zero components")
        elif len(signs) > 1:
            raise ValueError("xdot components must share one strict sign")

    @property
    def d(self):
        return len(self.xdot)

    @property
    def is_origin(self):
        return all(v == 0 for v in self.xdot)


def _l1(v):
    return float(np.abs(np.asarray(v, dtype=float)).sum())


def distance(p, q):
    """Extended metric on the completed frequency set (all three branches)."""
    pi = isinstance(p, FreqPoint)
    qi = isinstance(q, FreqPoint)
    if pi and qi:
        a = np.asarray(p.n) + np.asarray(p.m)
        b = np.asarray(q.n) + np.asarray(q.m)
        return (
            _l1(p.lam * a - q.lam * b)
            + _l1((np.asarray(p.m) - np.asarray(p.n)) - (np.asarray(q.m) - np.asarray(q.n)))
            + abs(p.lam - q.lam)
        )
    if pi and not qi:
        return distance(q, p)
    if not pi and qi:
        a = np.asarray(q.n) + np.asarray(q.m)
        return (
            _l1(q.lam * a - np.asarray(p.xdot))
            + _l1(np.asarray(q.m) - np.asarray(q.n) - np.asarray(p.k))
            + abs(q.lam)
        )
    return _l1(np.asarray(p.xdot) - np.asarray(q.xdot)) + _l1(np.asarray(p.k) - np.asarray(q.k))


def weight_d0(p):
    """Decay weight |lam| (|n+m|_1 + d) + |m-n|_1 of an interior point."""
    n = np.asarray(p.n)
    m = np.asarray(p.m)
    return abs(p.lam) * (_l1(n + m) + p.d) + _l1(m - n)


# ---- lambda grid ----------------------------------------------------------

def _simpson_log_weights(count, step):
    """Weights of composite Simpson on a uniform grid of ``count`` points.

    The possibly left-over last interval is integrated by the quadratic
    through the final three points, keeping higher-order accuracy.
    """
    w = np.zeros(count)
    if count == 2:
        return np.array([0.5, 0.5]) * step
    pairs = (count - 1) // 2
    for i in range(pairs):
        w[2 * i] += step / 3.0
        w[2 * i + 1] += 4.0 * step / 3.0
        w[2 * i + 2] += step / 3.0
    if (count - 1) % 2 == 1:
        w[-3] += -step / 12.0
        w[-2] += 8.0 * step / 12.0
        w[-1] += 5.0 * step / 12.0
    return w


@dataclass
class LambdaGrid:
    """Signed geometric grid on +-[lambda_min, lambda_max], zero excluded.

    ``lam`` is ascending (negative branch then positive); ``weights``
    integrate smooth functions against plain dlam over the covered range.
    """

    lambda_min: float = 1e-4
    lambda_max: float = 16.0
    points_per_sign: int = 160

    def __post_init__(self):
        if not (0 < self.lambda_min < self.lambda_max):
            raise ValueError("need 0 < lambda_min < lambda_max")
        if self.points_per_sign < 2:
            raise ValueError("points_per_sign must be >= 2")
        P = self.points_per_sign
        t = np.linspace(math.log(self.lambda_min), math.log(self.lambda_max), P)
        pos = np.exp(t)
        wt = _simpson_log_weights(P, t[1] - t[0]) * pos  # dlam = lam dt
        self.lam = np.concatenate([-pos[::-1], pos])
        self.weights = np.concatenate([wt[::-1], wt])

    @property
    def ratio(self):
        return (self.lambda_max / self.lambda_min) ** (1.0 / (self.points_per_sign - 1))

    @property
    def positive(self):
        return self.lam[self.points_per_sign :]

    def refined(self, points_factor=2, lambda_min_factor=1.0):
        return LambdaGrid(
            self.lambda_min * lambda_min_factor,
            self.lambda_max,
            int(self.points_per_sign * points_factor),
        )

    def to_json(self):
        return json.dumps(
            {
                "lambda_min": self.lambda_min,
                "lambda_max": self.lambda_max,
                "points_per_sign": self.points_per_sign,
                "ratio": self.ratio,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text):
        raw = json.loads(text)
        return cls(raw["lambda_min"], raw["lambda_max"], int(raw["points_per_sign"]))

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.lambda_min, spec.lambda_max, spec.points_per_sign)


# ---- frequency functions ---------------------------------------------------

class FreqFunction:
    """Complex function on the frequency set, with optional extras.

    Parameters
    ----------
    interior : callable (n, m, lam_array) -> complex array
        n, m are multi-index tuples; vectorized over lam.
    dlam, dlam2 : callables, optional
        Analytic lambda-derivatives of the same signature.
    boundary : callable (xdot, k) -> complex, optional
        Continuous extension to the boundary.
    diagonal : bool
        True when the function vanishes off n == m (speeds up sums).
    """

    def __init__(self, interior, d=1, dlam=None, dlam2=None, boundary=None,
                 diagonal=False, band=None, label=""):
        self._interior = interior
        self.d = d
        self._dlam = dlam
        self._dlam2 = dlam2
        self._boundary = boundary
        self.diagonal = diagonal
        # largest |m - n| (per coordinate) carrying support; None = dense
        self.band = 0 if diagonal else band
        self.label = label

    def __call__(self, n, m, lam):
        n = tuple(int(v) for v in n)
        m = tuple(int(v) for v in m)
        lam = np.asarray(lam, dtype=float)
        return np.asarray(self._interior(n, m, lam), dtype=complex)

    @property
    def has_dlam(self):
        return self._dlam is not None

    def dlam(self, n, m, lam):
        """d theta / d lam, analytic when available, else a sign-preserving
        centered difference with step min(1e-4, |lam|/8)."""
        lam = np.asarray(lam, dtype=float)
        if self._dlam is not None:
            return np.asarray(self._dlam(tuple(n), tuple(m), lam), dtype=complex)
        h = np.minimum(1e-4, np.abs(lam) / 8.0)
        return (self(n, m, lam + h) - self(n, m, lam - h)) / (2.0 * h)

    def dlam2(self, n, m, lam):
        lam = np.asarray(lam, dtype=float)
        if self._dlam2 is not None:
            return np.asarray(self._dlam2(tuple(n), tuple(m), lam), dtype=complex)
        h = np.minimum(1e-4, np.abs(lam) / 8.0)
        if self._dlam is not None:
            return (self.dlam(n, m, lam + h) - self.dlam(n, m, lam - h)) / (2.0 * h)
        return (self(n, m, lam + h) - 2.0 * self(n, m, lam) + self(n, m, lam - h)) / (h * h)

    @property
    def has_boundary(self):
        return self._boundary is not None

    def at_boundary(self, xdot, k):
        if self._boundary is None:
            raise ValueError("no boundary extension attached")
        return complex(self._boundary(tuple(float(v) for v in xdot), tuple(int(v) for v in k)))

    def value_at_origin(self, grid=None):
        """theta(0^): boundary evaluator when present, else Richardson
        extrapolation of theta(0, 0, +-lam) in sqrt(lam)."""
        zero = (0,) * self.d
        if self._boundary is not None:
            return self.at_boundary((0.0,) * self.d, zero)
        lam1 = grid.lambda_min if grid is not None else 1e-5
        lam2 = 4.0 * lam1
        v1 = 0.5 * (self(zero, zero, np.array([lam1]))[0] + self(zero, zero, np.array([-lam1]))[0])
        v2 = 0.5 * (self(zero, zero, np.array([lam2]))[0] + self(zero, zero, np.array([-lam2]))[0])
        r1, r2 = math.sqrt(lam1), math.sqrt(lam2)
        return complex((r2 * v1 - r1 * v2) / (r2 - r1))


def multi_indices(d, n_max):
    """All multi-indices of length d with max entry <= n_max."""
    return [tuple(t) for t in product(range(n_max + 1), repeat=d)]


@dataclass
class IntegralResult:
    value: complex
    tail_bound: float

    def __iter__(self):
        yield self.value
        yield self.tail_bound


def _as_eval(theta):
    if isinstance(theta, FreqFunction):
        return theta, theta.d, theta.diagonal
    raise TypeError("expected a FreqFunction")


def _partners(n, d, n_max, band):
    """Second indices paired with n: the full box, or a band around n."""
    if band is None:
        return multi_indices(d, n_max)
    offsets = product(range(-band, band + 1), repeat=d)
    out = []
    for off in offsets:
        m = tuple(v + o for v, o in zip(n, off))
        if all(0 <= v <= n_max for v in m):
            out.append(m)
    return out


def integrate(theta, grid, n_max, d=None):
    """Truncated integral of theta against the frequency measure.

    Sums theta(n, m, lam) |lam|^d over multi-indices with max entry
    <= n_max and over the lambda grid.  Returns an :class:`IntegralResult`
    carrying a tail estimate built from the outermost index shell and the
    uncovered lambda ranges (an estimate, not a certified bound).
    """
    fn, d_fn, diagonal = _as_eval(theta)
    d = d_fn if d is None else d
    lam = grid.lam
    meas = np.abs(lam) ** d * grid.weights
    total = 0.0 + 0.0j
    shell_abs = {}
    edge_small = 0.0
    edge_large = 0.0
    P = grid.points_per_sign

    idx = multi_indices(d, n_max)
    for n in idx:
        for m in _partners(n, d, n_max, fn.band):
            row = fn(n, m, lam)
            total += np.sum(row * meas)
            absrow = np.abs(row)
            shell = max(max(n), max(m))
            shell_abs[shell] = shell_abs.get(shell, 0.0) + float(np.sum(absrow * np.abs(meas)))
            # mass of the uncovered strip |lam| < lambda_min, |theta| frozen at the edge
            edge_small += (absrow[P - 1] + absrow[P]) * grid.lambda_min ** (d + 1) / (d + 1)
            # geometric estimate beyond lambda_max
            a_last, a_prev = absrow[-1], absrow[-2]
            if a_prev > 0 and a_last < 0.9 * a_prev:
                q = a_last / a_prev
                step = grid.lam[-1] - grid.lam[-2]
                edge_large += 2.0 * a_last * abs(lam[-1]) ** d * step * q / (1.0 - q)

    tail_n = math.inf
    if n_max >= 2:
        s_last = shell_abs.get(n_max, 0.0)
        s_prev = shell_abs.get(n_max - 1, 0.0)
        if s_last == 0.0:
            tail_n = 0.0
        elif s_prev > 0 and s_last < 0.95 * s_prev:
            q = s_last / s_prev
            tail_n = s_last * q / (1.0 - q)
        elif s_prev > s_last > 0:
            # slow (power-like) shell decay: fit s_n ~ C n^-p
            pexp = math.log(s_prev / s_last) / math.log(n_max / (n_max - 1.0))
            if pexp > 1.05:
                tail_n = s_last * n_max / (pexp - 1.0)
    return IntegralResult(complex(total), float(tail_n + edge_small + edge_large))


def l1m_norm(theta, p, grid, n_max, d=None):
    """Moderate-growth norm: integral of (1 + |lam|(|n+m|+d) + |n-m|)^{-p} |theta|."""
    fn, d_fn, diagonal = _as_eval(theta)
    d = d_fn if d is None else d

    def weighted(n, m, lam):
        nm = float(np.abs(np.asarray(n) + np.asarray(m)).sum())
        diff = float(np.abs(np.asarray(n) - np.asarray(m)).sum())
        w = (1.0 + np.abs(lam) * (nm + d) + diff) ** (-p)
        return w * np.abs(fn(n, m, lam))

    wrapped = FreqFunction(weighted, d=d, diagonal=diagonal, band=fn.band)
    return integrate(wrapped, grid, n_max, d=d)


def freq_seminorm(theta, N, Np, n_sup=12, lam_values=None, grid=None):
    """Schwartz seminorm on the frequency set.

    sup over the truncated point set of
        (1 + d0)^N (|Lap^Np theta| + |Dlam^Np theta| + |Sig0 Dlam^Np theta|),
    where d0 is the decay weight, Lap / Dlam / Sig0 the discrete
    frequency-space operators.  ``Np = 0`` reduces the bracket to 3|theta|.
    """
    from . import diff_ops  # local import; diff_ops depends on this module

    fn, d, diagonal = _as_eval(theta)
    if lam_values is None:
        if grid is None:
            grid = LambdaGrid()
        lam_values = grid.lam[:: max(1, len(grid.lam) // 96)]
    lam_values = np.asarray(lam_values, dtype=float)

    work = theta
    for _ in range(Np):
        work = diff_ops.lift(diff_ops.dlambda_hat, work)
    lap = theta
    for _ in range(Np):
        lap = diff_ops.lift(diff_ops.delta_hat, lap)
    sig = diff_ops.lift(diff_ops.sigma0_hat, work)

    # the seminorm operators shift n and m together (or swap them), so the
    # off-diagonal band of theta is preserved
    band = fn.band
    best = 0.0
    idx = multi_indices(d, n_sup)
    for n in idx:
        for m in _partners(n, d, n_sup, band):
            nm = float(np.abs(np.asarray(n) + np.asarray(m)).sum())
            diff = float(np.abs(np.asarray(n) - np.asarray(m)).sum())
            w = (1.0 + np.abs(lam_values) * (nm + d) + diff) ** N
            mag = np.abs(lap(n, m, lam_values)) + np.abs(work(n, m, lam_values)) + np.abs(
                sig(n, m, lam_values)
            )
            best = max(best, float(np.max(w * mag)))
    return best
