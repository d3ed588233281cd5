"""Discrete calculus on the frequency set.

All operators act through finite combinations of values at the index
shifts (n +- e_j, m +- e_j, lam); terms whose square-root coefficient
vanishes are dropped before any evaluation at invalid indices.  The
frequency Laplacian divides by 2|lam| while the lambda-derivative
operator divides by the signed 2 lam; both are kept exactly as defined.
"""

import numpy as np

from .freq_space import FreqFunction

__all__ = [
    "delta_hat",
    "dlambda_hat",
    "sigma0_hat",
    "mhat",
    "ladder_freq",
    "lift",
]


def _shift(idx, j, step):
    lst = list(idx)
    lst[j] += step
    return tuple(lst)


def delta_hat(theta, n, m, lam):
    """Frequency Laplacian: second-difference combination across index shifts."""
    lam = np.asarray(lam, dtype=float)
    d = len(n)
    absl = np.abs(lam)
    tot = sum(n) + sum(m)
    val = -(tot + d) * theta(n, m, lam)
    for j in range(d):
        up = np.sqrt((n[j] + 1.0) * (m[j] + 1.0))
        val = val + up * theta(_shift(n, j, 1), _shift(m, j, 1), lam)
        if n[j] >= 1 and m[j] >= 1:
            down = np.sqrt(float(n[j] * m[j]))
            val = val + down * theta(_shift(n, j, -1), _shift(m, j, -1), lam)
    return val / (2.0 * absl)


def dlambda_hat(theta, n, m, lam):
    """Lambda derivative: d/dlam plus signed index-shift corrections."""
    lam = np.asarray(lam, dtype=float)
    d = len(n)
    val = theta.dlam(n, m, lam) + (d / (2.0 * lam)) * theta(n, m, lam)
    acc = 0.0
    for j in range(d):
        if n[j] >= 1 and m[j] >= 1:
            acc = acc + np.sqrt(float(n[j] * m[j])) * theta(_shift(n, j, -1), _shift(m, j, -1), lam)
        acc = acc - np.sqrt((n[j] + 1.0) * (m[j] + 1.0)) * theta(
            _shift(n, j, 1), _shift(m, j, 1), lam
        )
    return val + acc / (2.0 * lam)


def sigma0_hat(theta, n, m, lam):
    """Signed-frequency difference quotient linking lam > 0 and lam < 0."""
    lam = np.asarray(lam, dtype=float)
    parity = (-1.0) ** (sum(n) + sum(m))
    return (theta(n, m, lam) - parity * theta(m, n, -lam)) / lam


def mhat(theta, n, m, lam):
    """Diagonal multiplier 4 |lam| (2|m| + d), the sub-Laplacian symbol."""
    lam = np.asarray(lam, dtype=float)
    d = len(n)
    return 4.0 * np.abs(lam) * (2.0 * sum(m) + d) * theta(n, m, lam)


def _mhat_plus(theta, j, n, m, lam):
    lam = np.asarray(lam, dtype=float)
    root = np.sqrt(np.abs(lam))
    val = np.sqrt(2.0 * m[j] + 2.0) * theta(n, _shift(m, j, 1), lam)
    if m[j] >= 1:
        val = val - np.sqrt(2.0 * m[j]) * theta(n, _shift(m, j, -1), lam)
    return root * val


def _mhat_minus(theta, j, n, m, lam):
    lam = np.asarray(lam, dtype=float)
    root = np.sqrt(np.abs(lam))
    val = np.sqrt(2.0 * m[j] + 2.0) * theta(n, _shift(m, j, 1), lam)
    if m[j] >= 1:
        val = val + np.sqrt(2.0 * m[j]) * theta(n, _shift(m, j, -1), lam)
    return (1j * lam / root) * val


def _dhat(theta, j, sign, n, m, lam):
    lam = np.asarray(lam, dtype=float)
    root2 = 2.0 * np.sqrt(np.abs(lam))
    pos = np.sqrt(2.0 * m[j] + 2.0) * theta(n, _shift(m, j, 1), lam) * (-1.0)
    if n[j] >= 1:
        pos = pos + np.sqrt(2.0 * n[j]) * theta(_shift(n, j, -1), m, lam)
    neg = np.sqrt(2.0 * n[j] + 2.0) * theta(_shift(n, j, 1), m, lam)
    if m[j] >= 1:
        neg = neg - np.sqrt(2.0 * m[j]) * theta(n, _shift(m, j, -1), lam)
    pick_pos = lam > 0 if sign > 0 else lam < 0
    return np.where(pick_pos, pos, neg) / root2


_KINDS = {"mhat", "mhat_plus", "mhat_minus", "dhat_plus", "dhat_minus"}


def ladder_freq(kind, theta, n, m, lam, j=0):
    """Ladder-type frequency multipliers.

    ``mhat`` is the diagonal sub-Laplacian symbol; ``mhat_plus`` /
    ``mhat_minus`` are the images of the left-invariant horizontal fields;
    ``dhat_plus`` / ``dhat_minus`` (images of multiplication by
    y_j +- i eta_j) select their index-shift branch by the sign of lam.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown multiplier {kind!r}")
    n = tuple(int(v) for v in n)
    m = tuple(int(v) for v in m)
    if kind == "mhat":
        return mhat(theta, n, m, lam)
    if kind == "mhat_plus":
        return _mhat_plus(theta, j, n, m, lam)
    if kind == "mhat_minus":
        return _mhat_minus(theta, j, n, m, lam)
    if kind == "dhat_plus":
        return _dhat(theta, j, +1, n, m, lam)
    return _dhat(theta, j, -1, n, m, lam)


def lift(op, theta, **kw):
    """Wrap an operator application as a new FreqFunction.

    The lambda-derivative of the lifted function falls back to the
    sign-preserving finite difference of the base class.
    """

    def interior(n, m, lam):
        return op(theta, n, m, lam, **kw)

    label = getattr(op, "__name__", "op") + ":" + theta.label
    return FreqFunction(interior, d=theta.d, label=label)
