"""The boundary of the frequency set: limits, kernel, and extensions.

Frequency points (n, m, lam) with lam(n + m) held fixed converge, as
lam -> 0, to boundary points (x., k); the transform symbol converges to a
compact oscillatory kernel whose k = 0 slice is the Bessel function
J_0(2 sqrt(x.) |Y|).  Profile-built frequency functions extend
continuously, and their discrete Laplacian and lambda-derivative attain
explicit boundary formulas at first order in lam.
"""

import math

import numpy as np
from scipy.special import j0

from hfourier import BoundaryPoint, boundary_diff, boundary_kernel, wigner_eval
from hfourier.diff_ops import delta_hat, dlambda_hat
from hfourier.profiles import profile_exp_floor, profile_to_freq_function


def main():
    Y = np.array([0.8, -0.5])
    print("symbol -> boundary kernel along lam (2n + k + 1) = x. :")
    xd, k = 1.0, 1
    K = boundary_kernel((xd,), (k,), Y)
    for n in (8, 32, 128):
        lam = xd / (2 * n + k + 1)
        W = wigner_eval((n,), (n + k,), lam, Y)
        print(f"  n={n:4d} lam={lam:8.5f}: |W - K| = {abs(W - K):.3e}")

    print("\nk = 0 kernel vs the Bessel closed form:")
    for xdot in (0.5, 2.0):
        got = boundary_kernel((xdot,), (0,), Y)
        want = j0(2 * math.sqrt(xdot) * float(np.hypot(*Y)))
        print(f"  x.={xdot}: {got.real:+.10f} vs J0 {want:+.10f}")

    print("\nboundary formulas of the discrete calculus on a floor profile:")
    P = profile_exp_floor(0.5, lam_slope=0.5)
    th = profile_to_freq_function(P)
    for xd, k in ((0.75, 0), (1.5, 2)):
        extL, extD = boundary_diff(P, BoundaryPoint((xd,), (k,)))
        lam = 1e-3
        n = int(round((xd / lam - k - 1) / 2))
        lam = xd / (2 * n + k + 1)
        la = np.array([lam])
        gl = delta_hat(th, (n,), (n + k,), la)[0]
        gd = dlambda_hat(th, (n,), (n + k,), la)[0]
        print(f"  (x.={xd}, k={k}): Laplacian {gl.real:+.6f} -> {extL.real:+.6f}, "
              f"d/dlam {gd.real:+.6f} -> {extD.real:+.6f}")


if __name__ == "__main__":
    main()
