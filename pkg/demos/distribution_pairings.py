"""Tempered distributions on the frequency set and their pairings.

Highlights: the transform of the origin point mass is the diagonal trace
functional; the transform of the constant one is a point mass at the
distinguished boundary origin with weight pi^{d+1} / 2^{d-1}; a function
of Y alone maps to a density against the boundary measure; supercritical
diagonal powers extend as finite parts.
"""

import math

import numpy as np
from scipy.special import gamma as gamma_fn

from hfourier import Distribution, LambdaGrid, YField, fourier_distribution, heat_profile, pair
from hfourier.distributions import g_hat_boundary


def main():
    grid = LambdaGrid(1e-4, 16.0, 160)
    theta = heat_profile(1.0)

    res = pair(Distribution.single("freq_identity_sum"), theta, grid, atol=3e-6)
    print(f"<transform of origin mass, heat(1)> = {res.value.real:.8f} "
          f"(pi^2/64 = {math.pi**2 / 64:.8f}, tail {res.tail_bound:.1e})")

    one = fourier_distribution(Distribution.single("phys_one"))
    res = pair(one, theta, grid)
    print(f"<transform of the constant, heat(1)> = {res.value.real:.6f} "
          f"(pi^2 * theta(0^) = {math.pi**2:.6f})")

    g = YField.from_function(lambda y, e: np.exp(-(y**2 + e**2)), 1, (6, 6), (33, 33))
    print("\nboundary transform of the Y-Gaussian (closed form pi e^{-x}):")
    for xd in (0.25, 1.0, 4.0):
        got = g_hat_boundary(g, (xd,), (0,)).real
        print(f"  x.={xd:4}: {got:.8f} vs {math.pi * math.exp(-xd):.8f}")
    res = pair(fourier_distribution(Distribution.single("phys_g_tensor_one", payload=g)),
               theta, grid)
    print(f"<transform of g x 1, heat(1)> = {res.value.real:.6f}")

    gma = 2.25
    Pf = Distribution.single("freq_finite_part", payload=gma)
    res = pair(Pf, theta, grid)
    want = (math.pi**2 / 4.0) * gamma_fn(2.0 - gma) * 4.0 ** (gma - 2.0)
    print(f"\nfinite part (exponent {gma}) on heat(1): {res.value.real:.4f} "
          f"(closed form {want:.4f})")


if __name__ == "__main__":
    main()
