"""Acceptance gate: every headline identity at its pinned tolerance.

Each test prints one pass/fail line per check.  The checks are defined in
:mod:`hfourier.verify` (shared with ``hfourier verify``); heavy artifacts
are shared through a module-scoped context.  Defaults: d = 1, index cap
24, lambda grid of 160 points per sign on [1e-4, 16], physical grid 33^3
on [-6, 6]^3 (a taller vertical box for the checks that integrate slowly
decaying vertical tails).
"""

import pytest

from hfourier import verify as V


@pytest.fixture(scope="module")
def ctx():
    return V.VerifyContext()


def _run(records):
    for rec in records:
        print(rec.line())
    bad = [r for r in records if not r.passed]
    assert not bad, "failed: " + "; ".join(r.test_id for r in bad)


def test_c01_plancherel(ctx):
    _run(V.c01_plancherel(ctx))


def test_c02_inversion(ctx):
    _run(V.c02_inversion(ctx))


def test_c03_convolution(ctx):
    _run(V.c03_convolution(ctx))


def test_c04_sublaplacian(ctx):
    _run(V.c04_laplacian(ctx))


def test_c05_weight_identities(ctx):
    _run(V.c05_weight_identities(ctx))


def test_c06_primitive(ctx):
    _run(V.c06_primitive(ctx))


def test_c07_wigner_symmetry(ctx):
    _run(V.c07_wigner_symmetry(ctx))


def test_c08_boundary_limit(ctx):
    _run(V.c08_boundary_limit(ctx))


def test_c09_boundary_extensions(ctx):
    _run(V.c09_boundary_extensions(ctx))


def test_c10_ladder(ctx):
    _run(V.c10_ladder(ctx))


def test_c11_equivalence(ctx):
    _run(V.c11_equivalence(ctx))


def test_c12_distributions(ctx):
    _run(V.c12_distributions(ctx))


def test_c13_moderate_growth(ctx):
    _run(V.c13_moderate_growth(ctx))


def test_c14_sqrt_modulus(ctx):
    _run(V.c14_sqrt_modulus(ctx))


def test_c15_mollifier(ctx):
    _run(V.c15_mollifier(ctx))


def test_c16_heat(ctx):
    _run(V.c16_heat(ctx))
