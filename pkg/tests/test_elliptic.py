import math

import numpy as np
import pytest

from alia import elliptic as ell
from alia.errors import DegenerateError, OffCurveError, PoleError

# g2 of Z + Zi is Gamma(1/4)^8 / (16 pi^2); g3 vanishes
G2_SQUARE = math.gamma(0.25) ** 8 / (16 * math.pi**2)


def test_mu_relations_define_the_curve():
    tau = 0.3 + 0.9j
    d = ell.mu_differences(tau)
    for z in ell.sample_points(tau, 20, np.random.default_rng(0)):
        m = ell.mu_all(z, tau)
        for (i, j), v in d.items():
            assert abs(m[i - 1] ** 2 - m[j - 1] ** 2 - v) < 1e-10 * max(1, abs(m[0]) ** 2)


def test_mu_pole():
    with pytest.raises(PoleError):
        ell.mu(1, 0.5, 1j)


def test_modular_lambda_at_i():
    assert abs(ell.modular_lambda(1j) - 0.5) < 1e-15


def test_tau_from_r_round_trip():
    mp = ell.tau_from_r(5, 2, -1)
    assert abs(ell.modular_lambda(mp) - 0.5) < 1e-12
    mp = ell.tau_from_r(3, 1, 0)
    assert abs(ell.modular_lambda(mp) - 1 / 3) < 1e-12
    with pytest.raises(DegenerateError):
        ell.tau_from_r(1, 1, 0)


def test_curve_uniformization():
    c = ell.CurveParams(0, 1, 3)
    for z in ell.sample_points(c.tau, 20, np.random.default_rng(1)):
        lam = c.uniformize(z)
        assert c.curve_residual(lam) < 1e-10 * max(1, abs(lam[0]) ** 2)
    with pytest.raises(OffCurveError):
        c.check_on_curve((1, 1, 1))


def test_canonical_curve_at_i():
    c = ell.CurveParams.from_tau(1j)
    assert abs(sum(c.r)) < 1e-14
    assert abs(c.R(1, 2) - c.R(2, 3)) < 1e-12
    assert abs(c.scale - 1) < 1e-12


def test_wp_invariants_square_lattice():
    g2, g3 = ell.invariants_g2_g3(ell.Lattice(1j))
    assert abs(g2 - G2_SQUARE) < 1e-10
    assert abs(g3) < 1e-10


def test_wp_laurent_and_periodicity():
    lat = ell.Lattice(0.3 + 0.9j, 1.3)
    z = 1e-3 * (1 + 1j)
    assert abs(ell.wp(z, lat) - 1 / z**2) < 1e-3
    w = 0.2 + 0.31j
    for p in lat.periods:
        assert abs(ell.wp(w + p, lat) - ell.wp(w, lat)) < 1e-10


def test_wp_ode():
    lat = ell.Lattice(2j)
    g2, g3 = ell.invariants_g2_g3(lat)
    for z in ell.sample_points(2j, 30, np.random.default_rng(2), radius=0.2):
        p = ell.wp(z, lat)
        assert abs(ell.wp_prime(z, lat) ** 2 - 4 * p**3 + g2 * p + g3) < 1e-9


def test_half_periods_sum_to_zero():
    e = ell.half_period_values(ell.Lattice(0.3 + 0.9j))
    assert abs(sum(e)) < 1e-10


def test_wp_zero():
    zp, zm = ell.wp_zero(ell.Lattice(1j))
    assert abs(zp.z - (0.5 + 0.5j)) < 1e-7
    assert ell.wp_has_double_zero(ell.Lattice(1j))
    lat = ell.Lattice(2j)
    zp, zm = ell.wp_zero(lat)
    assert zp != zm
    assert abs(ell.wp(zp.z, lat)) < 1e-10


def test_jacobi_functions():
    tau = 0.2 + 1.3j
    k2 = ell.jacobi_modulus(tau) ** 2
    for u in (0.3 + 0.1j, -0.7 + 0.2j):
        sn, cn, dn = ell.jacobi_sn_cn_dn(u, tau)
        assert abs(sn**2 + cn**2 - 1) < 1e-12
        assert abs(dn**2 + k2 * sn**2 - 1) < 1e-12
    J = ell.jacobi_J(tau)
    z = 0.4 + 0.05j
    w = {i: ell.jacobi_w(i, z, tau) for i in (1, 2, 3)}
    for (i, j), v in J.items():
        assert abs(w[i] ** 2 - w[j] ** 2 - v) < 1e-10


def test_two_point_split_recovers_coefficients():
    tau = 2j
    zp, zm = 0.11 + 0.2j, -0.3 + 0.05j
    f = lambda z: 2 * ell.mu(1, z - zp, tau) - 0.5j * ell.mu(1, z - zm, tau)  # noqa: E731
    res = ell.two_point_split(1, f, zp, zm, tau)
    assert abs(res.c1 - 2) < 1e-10 and abs(res.c2 + 0.5j) < 1e-10
    assert not res.flagged
    g = lambda z: ell.mu(2, z, tau)  # noqa: E731
    assert ell.two_point_split(1, g, zp, zm, tau).flagged


def test_isotypical_projection():
    tau = 1j
    z = 0.2 + 0.13j
    f = lambda w: ell.mu(1, w, tau)  # noqa: E731
    # mu_1 is even under z + 1/2 and odd under z + tau/2
    total = sum(ell.isotypical_project(f, (i, j), z, tau) for i in (0, 1) for j in (0, 1))
    assert abs(total - f(z)) < 1e-12
    assert abs(ell.isotypical_project(f, (0, 1), z, tau) - f(z)) < 1e-12
    assert abs(ell.isotypical_project(f, (1, 0), z, tau)) < 1e-12
