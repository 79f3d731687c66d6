import numpy as np
import pytest

from alia import elliptic as ell
from alia import intertwiner as itw
from alia.errors import DomainError, OffCurveError, PoleError
from alia.liealg import det2, h

TAU = 0.3 + 0.9j


def _pts(n, seed=0, tau=TAU):
    mp = itw.as_modular(tau)
    return ell.sample_points(mp, n, np.random.default_rng(seed), punctures=(0.0, 0.25, 0.25 + mp.tau / 4, mp.tau / 4))


def test_det():
    for z in _pts(20):
        assert abs(det2(itw.omega(z, TAU)) - itw.omega_det_expected(z, TAU)) < 1e-10


def test_transformation_laws():
    for z in _pts(10, 1):
        chk = itw.omega_transform_check(z, TAU)
        for k in ("t1", "t2", "parity", "ad_t1", "ad_t2", "ad_parity"):
            assert chk[k] < 1e-10, k
        # without its scalar prefactor the t2 law fails
        assert chk["t2_no_prefactor"] > 1e-3


def test_variants_keep_ad_laws():
    z = _pts(1, 2)[0]
    for v in itw.VARIANTS:
        chk = itw.omega_transform_check(z, TAU, v)
        assert max(chk["ad_t1"], chk["ad_t2"], chk["ad_parity"]) < 1e-10
    assert len(set(itw.VARIANTS)) == 16


def test_ldu():
    for z in _pts(5, 3):
        f = itw.ldu_factor(z, TAU)
        assert np.allclose(f.L @ f.D @ f.U, itw.omega(z, TAU))
        assert f.L[0, 1] == 0 and f.U[1, 0] == 0


def test_ad_omega_traceless():
    z = _pts(1)[0]
    X = itw.ad_omega(z, h, TAU)
    assert abs(np.trace(X)) < 1e-12
    with pytest.raises(DomainError):
        itw.ad_omega(z, np.eye(2), TAU)


def test_poles():
    with pytest.raises(PoleError):
        itw.psi_pm(1, 0.5, TAU)
    with pytest.raises(DomainError):
        itw.psi_pm(0, 0.1, TAU)


def test_intrinsic_det_and_match():
    c = ell.CurveParams(0, 1, 3)
    rng = np.random.default_rng(4)
    for p in c.sample_points(10, rng):
        assert abs(det2(itw.omega_intrinsic(*p, c)) - (c.r3 - c.r2)) < 1e-10
    for z in _pts(10, 5, c.tau):
        m = itw.match_omega_variant(z, c)
        assert m.residual < 1e-8
        assert itw.intrinsic_scaling_residual(z, c, m) < 1e-8
    with pytest.raises(OffCurveError):
        itw.omega_intrinsic(1, 2, 3, c)
