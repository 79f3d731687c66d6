import numpy as np
import pytest

from alia import elliptic as ell
from alia import zcr
from alia.errors import DomainError, OffCurveError


@pytest.fixture(scope="module")
def curve():
    return ell.CurveParams(2, 1, 0)


def test_sampled_jets_satisfy_constraints():
    for field in ("real", "complex"):
        jet = zcr.sample_jet(3, field)
        assert max(jet.constraint_residuals().values()) < 1e-12


def test_zcr_vanishes(curve):
    pts = zcr.curve_points(curve, 4, 0)
    for s in range(5):
        jet = zcr.sample_jet(s)
        for p in pts:
            assert zcr.zcr_relative(jet, p, curve) < 1e-8


def test_zcr_complex_jets_and_analytic_points():
    c = ell.CurveParams(0, 1, 3)
    assert zcr.zcr_sweep(c, jets=3, points=3, seed=1, method="analytic", field="complex") < 1e-8


def test_broken_constraint_control(curve):
    pts = zcr.curve_points(curve, 5, 0)
    res = zcr.broken_constraint_residuals(curve, pts, 5, 0)
    assert np.median(res) > 1e-2


def test_constant_jet_is_stationary(curve):
    jet = zcr.constant_jet(np.array([0.6, 0.8, 0.0]))
    assert np.allclose(zcr.pde_rhs(jet, curve.r), 0)
    p = zcr.curve_points(curve, 1, 2)[0]
    assert zcr.zcr_residual(jet, p, curve) < 1e-12


def test_central_spread(curve):
    for p in zcr.curve_points(curve, 3, 4):
        assert zcr.central_spread(p, curve) < 1e-12


def test_errors(curve):
    jet = zcr.sample_jet(0)
    with pytest.raises(OffCurveError):
        zcr.lax_N(jet, (1, 1, 1), curve)
    with pytest.raises(DomainError):
        zcr.sample_jet(0, "quaternion")
    with pytest.raises(DomainError):
        zcr.curve_points(curve, 2, 0, method="other")
