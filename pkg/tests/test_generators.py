import numpy as np
import pytest

from alia import elliptic as ell
from alia import generators as gen
from alia.errors import DegenerateError, DomainError

TAU = 0.3 + 0.9j


def _pts(n, seed=0, tau=TAU):
    return ell.sample_points(tau, n, np.random.default_rng(seed))


@pytest.mark.parametrize("mode", gen.MODES)
def test_sl2_relations(mode):
    for z in _pts(10):
        assert max(gen.sl2_residuals(*gen.hef(z, TAU, mode)).values()) < 1e-10


def test_bare_f_fails_sl2():
    z = _pts(1)[0]
    assert max(gen.sl2_residuals(*gen.hef(z, 1j, "closed_form", bare_f=True)).values()) > 1e-3


def test_closed_form_is_base_variant():
    for z in _pts(3, 1):
        v, res = gen.match_hef_variant(z, TAU)
        assert v.as_tuple() == (0, 0, 0, 0)
        assert res < 1e-9


def test_equivariance():
    for z in _pts(5, 2):
        for mode in gen.MODES:
            assert max(gen.hef_equivariance(z, TAU, mode).values()) < 1e-10


def test_generator_triple_callables():
    trip = gen.generator_triple(TAU, "closed_form")
    z = _pts(1, 3)[0]
    assert np.allclose(trip.H(z), gen.hef(z, TAU, "closed_form")[0])
    with pytest.raises(DomainError):
        gen.hef(z, TAU, "other")


def test_tilde_forms():
    c = ell.CurveParams(0, 1, 3)
    rng = np.random.default_rng(5)
    for p in c.sample_points(5, rng):
        for s in gen.SIGN_CHOICES:
            assert max(gen.sl2_residuals(*gen.hef_tilde(*p, c, s)).values()) < 1e-10
            assert gen.hef_tilde_equivariance(p, c, s) < 1e-10
    for z in _pts(5, 6, c.tau):
        signs, res = gen.match_hef_tilde(z, c)
        assert res < 1e-8


def test_x_generators():
    for z in _pts(5, 7):
        assert max(gen.x_generator_checks(z, TAU).values()) < 1e-10


def test_g3_numeric_sign():
    c = ell.CurveParams(0, 1, 3)
    out = gen.g3_relations_numeric(_pts(1, 8, c.tau)[0], c)
    assert out["nested"] < 1e-10 and out["difference"] < 1e-10
    assert out["plain_flipped"] < 1e-10
    assert out["plain_difference"] > 1e-3


def test_real_form_at_i():
    assert abs(gen.alpha_constant() - 0.8472130847939790866) < 1e-15
    for x in (0.1, -0.33, 0.41):
        m = gen.real_form_check(x, 1.0)
        assert m["imag"] < 1e-10 and m["R"] < 1e-10
        assert m["beta_form_HE"] < 1e-10 and m["beta_form_F"] < 1e-10
        assert m["bare_F"] > 1e-3


def test_real_form_other_q():
    m = gen.real_form_check(0.2, 1.7)
    assert m["imag"] < 1e-10 and m["ad_T2"] < 1e-10
    assert gen.omega_conjugation_residual(0.2 + 0.1j, 1.7) < 1e-10


def test_uglov():
    res = gen.uglov_check(0.0, 0.3 + 0.2j, 2j, samples=10, seed=1)
    assert max(res[k] for k in ("nested", "J", "commute", "cross")) < 1e-8
    assert abs(res["c"] - 2 * ell.jacobi_argument_scale(2j)) < 1e-12


def test_holod_lambda_is_wp():
    c = ell.CurveParams.from_tau(2j)
    for z in _pts(5, 2, 2j):
        assert max(gen.holod_wp_check(z, c).values()) < 1e-10


def test_holod_brackets_numeric():
    c = ell.CurveParams(0, 1, 3)
    z = _pts(1, 3, c.tau)[0]
    assert max(gen.holod_bracket_residuals(z, c, range(-1, 2)).values()) < 1e-9


def test_holod_split():
    c = ell.CurveParams.from_tau(2j)
    sp = gen.holod_w_split(1, c)
    W_plus, W_minus = sp
    assert max(sp.constancy["plus"], sp.constancy["minus"]) < 1e-8
    assert abs(sp.det) > 1e-6
    with pytest.raises(DegenerateError):
        gen.holod_w_split(1, ell.CurveParams.from_tau(1j))
