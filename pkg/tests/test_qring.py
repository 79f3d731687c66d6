from fractions import Fraction

import pytest

from alia import qring
from alia.errors import DomainError
from alia.liealg import t1, t2
from alia.qring import LocElem, Poly, QElem, QQi


@pytest.fixture(scope="module")
def curve():
    return qring.exact_curve(0, 1, 3)


def test_qqi_arithmetic():
    a = QQi(Fraction(1, 2), 3)
    b = QQi(-2, Fraction(1, 3))
    assert (a * b) / b == a
    assert a - a == QQi(0)
    assert qring.I_UNIT * qring.I_UNIT == QQi(-1)


def test_poly_divmod():
    p = Poly((1, 2, 3, 4))
    d = Poly((-1, 1))
    q, r = p.divmod(d)
    assert q * d + r == p
    assert r.degree < d.degree


def test_quotient_reduction(curve):
    x = QElem.x(curve)
    for i in (1, 2, 3):
        li = QElem.lam(curve, i)
        assert li * li == x - curve.r[i - 1]
    l1, l2, l3 = (QElem.lam(curve, i) for i in (1, 2, 3))
    # curve relation l_i^2 - l_j^2 = r_j - r_i holds identically
    assert l1 * l1 - l2 * l2 == QElem.const(curve, curve.r2 - curve.r1)
    assert (l1 * l2 * l3).comps.keys() == {(1, 1, 1)}


def test_d2_action_and_invariants(curve):
    l1 = QElem.lam(curve, 1)
    for g in (t1, t2):
        assert qring.d2_act(g, qring.d2_act(g, l1)) == l1
    x = QElem.x(curve)
    assert qring.invariant_part(x) == x


def test_localization(curve):
    lam = QElem.holod_lambda(curve)
    inv = qring.lam_inverse(curve)
    assert inv * lam == LocElem.coerce(QElem.const(curve, 1))
    assert LocElem.lam_power(curve, 2) * LocElem.lam_power(curve, -2) == LocElem.coerce(QElem.const(curve, 1))
    # central lambda = l_i^2 + A_i
    for i in (1, 2, 3):
        li = QElem.lam(curve, i)
        assert li * li + QElem.const(curve, curve.A[i - 1]) == lam


@pytest.mark.parametrize("r", [(0, 1, 3), (2, 1, 0), ("-1", "1/2", "5")])
def test_g3_relations_exact(r):
    c = qring.exact_curve(*r)
    g = qring.g3_relations_exact(c)
    for k in ("relations", "plain_flipped", "so31", "invariance"):
        assert g[k].passed, (k, g[k].witness)
    # plain generators with the unflipped sign leave a nonzero witness
    plain = qring.g3_relations_exact(c, "plain")
    assert not plain["relations"].passed


def test_holod_brackets_exact(curve):
    chk = qring.holod_brackets_exact(curve, range(-1, 2))
    assert chk.passed, chk.witness
    assert chk.cases == 3 * 3 * 9


def test_errors():
    with pytest.raises(DomainError):
        qring.exact_curve(1, 1, 2)
    with pytest.raises(DomainError):
        qring.g3_generators(qring.exact_curve(0, 1, 3), "other")
    with pytest.raises(DomainError):
        QElem.lam(qring.exact_curve(0, 1, 3), 1) + QElem.lam(qring.exact_curve(0, 1, 4), 1)
