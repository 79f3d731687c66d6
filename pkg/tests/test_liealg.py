import numpy as np
import pytest

from alia import liealg as la
from alia.errors import DomainError, SingularError


def test_v_basis_brackets():
    for i, j, k in la.CYCLIC:
        assert np.allclose(la.bracket(la.V[i - 1], la.V[j - 1]), la.V[k - 1], atol=1e-15)


def test_sl2_basis_brackets():
    assert np.allclose(la.bracket(la.h, la.e), 2 * la.e)
    assert np.allclose(la.bracket(la.h, la.f), -2 * la.f)
    assert np.allclose(la.bracket(la.e, la.f), la.h)


def test_coordinates_round_trip():
    X = np.array([[0.3 + 1j, 2.0], [-0.5j, -0.3 - 1j]])
    assert np.allclose(la.from_hef(la.hef_coords(X)), X)
    assert np.allclose(la.from_v(la.v_coords(X)), X)


def test_ad_matrix_matches_conjugation():
    M = np.array([[1.0, 2.0 + 1j], [0.5, -3.0]])
    R = la.ad_matrix(M)
    for col, A in enumerate((la.h, la.e, la.f)):
        assert np.allclose(la.from_hef(R[:, col]), la.conj_by(M, A))
    with pytest.raises(SingularError):
        la.ad_matrix(np.ones((2, 2)))
    with pytest.raises(SingularError):
        la.inv2(np.zeros((2, 2)))


def test_heisenberg_group_law():
    assert la.t2 * la.t1 == la.eps * la.t1 * la.t2
    assert la.t1 * la.t1 == la.ONE
    for g in la.HE2:
        assert g * g.inverse() == la.ONE
    # rho_prime is a homomorphism
    for g in la.HE2:
        for k in la.HE2:
            assert np.allclose(la.rho_prime_matrix(g * k), la.rho_prime_matrix(g) @ la.rho_prime_matrix(k))


def test_rho_is_d2_action():
    A = la.from_hef([0.2, 1.0, -0.7j])
    for g in la.HE2:
        assert np.allclose(la.rep_apply("rho", g, A), la.rep_apply("rho", g.d2(), A))
    # v_i transforms by sign under D2
    for g in la.D2:
        for v in la.V:
            w = la.rep_apply("rho", g, v)
            assert np.allclose(w, v) or np.allclose(w, -v)


def test_characters_and_projection():
    A = la.from_hef([0.2 + 0.1j, 1.0, -0.7j])
    parts = [la.isotypical_project_sl2(ch, A) for ch in la.CHARACTERS]
    assert np.allclose(sum(parts), A)
    assert np.allclose(la.isotypical_project_sl2((0, 0), A), 0)


def test_so31_split_is_a_lie_isomorphism():
    rng = np.random.default_rng(0)

    def rand():
        c = rng.normal(size=6) + 1j * rng.normal(size=6)
        return sum(ci * B for ci, B in zip(c, la.SO31_BASIS))

    X, Y = rand(), rand()
    assert la.in_so31(X)
    a, b = la.so31_split(X)
    c, d = la.so31_split(Y)
    e, f = la.so31_split(la.bracket(X, Y))
    assert np.allclose(e, la.bracket(a, c))
    assert np.allclose(f, la.bracket(b, d))
    assert np.allclose(la.so31_unsplit(a, b), X)


def test_boosts_and_rotations():
    assert np.allclose(la.bracket(la.K(1), la.K(2)), la.L(1, 2))
    assert la.levi_civita(1, 2, 3) == 1 and la.levi_civita(2, 1, 3) == -1 and la.levi_civita(1, 1, 3) == 0


def test_domain_errors():
    with pytest.raises(DomainError):
        la.rep_apply("rho", la.t1, np.eye(4))
    with pytest.raises(DomainError):
        la.rep_apply("nope", la.t1, np.eye(2))
    with pytest.raises(DomainError):
        la.GroupElem(2, 0, 0)
    with pytest.raises(DomainError):
        la.so31_split(np.eye(4))
    with pytest.raises(DomainError):
        la.bracket(np.eye(2), np.eye(4))
