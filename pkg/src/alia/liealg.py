"""sl(2,C) and so(3,1) bases, brackets, adjoint matrices and D2 / He2 actions."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularError

Mat2 = np.ndarray
Mat4 = np.ndarray

h = np.array([[1, 0], [0, -1]], dtype=complex)
e = np.array([[0, 1], [0, 0]], dtype=complex)
f = np.array([[0, 0], [1, 0]], dtype=complex)

# [v_i, v_j] = eps_ijk v_k
v1 = -0.5j * np.array([[1, 0], [0, -1]], dtype=complex)
v2 = 0.5 * np.array([[0, 1], [-1, 0]], dtype=complex)
v3 = -0.5j * np.array([[0, 1], [1, 0]], dtype=complex)
V = (v1, v2, v3)

T1 = np.array([[1, 0], [0, -1]], dtype=complex)
T2 = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)

S1 = np.diag([1, -1, -1, 1]).astype(complex)
S2 = np.diag([1, 1, -1, -1]).astype(complex)
I31 = np.diag([1, 1, 1, -1]).astype(complex)

CYCLIC = ((1, 2, 3), (2, 3, 1), (3, 1, 2))


def levi_civita(i: int, j: int, k: int) -> int:
    return int(np.sign((j - i) * (k - i) * (k - j)))


def E_(i: int, j: int, n: int = 4) -> np.ndarray:
    """Matrix unit E_ij (1-based)."""
    m = np.zeros((n, n), dtype=complex)
    m[i - 1, j - 1] = 1
    return m


def K(i: int) -> Mat4:
    """E_{i4} + E_{4i}, the boost generators of so(3,1)."""
    return E_(i, 4) + E_(4, i)


def L(i: int, j: int) -> Mat4:
    """E_ij - E_ji, the rotation generators of so(3,1)."""
    return E_(i, j) - E_(j, i)


SO31_BASIS = (L(1, 2), L(1, 3), L(2, 3), K(1), K(2), K(3))


def bracket(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise DomainError(f"bracket of mismatched shapes {A.shape} and {B.shape}")
    return A @ B - B @ A


def det2(M) -> complex:
    return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]


def inv2(M) -> Mat2:
    """Inverse of a 2x2 matrix through the adjugate."""
    d = det2(M)
    if d == 0 or abs(d) < 1e-300:
        raise SingularError("singular 2x2 matrix")
    adj = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=complex)
    return adj / d


def conj_by(M, A):
    """Ad(M) A = M A M^-1 for 2x2 M (adjugate inverse); general inverse otherwise."""
    if M.shape == (2, 2):
        return M @ A @ inv2(M)
    return M @ A @ np.linalg.inv(M)


def hef_coords(X) -> np.ndarray:
    """Coordinates (p, q, r) of X = p h + q e + r f (traceless part)."""
    return np.array([(X[0, 0] - X[1, 1]) / 2, X[0, 1], X[1, 0]], dtype=complex)


def from_hef(c) -> Mat2:
    return c[0] * h + c[1] * e + c[2] * f


def v_coords(X) -> np.ndarray:
    """Coordinates of traceless X in the basis v1, v2, v3."""
    p, q, r = hef_coords(X)
    # v1 = -i/2 h, v2 = (e - f)/2, v3 = -i/2 (e + f)
    return np.array([2j * p, q - r, 1j * (q + r)], dtype=complex)


def from_v(c) -> Mat2:
    return c[0] * v1 + c[1] * v2 + c[2] * v3


def ad_matrix(M) -> np.ndarray:
    """Matrix of Ad(M) on sl(2) in the basis {h, e, f}."""
    M = np.asarray(M, dtype=complex)
    d = det2(M)
    if abs(d) < 1e-14 * max(1.0, np.max(np.abs(M)) ** 2):
        raise SingularError("ad_matrix of a singular matrix")
    a, b, c, dd = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    R = np.array(
        [
            [b * c + a * dd, -a * c, b * dd],
            [-2 * a * b, a * a, -b * b],
            [2 * c * dd, -c * c, dd * dd],
        ],
        dtype=complex,
    )
    return R / d


# ---------------------------------------------------------------------------
# He2 and D2


@dataclass(frozen=True)
class GroupElem:
    """t1^a t2^b eps^c in He2 (bits a, b, c)."""

    a: int = 0
    b: int = 0
    c: int = 0

    def __post_init__(self):
        for x in (self.a, self.b, self.c):
            if x not in (0, 1):
                raise DomainError("group element exponents must be bits")

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        # t2 t1 = eps t1 t2
        return GroupElem(
            self.a ^ other.a, self.b ^ other.b, self.c ^ other.c ^ (self.b & other.a)
        )

    def inverse(self) -> "GroupElem":
        # (t1^a t2^b)^-1 = t2^b t1^a = eps^(ab) t1^a t2^b
        return GroupElem(self.a, self.b, self.c ^ (self.a & self.b))

    def d2(self) -> "GroupElem":
        """Image in D2 = He2 / <eps>."""
        return GroupElem(self.a, self.b, 0)

    @property
    def label(self) -> str:
        parts = ["eps"] * self.c + ["t1"] * self.a + ["t2"] * self.b
        return "".join(parts) or "1"

    def __repr__(self):
        return f"GroupElem({self.label})"


ONE = GroupElem()
t1 = GroupElem(1, 0, 0)
t2 = GroupElem(0, 1, 0)
eps = GroupElem(0, 0, 1)
HE2 = tuple(GroupElem(a, b, c) for c in (0, 1) for a in (0, 1) for b in (0, 1))
D2 = tuple(GroupElem(a, b, 0) for a in (0, 1) for b in (0, 1))


@dataclass(frozen=True)
class D2Character:
    """alpha_ij(t1^a t2^b) = (-1)^(i a + j b)."""

    i: int
    j: int

    def __post_init__(self):
        if self.i not in (0, 1) or self.j not in (0, 1):
            raise DomainError("character indices must be bits")

    def __call__(self, a, b=None) -> int:
        if isinstance(a, GroupElem):
            a, b = a.a, a.b
        return -1 if (self.i * a + self.j * b) % 2 else 1


CHARACTERS = tuple(D2Character(i, j) for i in (0, 1) for j in (0, 1))


def rho_prime_matrix(g: GroupElem) -> Mat2:
    M = I2.copy()
    if g.a:
        M = M @ T1
    if g.b:
        M = M @ T2
    return -M if g.c else M


def rho_tilde_matrix(g: GroupElem) -> Mat4:
    M = np.eye(4, dtype=complex)
    if g.a:
        M = M @ S1
    if g.b:
        M = M @ S2
    return M


def rep_apply(rep: str, g: GroupElem, A):
    """Apply rho_prime (matrix product), rho (Ad on sl2) or rho_tilde (Ad on so(3,1))."""
    A = np.asarray(A, dtype=complex)
    if rep == "rho_prime":
        if A.shape[0] != 2:
            raise DomainError("rho_prime acts on C^2-valued objects")
        return rho_prime_matrix(g) @ A
    if rep == "rho":
        if A.shape != (2, 2):
            raise DomainError("rho acts on 2x2 matrices")
        M = rho_prime_matrix(g)
        return M @ A @ inv2(M)
    if rep == "rho_tilde":
        if A.shape != (4, 4):
            raise DomainError("rho_tilde acts on 4x4 matrices")
        M = rho_tilde_matrix(g)
        return M @ A @ M  # diagonal sign matrices are involutions
    raise DomainError(f"unknown representation {rep!r}")


def isotypical_project_sl2(char, A) -> Mat2:
    """(1/4) sum_g char(g) rho(g) A."""
    ch = char if isinstance(char, D2Character) else D2Character(*char)
    out = np.zeros((2, 2), dtype=complex)
    for g in D2:
        out += ch(g) * rep_apply("rho", g, A)
    return out / 4


# ---------------------------------------------------------------------------
# so(3,1)


def so31_residual(X) -> float:
    X = np.asarray(X)
    return float(np.max(np.abs(X.T @ I31 + I31 @ X)))


def in_so31(X, tol: float = 1e-12) -> bool:
    return so31_residual(X) <= tol * max(1.0, float(np.max(np.abs(X))))


# conjugation by D = diag(1,1,1,i) sends complexified so(3,1) to so(4,C)
_D = np.diag([1, 1, 1, 1j])
_Dinv = np.diag([1, 1, 1, -1j])


def so31_split(X) -> tuple[Mat2, Mat2]:
    """Fixed Lie isomorphism so(3,1)_C -> sl(2,C) + sl(2,C).

    Y = D X D^-1 is antisymmetric.  With rotations J_k (J_1 = E32 - E23, ...)
    and P_k = E_k4 - E_4k one has [J_i, J_j] = J_k, [J_i, P_j] = P_k and
    [P_i, P_j] = J_k, so A_k = (J_k + P_k)/2 and B_k = (J_k - P_k)/2 span two
    commuting copies of so(3), each identified with sl(2) via A_k, B_k -> v_k.
    """
    X = np.asarray(X, dtype=complex)
    if X.shape != (4, 4) or not in_so31(X, 1e-10):
        raise DomainError("so31_split expects an element of complexified so(3,1)")
    Y = _D @ X @ _Dinv
    # Y = sum alpha_k J_k + beta_k P_k
    alpha = np.array([Y[2, 1], Y[0, 2], Y[1, 0]])
    beta = np.array([Y[0, 3], Y[1, 3], Y[2, 3]])
    return from_v(alpha + beta), from_v(alpha - beta)


def so31_unsplit(a: Mat2, b: Mat2) -> Mat4:
    """Inverse of so31_split."""
    ca = v_coords(a)
    cb = v_coords(b)
    alpha = (ca + cb) / 2
    beta = (ca - cb) / 2
    Y = np.zeros((4, 4), dtype=complex)
    # J_1 = E32 - E23, J_2 = E13 - E31, J_3 = E21 - E12 (0-based below)
    for (r, c), val in zip(((2, 1), (0, 2), (1, 0)), alpha):
        Y[r, c] += val
        Y[c, r] -= val
    for k in range(3):
        Y[k, 3] += beta[k]
        Y[3, k] -= beta[k]
    return _Dinv @ Y @ _D
