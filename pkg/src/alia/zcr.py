"""Lax pair of the n = 3 multicomponent Landau-Lifshitz flow and its zero-curvature check.

Total x-derivatives are taken on truncated Taylor jets: a field is stored as
its coefficients (c0, c1, c2, c3) with f(x) = sum c_k x^k, so differentiation
and products stay exact up to the order that survives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elliptic import CurveParams, sample_points
from .errors import DomainError
from .liealg import K, bracket

ORDER = 3  # highest jet entry ever read
_FACT = np.array([1.0, 1.0, 2.0, 6.0])


def dot(a, b):
    """Bilinear <a, b> (no conjugation)."""
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


@dataclass(frozen=True)
class JetPoint:
    S: np.ndarray
    S_x: np.ndarray
    S_xx: np.ndarray
    S_xxx: np.ndarray

    def constraint_residuals(self) -> dict:
        S, S1, S2, S3 = self.S, self.S_x, self.S_xx, self.S_xxx
        return {
            "SS": abs(dot(S, S) - 1),
            "SSx": abs(dot(S, S1)),
            "SSxx": abs(dot(S, S2) + dot(S1, S1)),
            "SSxxx": abs(dot(S, S3) + 3 * dot(S1, S2)),
        }

    def taylor(self) -> np.ndarray:
        """(4, 3) array of Taylor coefficients of S(x) about the point."""
        return np.array([self.S, self.S_x, self.S_xx, self.S_xxx]) / _FACT[:, None]

    def scaled(self, factor) -> "JetPoint":
        """All slots multiplied by factor (breaks <S,S> = 1 unless factor^2 = 1)."""
        return JetPoint(self.S * factor, self.S_x * factor, self.S_xx * factor, self.S_xxx * factor)


def _proj(S, g, target):
    # add a multiple of S so that <S, result> = target (with <S,S> possibly complex)
    return g + (target - dot(S, g)) / dot(S, S) * S


def sample_jet(seed: int, field: str = "real") -> JetPoint:
    """Random jet on the differentiated constraint manifold of <S,S> = 1."""
    if field not in ("real", "complex"):
        raise DomainError(f"field must be 'real' or 'complex', got {field!r}")
    rng = np.random.default_rng(seed)

    def g():
        v = rng.normal(size=3)
        if field == "complex":
            v = v + 1j * rng.normal(size=3)
        return v

    S = g()
    nrm = np.sqrt(dot(S, S) + 0j) if field == "complex" else np.sqrt(dot(S, S))
    S = S / nrm
    S1 = _proj(S, g(), 0)
    S2 = _proj(S, g(), -dot(S1, S1))
    S3 = _proj(S, g(), -3 * dot(S1, S2))
    return JetPoint(S, S1, S2, S3)


def constant_jet(S) -> JetPoint:
    S = np.asarray(S)
    z = np.zeros_like(S)
    return JetPoint(S, z, z, z)


def _check_point(p, curve: CurveParams | None):
    p = tuple(complex(v) for v in p)
    if len(p) != 3:
        raise DomainError("a curve point has three coordinates")
    if curve is not None:
        curve.check_on_curve(p)
    return p


# ---------------------------------------------------------------------------
# truncated series helpers; arrays have the series index first


def _ser_mul(a, b, op=np.multiply):
    n = min(len(a), len(b))
    out = []
    for k in range(n):
        acc = 0
        for i in range(k + 1):
            acc = acc + op(a[i], b[k - i])
        out.append(acc)
    return np.array(out)


def _ser_d(a):
    return np.array([(k + 1) * a[k + 1] for k in range(len(a) - 1)])


def _ser_dot(a, b):
    return _ser_mul(a, b, lambda u, v: dot(u, v))


def _ser_mat(a, b):
    return _ser_mul(a, b, lambda u, v: u @ v)


_K = np.array([K(1), K(2), K(3)])


def _M_series(Sser, lam):
    # M = sum_i K_i s^i lambda_i, series index first
    w = Sser * np.asarray(lam)[None, :]
    return np.einsum("ki,iab->kab", w, _K)


def _N_series(Sser, lam, curve_r):
    r = np.asarray(curve_r)
    M = _M_series(Sser, lam)
    DM = _ser_d(M)
    D2M = _ser_d(DM)
    comm = _ser_mat(DM, M[: len(DM)]) - _ser_mat(M[: len(DM)], DM)
    SRS = _ser_dot(Sser, Sser * r[None, :])
    Sx = _ser_d(Sser)
    SxSx = _ser_dot(Sx, Sx)
    n = len(D2M)
    scal = 0.5 * SRS[:n] + 1.5 * SxSx[:n]
    scal[0] = scal[0] + r[0] + lam[0] ** 2
    scaled_M = _ser_mul(scal, M[:n], lambda u, v: u * v)
    return D2M[:n] + comm[:n] + scaled_M


def lax_M(jet: JetPoint, p) -> np.ndarray:
    lam = _check_point(p, None)
    return _M_series(jet.taylor()[:1], lam)[0]


def lax_N(jet: JetPoint, p, curve: CurveParams, check: bool = True) -> np.ndarray:
    lam = _check_point(p, curve if check else None)
    return _N_series(jet.taylor(), lam, curve.r)[0]


def pde_rhs(jet: JetPoint, r) -> np.ndarray:
    """S_t = S_xxx + 3<S_x,S_xx> S + 3/2 <S_x,S_x> S_x + 3/2 <S,RS> S_x."""
    S, S1, S2, S3 = jet.S, jet.S_x, jet.S_xx, jet.S_xxx
    R = np.asarray(r)
    return S3 + 3 * dot(S1, S2) * S + 1.5 * dot(S1, S1) * S1 + 1.5 * dot(S, R * S) * S1


def zcr_matrix(jet: JetPoint, p, curve: CurveParams, check: bool = True) -> np.ndarray:
    """D_x N - D_t M + [M, N] at the jet point."""
    lam = _check_point(p, curve if check else None)
    Nser = _N_series(jet.taylor(), lam, curve.r)
    DxN = _ser_d(Nser)[0]
    M = lax_M(jet, lam)
    DtM = np.einsum("i,iab->ab", pde_rhs(jet, curve.r) * np.asarray(lam), _K)
    return DxN - DtM + bracket(M, Nser[0])


def zcr_residual(jet: JetPoint, p, curve: CurveParams, check: bool = True) -> float:
    """Max-norm of D_x N - D_t M + [M, N]."""
    return float(np.max(np.abs(zcr_matrix(jet, p, curve, check))))


def zcr_scale(jet: JetPoint, p, curve: CurveParams) -> float:
    """max(1, |N|, |M|^3): the size of the terms that cancel."""
    lam = _check_point(p, None)
    N = lax_N(jet, lam, curve, check=False)
    M = lax_M(jet, lam)
    return max(1.0, float(np.max(np.abs(N))), float(np.max(np.abs(M))) ** 3)


def zcr_relative(jet: JetPoint, p, curve: CurveParams, check: bool = True) -> float:
    return zcr_residual(jet, p, curve, check) / zcr_scale(jet, p, curve)


def central_spread(p, curve: CurveParams) -> float:
    """max_i |r_i + lambda_i^2 - (r_1 + lambda_1^2)|."""
    lam = _check_point(p, None)
    base = curve.r1 + lam[0] ** 2
    return max(abs(curve.r[i] + lam[i] ** 2 - base) for i in range(3))


def curve_points(curve: CurveParams, n: int, seed: int, method: str = "algebraic"):
    """Curve points from random lambda_1 (algebraic) or from mu-uniformization (analytic)."""
    rng = np.random.default_rng(seed)
    if method == "algebraic":
        return curve.sample_points(n, rng)
    if method == "analytic":
        zs = sample_points(curve.tau, n, rng, punctures=(0.0,), radius=0.1)
        return [curve.uniformize(z) for z in zs]
    raise DomainError(f"unknown sampling method {method!r}")


def zcr_sweep(curve: CurveParams, jets: int = 50, points: int = 10, seed: int = 0,
              method: str = "algebraic", field: str = "real") -> float:
    """Max relative ZCR residual over jets x curve points."""
    pts = curve_points(curve, points, seed, method)
    worst = 0.0
    for s in range(jets):
        jet = sample_jet(seed * 1000 + s, field)
        for p in pts:
            worst = max(worst, zcr_relative(jet, p, curve))
    return worst


def broken_constraint_residuals(curve: CurveParams, pts, jets: int = 10, seed: int = 0,
                                norm2: float = 1.1) -> np.ndarray:
    """Relative ZCR residuals for jets rescaled to <S,S> = norm2 (negative control).

    Rescaling keeps the differentiated constraints homogeneous, so only
    <S,S> = 1 is broken.
    """
    f = np.sqrt(norm2)
    return np.array([
        zcr_relative(sample_jet(seed * 1000 + s).scaled(f), p, curve)
        for s in range(jets) for p in pts
    ])
