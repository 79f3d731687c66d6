"""sl(2) normal-form generators on the torus and on the curve, plus the
g(3), Uglov and Holod realizations."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .elliptic import (
    CurveParams,
    Lattice,
    TorusPoint,
    jacobi_J,
    jacobi_argument_scale,
    jacobi_w,
    mu,
    mu_all,
    sample_points,
    two_point_split,
    wp,
    wp_prime,
    wp_zero,
)
from .errors import CalibrationError, DegenerateError, DomainError
from .intertwiner import BASE, VARIANTS, OmegaVariant, omega
from .liealg import CYCLIC, T2, V, bracket, conj_by, e, f, h, rep_apply, t1, t2
from .theta import as_modular

GAMMA_3_4 = 1.2254167024651776451
MODES = ("via_ad_omega", "closed_form")


def _norm(M) -> float:
    return float(np.max(np.abs(M)))


def sl2_residuals(H, E, F) -> dict:
    """Residuals of [H,E]=2E, [H,F]=-2F, [E,F]=H."""
    return {
        "HE": _norm(bracket(H, E) - 2 * E),
        "HF": _norm(bracket(H, F) + 2 * F),
        "EF": _norm(bracket(E, F) - H),
    }


# ---------------------------------------------------------------------------
# torus generators


def _closed_form(z, mp, bare_f: bool = False):
    _, t2_, t3_, t4_ = mp.nulls
    m1, m2, m3 = mu_all(z, mp)
    a2, a3, a4 = t2_**2, t3_**2, t4_**2
    H = np.array(
        [[a2 * m2 * m3, -a4 * m1 * m2 - a3 * m1 * m3],
         [-a4 * m1 * m2 + a3 * m1 * m3, -a2 * m2 * m3]],
        dtype=complex,
    )
    E = 0.5 * np.array(
        [[m1, -(a3 / a2) * m2 - (a4 / a2) * m3],
         [(a3 / a2) * m2 - (a4 / a2) * m3, -m1]],
        dtype=complex,
    )
    d = a2 * a2 * m1 * (m2 * m2 + a3 / (a2 * a4))
    g = m2 * m3 if bare_f else a2 * m2 * m3
    F = 0.5 * np.array(
        [[-d, (-a4 * m2 - a3 * m3) * (1 - g)],
         [(a4 * m2 - a3 * m3) * (1 + g), d]],
        dtype=complex,
    )
    return H, E, F


def hef(z, tau, mode: str = "via_ad_omega", variant: OmegaVariant = BASE, bare_f: bool = False):
    """(H, E, F) at z.

    ``via_ad_omega`` conjugates h, e, f by Omega (of the given variant);
    ``closed_form`` evaluates the mu-polynomial formulas.  ``bare_f``
    switches F to the variant without theta_2^2 inside (1 -+ mu_2 mu_3),
    which does not satisfy the sl(2) relations (kept for comparison only).
    """
    mp = as_modular(tau)
    if mode == "via_ad_omega":
        M = omega(z, mp, variant)
        return tuple(conj_by(M, A) for A in (h, e, f))
    if mode == "closed_form":
        return _closed_form(z, mp, bare_f)
    raise DomainError(f"unknown mode {mode!r}; expected one of {MODES}")


@dataclass(frozen=True)
class GeneratorTriple:
    H: Callable
    E: Callable
    F: Callable
    provenance: str

    def __call__(self, z):
        return self.H(z), self.E(z), self.F(z)


def generator_triple(tau, mode: str = "via_ad_omega") -> GeneratorTriple:
    mp = as_modular(tau)
    return GeneratorTriple(
        lambda z: hef(z, mp, mode)[0],
        lambda z: hef(z, mp, mode)[1],
        lambda z: hef(z, mp, mode)[2],
        mode,
    )


def match_hef_variant(z, tau):
    """The variant whose Ad(Omega) reproduces the closed form; (variant, residual)."""
    mp = as_modular(tau)
    ref = hef(z, mp, "closed_form")
    best = None
    for v in VARIANTS:
        got = hef(z, mp, "via_ad_omega", v)
        res = max(_norm(a - b) for a, b in zip(got, ref)) / max(1.0, max(_norm(b) for b in ref))
        if best is None or res < best[1]:
            best = (v, res)
    return best


def hef_equivariance(z, tau, mode: str = "via_ad_omega") -> dict:
    """Translation, period and parity residuals of H, E, F at z."""
    mp = as_modular(tau)
    t = mp.tau
    X0 = hef(z, mp, mode)
    out = {}
    for name, g, shift in (("t1", t1, 0.5), ("t2", t2, t / 2)):
        Xs = hef(z + shift, mp, mode)
        out[name] = max(_norm(a - rep_apply("rho", g, b)) for a, b in zip(Xs, X0))
    for name, shift in (("period_1", 1.0), ("period_tau", t)):
        Xs = hef(z + shift, mp, mode)
        out[name] = max(_norm(a - b) for a, b in zip(Xs, X0))
    Hm, Em, Fm = hef(-z, mp, mode)
    out["parity"] = max(_norm(Hm - X0[0]), _norm(Em + X0[1]), _norm(Fm + X0[2]))
    # order-8 group: parity composed with both half-period shifts
    Xc = hef(-z + 0.5 + t / 2, mp, mode)
    g12 = t1 * t2
    parity_signs = (1, -1, -1)
    out["order8"] = max(
        _norm(a - s * rep_apply("rho", g12, b)) for a, b, s in zip(Xc, X0, parity_signs)
    )
    return out


# ---------------------------------------------------------------------------
# intrinsic generators on the curve


SIGN_CHOICES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def hef_tilde(l1, l2, l3, curve: CurveParams, signs=(1, 1), check: bool = True):
    """(H~, E~, F~) at a curve point.

    ``signs`` multiplies the principal roots of R13/R23 and R12/R23.
    """
    if check:
        curve.check_on_curve((l1, l2, l3))
    sa = signs[0] * cmath.sqrt(curve.R(1, 3) / curve.R(2, 3))
    sb = signs[1] * cmath.sqrt(curve.R(1, 2) / curve.R(2, 3))
    s23 = cmath.sqrt(curve.R(2, 3))
    s13 = sa * s23
    s12 = sb * s23
    R12, R13 = curve.R(1, 2), curve.R(1, 3)
    hd = l2 * l3 / (s12 * s13)
    H = np.array(
        [[hd, -l1 * l2 / (s23 * s13) - l1 * l3 / (s12 * s23)],
         [-l1 * l2 / (s23 * s13) + l1 * l3 / (s12 * s23), -hd]],
        dtype=complex,
    )
    E = 0.5 * np.array(
        [[l1, -sa * l2 - sb * l3], [sa * l2 - sb * l3, -l1]], dtype=complex
    )
    fd = l1 * (l2 * l2 / R13 + 1) / R12
    F = 0.5 * np.array(
        [[-fd, (-l2 / s13 - l3 / s12) * (1 - hd) / s23],
         [(l2 / s13 - l3 / s12) * (1 + hd) / s23, fd]],
        dtype=complex,
    )
    return H, E, F


def sigma_curve(g, lam):
    """D2 action on curve points: t1 flips lambda_2, lambda_3; t2 flips lambda_1, lambda_2."""
    l1, l2, l3 = lam
    if g.a:
        l2, l3 = -l2, -l3
    if g.b:
        l1, l2 = -l1, -l2
    return l1, l2, l3


def hef_tilde_equivariance(lam, curve: CurveParams, signs=(1, 1)) -> float:
    X0 = hef_tilde(*lam, curve, signs)
    worst = 0.0
    for g in (t1, t2):
        Xg = hef_tilde(*sigma_curve(g, lam), curve, signs)
        worst = max(worst, max(_norm(a - rep_apply("rho", g, b)) for a, b in zip(Xg, X0)))
    return worst


def match_hef_tilde(z, curve: CurveParams):
    """Compare H~, E~, F~ at lambda(z) with H, s E, F / s; best sign choice and residual."""
    s = curve.scale
    H, E, F = hef(z, curve.tau, "closed_form")
    ref = (H, s * E, F / s)
    lam = curve.uniformize(z)
    best = None
    for signs in SIGN_CHOICES:
        got = hef_tilde(*lam, curve, signs)
        res = max(_norm(a - b) for a, b in zip(got, ref)) / max(1.0, max(_norm(b) for b in ref))
        if best is None or res < best[1]:
            best = (signs, res)
    return best


# ---------------------------------------------------------------------------
# X_i generators and the g(3) relations


def x_generators(i: int, z, tau):
    """(X_i, X_i') = (v_i mu_i, v_i mu_j mu_k) at z."""
    if i not in (1, 2, 3):
        raise DomainError(f"index must be 1..3, got {i}")
    m = mu_all(z, tau)
    j, k = [c for c in (1, 2, 3) if c != i]
    return V[i - 1] * m[i - 1], V[i - 1] * m[j - 1] * m[k - 1]


def x_generator_checks(z, tau) -> dict:
    mp = as_modular(tau)
    X = {i: x_generators(i, z, mp) for i in (1, 2, 3)}
    m = mu_all(z, mp)
    br = 0.0
    mixed = 0.0
    for i, j, k in CYCLIC:
        br = max(br, _norm(bracket(X[i][0], X[j][0]) - X[k][1]))
        mixed = max(mixed, _norm(bracket(X[i][0], X[j][1]) - X[k][0] * m[i - 1] ** 2))
    inv = 0.0
    for g, shift in ((t1, 0.5), (t2, mp.tau / 2)):
        for i in (1, 2, 3):
            Xs = x_generators(i, z + shift, mp)
            inv = max(inv, max(_norm(a - rep_apply("rho", g, b)) for a, b in zip(Xs, X[i])))
    return {"bracket": br, "mixed": mixed, "invariance": inv}


def _check_cyclic(i, j, k):
    if len({i, j, k}) != 3 or (i, j, k) not in CYCLIC:
        raise DomainError(f"({i},{j},{k}) is not a cyclic permutation of (1,2,3)")


def g3_family_residuals(X: dict, r, i: int, j: int, k: int) -> tuple[float, float]:
    """[X_i,[X_j,X_k]] and [X_i,[X_i,X_k]] - [X_j,[X_j,X_k]] - (r_j - r_i) X_k."""
    _check_cyclic(i, j, k)
    a = _norm(bracket(X[i], bracket(X[j], X[k])))
    lhs = bracket(X[i], bracket(X[i], X[k])) - bracket(X[j], bracket(X[j], X[k]))
    b = _norm(lhs - (r[j - 1] - r[i - 1]) * X[k])
    return a, b


def g3_relations_numeric(z, curve: CurveParams) -> dict:
    """g(3) relations for X_i = sqrt(-1) v_i lambda_i(z).

    Also reports ``plain_*`` for X_i = v_i lambda_i, which satisfies the
    second family with the opposite sign of (r_j - r_i).
    """
    lam = curve.uniformize(z)
    r = curve.r
    out = {"nested": 0.0, "difference": 0.0, "plain_nested": 0.0,
           "plain_difference": 0.0, "plain_flipped": 0.0}
    Xs = {i: 1j * V[i - 1] * lam[i - 1] for i in (1, 2, 3)}
    Xp = {i: V[i - 1] * lam[i - 1] for i in (1, 2, 3)}
    rneg = tuple(-x for x in r)
    for i, j, k in CYCLIC:
        a, b = g3_family_residuals(Xs, r, i, j, k)
        out["nested"] = max(out["nested"], a)
        out["difference"] = max(out["difference"], b)
        a, b = g3_family_residuals(Xp, r, i, j, k)
        out["plain_nested"] = max(out["plain_nested"], a)
        out["plain_difference"] = max(out["plain_difference"], b)
        _, b = g3_family_residuals(Xp, rneg, i, j, k)
        out["plain_flipped"] = max(out["plain_flipped"], b)
    # lambda_i^2 - lambda_j^2 against r_j - r_i
    out["mu_constants"] = curve.curve_residual(lam)
    return out


# ---------------------------------------------------------------------------
# the real case tau = q i


def alpha_constant() -> float:
    """Gamma(3/4)^2 / sqrt(pi)."""
    return GAMMA_3_4**2 / math.sqrt(math.pi)


def beta_form_hef(x, bare_f: bool = False):
    """H, E, F at tau = i written with beta = sqrt(pi)/Gamma(3/4)^2.

    The factor (1 -+ mu_2 mu_3) in F carries beta/sqrt(2); ``bare_f`` drops it
    (comparison only, it does not reproduce F).
    """
    beta = 1 / alpha_constant()
    r2 = math.sqrt(2)
    m1, m2, m3 = mu_all(x, 1j)
    H = beta * np.array(
        [[m2 * m3 / r2, -m1 * m2 / r2 - m1 * m3],
         [-m1 * m2 / r2 + m1 * m3, -m2 * m3 / r2]],
        dtype=complex,
    )
    E = 0.5 * np.array([[m1, -r2 * m2 - m3], [r2 * m2 - m3, -m1]], dtype=complex)
    g = m2 * m3 if bare_f else (beta / r2) * m2 * m3
    d = (beta / 2) * m1 * m2 * m2 + m1
    F = (beta / 2) * np.array(
        [[-d, (-m2 / r2 - m3) * (1 - g)], [(m2 / r2 - m3) * (1 + g), d]], dtype=complex
    )
    return H, E, F


def real_form_check(x: float, q: float) -> dict:
    """Reality checks for tau = q i at real x."""
    if not (isinstance(q, (int, float)) and q > 0):
        raise DomainError("q must be a positive real number (tau = q i)")
    x = float(x)
    mp = as_modular(complex(0, q))
    X = hef(x, mp, "closed_form")
    out = {"imag": max(float(np.max(np.abs(np.imag(A)))) for A in X)}
    Xs = hef(x + mp.tau / 2, mp, "closed_form")
    out["imag_shifted"] = max(float(np.max(np.abs(np.imag(A)))) for A in Xs)
    out["ad_T2"] = max(_norm(a - conj_by(T2, b)) for a, b in zip(Xs, X))
    if q == 1:
        c = CurveParams.from_tau(mp)
        al = alpha_constant()
        out["alpha"] = al
        out["R"] = max(abs(c.R(1, 2) - al), abs(c.R(2, 3) - al), abs(c.R(1, 3) / 2 - al))
        P = beta_form_hef(x)
        out["beta_form_HE"] = max(_norm(P[0] - X[0]), _norm(P[1] - X[1]))
        out["beta_form_F"] = _norm(P[2] - X[2])
        out["bare_F"] = _norm(beta_form_hef(x, bare_f=True)[2] - X[2])
    return out


def omega_conjugation_residual(z, q: float) -> float:
    """|Omega(conj z) - conj Omega(z)| for tau = q i."""
    mp = as_modular(complex(0, q))
    return _norm(omega(np.conj(z), mp) - np.conj(omega(z, mp)))


# ---------------------------------------------------------------------------
# Uglov realization


def uglov_scale(tau) -> complex:
    """c = 2 pi theta_3(0)^2, so that w_i(c z) has the translation lattice of mu_i."""
    return 2 * jacobi_argument_scale(tau)


def uglov_x(i: int, sign: int, z, nu_plus, nu_minus, tau, c=None):
    c = uglov_scale(tau) if c is None else c
    nu = nu_plus if sign > 0 else nu_minus
    return 1j * V[i - 1] * jacobi_w(i, c * (z - nu), tau)


def uglov_check(nu_plus, nu_minus, tau, samples: int = 50, seed: int = 0, tol: float = 1e-8) -> dict:
    """All four Uglov relation families at sampled z.

    The calibration constant c is validated by the J-family first; a failure
    raises CalibrationError.
    """
    mp = as_modular(tau)
    if Lattice(mp, 0.5).distance(nu_plus - nu_minus) < 1e-10:
        raise DomainError("nu_plus - nu_minus lies in 1/2 Lambda")
    c = uglov_scale(mp)
    J = jacobi_J(mp)
    Jc = {(i, j): J.get((i, j), None) for i, j, _ in CYCLIC}
    rng = np.random.default_rng(seed)
    punct = (nu_plus, nu_minus)
    zs = sample_points(mp, samples, rng, punctures=punct)
    res = {"nested": 0.0, "J": 0.0, "commute": 0.0, "cross": 0.0}
    w_cross = {}
    for sgn in (1, -1):
        d = (nu_minus - nu_plus) if sgn > 0 else (nu_plus - nu_minus)
        w_cross[sgn] = {i: jacobi_w(i, c * d, mp) for i in (1, 2, 3)}
    for z in zs:
        x = {(i, s): uglov_x(i, s, z, nu_plus, nu_minus, mp, c) for i in (1, 2, 3) for s in (1, -1)}
        scale = max(1.0, max(_norm(m) for m in x.values()) ** 3)
        for s in (1, -1):
            for i, j, k in CYCLIC:
                a = bracket(x[i, s], bracket(x[j, s], x[k, s]))
                res["nested"] = max(res["nested"], _norm(a) / scale)
                lhs = bracket(x[i, s], bracket(x[i, s], x[k, s])) - bracket(x[j, s], bracket(x[j, s], x[k, s]))
                res["J"] = max(res["J"], _norm(lhs - Jc[i, j] * x[k, s]) / scale)
                rhs = 1j * (w_cross[s][i] * x[k, -s] - w_cross[s][j] * x[k, s])
                sc2 = max(1.0, _norm(x[i, s]) * _norm(x[j, -s]), _norm(rhs))
                res["cross"] = max(res["cross"], _norm(bracket(x[i, s], x[j, -s]) - rhs) / sc2)
        for i in (1, 2, 3):
            res["commute"] = max(res["commute"], _norm(bracket(x[i, 1], x[i, -1])))
    if res["J"] > tol:
        raise CalibrationError(f"J-relation family fails for c={c} (residual {res['J']:.2e})")
    res["c"] = c
    return res


# ---------------------------------------------------------------------------
# Holod algebra


def holod_scale(curve: CurveParams) -> complex:
    """a with lambda(z) = p_{a/2 Lambda}(a z), i.e. p_{1/2 Lambda}(z) / a^2."""
    _, t2_, t3_, t4_ = curve.tau.nulls
    return 2 * math.pi * t2_ * t3_ * t4_ / curve.scale


def holod_lambda(z, curve: CurveParams) -> complex:
    """The central function lambda = lambda_i^2 + A_i at lambda(z)."""
    lam = curve.uniformize(z)
    return lam[0] ** 2 + curve.A_i[0]


def holod_wp_check(z, curve: CurveParams) -> dict:
    """lambda = p and lambda_1 lambda_2 lambda_3 = -p'/2 on the lattice a/2 Lambda."""
    a = holod_scale(curve)
    L = Lattice(curve.tau, a / 2)
    lam = curve.uniformize(z)
    lv = lam[0] ** 2 + curve.A_i[0]
    p = wp(a * z, L)
    dp = wp_prime(a * z, L)
    spread = max(abs(lam[i] ** 2 + curve.A_i[i] - lv) for i in range(3))
    return {
        "wp": abs(lv - p) / max(1.0, abs(p)),
        "wp_prime": abs(lam[0] * lam[1] * lam[2] + dp / 2) / max(1.0, abs(dp)),
        "consistency": spread,
    }


def holod_basis(i: int, m: int, parity: str, z, curve: CurveParams):
    """X_i^{2m+1} = lambda^m lambda_i v_i (odd) or X_i^{2m+2} = lambda^m lambda_j lambda_k v_i (even)."""
    if i not in (1, 2, 3):
        raise DomainError(f"index must be 1..3, got {i}")
    lam = curve.uniformize(z)
    lv = lam[0] ** 2 + curve.A_i[0]
    j, k = [c for c in (1, 2, 3) if c != i]
    if parity == "odd":
        coef = lam[i - 1]
    elif parity == "even":
        coef = lam[j - 1] * lam[k - 1]
    else:
        raise DomainError(f"parity must be 'odd' or 'even', got {parity!r}")
    return V[i - 1] * lv**m * coef


def holod_X(i: int, N: int, z, curve: CurveParams):
    """X_i^N by its superscript N."""
    if N % 2:
        return holod_basis(i, (N - 1) // 2, "odd", z, curve)
    return holod_basis(i, (N - 2) // 2, "even", z, curve)


def holod_bracket_residuals(z, curve: CurveParams, lrange=range(-2, 3)) -> dict:
    A = curve.A_i
    odd = even = mixed = 0.0
    for l in lrange:
        for s in lrange:
            for i, j, k in CYCLIC:
                lhs = bracket(holod_X(i, 2 * l + 1, z, curve), holod_X(j, 2 * s + 1, z, curve))
                rhs = holod_X(k, 2 * (l + s) + 2, z, curve)
                odd = max(odd, _norm(lhs - rhs) / max(1.0, _norm(rhs)))
                lhs = bracket(holod_X(i, 2 * l + 1, z, curve), holod_X(j, 2 * s, z, curve))
                rhs = holod_X(k, 2 * (l + s) + 1, z, curve) - A[i - 1] * holod_X(k, 2 * (l + s) - 1, z, curve)
                mixed = max(mixed, _norm(lhs - rhs) / max(1.0, _norm(rhs), _norm(lhs)))
                lhs = bracket(holod_X(i, 2 * l, z, curve), holod_X(j, 2 * s, z, curve))
                rhs = holod_X(k, 2 * (l + s), z, curve) - A[k - 1] * holod_X(k, 2 * (l + s) - 2, z, curve)
                even = max(even, _norm(lhs - rhs) / max(1.0, _norm(rhs), _norm(lhs)))
    return {"odd": odd, "mixed": mixed, "even": even}


class HolodSplit:
    """W_i^+ and W_i^- with the fitted data; iterates as (W_plus, W_minus)."""

    def __init__(self, i, W_plus, W_minus, z0, c, d, det, constancy):
        self.i = i
        self.W_plus = W_plus
        self.W_minus = W_minus
        self.z0 = z0
        self.c = c
        self.d = d
        self.det = det
        self.constancy = constancy

    def __iter__(self):
        yield self.W_plus
        yield self.W_minus


def holod_w_split(i: int, curve: CurveParams, seed: int = 0, samples: int = 20) -> HolodSplit:
    """Split Y_i = lambda_i v_i / lambda and Z_i = lambda_j lambda_k v_i / lambda
    into W_i^+ (poles on the orbit of z0) and W_i^- (orbit of -z0)."""
    if i not in (1, 2, 3):
        raise DomainError(f"index must be 1..3, got {i}")
    mp = curve.tau
    zp, zm = wp_zero(Lattice(mp, 0.5))
    if zp == zm:
        raise DegenerateError(
            f"p of 1/2 Lambda has a double zero at tau={mp.tau}: [tau]=[i], the orbits of +-z0 coincide"
        )
    z0 = zp.z
    j, k = [c for c in (1, 2, 3) if c != i]

    def lam_c(z):
        lam = curve.uniformize(z)
        return lam, lam[0] ** 2 + curve.A_i[0]

    def y(z):
        lam, lv = lam_c(z)
        return lam[i - 1] / lv

    def zf(z):
        lam, lv = lam_c(z)
        return lam[j - 1] * lam[k - 1] / lv

    sy = two_point_split(i, y, z0, -z0, mp, seed=seed)
    sz = two_point_split(i, zf, z0, -z0, mp, seed=seed)
    if sy.flagged or sz.flagged:
        raise CalibrationError(
            f"lambda-quotients are not in the two-point span (residuals {sy.residual:.2e}, {sz.residual:.2e})"
        )
    c1, c2 = sy.c1, sy.c2
    d1, d2 = sz.c1, sz.c2
    det = d2 * c1 - c2 * d1
    if abs(det) < 1e-12 * max(1.0, abs(c1 * d2), abs(c2 * d1)):
        raise DegenerateError("d2 c1 - c2 d1 vanishes")
    v = V[i - 1]

    def W_plus(z):
        return (d2 * y(z) - c2 * zf(z)) * v

    def W_minus(z):
        return (d1 * y(z) - c1 * zf(z)) * v

    rng = np.random.default_rng(seed + 1)
    zs = sample_points(mp, samples, rng, punctures=(0.0, z0, -z0))
    ratios_p = np.array([(d2 * y(z) - c2 * zf(z)) / mu(i, z - z0, mp) for z in zs])
    ratios_m = np.array([(d1 * y(z) - c1 * zf(z)) / mu(i, z + z0, mp) for z in zs])
    cons = {
        "plus": float(np.max(np.abs(ratios_p - ratios_p.mean())) / max(1e-300, abs(ratios_p.mean()))),
        "minus": float(np.max(np.abs(ratios_m - ratios_m.mean())) / max(1e-300, abs(ratios_m.mean()))),
        "fit_y": sy.residual,
        "fit_z": sz.residual,
    }
    return HolodSplit(i, W_plus, W_minus, TorusPoint(z0, Lattice(mp, 0.5)), (c1, c2), (d1, d2), det, cons)
