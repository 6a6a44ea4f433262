"""Frobenius regularization, minimal twisted polynomials and slope-zero reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import (
    DivisionByZero,
    NotCyclic,
    NotIsoclinic,
    PrecisionExhausted,
    ResidualSingular,
    ValuationNotDivisible,
)
from ..field import GF
from ..linalg import SMat, fq_inv, fq_matmul
from ..series import SeriesRing, gamma_x_ratio
from ..twisted import TwistedPoly, newton_slopes
from ..weil import SmoothCharacter
from .module import PhiGammaModule

# ---------------------------------------------------------------------------
# integral matrix series as code arrays of shape (L, d, d)


def _to_array(P: SMat, L: int) -> np.ndarray:
    d = P.shape[0]
    T = np.zeros((L, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            T[:, i, j] = P[i, j].coeff_array(0, L)
    return T


def _from_array(ring: SeriesRing, T: np.ndarray, L: int) -> SMat:
    d = T.shape[1]
    return SMat(ring, [[ring.from_codes(T[:, i, j], 0, L) for j in range(d)] for i in range(d)])


def regularize_frobenius(P: SMat, prec: int | None = None):
    """M in GL_d(E[[Y]]) with M^{-1} P φ(M) = P(0) mod Y^prec.

    Successive approximation: if the current conjugate agrees with P(0)
    below degree i and has degree-i coefficient R, replacing M by
    M(1 + Y^i R P(0)^{-1}) pushes the disagreement to degree i + 1.
    """
    F: GF = P.ring.field
    if P.min_val() < 0:
        raise PrecisionExhausted("Frobenius matrix is not integral")
    L = P.prec if prec is None else min(prec, P.prec)
    p = P.ring.p
    T = _to_array(P, L)
    P0 = T[0].copy()
    P0inv = fq_inv(F, P0)
    if P0inv is None:
        raise ResidualSingular("constant term of the Frobenius matrix is singular")
    d = P0.shape[0]
    if d == 1:
        return _regularize_scalar(P, L), P0
    M = np.zeros((L, d, d), dtype=np.int64)
    M[0] = np.eye(d, dtype=np.int64)
    for i in range(1, L):
        R = T[i]
        if not R.any():
            continue
        Q = fq_matmul(F, R, P0inv)
        # M <- M (1 + Y^i Q)
        M[i:] = F.add[M[i:], fq_matmul(F, M[: L - i], Q)]
        # T <- (1 + Y^i Q)^{-1} T (1 + Y^{pi} Q)
        if p * i < L:
            T[p * i :] = F.add[T[p * i :], fq_matmul(F, T[: L - p * i], Q)]
        negQ = F.neg[Q]
        for start in range(i, L, i):
            stop = min(start + i, L)
            T[start:stop] = F.add[T[start:stop], fq_matmul(F, negQ, T[start - i : stop - i])]
    return _from_array(P.ring, M, L), P0


def _regularize_scalar(P: SMat, L: int) -> SMat:
    """For d = 1 the recursion M = (P/P(0))·φ(M) has the solution
    M = ∏_k φ^k(P/P(0)), and only the factors with p^k < L matter."""
    u = P[0, 0].truncate(L)
    u = u.scale(u.field.elem(int(u.coeffs[0])).inverse())
    M = u.ring.one(L)
    while True:
        M = (M * u).truncate(L)
        if (u - 1).is_zero():
            break
        u = u.phi().truncate(L)
    return SMat(P.ring, [[M]])


# ---------------------------------------------------------------------------
# rank one


def _unit_exponent(F: GF, a_residue: int, value: int) -> int:
    """k mod p-1 with (a mod p)^k = value in F_p."""
    p = F.p
    for k in range(p - 1):
        if F.from_int(pow(a_residue % p, k, p)) == value:
            return k
    raise ValueError("value is not a power of a mod p")


def classify_rank1(D: PhiGammaModule) -> SmoothCharacter:
    """The character δ with D ≅ E((X))(δ)."""
    if D.d != 1:
        raise ValueError("classify_rank1 needs a rank-one module")
    R, p, F = D.ring, D.p, D.field
    P = D.mat_phi[0, 0]
    v = P.valuation()
    if v % (p - 1):
        raise ValuationNotDivisible(f"val(mat_phi) = {v} is not divisible by p-1 = {p - 1}")
    c = v // (p - 1)
    # basis change by X^{-c}: P' = X^{-c(p-1)} P, G' = G (X/[a]X)^c
    P1 = P.shift(-c * (p - 1))
    M, P0 = regularize_frobenius(SMat(R, [[P1]]))
    at_p = F.elem(P0[0, 0])
    Minv = M.inverse()
    unit_vals = {}
    for a, G in D.gamma:
        g = G[0, 0]
        ratio = gamma_x_ratio(R, a, g.prec + 1).inverse()
        G1 = g * ratio**c if c >= 0 else g * ratio.inverse() ** (-c)
        G2 = (Minv @ SMat(R, [[G1]]) @ M.gamma(a))[0, 0]
        if G2.is_zero() or G2.val != 0 or any(G2.coeffs[1:]):
            raise PrecisionExhausted("residual Γ-action is not constant at available precision")
        unit_vals[a.residue] = int(G2.coeffs[0])
    if p == 2:
        return SmoothCharacter(at_p, 0, ())
    (a_res, val), = unit_vals.items()
    k = _unit_exponent(F, a_res, val)
    return SmoothCharacter.from_omega_power(at_p, k)


# ---------------------------------------------------------------------------
# cyclic vectors


def _vec(ring, codes, prec):
    return SMat(ring, [[ring.from_codes([c], 0, prec)] for c in codes])


def min_twisted_poly(D: PhiGammaModule, m: SMat) -> TwistedPoly:
    """Monic P of degree d with P(φ)(m) = 0, m cyclic."""
    d, R = D.d, D.ring
    vecs = [m]
    for _ in range(d):
        vecs.append(D.phi_vec(vecs[-1]))
    V = SMat(R, [[vecs[k][i, 0] for k in range(d)] for i in range(d)])
    try:
        det = V.det()
    except DivisionByZero:
        det = R.zero(0)
    if det.is_zero():
        raise NotCyclic("vector does not generate the module at available precision")
    a = V.inverse() @ (-vecs[d])
    coeffs = [a[k, 0] for k in range(d)]
    # the leading 1 is exact; do not let it inherit the absolute precision
    # of the lower coefficients, which may be negative
    coeffs.append(R.one(max([D.prec] + [c.prec for c in coeffs])))
    return TwistedPoly(R, coeffs)


def cyclic_vector(D: PhiGammaModule, seed=0, retries: int = 8):
    """(m, P): a seeded vector with small coefficient support and its polynomial."""
    rng = np.random.default_rng(seed)
    F, R = D.field, D.ring
    last = None
    # constant vectors first; if they all fail (e.g. a sum of equal
    # characters), try vectors with linear coordinates
    for attempt in range(retries + retries // 2):
        if attempt == 0:
            m = _vec(R, [1] + [0] * (D.d - 1), D.prec)
        elif attempt < retries:
            codes = [F.random_code(rng) for _ in range(D.d)]
            if not any(codes):
                codes[0] = 1
            m = _vec(R, codes, D.prec)
        else:
            m = SMat(R, [[R.from_codes([F.random_code(rng), F.random_code(rng, nonzero=True)], 0, D.prec)]
                         for _ in range(D.d)])
        try:
            return m, min_twisted_poly(D, m)
        except NotCyclic as exc:
            last = exc
    raise NotCyclic(f"no cyclic vector in {retries + retries // 2} attempts: {last}")


def module_slope(D: PhiGammaModule, seed=0) -> Fraction:
    _, P = cyclic_vector(D, seed)
    NP = newton_slopes(P)
    if not NP.is_isoclinic:
        raise NotIsoclinic(f"polygon has slopes {[str(s) for s, _ in NP.slopes]}")
    return NP.slopes[0][0]


# ---------------------------------------------------------------------------
# slope-zero reduction


@dataclass
class ReductionCertificate:
    e: int
    rescale: Fraction  # val_X of the twist y
    slope: Fraction
    vector: SMat  # the cyclic vector m (coordinates in the input basis)
    twisted_poly: TwistedPoly  # the slope-zero polynomial of y^{-1} m
    change_of_basis: SMat  # over E((Y)), columns in the input basis
    residual: np.ndarray  # constant Frobenius matrix, field codes
    prec: int
    residual_gamma: list = field(default_factory=list)

    def replay(self, D: PhiGammaModule) -> bool:
        """Recompute B^{-1} P φ(B) and compare it with the residual."""
        B = self.change_of_basis
        P = D.mat_phi.map(lambda x: x.ramify(self.e))
        conj = B.inverse() @ P @ B.phi()
        P0 = SMat.from_codes(B.ring, self.residual, self.prec)
        return (conj.truncate(self.prec) - P0).is_zero()


def slope_zero_reduction(D: PhiGammaModule, seed=0, prec: int | None = None) -> ReductionCertificate:
    m, P = cyclic_vector(D, seed)
    NP = newton_slopes(P)
    if not NP.is_isoclinic:
        raise NotIsoclinic(f"polygon has slopes {[str(s) for s, _ in NP.slopes]}")
    s = NP.slopes[0][0]
    p, d = D.p, D.d
    r = s / (p - 1)  # val_X of the twist y
    e = r.denominator
    Ry = SeriesRing(D.field, e)
    shift = r.numerator  # y = Y^shift
    Pe = TwistedPoly(Ry, [c.ramify(e) for c in P.coeffs])
    big = max(c.prec for c in Pe.coeffs)
    y = Ry.monomial(1, shift, big)
    Q = Pe.right_scale(y).monic()
    Nq = Q.prec if prec is None else min(prec * e, Q.prec)
    # companion basis f_k = φ^k(y^{-1} m): φ(f_{d-1}) = -Σ a_k f_k
    C = SMat.zeros(Ry, d, d, Nq)
    for k in range(d - 1):
        C[k + 1, k] = Ry.one(Nq)
    for k in range(d):
        C[k, d - 1] = (-Q.coeffs[k]).truncate(Nq)
    M, P0 = regularize_frobenius(C, Nq)
    # columns of the companion basis in the input coordinates
    mY = m.map(lambda x: x.ramify(e))
    PY = D.mat_phi.map(lambda x: x.ramify(e))
    f = [mY.scale(y.inverse())]
    for _ in range(d - 1):
        f.append(PY @ f[-1].phi())
    Fm = SMat(Ry, [[f[k][i, 0] for k in range(d)] for i in range(d)])
    B = Fm @ M
    cert = ReductionCertificate(
        e=e,
        rescale=r,
        slope=s,
        vector=m,
        twisted_poly=Q,
        change_of_basis=B,
        residual=P0,
        prec=min(Nq, B.prec),
    )
    # precision actually certified by the replay
    conj = B.inverse() @ PY @ B.phi()
    cert.prec = min(cert.prec, conj.prec)
    return cert
