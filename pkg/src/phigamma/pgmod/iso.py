"""Isomorphism testing and recovery of Weil parameters.

Homomorphisms ``B`` from the second module to the first satisfy
``B = P1·φ(B)·P2^{-1}``.  The lowest exponent of a nonzero solution is
pinned to a short window by valuations; inside the window the coefficients
are unknown constant matrices, above it they follow from the equation.
Since φ and Γ fix the constants E, the solutions form an E-vector space on
which ``B ↦ G1·[a](B)·G2^{-1}`` acts linearly, and the Γ-fixed part is a
plain kernel computation over E.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..errors import (
    DivisionByZero,
    Inconclusive,
    NotIrreducible,
    NotIsoclinic,
    PrecisionExhausted,
    RecoveryAmbiguous,
)
from ..linalg import SMat, fq_nullspace, fq_solve
from ..weil import WeilParams, canonicalize, h_orbit, is_primitive
from .lattice import compute_dnat, reduce_to_lattice
from .module import PhiGammaModule, det_module, induced_from_params
from .reduction import classify_rank1, module_slope


def reduced(D: PhiGammaModule) -> PhiGammaModule:
    """D in the basis of its ψ-fixed lattice (cached on the instance)."""
    red = D.__dict__.get("_reduced")
    if red is None:
        L, _ = compute_dnat(D)
        red = reduce_to_lattice(D, L)
        red.__dict__["_reduced"] = red
        D.__dict__["_reduced"] = red
    return red


@dataclass
class HomSpace:
    kmin: int
    kmax: int
    basis: list  # SMat solutions, truncated at their certified precision

    @property
    def dim(self) -> int:
        return len(self.basis)


def _window_vector(B: SMat, kmin: int, kmax: int) -> np.ndarray:
    d = B.shape[0]
    out = np.zeros((kmax - kmin + 1, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            out[:, i, j] = B[i, j].coeff_array(kmin, kmax + 1)
    return out.reshape(-1)


def phi_hom_space(D1: PhiGammaModule, D2: PhiGammaModule, extra: int = 8) -> HomSpace:
    R, p, d = D1.ring, D1.p, D1.d
    F = R.field
    P1, P2 = D1.mat_phi, D2.mat_phi
    Q = D2.mat_phi_inv()
    P1inv = D1.mat_phi_inv()
    w = P1.valuation() + Q.valuation()
    kmin = math.ceil(Fraction(P1inv.valuation() + P2.valuation(), p - 1))
    kmax = math.floor(Fraction(-w, p - 1))
    if kmin > kmax:
        return HomSpace(kmin, kmax, [])
    W = kmax - kmin + 1
    # the image of a window element may reach below kmin; those
    # coefficients must vanish as well
    lo = min(kmin, p * kmin + w)
    pad = kmin - lo
    cols = []
    for k in range(kmin, kmax + 1):
        for r in range(d):
            for s in range(d):
                img = SMat(
                    R,
                    [[(P1[i, r] * Q[s, j]).shift(p * k) for j in range(d)] for i in range(d)],
                )
                if img.prec <= kmax:
                    raise Inconclusive(f"Frobenius data known only to X^{img.prec}, window reaches X^{kmax}")
                unit = np.zeros((W + pad, d, d), dtype=np.int64)
                unit[pad + k - kmin, r, s] = 1
                cols.append(F.sub[unit.reshape(-1), _window_vector(img, lo, kmax)])
    A = np.array(cols, dtype=np.int64).T
    null = fq_nullspace(F, A)
    basis = []
    for vec in null:
        coeffs = vec.reshape(W, d, d)
        B = SMat(R, [[R.from_codes(coeffs[:, i, j], kmin, kmax + 1) for j in range(d)] for i in range(d)])
        # extend by the recursion B <- P1 φ(B) Q while the precision grows
        target = kmax + 1 + extra
        while B.prec < target:
            nxt = P1 @ B.phi() @ Q
            if nxt.prec <= B.prec:
                break
            if not (nxt.truncate(B.prec) - B).is_zero():
                raise PrecisionExhausted("window solution is inconsistent with the recursion")
            B = nxt.truncate(target)
        basis.append(B)
    return HomSpace(kmin, kmax, basis)


def gamma_fixed_homs(D1: PhiGammaModule, D2: PhiGammaModule, H: HomSpace) -> list:
    """Basis of the Γ-equivariant part of H, as E-combinations of H.basis."""
    if not H.basis:
        return []
    F = D1.field
    dim = H.dim
    stacked = np.array([_window_vector(B, H.kmin, H.kmax) for B in H.basis], dtype=np.int64)
    blocks = []
    for (a, G1), (_, G2) in zip(D1.gamma, D2.gamma):
        G2inv = G2.inverse()
        T = np.zeros((dim, dim), dtype=np.int64)
        for c, B in enumerate(H.basis):
            img = G1 @ B.gamma(a) @ G2inv
            if img.prec <= H.kmax:
                raise Inconclusive("Γ-image not certified across the window")
            v = _window_vector(img, H.kmin, H.kmax)
            T[:, c] = _coords(F, stacked, v)
        blocks.append(F.sub[T, np.eye(dim, dtype=np.int64)])
    return list(fq_nullspace(F, np.vstack(blocks)))


def _coords(F, stacked: np.ndarray, v: np.ndarray) -> np.ndarray:
    """x with x·stacked = v (rows of ``stacked`` are independent)."""
    x = fq_solve(F, stacked.T, v)
    if x is None:
        raise PrecisionExhausted("Γ-image left the space of Frobenius homomorphisms")
    return x


def _combine(F, basis, coeffs) -> SMat:
    out = None
    for c, B in zip(coeffs, basis):
        if c:
            term = B.scale(F.elem(c))
            out = term if out is None else out + term
    return out


def test_isomorphic(D1: PhiGammaModule, D2: PhiGammaModule, reduce: bool = True, seed: int = 0) -> bool:
    if D1.d != D2.d or D1.field is not D2.field:
        return False
    if reduce:
        D1, D2 = reduced(D1), reduced(D2)
    F = D1.field
    H = phi_hom_space(D1, D2)
    fixed = gamma_fixed_homs(D1, D2, H)
    if not fixed:
        return False
    rng = np.random.default_rng(seed)
    trials = [v for v in fixed]
    if len(fixed) > 1:
        for _ in range(20):
            combo = np.zeros(H.dim, dtype=np.int64)
            for v in fixed:
                c = F.random_code(rng)
                combo = F.add[combo, F.mul[c, v]]
            trials.append(combo)
    for coeffs in trials:
        B = _combine(F, H.basis, coeffs)
        if B is None:
            continue
        try:
            det = B.det()
        except DivisionByZero:
            continue
        if not det.is_zero():
            return True
    raise Inconclusive("Γ-equivariant homomorphisms exist but none is certified invertible")


test_isomorphic.__test__ = False  # not a pytest test despite the name


# ---------------------------------------------------------------------------
# recovery


_CANDIDATES: dict = {}


def _candidate(n, h, Lam, prec):
    key = (Lam.field.p, Lam.field.modulus, n, h, Lam.code, prec)
    D = _CANDIDATES.get(key)
    if D is None:
        D = reduced(induced_from_params(n, h, Lam, prec))
        if len(_CANDIDATES) > 512:
            _CANDIDATES.clear()
        _CANDIDATES[key] = D
    return D


@dataclass
class Recovery:
    params: WeilParams
    slope: Fraction
    candidates: list
    det_character: object

    def to_json(self):
        return {
            "params": self.params.to_json(),
            "slope": str(self.slope),
            "candidates": self.candidates,
            "det": self.det_character.to_json(),
        }


def recover_weil_params(D: PhiGammaModule, seed: int = 0, prec: int = 40, details: bool = False):
    n, p = D.d, D.p
    chi = classify_rank1(det_module(D))
    Lam, k = chi.at_p, chi.omega_exponent()
    Dr = reduced(D)
    try:
        s = module_slope(Dr, seed)
    except NotIsoclinic as exc:
        raise NotIrreducible(str(exc)) from exc
    bracket_n = (p**n - 1) // (p - 1)
    t = -s / (p - 1) * bracket_n
    if t.denominator != 1:
        raise NotIrreducible(f"slope {s} is not that of an induced module of rank {n}")
    t = int(t) % bracket_n
    N = p**n - 1
    residues = {t * p**i % bracket_n for i in range(n)} if bracket_n > 1 else {0}
    cands = sorted(
        h
        for h in range(max(N, 1))
        if is_primitive(h, n, p)
        and h == min(h_orbit(h, n, p))
        and (h - k) % (p - 1) == 0
        and h % bracket_n in residues
    )
    if not cands:
        raise NotIrreducible(f"no primitive h matches slope {s} and determinant exponent {k}")
    passing = []
    for h in cands:
        if test_isomorphic(Dr, _candidate(n, h, Lam, prec), reduce=False):
            passing.append(h)
    if len(passing) != 1:
        raise RecoveryAmbiguous(
            f"candidates {cands} (slope {s}, det exponent {k}); isomorphic: {passing}"
        )
    w = canonicalize(WeilParams(n, passing[0], Lam))
    if details:
        return w, Recovery(w, s, cands, chi)
    return w
