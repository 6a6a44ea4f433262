"""(ψ,Γ)-modules given by their ψ-matrices, and the passage back to (φ,Γ)-modules.

A lattice ``M`` with basis ``e_0..e_{d-1}`` is described by the matrices
``Ψ_r`` of ``y ↦ ψ(X^r y)``.  Every coordinate splits as
``f = Σ_r X^r f_r(X^p)``, so ``ψ(f e_k) = Σ_r f_r · Ψ_r e_k`` and the ``Ψ_r``
determine ψ everywhere.

To rebuild φ, write the unknown ``z = φ(e_k)`` as ``Σ_r X^r g_r(X^p)`` with
unknown coordinate columns ``g_r``.  The conditions ``ψ((1+X)^{-j} z) = 0``
for ``0 < j < p`` and ``ψ(z) = e_k`` are E((X))-linear in the ``g_r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateModule, DivisionByZero, NotSurjective, PrecisionError
from ..linalg import SMat
from ..series import LaurentSeries, SeriesRing
from .lattice import hermite_form, standard_lattice
from .module import PhiGammaModule


def split_phi_components(f: LaurentSeries, p: int) -> list[LaurentSeries]:
    """f_0..f_{p-1} with f = Σ X^r f_r(X^p)."""
    R = f.ring
    out = []
    for r in range(p):
        # exponents p·m + r below f.prec
        hi = -((r - f.prec) // p)  # ceil((prec - r) / p)
        if f.is_zero():
            out.append(R.zero(hi))
            continue
        lo = -((r - f.val) // p)  # ceil((val - r) / p)
        if hi <= lo:
            out.append(R.zero(hi))
            continue
        codes = np.array([f.coeff(p * m + r) for m in range(lo, hi)], dtype=np.int64)
        out.append(R.from_codes(codes, lo, hi))
    return out


@dataclass
class PsiGammaModule:
    ring: SeriesRing
    psi_mats: list  # Ψ_0..Ψ_{p-1} as SMat
    gamma: list = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.psi_mats[0].shape[0]

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def prec(self) -> int:
        return min([P.prec for P in self.psi_mats] + [G.prec for _, G in self.gamma])

    def psi_vec(self, y: SMat) -> SMat:
        R, d = self.ring, self.d
        out = SMat.zeros(R, d, 1, self._output_prec(y))
        for k in range(d):
            for r, fr in enumerate(split_phi_components(y[k, 0], self.p)):
                if fr.is_zero() and fr.prec >= out.prec:
                    continue
                for i in range(d):
                    out[i, 0] = out[i, 0] + fr * self.psi_mats[r][i, k]
        return out

    def _output_prec(self, y: SMat) -> int:
        return max(y.prec, self.prec) + 1

    def is_surjective(self) -> bool:
        """ψ(M) = M, i.e. the columns of the Ψ_r span the standard lattice."""
        R, d = self.ring, self.d
        cols = [[P[i, k] for i in range(d)] for P in self.psi_mats for k in range(d)]
        G = SMat(R, [[c[i] for c in cols] for i in range(d)])
        try:
            return hermite_form(G) == standard_lattice(R, d)
        except PrecisionError:
            return False


def psi_data(D: PhiGammaModule) -> PsiGammaModule:
    """The ψ-matrices of D on its own basis: Ψ_r = ψ(X^r P^{-1})."""
    Pinv = D.mat_phi_inv()
    mats = [Pinv.shift(r).psi() for r in range(D.p)]
    return PsiGammaModule(D.ring, mats, list(D.gamma))


def psitophi_reconstruct(M: PsiGammaModule, check_surjective: bool = True) -> PhiGammaModule:
    R, p, d = M.ring, M.p, M.d
    N = M.prec * p
    # rows: (j, component), columns: (r, k); entry = ψ((1+X)^{-j} X^r e_k)
    A = SMat.zeros(R, p * d, p * d, N)
    one_plus_x = R.from_ints([1, 1], 0, N)
    twists = [R.one(N)]
    inv = one_plus_x.inverse()
    for _ in range(1, p):
        twists.append(twists[-1] * inv)
    for j in range(p):
        for r in range(p):
            base = twists[j].shift(r)
            for k in range(d):
                y = SMat.zeros(R, d, 1, N)
                y[k, 0] = base
                img = M.psi_vec(y)
                for i in range(d):
                    A[j * d + i, r * d + k] = img[i, 0]
    try:
        det = A.det()
        singular = det.is_zero()
    except DivisionByZero:
        singular = True
    if singular:
        raise DegenerateModule("the ψ-system is singular: some nonzero vector is killed by every ψ_j")
    if check_surjective and not M.is_surjective():
        raise NotSurjective("ψ(M) is strictly smaller than M")
    Ainv = A.inverse()
    P = SMat.zeros(R, d, d, N)
    for k in range(d):
        # φ(e_k): the g_r solve A g = (e_k, 0, ..., 0)
        g = SMat(R, [[Ainv[row, k]] for row in range(p * d)])
        for i in range(d):
            P[i, k] = sum((g[r * d + i, 0].phi().shift(r) for r in range(1, p)), g[i, 0].phi())
    return PhiGammaModule(R, P, list(M.gamma))
