"""Lattices over E[[X]] in canonical triangular form, ψ-images and D♮.

A lattice is stored by its Hermite basis: column ``i`` has pivot ``X^{k_i}``
in row ``i``, zeros below, and every entry above a pivot row ``r`` is a
Laurent polynomial with exponents strictly below ``k_r``.  Such a basis is
exact, so it can be re-expanded at any working precision.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import NoConvergence, PrecisionExhausted, RankDeficient
from ..linalg import SMat
from ..series import LaurentSeries, SeriesRing
from .module import PhiGammaModule


@dataclass(frozen=True)
class Lattice:
    ring: SeriesRing
    pivots: tuple  # k_0..k_{d-1}
    upper: tuple  # ((i, j, val, codes), ...) for nonzero reduced entries above the diagonal

    @property
    def d(self) -> int:
        return len(self.pivots)

    def basis(self, prec: int) -> SMat:
        R = self.ring
        d = self.d
        B = SMat.zeros(R, d, d, prec)
        for i, k in enumerate(self.pivots):
            B[i, i] = R.monomial(1, k, prec)
        for i, j, v, codes in self.upper:
            B[i, j] = R.from_codes(np.array(codes, dtype=np.int64), v, prec)
        return B

    def min_exponent(self) -> int:
        lows = list(self.pivots) + [v for _, _, v, _ in self.upper]
        return min(lows)

    def max_exponent(self) -> int:
        return max(self.pivots)

    def scaled(self, k: int) -> Lattice:
        """X^k · L."""
        return Lattice(
            self.ring,
            tuple(x + k for x in self.pivots),
            tuple((i, j, v + k, c) for i, j, v, c in self.upper),
        )

    def to_json(self):
        return {
            "pivots": list(self.pivots),
            "upper": [
                {"row": i, "col": j, "lead": v, "coeffs": [self.ring.field.elem(c).coords() for c in cs]}
                for i, j, v, cs in self.upper
            ],
        }


def standard_lattice(ring: SeriesRing, d: int) -> Lattice:
    return Lattice(ring, (0,) * d, ())


def _polar_part(x: LaurentSeries, k: int) -> LaurentSeries:
    """Terms of x with exponent < k (requires x known beyond k)."""
    if x.is_zero() or x.val >= k:
        return x.ring.zero(k)
    return LaurentSeries(x.ring, x.val, x.coeffs[: k - x.val], k)


def hermite_form(gens: SMat) -> Lattice:
    """Canonical basis of the E[[X]]-span of the columns of ``gens``."""
    R = gens.ring
    d, m = gens.shape
    cols = [[gens[i, j] for i in range(d)] for j in range(m)]
    avail = list(range(m))
    piv_col = [None] * d
    pivots = [0] * d
    for i in range(d - 1, -1, -1):
        best, bound = None, None
        for c in avail:
            x = cols[c][i]
            if x.is_zero():
                bound = x.prec if bound is None else min(bound, x.prec)
            elif best is None or x.val < cols[best][i].val:
                best = c
        if best is None:
            raise RankDeficient(f"no pivot in row {i} at available precision")
        k = cols[best][i].val
        if bound is not None and bound <= k:
            raise PrecisionExhausted(f"pivot in row {i} not certified (need precision > {k}, have {bound})")
        unit_inv = cols[best][i].shift(-k).inverse()
        cols[best] = [x * unit_inv for x in cols[best]]
        piv = cols[best][i]
        piv_inv = piv.inverse()
        for c in avail:
            if c != best and not cols[c][i].is_zero():
                f = cols[c][i] * piv_inv
                cols[c] = [x - f * y for x, y in zip(cols[c], cols[best])]
        avail.remove(best)
        piv_col[i] = best
        pivots[i] = k
    basis = [cols[piv_col[i]] for i in range(d)]
    # reduce entries above each pivot row, working upwards
    for j in range(d):
        for i in range(j - 1, -1, -1):
            x = basis[j][i]
            k = pivots[i]
            if x.is_zero() and x.prec >= k:
                continue
            if x.prec < k:
                raise PrecisionExhausted(f"entry ({i},{j}) not known up to pivot exponent {k}")
            if x.val >= k:
                q = x.shift(-k)
            else:
                q = LaurentSeries(x.ring, k, x.coeffs[k - x.val :], x.prec).shift(-k)
            if not q.is_zero():
                basis[j] = [a - q * b for a, b in zip(basis[j], basis[i])]
    upper = []
    for j in range(d):
        for i in range(j):
            part = _polar_part(basis[j][i], pivots[i])
            if not part.is_zero():
                nz = part.coeffs
                upper.append((i, j, part.val, tuple(int(c) for c in nz)))
    return Lattice(R, tuple(pivots), tuple(upper))


def lattice_psi_image(D: PhiGammaModule, L: Lattice, prec: int | None = None) -> Lattice:
    """Hermite form of the span of ψ_D(X^i b), b in the basis of L, 0 <= i < p."""
    R = D.ring
    if prec is None:
        prec = D.prec
    B = L.basis(prec)
    Pinv = D.mat_phi_inv()
    img = Pinv @ B
    gens = []
    for j in range(L.d):
        col = [img[r, j] for r in range(L.d)]
        for i in range(D.p):
            gens.append([x.shift(i).psi() for x in col])
    G = SMat(R, [[gens[c][r] for c in range(len(gens))] for r in range(L.d)])
    return hermite_form(G)


def compute_dnat(D: PhiGammaModule, start: Lattice | None = None, budget: int | None = None):
    """Iterate L -> ψ_D(L) until it stabilises; returns (lattice, iterations)."""
    L = start if start is not None else standard_lattice(D.ring, D.d)
    budget = budget if budget is not None else 4 * D.d * D.p
    seen = [L]
    for it in range(1, budget + 1):
        nxt = lattice_psi_image(D, L)
        if nxt == L:
            return nxt, it
        if nxt in seen:
            raise NoConvergence(f"cycle of length {len(seen) - seen.index(nxt)} in the ψ-iteration")
        seen.append(nxt)
        L = nxt
    raise NoConvergence(f"no fixed lattice within {budget} iterations")


def reduce_to_lattice(D: PhiGammaModule, L: Lattice) -> PhiGammaModule:
    """D written in the Hermite basis of L."""
    N = D.prec - min(0, L.min_exponent()) + max(0, L.max_exponent()) * D.p + 8
    B = L.basis(N)
    return D.change_basis(B)
