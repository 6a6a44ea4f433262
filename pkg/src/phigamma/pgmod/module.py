"""The (φ,Γ)-module type, its constructors and basic operations.

Convention: basis vectors are columns, ``φ(e) = e·P`` and ``[a](e) = e·G_a``.
A vector with coordinate column ``y`` therefore has ``φ_D(y) = P·φ(y)`` and
``[a]_D(y) = G_a·[a](y)``, and the two actions commute exactly when
``G_a·[a](P) = P·φ(G_a)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DivisionByZero, InputError, NonPrimitiveH
from ..field import GF, FieldElem
from ..linalg import SMat
from ..series import (
    PadicUnit,
    SeriesRing,
    ZpExponent,
    gamma_twist_base,
    one_unit_pow,
    padic_digits_needed,
)
from ..weil import SmoothCharacter, is_primitive, primitive_root


def gamma_generators(p: int, M: int) -> list[PadicUnit]:
    """Topological generators of Z_p^x: a primitive root mod p^2, or {-1, 5}."""
    if p == 2:
        return [PadicUnit(-1, M, 2), PadicUnit(5, M, 2)]
    return [PadicUnit(primitive_root(p, 2), M, p)]


def default_padic_prec(p: int, N: int) -> int:
    return padic_digits_needed(p, N)


@dataclass
class PhiGammaModule:
    ring: SeriesRing
    mat_phi: SMat
    gamma: list = field(default_factory=list)  # [(PadicUnit, SMat)]

    @property
    def d(self) -> int:
        return self.mat_phi.shape[0]

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def field(self) -> GF:
        return self.ring.field

    @property
    def prec(self) -> int:
        return min([self.mat_phi.prec] + [G.prec for _, G in self.gamma])

    @property
    def padic_prec(self) -> int:
        return min(a.prec for a, _ in self.gamma) if self.gamma else 0

    def phi_vec(self, y: SMat) -> SMat:
        return self.mat_phi @ y.phi()

    def mat_phi_inv(self) -> SMat:
        inv = self.__dict__.get("_pinv")
        if inv is None:
            inv = self.mat_phi.inverse()
            self.__dict__["_pinv"] = inv
        return inv

    def psi_vec(self, y: SMat) -> SMat:
        """ψ_D(y) = ψ(P^{-1} y), entrywise on coordinates."""
        return (self.mat_phi_inv() @ y).psi()

    def gamma_vec(self, k: int, y: SMat) -> SMat:
        a, G = self.gamma[k]
        return G @ y.gamma(a)

    def gamma_matrix(self, b: PadicUnit) -> SMat:
        """G_b for an arbitrary b in Z_p^x, via a discrete logarithm.

        Uses the cocycle rule G_{ab} = G_a·[a](G_b) with square-and-multiply
        on the exponents of the stored generators.
        """
        M = min(self.padic_prec, b.prec)
        mod = self.p**M
        target = b.residue % mod
        gens = [(PadicUnit(a.residue, M, self.p), G) for a, G in self.gamma]
        if self.p == 2:
            (m1, G_m1), (g, G_g) = gens
            order = max(mod // 4, 1)
        else:
            ((g, G_g),) = gens
            m1, G_m1 = None, None
            order = (self.p - 1) * self.p ** (M - 1)
        powers, acc = {}, 1
        for k in range(order):
            powers.setdefault(acc, k)
            acc = acc * g.residue % mod
        sign, k = 1, powers.get(target)
        if k is None and m1 is not None:
            sign, k = -1, powers.get(-target % mod)
        if k is None:
            raise InputError(f"{b.residue} is not in the span of the Γ-generators mod {mod}")
        out_a, out = PadicUnit(1, M, self.p), SMat.identity(self.ring, self.d, self.prec)
        sq_a, sq = g, G_g
        while k:
            if k & 1:
                out = out @ sq.gamma(out_a)
                out_a = out_a * sq_a
            sq = sq @ sq.gamma(sq_a)
            sq_a = sq_a * sq_a
            k >>= 1
        if sign == -1:
            out = G_m1 @ out.gamma(m1)
        return out

    def gamma_of(self, b: PadicUnit, y: SMat) -> SMat:
        return self.gamma_matrix(b) @ y.gamma(b)

    def change_basis(self, B: SMat, Binv: SMat | None = None) -> PhiGammaModule:
        """The same module written in the basis e·B."""
        if Binv is None:
            Binv = B.inverse()
        P = Binv @ self.mat_phi @ B.phi()
        gam = [(a, Binv @ G @ B.gamma(a)) for a, G in self.gamma]
        return PhiGammaModule(self.ring, P, gam)

    def truncate(self, N: int) -> PhiGammaModule:
        return PhiGammaModule(
            self.ring, self.mat_phi.truncate(N), [(a, G.truncate(N)) for a, G in self.gamma]
        )

    def __repr__(self):
        return f"PhiGammaModule(d={self.d}, ring={self.ring}, prec={self.prec})"


# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    valid: bool
    invertible: bool
    prec: int
    violations: list

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def to_json(self):
        return {
            "valid": self.valid,
            "invertible": self.invertible,
            "prec": self.prec,
            "violations": self.violations,
        }


def validate_module(D: PhiGammaModule) -> ValidationReport:
    violations = []
    P = D.mat_phi
    try:
        det = P.det()
        invertible = not det.is_zero()
    except DivisionByZero:
        invertible = False
    if not invertible:
        violations.append({"relation": "mat_phi invertible", "detail": "determinant vanishes at precision"})
    prec = P.prec
    for a, G in D.gamma:
        lhs = G @ P.gamma(a)
        rhs = P @ G.phi()
        diff = lhs - rhs
        prec = min(prec, diff.prec)
        for i in range(D.d):
            for j in range(D.d):
                x = diff[i, j]
                if not x.is_zero():
                    violations.append(
                        {
                            "relation": f"G_a [a](P) = P phi(G_a), a={a.residue}",
                            "entry": [i, j],
                            "exponent": x.val,
                            "coefficient": D.field.elem(x.coeff(x.val)).coords(),
                        }
                    )
                    break
            else:
                continue
            break
        if G.det().is_zero():
            violations.append({"relation": f"G_a invertible, a={a.residue}"})
    return ValidationReport(not violations, invertible, prec, violations)


# ---------------------------------------------------------------------------
# constructors


def _ring_for(field: GF) -> SeriesRing:
    return SeriesRing(field, 1)


def rank1_from_character(delta: SmoothCharacter, prec: int, padic_prec: int | None = None) -> PhiGammaModule:
    F = delta.field
    R = _ring_for(F)
    M = padic_prec or default_padic_prec(F.p, 2 * prec + 4 * F.p)
    P = SMat(R, [[R.const(delta.at_p, prec)]])
    gam = [(a, SMat(R, [[R.const(delta(a.residue), prec)]])) for a in gamma_generators(F.p, M)]
    return PhiGammaModule(R, P, gam)


def induced_from_params(
    n: int, h: int, Lam: FieldElem, prec: int, padic_prec: int | None = None, force: bool = False
) -> PhiGammaModule:
    F = Lam.field
    p = F.p
    if not Lam:
        raise InputError("Lambda must be nonzero")
    if not force and not is_primitive(h, n, p):
        raise NonPrimitiveH(f"h={h} is not primitive for n={n}, p={p}")
    R = _ring_for(F)
    # the Frobenius entry has valuation -h(p-1); carry that much extra
    # precision so that products against it still certify X^prec
    prec = prec + abs(h) * (p - 1)
    M = padic_prec or default_padic_prec(p, 2 * prec + 4 * p)
    P = SMat.zeros(R, n, n, prec)
    for j in range(n - 1):
        P[j + 1, j] = R.one(prec)
    sign = 1 if (n - 1) % 2 == 0 else -1
    P[0, n - 1] = R.monomial(Lam * sign, -h * (p - 1), prec)
    N = p**n - 1
    gam = []
    for a in gamma_generators(p, M):
        base = gamma_twist_base(R, a, prec)
        diag = [one_unit_pow(base, ZpExponent(h * p**j * (p - 1), N, M, p)) for j in range(n)]
        gam.append((a, SMat.diag(R, diag, prec)))
    return PhiGammaModule(R, P, gam)


def phi_module(D: PhiGammaModule, y: SMat) -> SMat:
    return D.phi_vec(y)


def psi_module(D: PhiGammaModule, y: SMat) -> SMat:
    return D.psi_vec(y)


def det_module(D: PhiGammaModule) -> PhiGammaModule:
    R = D.ring
    return PhiGammaModule(R, SMat(R, [[D.mat_phi.det()]]), [(a, SMat(R, [[G.det()]])) for a, G in D.gamma])


def direct_sum(D1: PhiGammaModule, D2: PhiGammaModule) -> PhiGammaModule:
    R = D1.ring
    N = min(D1.prec, D2.prec)

    def block(A, B):
        d1, d2 = A.shape[0], B.shape[0]
        Z = SMat.zeros(R, d1 + d2, d1 + d2, N)
        for i in range(d1):
            for j in range(d1):
                Z[i, j] = A[i, j]
        for i in range(d2):
            for j in range(d2):
                Z[d1 + i, d1 + j] = B[i, j]
        return Z

    gam = [(a, block(G1, G2)) for (a, G1), (_, G2) in zip(D1.gamma, D2.gamma)]
    return PhiGammaModule(R, block(D1.mat_phi, D2.mat_phi), gam)


# ---------------------------------------------------------------------------
# disguise


def random_basis_change(ring: SeriesRing, d: int, rng, prec: int, spread: int = 1):
    """A random B in GL_d(E((X))) with its exact inverse.

    B is a product of a diagonal of X^k·(unit polynomial), |k| <= spread, and
    unipotent lower/upper factors whose entries are polynomials of degree
    at most ``spread``.
    """
    F = ring.field

    def poly(lo, hi):
        codes = rng.integers(0, F.q, size=hi - lo + 1)
        return ring.from_codes(codes, lo, prec)

    def unipotent(lower: bool):
        U = SMat.identity(ring, d, prec)
        V = SMat.identity(ring, d, prec)
        for i in range(d):
            for j in range(d):
                if (i > j) if lower else (i < j):
                    U[i, j] = poly(0, spread)
        # invert the unipotent factor exactly: (1+N)^{-1} = sum (-N)^k
        Nil = U - SMat.identity(ring, d, prec)
        term = SMat.identity(ring, d, prec)
        for _ in range(d - 1):
            term = term @ (-Nil)
            V = V + term
        return U, V

    ks = [int(k) for k in rng.integers(-spread, spread + 1, size=d)]
    diag, diag_inv = [], []
    for k in ks:
        u = ring.from_codes([F.random_code(rng, nonzero=True)] + list(rng.integers(0, F.q, size=spread + 1)), 0, prec)
        diag.append(u.shift(k))
        diag_inv.append(u.inverse().shift(-k))
    Dm = SMat.diag(ring, diag, prec)
    Dinv = SMat.diag(ring, diag_inv, prec)
    L, Linv = unipotent(True)
    U, Uinv = unipotent(False)
    B = L @ Dm @ U
    Binv = Uinv @ Dinv @ Linv
    return B, Binv


def disguise(D: PhiGammaModule, seed, spread: int = 1, B=None) -> PhiGammaModule:
    """Conjugate D by a seeded random basis change (or by a given B)."""
    if B is None:
        rng = np.random.default_rng(seed)
        # B is exact; give it enough precision not to limit B^{-1} P φ(B)
        big = D.prec - min(0, D.mat_phi.min_val()) + 4 * spread * D.p + 8
        B, Binv = random_basis_change(D.ring, D.d, rng, big, spread)
    else:
        Binv = B.inverse()
    return D.change_basis(B, Binv)
