"""Compact induction ind_{KZ}^B σ as finite-support coefficient maps.

Cosets of ``KZ`` in ``B`` are indexed by pairs ``(β, δ)`` with
``g_{β,δ} = (1, β; 0, p^δ)`` and ``β`` a canonical representative of
``Q_p/Z_p`` (a fraction in ``[0, 1)`` with p-power denominator).  An element
is a finite sum ``Σ α(β,δ)·[g_{β,δ}]`` and ``g·[h] = [gh]``,
``[gk] = σ(k)·[g]`` for ``k ∈ KZ``.

All formulas here come from multiplying matrices.  In particular
``(1,1;0,1)·g_{β,δ} = g_{β+p^δ, δ}`` and the part supported in ``B^+`` is
``δ ≤ 0`` with ``val(β) ≥ δ``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .colmez import BorelElem, _val
from .errors import InputError, NotInPositiveMonoid, NotPlusPart
from .field import FieldElem, GF
from .linalg import fq_solve
from .weil import SmoothCharacter


def canonical_beta(x: Fraction, p: int) -> Fraction:
    """The representative of x mod Z_p in {a/p^k : 0 <= a < p^k}."""
    x = Fraction(x)
    den = x.denominator
    k = 0
    while den % p == 0:
        den //= p
        k += 1
    if k == 0:
        return Fraction(0)
    mod = p**k
    # x = r / (p^k · den) and den is a unit mod p^k
    num = x.numerator * pow(den, -1, mod) % mod
    return Fraction(num, mod)


@dataclass(frozen=True, order=True)
class CosetIndex:
    delta: int
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 <= self.beta < 1:
            raise InputError(f"beta = {self.beta} is not a canonical representative")

    def matrix(self, p: int) -> BorelElem:
        return BorelElem(1, self.beta, Fraction(p) ** self.delta, p)

    def in_plus_part(self, p: int) -> bool:
        return self.delta <= 0 and (self.beta == 0 or _val(self.beta, p) >= self.delta)


@dataclass(frozen=True)
class InducedData:
    """The pair σ = σ_1 ⊗ σ_2 with σ_2(p) = 1."""

    sigma1: SmoothCharacter
    sigma2: SmoothCharacter

    def __post_init__(self):
        if self.sigma1.field is not self.sigma2.field:
            raise InputError("σ_1 and σ_2 take values in different fields")
        if self.sigma2.at_p != 1:
            raise InputError("σ_2(p) must be 1")

    @property
    def field(self) -> GF:
        return self.sigma1.field

    @property
    def p(self) -> int:
        return self.field.p

    def __call__(self, g: BorelElem) -> FieldElem:
        return self.sigma1(g.a) * self.sigma2(g.d)


def coset_decompose(m: BorelElem, sigma: InducedData):
    """(index, kz, σ(kz)) with m = g_{β,δ}·kz."""
    p = sigma.p
    if m.p != p:
        raise InputError("matrix and characters use different primes")
    delta = _val(m.d, p) - _val(m.a, p)
    beta = canonical_beta(m.b * Fraction(p) ** delta / m.d, p)
    idx = CosetIndex(delta, beta)
    kz = idx.matrix(p).inverse() @ m
    return idx, kz, sigma(kz)


def in_kz(g: BorelElem) -> bool:
    p = g.p
    s = _val(g.a, p)
    return _val(g.d, p) == s and (g.b == 0 or _val(g.b, p) >= s)


@dataclass(frozen=True)
class InductionElement:
    sigma: InducedData
    coeffs: dict = field(default_factory=dict)  # CosetIndex -> field code

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.coeffs.items() if int(v)}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def basis(cls, sigma: InducedData, beta, delta: int) -> InductionElement:
        return cls(sigma, {CosetIndex(delta, canonical_beta(Fraction(beta), sigma.p)): 1})

    @classmethod
    def of_matrix(cls, sigma: InducedData, m: BorelElem) -> InductionElement:
        """[m] written in the coset basis."""
        idx, _, c = coset_decompose(m, sigma)
        return cls(sigma, {idx: c.code})

    @property
    def field(self) -> GF:
        return self.sigma.field

    def support(self):
        return sorted(self.coeffs)

    def __add__(self, other: InductionElement) -> InductionElement:
        F = self.field
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = int(F.add[out.get(k, 0), v])
        return InductionElement(self.sigma, out)

    def scale(self, c) -> InductionElement:
        F = self.field
        c = F(c).code
        return InductionElement(self.sigma, {k: int(F.mul[c, v]) for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(self.field.elem(self.field.neg[1]))

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, InductionElement) and self.coeffs == other.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_plus_part(self) -> bool:
        return all(k.in_plus_part(self.sigma.p) for k in self.coeffs)

    def to_json(self):
        F = self.field
        return [
            {"beta": str(k.beta), "delta": k.delta, "coeff": F.elem(v).coords()}
            for k, v in sorted(self.coeffs.items())
        ]

    @classmethod
    def from_json(cls, sigma: InducedData, obj) -> InductionElement:
        F = sigma.field
        out = {}
        for term in obj:
            idx = CosetIndex(int(term["delta"]), canonical_beta(Fraction(term["beta"]), sigma.p))
            out[idx] = int(F.add[out.get(idx, 0), F(list(term["coeff"])).code])
        return cls(sigma, out)


def act_induction(g: BorelElem, f: InductionElement) -> InductionElement:
    F, p = f.field, f.sigma.p
    out: dict = {}
    for idx, c in f.coeffs.items():
        new, _, scalar = coset_decompose(g @ idx.matrix(p), f.sigma)
        out[new] = int(F.add[out.get(new, 0), F.mul[c, scalar.code]])
    return InductionElement(f.sigma, out)


def s_map(f: InductionElement) -> FieldElem:
    F = f.field
    total = 0
    for v in f.coeffs.values():
        total = F.add[total, v]
    return F.elem(int(total))


# ---------------------------------------------------------------------------
# the operators X = (1,1;0,1) - Id and F = diag(p, 1)


def unipotent(p: int, z=1) -> BorelElem:
    return BorelElem.unipotent(z, p)


def frobenius(p: int) -> BorelElem:
    return BorelElem(p, 0, 1, p)


def apply_X(f: InductionElement) -> InductionElement:
    return act_induction(unipotent(f.sigma.p), f) - f


def apply_F(f: InductionElement) -> InductionElement:
    return act_induction(frobenius(f.sigma.p), f)


def _levels(f: InductionElement) -> dict:
    """δ -> {numerator i of β = i·p^δ: code}."""
    p = f.sigma.p
    out: dict = {}
    for idx, c in f.coeffs.items():
        i = int(idx.beta * p ** (-idx.delta))
        out.setdefault(idx.delta, {})[i] = c
    return out


@dataclass
class XImageResult:
    in_image: bool
    witness: InductionElement | None
    level_sums: dict  # δ -> coefficient sum code

    def __bool__(self):
        return self.in_image


def x_image_test(y: InductionElement) -> XImageResult:
    """Is y in X·(ind)^+?  If so, return x with X·x = y."""
    if not y.is_plus_part():
        raise NotPlusPart("support leaves the part supported in B^+")
    F, p = y.field, y.sigma.p
    sums = {}
    witness: dict = {}
    ok = True
    for delta, entries in sorted(_levels(y).items()):
        total = 0
        for c in entries.values():
            total = F.add[total, c]
        sums[delta] = int(total)
        if total:
            ok = False
            continue
        # level δ is the cycle Z/p^{-δ}; (X x)_i = x_{i-1} - x_i
        size = p ** (-delta)
        x = 0
        for i in range(1, size):
            x = int(F.sub[x, entries.get(i, 0)])
            if x:
                witness[CosetIndex(delta, Fraction(i, size))] = x
    if not ok:
        return XImageResult(False, None, sums)
    w = InductionElement(y.sigma, witness)
    if apply_X(w) != y:
        raise AssertionError("witness failed verification")
    return XImageResult(True, w, sums)


def mod_x_projection(y: InductionElement) -> list[FieldElem]:
    """Coefficients c_n of Σ c_n F^n, c_n = Σ_β α(β, -n)."""
    if not y.is_plus_part():
        raise NotPlusPart("support leaves the part supported in B^+")
    F = y.field
    depth = max((-k.delta for k in y.coeffs), default=-1)
    out = [0] * (depth + 1)
    for k, v in y.coeffs.items():
        out[-k.delta] = int(F.add[out[-k.delta], v])
    while out and out[-1] == 0:
        out.pop()
    return [F.elem(c) for c in out]


@dataclass(frozen=True)
class GenerationWitness:
    u: Fraction
    n: int
    scalar: FieldElem


def _is_unit(x: Fraction, p: int) -> bool:
    return x != 0 and _val(x, p) == 0


def af_generate_witness(m: BorelElem, sigma: InducedData) -> GenerationWitness:
    """[m] = scalar·(1,u;0,1)·F^n·[Id] for m in B^+.

    From (p^n a, b; 0, d) = (1, b/d; 0, 1)·(p^n, 0; 0, 1)·(a, 0; 0, d) and
    [diag(a, d)] = σ_1(a)σ_2(d)·[Id].
    """
    p = sigma.p
    n = _val(m.a, p) if m.a else -1
    if n < 0 or not _is_unit(m.d, p) or (m.b != 0 and _val(m.b, p) < 0):
        raise NotInPositiveMonoid(f"{m} is not in B^+")
    a = m.a / Fraction(p) ** n
    w = GenerationWitness(m.b / m.d, n, sigma.sigma1(a) * sigma.sigma2(m.d))
    return w


def replay_witness(w: GenerationWitness, sigma: InducedData) -> InductionElement:
    p = sigma.p
    f = InductionElement.of_matrix(sigma, BorelElem.identity(p))
    for _ in range(w.n):
        f = apply_F(f)
    return act_induction(unipotent(p, w.u), f).scale(w.scalar)


# ---------------------------------------------------------------------------
# brute-force oracle


def x_image_bruteforce(y: InductionElement) -> bool:
    """Decide y ∈ X·(ind)^+ by solving a finite linear system.

    X preserves each level δ and permutes the cosets of a level; a preimage
    can therefore be sought among the cosets of the levels of y.
    """
    if not y.is_plus_part():
        raise NotPlusPart("support leaves the part supported in B^+")
    if y.is_zero():
        return True
    F, p = y.field, y.sigma.p
    cosets = []
    for delta in sorted({k.delta for k in y.coeffs}):
        size = p ** (-delta)
        cosets += [CosetIndex(delta, Fraction(i, size)) for i in range(size)]
    pos = {c: i for i, c in enumerate(cosets)}
    A = np.zeros((len(cosets), len(cosets)), dtype=np.int64)
    for j, c in enumerate(cosets):
        img = apply_X(InductionElement(y.sigma, {c: 1}))
        for k, v in img.coeffs.items():
            A[pos[k], j] = v
    b = np.zeros(len(cosets), dtype=np.int64)
    for k, v in y.coeffs.items():
        b[pos[k]] = v
    return fq_solve(F, A, b) is not None
