"""Borel action on ψ-towers at finite depth.

An element of ``lim_ψ M`` is a sequence ``(y_i)`` with ``ψ(y_{i+1}) = y_i``.
A :class:`PsiTower` stores one entry ``y_t`` at its top index ``t``; every
lower entry is ``ψ^{t-i}(y_t)`` and nothing above ``t`` is known.  The Borel
group acts through four kinds of generators:

* central ``z``: ``y_i ↦ χ(z)^{-1} y_i``
* ``diag(1, p)``: ``y_i ↦ y_{i-1}``
* ``diag(1, a)`` with ``a`` a unit: ``y_i ↦ [a^{-1}](y_i)``
* ``(1, z; 0, 1)``: ``y_i ↦ ψ^j((1+X)^{p^{i+j} z} y_{i+j})`` once ``i+j ≥ -val(z)``

A general upper-triangular matrix is written as a product of these.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyOverlap, InputError, InsufficientDepth, NotInvertible, NotUpperTriangular
from .linalg import SMat
from .pgmod.module import PhiGammaModule
from .series import PadicUnit, ZpExponent, one_unit_pow, val_p
from .weil import SmoothCharacter


def _val(x: Fraction, p: int) -> int:
    return val_p(x.numerator, p) - val_p(x.denominator, p)


def _unit_part(x: Fraction, p: int) -> Fraction:
    return x / Fraction(p) ** _val(x, p)


@dataclass(frozen=True)
class BorelElem:
    """(a, b; 0, d) with exact rational entries."""

    a: Fraction
    b: Fraction
    d: Fraction
    p: int

    def __post_init__(self):
        for name in ("a", "b", "d"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.a == 0 or self.d == 0:
            raise NotInvertible("diagonal entries must be nonzero")

    @classmethod
    def from_rows(cls, rows, p: int) -> BorelElem:
        (a, b), (c, d) = rows
        if Fraction(c) != 0:
            raise NotUpperTriangular("lower-left entry must vanish")
        return cls(a, b, d, p)

    @classmethod
    def identity(cls, p: int) -> BorelElem:
        return cls(1, 0, 1, p)

    @classmethod
    def central(cls, z, p: int) -> BorelElem:
        return cls(z, 0, z, p)

    @classmethod
    def unipotent(cls, z, p: int) -> BorelElem:
        return cls(1, z, 1, p)

    @classmethod
    def lower_diag(cls, x, p: int) -> BorelElem:
        """diag(1, x)."""
        return cls(1, 0, x, p)

    def __matmul__(self, other: BorelElem) -> BorelElem:
        return BorelElem(self.a * other.a, self.a * other.b + self.b * other.d, self.d * other.d, self.p)

    def inverse(self) -> BorelElem:
        return BorelElem(1 / self.a, -self.b / (self.a * self.d), 1 / self.d, self.p)

    def rows(self):
        return ((self.a, self.b), (Fraction(0), self.d))

    def decompose(self):
        """(z, beta, k, u) with self = z · (1, beta; 0, 1) · diag(1, p^k) · diag(1, u)."""
        ratio = self.d / self.a
        k = _val(ratio, self.p)
        return self.a, self.b / self.d, k, _unit_part(ratio, self.p)

    def to_json(self):
        return [[str(self.a), str(self.b)], ["0", str(self.d)]]

    def __repr__(self):
        return f"BorelElem([[{self.a}, {self.b}], [0, {self.d}]])"


_TOKEN = re.compile(r"\s*([zuda])\(([^)]*)\)\s*")


def _parse_rational(text: str, p: int) -> Fraction:
    expr = text.replace(" ", "").replace("p", f"({p})")
    if not re.fullmatch(r"[0-9()+\-*/^]+", expr):
        raise InputError(f"cannot parse {text!r}")
    expr = expr.replace("^", "**")
    # evaluate with Fractions only
    value = eval(re.sub(r"(\d+)", r"Fraction(\1)", expr), {"__builtins__": {}, "Fraction": Fraction})
    return Fraction(value)


def parse_word(word: str, p: int) -> list[BorelElem]:
    """Parse ``"u(1/p);d(p);a(2);z(3)"`` into generators.

    ``z(x)`` is central, ``u(x)`` unipotent, ``d(x)`` and ``a(x)`` are
    ``diag(1, x)``.
    """
    out = []
    for part in filter(None, (s.strip() for s in word.split(";"))):
        m = _TOKEN.fullmatch(part)
        if not m:
            raise InputError(f"bad generator {part!r}")
        kind, x = m.group(1), _parse_rational(m.group(2), p)
        if kind == "z":
            out.append(BorelElem.central(x, p))
        elif kind == "u":
            out.append(BorelElem.unipotent(x, p))
        else:
            out.append(BorelElem.lower_diag(x, p))
    return out


def word_product(word: list[BorelElem], p: int) -> BorelElem:
    g = BorelElem.identity(p)
    for h in word:
        g = g @ h
    return g


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PsiTower:
    module: PhiGammaModule
    chi: SmoothCharacter
    top: int
    entry: SMat  # y_top, a coordinate column

    @property
    def prec(self) -> int:
        return self.entry.prec

    def at(self, i: int) -> SMat:
        if i > self.top:
            raise InsufficientDepth(f"index {i} lies above the top {self.top}", i - self.top)
        y = self.entry
        for _ in range(self.top - i):
            y = self.module.psi_vec(y)
        return y

    def precision_at(self, i: int) -> int:
        return self.at(i).prec

    def raised(self, k: int = 1) -> PsiTower:
        """Extend knowledge k steps up using the preimages φ_D^k(y_top)."""
        y = self.entry
        for _ in range(k):
            y = psi_preimage(self.module, y)
        return PsiTower(self.module, self.chi, self.top + k, y)

    def lowered(self, k: int = 1) -> PsiTower:
        """Forget the top k entries."""
        return PsiTower(self.module, self.chi, self.top - k, self.at(self.top - k))

    def to_json(self):
        from .serialize import smat_to_json

        return {"top": self.top, "prec": self.prec, "entry": smat_to_json(self.entry)}


def tower_seed(D: PhiGammaModule, m: SMat, t: int, chi: SmoothCharacter | None = None) -> PsiTower:
    chi = chi or SmoothCharacter.trivial(D.field)
    return PsiTower(D, chi, t, m)


def psi_preimage(D: PhiGammaModule, m: SMat) -> SMat:
    """A solution z of ψ_D(z) = m, namely φ_D(m)."""
    return D.phi_vec(m)


# ---------------------------------------------------------------------------
# the action


def act_central(z, y: PsiTower) -> PsiTower:
    c = y.chi(Fraction(z)).inverse()
    return PsiTower(y.module, y.chi, y.top, y.entry.scale(c))


def act_diag_p(k: int, y: PsiTower) -> PsiTower:
    """diag(1, p^k): (g·y)_i = y_{i-k}."""
    return PsiTower(y.module, y.chi, y.top + k, y.entry)


def _unit(x: Fraction, p: int, prec: int) -> PadicUnit:
    return PadicUnit.from_rational(x, p, prec)


def act_unit(u, y: PsiTower) -> PsiTower:
    """diag(1, u) for a p-adic unit u: applies [u^{-1}]."""
    D = y.module
    b = _unit(Fraction(u), D.p, D.padic_prec).inverse()
    return PsiTower(D, y.chi, y.top, D.gamma_of(b, y.entry))


def _one_plus_x_power(D: PhiGammaModule, c: Fraction, prec: int):
    """(1+X)^c for c in Z_p (a rational with denominator prime to p)."""
    R, p = D.ring, D.p
    if c.denominator % p == 0:
        raise InsufficientDepth("exponent is not p-integral", 1)
    base = R.from_ints([1, 1], 0, prec)
    return one_unit_pow(base, ZpExponent(c.numerator, c.denominator, D.padic_prec, p))


def unipotent_entry(y: PsiTower, z, i: int, j: int) -> SMat:
    """ψ^j((1+X)^{p^{i+j} z} y_{i+j}), valid once i + j ≥ -val(z)."""
    z = Fraction(z)
    D, p = y.module, y.module.p
    v = -_val(z, p) if z else 0
    if i + j < v:
        raise InsufficientDepth(f"need i+j >= {v}, have {i + j}", v - i - j)
    src = y.at(i + j)
    if z == 0 or src.prec <= 0:
        out = src
    else:
        c = z * Fraction(p) ** (i + j)
        f = _one_plus_x_power(D, c, src.prec - min(0, src.min_val()))
        out = src.scale(f)
    for _ in range(j):
        out = D.psi_vec(out)
    return out


def act_unipotent(z, y: PsiTower) -> PsiTower:
    z = Fraction(z)
    v = -_val(z, y.module.p) if z else 0
    if y.top < v:
        raise InsufficientDepth(
            f"unipotent with val {-v} needs top index >= {v}; tower top is {y.top}", v - y.top
        )
    return PsiTower(y.module, y.chi, y.top, unipotent_entry(y, z, y.top, 0))


def borel_act(g: BorelElem, y: PsiTower) -> PsiTower:
    if g.p != y.module.p:
        raise InputError("matrix and module use different primes")
    z, beta, k, u = g.decompose()
    out = y
    if u != 1:
        out = act_unit(u, out)
    if k:
        out = act_diag_p(k, out)
    if beta:
        out = act_unipotent(beta, out)
    if z != 1:
        out = act_central(z, out)
    return out


def act_word(word: list[BorelElem], y: PsiTower) -> PsiTower:
    """Apply the word right to left, as a product acts."""
    for g in reversed(word):
        y = borel_act(g, y)
    return y


@dataclass(frozen=True)
class TowerVerdict:
    equal: bool
    index: int
    prec: int

    def to_json(self):
        return {"equal": self.equal, "index": self.index, "prec": self.prec}


def tower_equal(y1: PsiTower, y2: PsiTower) -> TowerVerdict:
    """Compare at the highest index both towers know, at common precision."""
    if y1.module is not y2.module:
        raise InputError("towers live on different modules")
    i = min(y1.top, y2.top)
    a, b = y1.at(i), y2.at(i)
    prec = min(a.prec, b.prec)
    if prec <= 0:
        raise EmptyOverlap(f"no certified digits at index {i}")
    return TowerVerdict((a.truncate(prec) - b.truncate(prec)).is_zero(), i, prec)
