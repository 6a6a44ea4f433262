"""Weil-side parameters (n, h, Λ) and smooth characters of Q_p^x."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .field import GF, FieldElem


def divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def is_primitive(h: int, n: int, p: int) -> bool:
    """h is not a multiple of (p^n-1)/(p^d-1) for any proper divisor d of n."""
    if n < 1:
        raise InputError("n must be >= 1")
    N = p**n - 1
    return all(h % (N // (p**d - 1)) for d in divisors(n) if d < n)


def h_orbit(h: int, n: int, p: int) -> list[int]:
    N = p**n - 1
    return sorted({h * p**i % N for i in range(n)}) if N > 1 else [0]


def all_primitive_hs(n: int, p: int) -> list[int]:
    """Every primitive residue mod p^n - 1 (all orbit members)."""
    N = max(p**n - 1, 1)
    return [h for h in range(N) if is_primitive(h, n, p)]


def primitive_hs(n: int, p: int) -> list[int]:
    """Canonical (orbit-minimal) primitive residues mod p^n - 1."""
    N = max(p**n - 1, 1)
    return [h for h in range(N) if is_primitive(h, n, p) and h == min(h_orbit(h, n, p))]


@dataclass(frozen=True)
class WeilParams:
    n: int
    h: int
    Lambda: FieldElem

    def __post_init__(self):
        if self.n < 1:
            raise InputError("n must be >= 1")
        if not self.Lambda:
            raise InputError("Lambda must be nonzero")
        N = self.p**self.n - 1
        object.__setattr__(self, "h", self.h % N if N > 1 else 0)

    @property
    def p(self) -> int:
        return self.Lambda.field.p

    @property
    def primitive(self) -> bool:
        return is_primitive(self.h, self.n, self.p)

    def to_json(self):
        return {"n": self.n, "h": self.h, "Lambda": self.Lambda.coords()}

    @classmethod
    def from_json(cls, obj, field: GF) -> WeilParams:
        return cls(int(obj["n"]), int(obj["h"]), field(list(obj["Lambda"])))


def canonicalize(w: WeilParams) -> WeilParams:
    return WeilParams(w.n, min(h_orbit(w.h, w.n, w.p)), w.Lambda)


def params_equivalent(w1: WeilParams, w2: WeilParams) -> bool:
    return canonicalize(w1) == canonicalize(w2)


def primitive_root(p: int, power: int = 1) -> int:
    """Smallest generator of (Z/p^power)^x for odd p (power <= 2 is enough)."""
    mod = p**power
    order = (p - 1) * p ** (power - 1)
    primes = [q for q in range(2, order + 1) if order % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, mod):
        if g % p and all(pow(g, order // q, mod) != 1 for q in primes):
            return g
    return 1


@dataclass(frozen=True)
class SmoothCharacter:
    """δ : Q_p^x -> E^x with δ|Z_p^x factoring through (Z/p)^x.

    Since (Z/p)^x has order prime to p, its image lies in F_p^x and the
    unit part is ω^k for ω the reduction map.  ``unit_values`` holds the
    value on the smallest primitive root mod p (empty when unramified).
    """

    at_p: FieldElem
    conductor: int
    unit_values: tuple

    def __post_init__(self):
        if not self.at_p:
            raise InputError("value at p must be nonzero")
        F = self.at_p.field
        if self.conductor not in (0, 1):
            raise InputError("only conductor <= 1 characters take values in a field of characteristic p")
        vals = tuple(F(v) for v in self.unit_values)
        if self.conductor == 0 and vals and any(v != 1 for v in vals):
            raise InputError("unramified character must be trivial on units")
        if self.conductor == 1 and (len(vals) != 1 or vals[0] == 1):
            object.__setattr__(self, "conductor", 0)
            vals = ()
        object.__setattr__(self, "unit_values", vals if self.conductor else ())

    @property
    def field(self) -> GF:
        return self.at_p.field

    @property
    def p(self) -> int:
        return self.field.p

    @classmethod
    def from_omega_power(cls, at_p: FieldElem, h: int) -> SmoothCharacter:
        """δ(p) = at_p and δ(a) = (a mod p)^h."""
        F, p = at_p.field, at_p.field.p
        g = primitive_root(p)
        v = F(pow(g, h % (p - 1), p)) if p > 2 else F.one
        return cls(at_p, 0 if v == 1 else 1, (v,) if v != 1 else ())

    @classmethod
    def trivial(cls, field: GF) -> SmoothCharacter:
        return cls(field.one, 0, ())

    def omega_exponent(self) -> int:
        """k mod p-1 with δ(a) = (a mod p)^k."""
        p = self.p
        if not self.unit_values:
            return 0
        g = primitive_root(p)
        v = self.unit_values[0].code
        for k in range(p - 1):
            if pow(g, k, p) == v:
                return k
        raise InputError("unit value is not a (p-1)-th root of unity")

    def __call__(self, a) -> FieldElem:
        """Evaluate on a nonzero rational with p-adic valuation handled by δ(p)."""
        from fractions import Fraction

        a = Fraction(a)
        if a == 0:
            raise InputError("δ(0) is undefined")
        p, F = self.p, self.field
        v, num, den = 0, a.numerator, a.denominator
        while num % p == 0:
            num //= p
            v += 1
        while den % p == 0:
            den //= p
            v -= 1
        u = num * pow(den, -1, p) % p
        k = self.omega_exponent()
        return self.at_p**v * F(pow(u, k, p))

    def unit(self, residue: int) -> FieldElem:
        return self(residue)

    def to_json(self):
        return {
            "at_p": self.at_p.coords(),
            "conductor": self.conductor,
            "unit_values": [v.coords() for v in self.unit_values],
        }

    @classmethod
    def from_json(cls, obj, field: GF) -> SmoothCharacter:
        return cls(
            field(list(obj["at_p"])),
            int(obj.get("conductor", 0)),
            tuple(field(list(v)) for v in obj.get("unit_values", [])),
        )


def predicted_determinant(w: WeilParams) -> SmoothCharacter:
    """δ(p) = Λ and δ(a) = (a mod p)^h."""
    return SmoothCharacter.from_omega_power(w.Lambda, w.h)
