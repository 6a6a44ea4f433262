"""Twisted polynomials in φ over E((Y)) and their Newton polygons.

Multiplication follows ``φ·a = φ(a)·φ``.  The polygon of ``Σ a_k φ^k`` is the
lower convex hull of the points ``([k], val_X(a_k))`` with
``[k] = (p^k - 1)/(p - 1)``; slopes are reported with the sign flipped, so an
``a_0`` of valuation ``v`` in ``φ - a_0`` gives slope ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FactorizationStalled, NoBreakpoint, PrecisionExhausted
from .series import LaurentSeries, SeriesRing


def bracket(k: int, p: int) -> Fraction:
    """[k] = (p^k - 1)/(p - 1), also for negative k."""
    return (Fraction(p) ** k - 1) / (p - 1)


class TwistedPoly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: SeriesRing, coeffs):
        self.ring = ring
        self.coeffs = list(coeffs)

    @classmethod
    def from_coeffs(cls, coeffs) -> TwistedPoly:
        return cls(coeffs[0].ring, coeffs)

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if not self.coeffs[k].is_zero():
                return k
        return -1

    @property
    def prec(self) -> int:
        return min(c.prec for c in self.coeffs)

    def __getitem__(self, k) -> LaurentSeries:
        return self.coeffs[k]

    def _padded(self, n, prec):
        return self.coeffs + [self.ring.zero(prec)] * (n - len(self.coeffs))

    def __add__(self, other: TwistedPoly) -> TwistedPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self._padded(n, other.prec)
        b = other._padded(n, self.prec)
        return TwistedPoly(self.ring, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return TwistedPoly(self.ring, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: TwistedPoly) -> TwistedPoly:
        out: list = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for j, b in enumerate(other.coeffs):
            phib = b
            for i, a in enumerate(self.coeffs):
                term = a * phib
                out[i + j] = term if out[i + j] is None else out[i + j] + term
                if i + 1 < len(self.coeffs):
                    phib = phib.phi()
        return TwistedPoly(self.ring, out)

    def left_scale(self, c: LaurentSeries) -> TwistedPoly:
        return TwistedPoly(self.ring, [c * a for a in self.coeffs])

    def right_scale(self, y: LaurentSeries) -> TwistedPoly:
        """P(φ)·y = Σ a_k φ^k(y) φ^k."""
        out, cur = [], y
        for a in self.coeffs:
            out.append(a * cur)
            cur = cur.phi()
        return TwistedPoly(self.ring, out)

    def monic(self) -> TwistedPoly:
        return self.left_scale(self.coeffs[self.degree].inverse())

    def agrees(self, other: TwistedPoly) -> bool:
        """Coefficientwise equality at the common precision."""
        n = max(len(self.coeffs), len(other.coeffs))
        a = self._padded(n, other.prec)
        b = other._padded(n, self.prec)
        return all((x - y).is_zero() for x, y in zip(a, b))

    def newton_polygon(self) -> NewtonPolygon:
        return newton_slopes(self)

    def __repr__(self):
        terms = [f"({c!r})*phi^{k}" for k, c in enumerate(self.coeffs) if not c.is_zero()]
        return " + ".join(terms) or "0"


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NewtonPolygon:
    points: tuple  # ((k, [k], val_X), ...) for the nonzero coefficients
    vertices: tuple  # indices k of hull vertices, left to right
    slopes: tuple  # ((slope, multiplicity), ...), slope already negated

    @property
    def is_isoclinic(self) -> bool:
        return len(self.slopes) == 1

    def slope_multiset(self):
        return sorted(self.slopes)

    def breakpoints(self):
        return self.vertices[1:-1]


def lower_hull(pts):
    """Lower convex hull of (x, y) pairs sorted by x; collinear points dropped."""
    hull: list = []
    for q in sorted(pts):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it is on or above the chord
            if (y2 - y1) * (q[0] - x1) >= (q[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        if hull and hull[-1][0] == q[0]:
            continue  # same abscissa, larger height (sorted)
        hull.append(q)
    return hull


def newton_slopes(P: TwistedPoly) -> NewtonPolygon:
    p, e = P.p, P.ring.e
    pts, gaps = [], []
    for k, a in enumerate(P.coeffs):
        if a.is_zero():
            gaps.append((bracket(k, p), Fraction(a.prec, e)))
        else:
            pts.append((k, bracket(k, p), Fraction(a.val, e)))
    if not pts:
        raise PrecisionExhausted("twisted polynomial is zero at its precision")
    hull = lower_hull([(b, v) for _, b, v in pts])
    by_x = {b: k for k, b, _ in pts}
    # a coefficient that is only known to vanish mod Y^prec could still sit under the hull
    for x, bound in gaps:
        if hull[0][0] < x < hull[-1][0]:
            for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
                if x1 < x < x2 and bound <= y1 + (y2 - y1) * (x - x1) / (x2 - x1):
                    raise PrecisionExhausted("a vanishing coefficient is not certified above the hull")
    slopes = tuple(
        (-(y2 - y1) / (x2 - x1), int(x2 - x1)) for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(
        points=tuple(pts),
        vertices=tuple(by_x[x] for x, _ in hull),
        slopes=slopes,
    )


def right_scale(P: TwistedPoly, y: LaurentSeries) -> TwistedPoly:
    return P.right_scale(y)


# ---------------------------------------------------------------------------
# factorization at the leftmost breakpoint


def _weight(a: LaurentSeries, k: int, r: Fraction, p: int, e: int):
    if a.is_zero():
        return None
    return Fraction(a.val, e) + r * bracket(k, p)


def split_at_breakpoint(P: TwistedPoly, max_iter: int = 400):
    """Factor P = P1·P2 at the leftmost breakpoint of its polygon.

    P2 has φ-degree equal to the breakpoint index and carries the part of
    the polygon to its left.  The iteration writes c^{-1}·P·φ^{-k0} as A·B
    with A in F{φ} and B in F{φ^{-1}}, both congruent to 1 for a weight
    making the breakpoint the unique minimum; ``max_iter`` caps the number
    of correction rounds.
    """
    NP = newton_slopes(P)
    if len(NP.vertices) < 3:
        raise NoBreakpoint("Newton polygon has a single slope")
    p, e, ring = P.p, P.ring.e, P.ring
    k0 = NP.vertices[1]
    n = P.degree
    (sl, _), (sr, _) = NP.slopes[0], NP.slopes[1]
    r = (sl + sr) / 2 * p**k0  # strictly between the two adjacent slopes
    c_inv = P.coeffs[k0].inverse()
    R = {k - k0: c_inv * P.coeffs[k] for k in range(n + 1)}
    prec = min(x.prec for x in R.values())
    A = {i: ring.zero(prec) for i in range(1, n - k0 + 1)}
    A[0] = ring.one(prec)
    B = {j: ring.zero(prec) for j in range(-k0, 0)}
    B[0] = ring.one(prec)

    def product():
        out = {k: None for k in range(-k0, n - k0 + 1)}
        for j, b in B.items():
            phib = b
            for i in range(0, n - k0 + 1):
                a = A[i]
                if not a.is_zero() and not phib.is_zero():
                    t = a * phib
                    out[i + j] = t if out[i + j] is None else out[i + j] + t
                phib = phib.phi()
        return {k: (v if v is not None else ring.zero(prec)) for k, v in out.items()}

    last_w = None
    for _ in range(max_iter):
        AB = product()
        # the factorization is only claimed mod Y^prec
        Err = {k: (R[k] - AB[k]).truncate(prec) for k in R}
        live = {k: x for k, x in Err.items() if not x.is_zero()}
        if not live:
            P1 = TwistedPoly(ring, [P.coeffs[k0] * A[i] for i in range(n - k0 + 1)])
            P2 = TwistedPoly(ring, [B[j - k0] for j in range(k0 + 1)])
            if P1.degree != n - k0 or P2.degree != k0:
                raise FactorizationStalled("a factor lost its leading coefficient to precision", 2 * prec)
            if not (P1 * P2).agrees(P):
                raise FactorizationStalled("product check failed at available precision", prec)
            return P1, P2
        last_w = min(_weight(x, k, r, p, e) for k, x in live.items())
        for k, x in live.items():
            if k > 0:
                A[k] = A[k] + x
            else:
                B[k] = B[k] + x
    needed = prec + int(abs(last_w or 0)) * e + 1
    raise FactorizationStalled(
        f"no convergence in {max_iter} rounds (error weight {last_w})", needed
    )


def split_completely(P: TwistedPoly, max_iter: int = 400):
    """Iterated leftmost splitting into isoclinic factors, left to right."""
    try:
        P1, P2 = split_at_breakpoint(P, max_iter)
    except NoBreakpoint:
        return [P]
    return split_completely(P1, max_iter) + [P2]
