"""Counting perturbed lattice points in product triangles.

A perturbed lattice point is a point congruent to (eps, eps) mod Z^2 for an
infinitesimal eps > 0.  The infinitesimal is handled symbolically: quantities
are pairs (value, eps-coefficient) ordered lexicographically, so no boundary
case ever depends on a numeric epsilon.  These counts are the independent
oracle for the q-exponents of the section ring and the Floer products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


@total_ordering
@dataclass(frozen=True, slots=True)
class EpsRational:
    """value + eps * coeff for an infinitesimal eps > 0."""

    value: Fraction
    eps: Fraction

    @staticmethod
    def of(value, eps=0) -> "EpsRational":
        return EpsRational(Fraction(value), Fraction(eps))

    def __add__(self, other):
        other = _as_eps(other)
        return EpsRational(self.value + other.value, self.eps + other.eps)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_eps(other)
        return EpsRational(self.value - other.value, self.eps - other.eps)

    def __rsub__(self, other):
        return _as_eps(other) - self

    def __neg__(self):
        return EpsRational(-self.value, -self.eps)

    def __mul__(self, other):
        """Scaling by an exact rational (eps^2 never arises here)."""
        other = Fraction(other)
        return EpsRational(self.value * other, self.eps * other)

    __rmul__ = __mul__

    def __lt__(self, other):
        other = _as_eps(other)
        return (self.value, self.eps) < (other.value, other.eps)

    def sign(self) -> int:
        if self.value:
            return 1 if self.value > 0 else -1
        if self.eps:
            return 1 if self.eps > 0 else -1
        return 0


def _as_eps(x) -> EpsRational:
    if isinstance(x, EpsRational):
        return x
    return EpsRational(Fraction(x), Fraction(0))


def perturbed(a: int, b: int):
    """The perturbed lattice point (a + eps, b + eps)."""
    return (EpsRational.of(a, 1), EpsRational.of(b, 1))


@dataclass(frozen=True)
class PerturbedTriangle:
    """The triangle with vertices (p1, 0), (p2, -n1*(p2-p1)), (mean, 0)."""

    n1: int
    p1: Fraction
    n2: int
    p2: Fraction

    @property
    def vertices(self):
        p1, p2 = Fraction(self.p1), Fraction(self.p2)
        mean = (p1 * self.n1 + p2 * self.n2) / (self.n1 + self.n2)
        return ((p1, Fraction(0)),
                (p2, -self.n1 * (p2 - p1)),
                (mean, Fraction(0)))

    def signed_area2(self) -> Fraction:
        (x0, y0), (x1, y1), (x2, y2) = self.vertices
        return (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)

    def contains(self, point) -> bool:
        """Strict interior test for a point with EpsRational coordinates."""
        area2 = self.signed_area2()
        if area2 == 0:
            return False
        orient = 1 if area2 > 0 else -1
        px, py = (_as_eps(point[0]), _as_eps(point[1]))
        verts = self.vertices
        for i in range(3):
            (xa, ya), (xb, yb) = verts[i], verts[(i + 1) % 3]
            cross = (py - ya) * (xb - xa) - (px - xa) * (yb - ya)
            if cross.sign() != orient:
                return False
        return True


def count_perturbed(n1: int, p1, n2: int, p2) -> int:
    """Number of perturbed lattice points strictly inside the triangle.

    Exact integer arithmetic on denominator-cleared coordinates; the eps
    component of every half-plane value is carried separately and compared
    lexicographically.  Each column of candidate points is resolved by
    solving the three half-plane constraints for an exact integer interval.
    Degenerate triangles count zero.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("degrees must be positive")
    tri = PerturbedTriangle(n1, Fraction(p1), n2, Fraction(p2))
    verts = tri.vertices
    den = 1
    for x, y in verts:
        den = den * x.denominator // math.gcd(den, x.denominator)
        den = den * y.denominator // math.gcd(den, y.denominator)
    pts = [(int(x * den), int(y * den)) for x, y in verts]
    (x0, y0), (x1, y1), (x2, y2) = pts
    area2 = (x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0)
    if area2 == 0:
        return 0
    orient = 1 if area2 > 0 else -1

    # edge value at the scaled point (X, Y) = (den*a + den*eps, den*b + den*eps)
    # is slope*b + offset(a) + eps_coef*(den*eps) with slope = den*(xb - xa)
    edges = []
    for (xa, ya), (xb, yb) in ((pts[0], pts[1]), (pts[1], pts[2]), (pts[2], pts[0])):
        dx, dy = xb - xa, yb - ya
        edges.append((dx * orient, dy * orient,
                      (dx * ya - dy * xa) * orient, (dx - dy) * orient))

    xs = [v[0] for v in verts]
    count = 0
    for a in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
        px = a * den
        lo = None
        hi = None
        empty = False
        for dxo, dyo, co, ec in edges:
            slope = dxo * den
            offset = -dyo * px - co
            if slope == 0:
                if not (offset > 0 or (offset == 0 and ec > 0)):
                    empty = True
                    break
                continue
            if slope > 0:
                # smallest b with slope*b + offset > 0 (ties broken by eps)
                q, r = divmod(-offset, slope)
                bound = q if (r == 0 and ec > 0) else q + 1
                lo = bound if lo is None else max(lo, bound)
            else:
                # largest b with slope*b + offset > 0 (ties broken by eps)
                q, r = divmod(offset, -slope)
                bound = q if (r != 0 or ec > 0) else q - 1
                hi = bound if hi is None else min(hi, bound)
        if empty or lo is None or hi is None:
            continue
        if hi >= lo:
            count += hi - lo + 1
    return count


def count_perturbed_reference(n1: int, p1, n2: int, p2) -> int:
    """Point-by-point interior scan; slow cross-check for count_perturbed."""
    tri = PerturbedTriangle(n1, Fraction(p1), n2, Fraction(p2))
    if tri.signed_area2() == 0:
        return 0
    xs = [v[0] for v in tri.vertices]
    ys = [v[1] for v in tri.vertices]
    count = 0
    for a in range(math.floor(min(xs)), math.ceil(max(xs)) + 1):
        for b in range(math.floor(min(ys)), math.ceil(max(ys)) + 1):
            if tri.contains(perturbed(a, b)):
                count += 1
    return count


def _row_count(n1: int, q1, r1, p1, q2) -> Fraction:
    """Perturbed points in the right triangle over [p1, p2] under slope -n1.

    Closed form from counting rows, with the trapezium to the right of
    x = q2 shaved off and its strip count n1*(q2 - p1) added back.
    """
    base = (Fraction(n1 * q1 * q1, 2) + Fraction(n1 * q2 * q2, 2) + r1 * q1
            - n1 * q1 * q2 - r1 * q2 - Fraction(n1 * q2, 2)
            + Fraction(n1 * q1, 2) + r1)
    return base + n1 * (q2 - p1)


def row_formula_count(n1: int, p1, n2: int, p2) -> int:
    """The row-by-row closed-form count for the triangle of count_perturbed.

    Splits each point as p = q + r/n with q integral and 0 <= r < n, applies
    the closed formula to the outer right triangle and to the inner one cut
    off by the steeper slope, and returns the difference.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("degrees must be positive")
    p1, p2 = Fraction(p1), Fraction(p2)
    n3 = n1 + n2
    p3 = (n1 * p1 + n2 * p2) / n3

    q1 = math.floor(p1)
    r1 = n1 * (p1 - q1)
    q2 = math.floor(p2)
    r2 = n2 * (p2 - q2)
    q3 = math.floor(p3)
    r3 = n3 * (p3 - q3)

    if r2 == 0:
        lam1 = (Fraction(n1 * q1 * q1, 2) + Fraction(n1 * p2 * p2, 2) + r1 * q1
                - n1 * p2 * q1 - r1 * p2 - Fraction(n1 * p2, 2)
                + Fraction(n1 * q1, 2) + r1)
        lam2 = (Fraction(n3 * q3 * q3, 2) + Fraction(n3 * p2 * p2, 2) + r3 * q3
                - n3 * p2 * q3 - r3 * p2 - Fraction(n3 * p2, 2)
                + Fraction(n3 * q3, 2) + r3)
    else:
        lam1 = _row_count(n1, q1, r1, p1, q2)
        lam2 = _row_count(n3, q3, r3, p3, q2)
    diff = lam1 - lam2
    if diff.denominator != 1:
        raise ValueError(f"non-integral count {diff}; inputs not in (1/n)Z")
    return int(diff)
