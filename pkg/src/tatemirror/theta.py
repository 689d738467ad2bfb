"""The graded section ring of the Tate curve in its canonical basis.

Degree-N sections have a basis indexed by the cyclic set (1/N)Z mod Z.  The
product of basis elements is a sum over an integer index j, with q-exponent
given by the piecewise-linear excess function ``lambda_exp`` below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantError, RingMismatchError
from .exactnum import ZZ, QSeries, Ring


def psi(x: Fraction) -> Fraction:
    """The normalized square x*(x-1)/2."""
    return Fraction(x) * (Fraction(x) - 1) / 2


def phi(p) -> Fraction:
    """Piecewise-linear interpolation of psi between consecutive integers.

    phi agrees with psi on Z and is affine on each [n, n+1]; it is convex,
    so the excess in ``lambda_exp`` is nonnegative.
    """
    p = Fraction(p)
    n = math.floor(p)
    return psi(n) + (p - n) * n


def weighted_mean(n1: int, p1, n2: int, p2) -> Fraction:
    return (Fraction(p1) * n1 + Fraction(p2) * n2) / (n1 + n2)


def lambda_exp(n1: int, p1, n2: int, p2) -> Fraction:
    """n1*phi(p1) + n2*phi(p2) - (n1+n2)*phi(mean); the product q-exponent.

    A nonnegative integer whenever p1 has denominator dividing n1 and p2
    has denominator dividing n2.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("degrees must be positive")
    e = weighted_mean(n1, p1, n2, p2)
    return n1 * phi(p1) + n2 * phi(p2) - (n1 + n2) * phi(e)


def area(n1: int, p1, n2: int, p2) -> Fraction:
    """Same excess formed with psi; equals the area of the product triangle."""
    if n1 < 1 or n2 < 1:
        raise ValueError("degrees must be positive")
    e = weighted_mean(n1, p1, n2, p2)
    return n1 * psi(p1) + n2 * psi(p2) - (n1 + n2) * psi(e)


def j_window(n1: int, n2: int, order: int) -> int:
    """Smallest J so every j with |p2 + j - p1| > J has q-exponent >= order.

    The exponent grows like the triangle area (n1*n2 / (2*(n1+n2))) * d^2
    and differs from it by at most (n1+n2)/8, so J with
    n1*n2*(J-1)^2 > 2*(n1+n2)*(order + n1 + n2) is safely past the cutoff.
    """
    j = 1
    while n1 * n2 * (j - 1) ** 2 <= 2 * (n1 + n2) * (order + n1 + n2):
        j += 1
    return j


def j_range(n1: int, p1, n2: int, p2, order: int):
    """All candidate shifts j for the product at the given truncation order."""
    center = Fraction(p1) - Fraction(p2)
    jmax = j_window(n1, n2, order)
    return range(math.ceil(center - jmax), math.floor(center + jmax) + 1)


@dataclass(frozen=True, slots=True)
class CyclicPoint:
    """The class of m/n in (1/n)Z mod Z, stored with 0 <= m < n."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.m < self.n:
            raise ValueError(f"bad cyclic point {self.m}/{self.n}")

    @staticmethod
    def from_fraction(n: int, p) -> "CyclicPoint":
        p = Fraction(p)
        scaled = p * n
        if scaled.denominator != 1:
            raise ValueError(f"{p} is not in (1/{n})Z")
        return CyclicPoint(n, scaled.numerator % n)

    def as_fraction(self) -> Fraction:
        return Fraction(self.m, self.n)

    def __repr__(self):
        return f"[{self.m}/{self.n}]"


def graded_basis(n: int):
    """The n basis indices m/n, 0 <= m < n, of the degree-n piece."""
    if n < 1:
        raise ValueError("degree must be positive")
    return [CyclicPoint(n, m) for m in range(n)]


@dataclass(frozen=True)
class ThetaElement:
    """A degree-n element: a coefficient q-series for each of the n slots."""

    degree: int
    order: int
    coeffs: dict

    def __post_init__(self):
        if set(self.coeffs) != set(graded_basis(self.degree)):
            raise ValueError("element must carry exactly its degree-many slots")

    @property
    def ring(self) -> Ring:
        return next(iter(self.coeffs.values())).ring

    @staticmethod
    def zero(degree: int, order: int, ring: Ring = ZZ) -> "ThetaElement":
        z = QSeries.zero(ring, order)
        return ThetaElement(degree, order, {pt: z for pt in graded_basis(degree)})

    @staticmethod
    def basis(degree: int, p, order: int, ring: Ring = ZZ) -> "ThetaElement":
        """The basis element of index p in (1/degree)Z mod Z."""
        el = ThetaElement.zero(degree, order, ring)
        pt = CyclicPoint.from_fraction(degree, p)
        coeffs = dict(el.coeffs)
        coeffs[pt] = QSeries.one(ring, order)
        return ThetaElement(degree, order, coeffs)

    def _check(self, other: "ThetaElement"):
        if self.degree != other.degree or self.order != other.order:
            raise RingMismatchError("degree or order mismatch")
        if self.ring is not other.ring:
            raise RingMismatchError("coefficient rings differ")

    def __add__(self, other):
        self._check(other)
        return ThetaElement(self.degree, self.order,
                            {pt: c + other.coeffs[pt] for pt, c in self.coeffs.items()})

    def __sub__(self, other):
        self._check(other)
        return ThetaElement(self.degree, self.order,
                            {pt: c - other.coeffs[pt] for pt, c in self.coeffs.items()})

    def __neg__(self):
        return ThetaElement(self.degree, self.order,
                            {pt: -c for pt, c in self.coeffs.items()})

    def scale(self, factor) -> "ThetaElement":
        """Multiply every slot by an integer or a q-series."""
        return ThetaElement(self.degree, self.order,
                            {pt: c * factor for pt, c in self.coeffs.items()})

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs.values())

    def coeff(self, p) -> QSeries:
        return self.coeffs[CyclicPoint.from_fraction(self.degree, p)]

    def support(self):
        return {pt: c for pt, c in sorted(self.coeffs.items(),
                                          key=lambda kv: kv[0].m)
                if not c.is_zero()}

    def __repr__(self):
        parts = [f"{c!r}*e{pt!r}" for pt, c in self.support().items()]
        return " + ".join(parts) if parts else f"0 (degree {self.degree})"


def theta_mul(x: ThetaElement, y: ThetaElement) -> ThetaElement:
    """Bilinear extension of the basis multiplication rule.

    On basis slots p1, p2 the product is sum_j q^lambda(p1, p2+j) times the
    degree-(n1+n2) basis element at the weighted mean of p1 and p2 + j; the
    j-sum is cut off once the exponent reaches the truncation order.
    """
    if x.order != y.order:
        raise RingMismatchError("truncation orders differ")
    if x.ring is not y.ring:
        raise RingMismatchError("coefficient rings differ")
    n1, n2 = x.degree, y.degree
    order = x.order
    out = dict(ThetaElement.zero(n1 + n2, order, x.ring).coeffs)
    for pt1, c1 in x.coeffs.items():
        if c1.is_zero():
            continue
        p1 = pt1.as_fraction()
        for pt2, c2 in y.coeffs.items():
            if c2.is_zero():
                continue
            p2 = pt2.as_fraction()
            c12 = c1 * c2
            for j in j_range(n1, p1, n2, p2, order):
                lam = lambda_exp(n1, p1, n2, p2 + j)
                if lam.denominator != 1 or lam < 0:
                    raise InvariantError(
                        f"exponent {lam} at ({n1},{p1};{n2},{p2 + j})")
                if lam >= order:
                    continue
                target = CyclicPoint.from_fraction(
                    n1 + n2, weighted_mean(n1, p1, n2, p2 + j))
                out[target] = out[target] + c12.shift(int(lam))
    return ThetaElement(n1 + n2, order, out)
