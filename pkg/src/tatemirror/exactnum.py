"""Exact scalar arithmetic over Z, Q and prime fields, and truncated q-series.

Everything here is exact: integers are arbitrary precision, rationals are
``fractions.Fraction``, prime-field elements are reduced residues.  No floats
appear anywhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonUnitError, RingMismatchError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class Ring:
    """One of Z, Q or F_p, with arithmetic on raw representatives.

    Raw representatives are ``int`` for Z and F_p (residues in [0, p)) and
    ``Fraction`` for Q.  Instances are cached so ring equality is identity.
    """

    __slots__ = ("kind", "p")
    _cache: dict = {}

    def __new__(cls, kind: str, p: int | None = None):
        key = (kind, p)
        inst = cls._cache.get(key)
        if inst is None:
            inst = object.__new__(cls)
            inst.kind = kind
            inst.p = p
            cls._cache[key] = inst
        return inst

    def __repr__(self):
        return {"ZZ": "ZZ", "QQ": "QQ"}.get(self.kind) or f"GF({self.p})"

    def __reduce__(self):
        return (Ring, (self.kind, self.p))

    @property
    def characteristic(self) -> int:
        return self.p if self.kind == "GF" else 0

    @property
    def is_field(self) -> bool:
        return self.kind != "ZZ"

    def coerce(self, x):
        """Raw representative of ``x`` (an int, Fraction or raw value)."""
        if self.kind == "ZZ":
            if isinstance(x, bool):
                raise TypeError("bool is not a ring element")
            if isinstance(x, int):
                return x
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            raise TypeError(f"cannot coerce {x!r} into ZZ")
        if self.kind == "QQ":
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot coerce {x!r} into QQ")
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    # arithmetic on raw representatives
    def add(self, a, b):
        return (a + b) % self.p if self.kind == "GF" else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.kind == "GF" else a - b

    def neg(self, a):
        return (-a) % self.p if self.kind == "GF" else -a

    def mul(self, a, b):
        return (a * b) % self.p if self.kind == "GF" else a * b

    def zero(self):
        return Fraction(0) if self.kind == "QQ" else 0

    def one(self):
        return Fraction(1) if self.kind == "QQ" else 1

    def is_unit(self, a) -> bool:
        if self.kind == "ZZ":
            return a in (1, -1)
        return a != self.zero()

    def invert(self, a):
        if not self.is_unit(a):
            raise NonUnitError(f"{a} is not a unit of {self!r}")
        if self.kind == "ZZ":
            return a
        if self.kind == "QQ":
            return 1 / a
        return pow(a, -1, self.p)


ZZ = Ring("ZZ")
QQ = Ring("QQ")


def GF(p: int) -> Ring:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    return Ring("GF", p)


def ring_of_characteristic(char: int) -> Ring:
    """QQ for characteristic 0, GF(p) for characteristic p."""
    return QQ if char == 0 else GF(char)


@dataclass(frozen=True, slots=True)
class Scalar:
    """A tagged exact scalar.  Arithmetic never silently mixes rings."""

    ring: Ring
    val: object

    @staticmethod
    def of(ring: Ring, x) -> "Scalar":
        return Scalar(ring, ring.coerce(x))

    def _raw(self, other):
        if isinstance(other, Scalar):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other.val
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.coerce(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.ring, self.ring.add(self.val, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.ring, self.ring.sub(self.val, raw))

    def __rsub__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.ring, self.ring.sub(raw, self.val))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.val))

    def __mul__(self, other):
        raw = self._raw(other)
        if raw is NotImplemented:
            return NotImplemented
        return Scalar(self.ring, self.ring.mul(self.val, raw))

    __rmul__ = __mul__

    def invert(self) -> "Scalar":
        return Scalar(self.ring, self.ring.invert(self.val))

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.val)

    def is_zero(self) -> bool:
        return self.val == self.ring.zero()

    def __repr__(self):
        return f"{self.val}"


@dataclass(frozen=True, slots=True)
class QSeries:
    """A power series in q over ``ring``, truncated at order ``order``.

    ``coeffs`` is a tuple of exactly ``order`` raw coefficients c0..c_{K-1};
    all operations truncate at q^order.  Mismatched rings or orders are hard
    errors, never silent re-truncation.
    """

    ring: Ring
    order: int
    coeffs: tuple

    @staticmethod
    def make(ring: Ring, order: int, coeffs=()) -> "QSeries":
        if order < 1:
            raise ValueError("truncation order must be >= 1")
        raw = [ring.coerce(c) for c in coeffs]
        if len(raw) > order:
            raise ValueError(f"{len(raw)} coefficients exceed order {order}")
        raw.extend(ring.zero() for _ in range(order - len(raw)))
        return QSeries(ring, order, tuple(raw))

    @staticmethod
    def const(ring: Ring, order: int, c) -> "QSeries":
        return QSeries.make(ring, order, [c])

    @staticmethod
    def zero(ring: Ring, order: int) -> "QSeries":
        return QSeries.make(ring, order, [])

    @staticmethod
    def one(ring: Ring, order: int) -> "QSeries":
        return QSeries.make(ring, order, [1])

    @staticmethod
    def gen(ring: Ring, order: int) -> "QSeries":
        """The series q (requires order >= 2 to be visible)."""
        return QSeries.make(ring, order, [0, 1])

    def _check(self, other: "QSeries"):
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {other!r}")
        if other.ring is not self.ring:
            raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
        if other.order != self.order:
            raise RingMismatchError(
                f"truncation orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = QSeries.const(self.ring, self.order, other)
        self._check(other)
        add = self.ring.add
        return QSeries(self.ring, self.order,
                       tuple(add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = QSeries.const(self.ring, self.order, other)
        self._check(other)
        sub = self.ring.sub
        return QSeries(self.ring, self.order,
                       tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        neg = self.ring.neg
        return QSeries(self.ring, self.order, tuple(neg(a) for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            c = self.ring.coerce(other)
            mul = self.ring.mul
            return QSeries(self.ring, self.order,
                           tuple(mul(a, c) for a in self.coeffs))
        if isinstance(other, Scalar):
            if other.ring is not self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            mul = self.ring.mul
            return QSeries(self.ring, self.order,
                           tuple(mul(a, other.val) for a in self.coeffs))
        self._check(other)
        k = self.order
        a, b = self.coeffs, other.coeffs
        if self.ring.kind == "GF":
            p = self.ring.p
            out = [0] * k
            for i, ai in enumerate(a):
                if ai:
                    for j in range(k - i):
                        out[i + j] = (out[i + j] + ai * b[j]) % p
        else:
            out = [self.ring.zero()] * k
            for i, ai in enumerate(a):
                if ai:
                    for j in range(k - i):
                        out[i + j] += ai * b[j]
        return QSeries(self.ring, self.order, tuple(out))

    __rmul__ = __mul__

    def shift(self, m: int) -> "QSeries":
        """Multiply by q^m (m >= 0), truncating."""
        if m < 0:
            raise ValueError("negative shifts leave the ring")
        if m == 0:
            return self
        z = self.ring.zero()
        coeffs = (z,) * min(m, self.order) + self.coeffs[: max(self.order - m, 0)]
        return QSeries(self.ring, self.order, coeffs)

    def invert(self) -> "QSeries":
        """Multiplicative inverse mod q^order; the constant term must be a unit."""
        c0 = self.coeffs[0]
        if not self.ring.is_unit(c0):
            raise NonUnitError(f"constant term {c0} is not a unit of {self.ring!r}")
        inv0 = self.ring.invert(c0)
        out = [inv0]
        mul = self.ring.mul
        for n in range(1, self.order):
            acc = self.ring.zero()
            for i in range(1, n + 1):
                acc = self.ring.add(acc, mul(self.coeffs[i], out[n - i]))
            out.append(mul(inv0, self.ring.neg(acc)))
        return QSeries(self.ring, self.order, tuple(out))

    def exact_div(self, d: int) -> "QSeries":
        """Divide every coefficient by the integer d, exactly."""
        if d == 0:
            raise ZeroDivisionError
        if self.ring.kind == "ZZ":
            for c in self.coeffs:
                if c % d:
                    raise NonUnitError(f"coefficient {c} is not divisible by {d}")
            return QSeries(self.ring, self.order, tuple(c // d for c in self.coeffs))
        dinv = self.ring.invert(self.ring.coerce(d))
        mul = self.ring.mul
        return QSeries(self.ring, self.order, tuple(mul(c, dinv) for c in self.coeffs))

    def coeff(self, i: int) -> Scalar:
        return Scalar(self.ring, self.coeffs[i])

    def constant(self) -> Scalar:
        return Scalar(self.ring, self.coeffs[0])

    def is_zero(self) -> bool:
        z = self.ring.zero()
        return all(c == z for c in self.coeffs)

    @property
    def is_unit(self) -> bool:
        return self.ring.is_unit(self.coeffs[0])

    def truncate(self, order: int) -> "QSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return QSeries(self.ring, order, self.coeffs[:order])

    def to_ring(self, ring: Ring) -> "QSeries":
        """Re-tag coefficients into another ring (reducing or lifting exactly)."""
        return QSeries.make(ring, self.order, list(self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == self.ring.zero():
                continue
            if i == 0:
                terms.append(f"{c}")
            elif i == 1:
                terms.append(f"{c}*q")
            else:
                terms.append(f"{c}*q^{i}")
        body = " + ".join(terms) if terms else "0"
        return f"({body} + O(q^{self.order}))"


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated at the common order."""
    return a * b


def qs_invert(a: QSeries) -> QSeries:
    """Two-sided inverse mod q^K; requires a unit constant term."""
    return a.invert()


def divisor_power_sum(k: int, n: int) -> int:
    """sigma_k(n), the sum of k-th powers of the positive divisors of n."""
    if n <= 0:
        raise ValueError("n must be positive")
    if k < 0:
        raise ValueError("k must be nonnegative")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total
