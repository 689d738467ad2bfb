"""Weierstrass cubics, their reparametrization group, and the Tate curve.

A curve is the projective closure of

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

with coefficients in a common ring (exact scalars or truncated q-series).
The group G of coordinate changes x = u^2 x' + r, y = u^3 y' + u^2 s x' + t
acts on coefficient vectors; its Lie algebra acts on the coefficient space
and both actions are realized here exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _linalg
from .errors import InvariantError, NonUnitError, NormalizationFailure, RingMismatchError
from .exactnum import QQ, ZZ, QSeries, Ring, Scalar, divisor_power_sum

COEFF_NAMES = ("a1", "a2", "a3", "a4", "a6")


@dataclass(frozen=True)
class WeierstrassCoeffs:
    """The five coefficients (a1, a2, a3, a4, a6), all over one ring."""

    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    def __post_init__(self):
        kinds = {type(v) for v in self.as_tuple()}
        if len(kinds) != 1:
            raise RingMismatchError("mixed scalar/series coefficients")
        rings = {v.ring for v in self.as_tuple()}
        if len(rings) != 1:
            raise RingMismatchError("coefficients over different rings")
        if self.is_series:
            orders = {v.order for v in self.as_tuple()}
            if len(orders) != 1:
                raise RingMismatchError("coefficients with different orders")

    def as_tuple(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def ring(self) -> Ring:
        return self.a1.ring

    @property
    def is_series(self) -> bool:
        return isinstance(self.a1, QSeries)

    @staticmethod
    def from_ints(ring: Ring, values) -> "WeierstrassCoeffs":
        return WeierstrassCoeffs(*(Scalar.of(ring, v) for v in values))

    @staticmethod
    def from_series(ring: Ring, order: int, coeff_lists) -> "WeierstrassCoeffs":
        return WeierstrassCoeffs(
            *(QSeries.make(ring, order, c) for c in coeff_lists))

    def specialize_q0(self) -> "WeierstrassCoeffs":
        """The q = 0 fiber of a series curve, as scalar coefficients."""
        if not self.is_series:
            raise ValueError("already a scalar curve")
        return WeierstrassCoeffs(*(v.constant() for v in self.as_tuple()))

    def to_ring(self, ring: Ring) -> "WeierstrassCoeffs":
        """Reduce or lift scalar coefficients into another ring."""
        if self.is_series:
            return WeierstrassCoeffs(*(v.to_ring(ring) for v in self.as_tuple()))
        return WeierstrassCoeffs(
            *(Scalar.of(ring, v.val) for v in self.as_tuple()))

    def truncate(self, order: int) -> "WeierstrassCoeffs":
        return WeierstrassCoeffs(*(v.truncate(order) for v in self.as_tuple()))


@dataclass(frozen=True)
class Reparam:
    """A coordinate change (u, s, r, t); u must be invertible."""

    u: object
    s: object
    r: object
    t: object

    @staticmethod
    def from_ints(ring: Ring, values) -> "Reparam":
        u, s, r, t = (Scalar.of(ring, v) for v in values)
        return Reparam(u, s, r, t)

    @staticmethod
    def from_series(ring: Ring, order: int, coeff_lists) -> "Reparam":
        u, s, r, t = (QSeries.make(ring, order, c) for c in coeff_lists)
        return Reparam(u, s, r, t)

    @staticmethod
    def identity_like(sample) -> "Reparam":
        """The identity element shaped like ``sample`` (Scalar or QSeries)."""
        if isinstance(sample, QSeries):
            one = QSeries.one(sample.ring, sample.order)
            zero = QSeries.zero(sample.ring, sample.order)
        else:
            one = Scalar.of(sample.ring, 1)
            zero = Scalar.of(sample.ring, 0)
        return Reparam(one, zero, zero, zero)

    def as_tuple(self):
        return (self.u, self.s, self.r, self.t)


def reparam_apply(g: Reparam, w: WeierstrassCoeffs) -> WeierstrassCoeffs:
    """Transform coefficients by g; divides by the needed powers of u."""
    u, s, r, t = g.as_tuple()
    a1, a2, a3, a4, a6 = w.as_tuple()
    try:
        ui = u.invert()
    except NonUnitError as e:
        raise NonUnitError(f"reparametrization with non-invertible u: {e}") from e
    ui2 = ui * ui
    ui3 = ui2 * ui
    ui4 = ui2 * ui2
    ui6 = ui3 * ui3
    b1 = (a1 + s * 2) * ui
    b2 = (a2 - s * a1 + r * 3 - s * s) * ui2
    b3 = (a3 + r * a1 + t * 2) * ui3
    b4 = (a4 - s * a3 + r * a2 * 2 - (t + r * s) * a1 + r * r * 3 - s * t * 2) * ui4
    b6 = (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) * ui6
    return WeierstrassCoeffs(b1, b2, b3, b4, b6)


def reparam_compose(g2: Reparam, g1: Reparam) -> Reparam:
    """The element acting as g1 then g2: apply(compose(g2,g1), w) = apply(g2, apply(g1, w))."""
    u1, s1, r1, t1 = g1.as_tuple()
    u2, s2, r2, t2 = g2.as_tuple()
    return Reparam(
        u1 * u2,
        s1 + u1 * s2,
        r1 + u1 * u1 * r2,
        t1 + u1 * u1 * s1 * r2 + u1 * u1 * u1 * t2,
    )


def discriminant(w: WeierstrassCoeffs):
    """(Delta, c4) in the standard b2/b4/b6/b8 conventions."""
    a1, a2, a3, a4, a6 = w.as_tuple()
    b2 = a1 * a1 + a2 * 4
    b4 = a4 * 2 + a1 * a3
    b6 = a3 * a3 + a6 * 4
    b8 = a1 * a1 * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    delta = -(b2 * b2 * b8) - (b4 * b4 * b4) * 8 - (b6 * b6) * 27 + (b2 * b4 * b6) * 9
    c4 = b2 * b2 - b4 * 24
    return delta, c4


class Fiber(enum.Enum):
    SMOOTH = "smooth"
    NODE = "node"
    CUSP = "cusp"


def classify_fiber(w: WeierstrassCoeffs) -> Fiber:
    """Smooth / Node / Cusp over a field, from (Delta, c4)."""
    if w.is_series:
        raise ValueError("specialize the series before classifying")
    if not w.ring.is_field:
        raise ValueError("classification needs field scalars")
    delta, c4 = discriminant(w)
    if not delta.is_zero():
        return Fiber.SMOOTH
    return Fiber.NODE if not c4.is_zero() else Fiber.CUSP


def singular_points_mod_p(w: WeierstrassCoeffs):
    """All singular points of the affine curve over F_p, with the nodal test.

    Returns a list of ((x0, y0), hessian_nonzero) pairs, scanning all of
    F_p^2; the hessian condition is a1^2 + 2*(6*x0 + 2*a2) != 0.
    """
    ring = w.ring
    if ring.kind != "GF":
        raise ValueError("point scan needs a prime field")
    p = ring.p
    a1, a2, a3, a4, a6 = (v.val for v in w.as_tuple())
    out = []
    for x0 in range(p):
        for y0 in range(p):
            on_curve = (y0 * y0 + a1 * x0 * y0 + a3 * y0
                        - x0 ** 3 - a2 * x0 * x0 - a4 * x0 - a6) % p == 0
            if not on_curve:
                continue
            wy = (2 * y0 + a1 * x0 + a3) % p
            wx = (a1 * y0 - 3 * x0 * x0 - 2 * a2 * x0 - a4) % p
            if wy or wx:
                continue
            hess = (a1 * a1 + 2 * (6 * x0 + 2 * a2)) % p
            out.append(((x0, y0), hess != 0))
    return out


def tate_coeffs(order: int):
    """The Tate curve coefficients (a4, a6) over Z, truncated at q^order.

    a4 = -5 * sum sigma_3(n) q^n and a6 has n-th coefficient
    -(5*sigma_3(n) + 7*sigma_5(n)) / 12, which is always an integer.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a4 = [0]
    a6 = [0]
    for n in range(1, order):
        s3 = divisor_power_sum(3, n)
        s5 = divisor_power_sum(5, n)
        a4.append(-5 * s3)
        num = 5 * s3 + 7 * s5
        if num % 12:
            raise InvariantError(f"12 does not divide 5*sigma3+7*sigma5 at n={n}")
        a6.append(-(num // 12))
    return QSeries.make(ZZ, order, a4), QSeries.make(ZZ, order, a6)


def tate_curve(order: int) -> WeierstrassCoeffs:
    """The Tate curve (1, 0, 0, a4(q), a6(q)) over Z[[q]] mod q^order."""
    a4, a6 = tate_coeffs(order)
    one = QSeries.one(ZZ, order)
    zero = QSeries.zero(ZZ, order)
    return WeierstrassCoeffs(one, zero, zero, a4, a6)


# -- normalization to Tate form ---------------------------------------------

def _strict_normalizer(w: WeierstrassCoeffs, u0: int):
    """The unique g with u identically u0 making (a1,a2,a3) = (1,0,0), if integral."""
    a1, a2, a3 = w.a1, w.a2, w.a3
    u_target = QSeries.const(ZZ, a1.order, u0)
    try:
        s = (u_target - a1).exact_div(2)
        r = (s * s + s * a1 - a2).exact_div(3)
        t = (-(a3 + r * a1)).exact_div(2)
    except NonUnitError:
        return None
    return Reparam(u_target, s, r, t)


def _hensel_normalizer(w: WeierstrassCoeffs, u0_order):
    """Order-by-order integral solve of a1'=1, a2'=0, a3'=0."""
    order = w.a1.order
    a1, a2, a3 = (list(v.coeffs) for v in (w.a1, w.a2, w.a3))
    a10 = a1[0]

    found = None
    for u0 in u0_order:
        s0 = (u0 - a10) // 2
        num = s0 * s0 + s0 * a10 - a2[0]
        if num % 3:
            continue
        r0 = num // 3
        tnum = -(a3[0] + r0 * a10)
        if tnum % 2:
            continue
        found = (u0, s0, r0, tnum // 2)
        break
    if found is None:
        raise NormalizationFailure(0)
    u0, s0, r0, t0 = found

    s = [s0] + [0] * (order - 1)
    r = [r0] + [0] * (order - 1)
    t = [t0] + [0] * (order - 1)

    def conv(x, y, m):
        return sum(x[i] * y[m - i] for i in range(m + 1))

    for m in range(1, order):
        # residuals of a2 - s*a1 + 3r - s^2 and a3 + r*a1 + 2t at order m,
        # with the order-m unknowns still zero
        f2 = a2[m] - conv(s, a1, m) + 3 * r[m] - conv(s, s, m)
        f3 = a3[m] + conv(r, a1, m) + 2 * t[m]
        rm = f3 % 2
        tm = (-f3 - a10 * rm) // 2
        sm = u0 * (f2 + 3 * rm)
        s[m] += sm
        r[m] += rm
        t[m] += tm
    u = QSeries.make(ZZ, order, a1) + QSeries.make(ZZ, order, s) * 2
    return Reparam(u, QSeries.make(ZZ, order, s),
                   QSeries.make(ZZ, order, r), QSeries.make(ZZ, order, t))


def tate_normalize(w: WeierstrassCoeffs):
    """Integral change of variable bringing w to the form (1, 0, 0, *, *).

    Requires a q-series curve over Z whose q = 0 fiber is a node with odd a1.
    Returns (g, w') with w' = reparam_apply(g, w), a1' = 1 and a2' = a3' = 0
    exactly mod q^K.  Prefers the solution with u constant (+1 before -1,
    led by the sign of a1 at q = 0), falling back to an order-by-order lift.
    """
    if not (w.is_series and w.ring is ZZ):
        raise ValueError("normalization expects q-series coefficients over Z")
    a10 = w.a1.coeffs[0]
    if a10 % 2 == 0:
        raise NormalizationFailure(0, "a1 is even at q=0")
    fiber = classify_fiber(w.specialize_q0().to_ring(QQ))
    if fiber is not Fiber.NODE:
        raise NormalizationFailure(0, f"q=0 fiber is {fiber.value}, not a node")

    u0_order = (1, -1) if a10 > 0 else (-1, 1)
    g = None
    for u0 in u0_order:
        g = _strict_normalizer(w, u0)
        if g is not None:
            break
    if g is None:
        g = _hensel_normalizer(w, u0_order)
    out = reparam_apply(g, w)
    one = QSeries.one(ZZ, w.a1.order)
    zero = QSeries.zero(ZZ, w.a1.order)
    if out.a1 != one or out.a2 != zero or out.a3 != zero:
        raise InvariantError("normalization produced a non-normal form")
    return g, out


def normal_form_stabilizer(order: int, m: int, w: int) -> Reparam:
    """The integral reparametrization with s = 6*w*q^m preserving (1, 0, 0, *, *).

    These elements generate the residual gauge of the normal form: u = 1 + 2s,
    3r = s + s^2 and 2t = -r, all exactly integral by the choice of stride.
    """
    if not 1 <= m < order:
        raise ValueError("stabilizer steps start at q^1")
    s = QSeries.make(ZZ, order, [0] * m + [6 * w])
    r = (s + s * s).exact_div(3)
    t = (-r).exact_div(2)
    return Reparam(QSeries.one(ZZ, order) + s * 2, s, r, t)


def match_quartic_gauge(w: WeierstrassCoeffs, a4_target: QSeries):
    """Slice the residual gauge of a normal form by pinning its a4 series.

    A curve in the shape (1, 0, 0, a4, a6) is preserved by the stabilizer
    elements above, which shift the order-m coefficient of a4 by any integer
    while fixing everything below; the normal form with a prescribed a4 is
    therefore unique.  Returns (g, w') with w'.a4 equal to the target.
    """
    order = w.a1.order
    one = QSeries.one(ZZ, order)
    zero = QSeries.zero(ZZ, order)
    if w.a1 != one or w.a2 != zero or w.a3 != zero:
        raise ValueError("gauge matching expects a curve in normal form")
    if a4_target.coeffs[0] != w.a4.coeffs[0]:
        raise NormalizationFailure(0, "constant quartic coefficients differ")
    g = Reparam.identity_like(w.a1)
    current = w
    for m in range(1, order):
        diff = a4_target.coeffs[m] - current.a4.coeffs[m]
        if diff == 0:
            continue
        probe = reparam_apply(normal_form_stabilizer(order, m, 1), current)
        step = probe.a4.coeffs[m] - current.a4.coeffs[m]
        if step not in (1, -1):
            raise InvariantError(f"stabilizer step {step} at order {m}")
        gm = normal_form_stabilizer(order, m, diff * step)
        current = reparam_apply(gm, current)
        g = reparam_compose(gm, g)
    if current.a4 != a4_target:
        raise InvariantError("gauge matching failed to reach the target")
    return g, current


# -- Lie algebra of the reparametrization group ------------------------------

@dataclass(frozen=True)
class LieElement:
    """Coefficients on the basis (ds, dr, dt, du) over a field."""

    ring: Ring
    ds: object
    dr: object
    dt: object
    du: object

    @staticmethod
    def of(ring: Ring, ds=0, dr=0, dt=0, du=0) -> "LieElement":
        return LieElement(ring, *(ring.coerce(v) for v in (ds, dr, dt, du)))

    def as_vector(self):
        return [self.ds, self.dr, self.dt, self.du]


def lie_basis(ring: Ring):
    """(ds, dr, dt, du) as LieElements over the field."""
    return tuple(
        LieElement.of(ring, **{name: 1})
        for name in ("ds", "dr", "dt", "du"))


def lie_matrix(xi: LieElement):
    """The 3x3 upper-triangular matrix of xi in the group's defining shape."""
    ring = xi.ring
    z = ring.zero()
    return [[ring.mul(ring.coerce(3), xi.du), xi.ds, xi.dt],
            [z, ring.mul(ring.coerce(2), xi.du), xi.dr],
            [z, z, z]]


def lie_bracket(xi: LieElement, eta: LieElement) -> LieElement:
    """Matrix commutator [xi, eta], decomposed back onto (ds, dr, dt, du)."""
    ring = xi.ring
    if eta.ring is not ring:
        raise RingMismatchError("bracket of elements over different fields")
    a, b = lie_matrix(xi), lie_matrix(eta)

    def mul(m, n):
        return [[ring.add(ring.add(ring.mul(m[i][0], n[0][j]),
                                   ring.mul(m[i][1], n[1][j])),
                 ring.mul(m[i][2], n[2][j])) for j in range(3)] for i in range(3)]

    ab, ba = mul(a, b), mul(b, a)
    comm = [[ring.sub(ab[i][j], ba[i][j]) for j in range(3)] for i in range(3)]
    for i in range(3):
        if comm[i][i] != ring.zero():
            raise InvariantError("commutator acquired a diagonal part")
    return LieElement(ring, comm[0][1], comm[1][2], comm[0][2], ring.zero())


def lie_vector_field(xi: LieElement, point) -> list:
    """The induced vector field of xi at a coefficient-space point.

    ``point`` is a length-5 sequence over xi's field.  Computed by applying
    the substitution formulas over dual numbers (order-2 series), so this is
    the exact derivative of the group action at the identity.
    """
    ring = xi.ring
    if not ring.is_field:
        raise ValueError("Lie computations need a field")
    eps = QSeries.gen(ring, 2)
    one = QSeries.one(ring, 2)
    g = Reparam(
        one + eps * Scalar.of(ring, xi.du),
        eps * Scalar.of(ring, xi.ds),
        eps * Scalar.of(ring, xi.dr),
        eps * Scalar.of(ring, xi.dt),
    )
    w = WeierstrassCoeffs(
        *(QSeries.const(ring, 2, ring.coerce(v)) for v in point))
    moved = reparam_apply(g, w)
    return [v.coeffs[1] for v in moved.as_tuple()]


def lie_d_matrix(ring: Ring):
    """The 5x4 matrix of xi -> rho(xi)(0) over the field, with coker/ker ranks.

    Rows are the coefficient directions (a1, a2, a3, a4, a6); columns are
    (ds, dr, dt, du).  Returns (matrix, coker_rank, ker_rank).
    """
    origin = [0, 0, 0, 0, 0]
    cols = [lie_vector_field(xi, origin) for xi in lie_basis(ring)]
    matrix = _linalg.transpose(cols)
    rk = _linalg.rank(matrix, ring)
    return matrix, 5 - rk, 4 - rk


def ker_d_basis(ring: Ring):
    """LieElements spanning ker d over the field."""
    matrix, _, _ = lie_d_matrix(ring)
    return [LieElement(ring, *v) for v in _linalg.nullspace(matrix, ring)]


def coker_projection(ring: Ring):
    """Row-reduced image of d, used to cut im d out of coefficient vectors."""
    matrix, _, _ = lie_d_matrix(ring)
    image_rows = _linalg.transpose(matrix)
    return _linalg.rref(image_rows, ring)


def coeff_direction(ring: Ring, name: str):
    """The unit vector along one of the coefficient directions a1..a6."""
    vec = [ring.zero()] * 5
    vec[COEFF_NAMES.index(name)] = ring.one()
    return vec


def adjoint_bracket(xi: LieElement, w) -> list:
    """Directional derivative of rho(xi) along the constant field w, at 0,
    projected to coker d.

    Requires d(xi) = 0.  The group action is affine in the coefficients, so
    the derivative is exactly rho(xi)(w) - rho(xi)(0).
    """
    ring = xi.ring
    at_zero = lie_vector_field(xi, [0, 0, 0, 0, 0])
    if any(v != ring.zero() for v in at_zero):
        raise ValueError("adjoint_bracket requires an element of ker d")
    at_w = lie_vector_field(xi, list(w))
    derivative = [ring.sub(a, b) for a, b in zip(at_w, at_zero)]
    span, pivots = coker_projection(ring)
    return _linalg.reduce_mod_span(span, pivots, derivative, ring)
