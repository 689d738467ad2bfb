from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tatemirror.errors import NonUnitError, RingMismatchError
from tatemirror.exactnum import (GF, QQ, ZZ, QSeries, Scalar, divisor_power_sum,
                                 qs_invert, qs_mul)


def zser(coeffs, order=None):
    return QSeries.make(ZZ, order or len(coeffs), coeffs)


class TestScalar:
    def test_ring_identity_is_cached(self):
        assert GF(7) is GF(7)
        assert ZZ is not QQ

    def test_arithmetic_tags(self):
        a = Scalar.of(ZZ, 5)
        b = Scalar.of(ZZ, -3)
        assert (a + b).val == 2
        assert (a * b).val == -15
        assert (-a).val == -5

    def test_mixed_rings_rejected(self):
        with pytest.raises(RingMismatchError):
            Scalar.of(ZZ, 1) + Scalar.of(QQ, 1)
        with pytest.raises(RingMismatchError):
            Scalar.of(GF(5), 1) * Scalar.of(GF(7), 1)

    def test_prime_field_reduction(self):
        a = Scalar.of(GF(7), 10)
        assert a.val == 3
        assert (a * a).val == 2
        assert a.invert().val == 5  # 3*5 = 15 = 1 mod 7

    def test_integer_units(self):
        assert Scalar.of(ZZ, -1).invert().val == -1
        with pytest.raises(NonUnitError):
            Scalar.of(ZZ, 2).invert()

    def test_rational_coercion(self):
        assert Scalar.of(QQ, Fraction(2, 4)).val == Fraction(1, 2)
        with pytest.raises(ValueError):
            Scalar.of(ZZ, Fraction(1, 2))

    def test_gf_requires_prime(self):
        with pytest.raises(ValueError):
            GF(6)


class TestQSeries:
    def test_difference_of_squares(self):
        one_plus = zser([1, 1, 0])
        one_minus = zser([1, -1, 0])
        assert qs_mul(one_plus, one_minus) == zser([1, 0, -1])

    def test_truncation_kills_top(self):
        k = 5
        qtop = QSeries.make(ZZ, k, [0] * (k - 1) + [1])
        q = QSeries.gen(ZZ, k)
        assert qs_mul(qtop, q).is_zero()

    def test_square_of_geometric_prefix(self):
        s = zser([1, 1, 1])
        assert qs_mul(s, s) == zser([1, 2, 3])

    def test_invert_identity(self):
        assert qs_invert(QSeries.one(ZZ, 4)) == QSeries.one(ZZ, 4)

    def test_invert_geometric(self):
        assert qs_invert(zser([1, -1, 0, 0])) == zser([1, 1, 1, 1])

    def test_invert_negative_unit(self):
        assert qs_invert(zser([-1, 1, 0])) == zser([-1, -1, -1])

    def test_invert_nonunit_fails(self):
        with pytest.raises(NonUnitError):
            qs_invert(zser([2, 1]))

    def test_order_mismatch_is_hard_error(self):
        with pytest.raises(RingMismatchError):
            zser([1], 3) + zser([1], 4)
        with pytest.raises(RingMismatchError):
            qs_mul(zser([1], 3), zser([1], 4))

    def test_shift(self):
        assert zser([1, 2, 3]).shift(1) == zser([0, 1, 2])
        assert zser([1, 2, 3]).shift(5).is_zero()

    def test_exact_div(self):
        assert zser([2, 4, 6]).exact_div(2) == zser([1, 2, 3])
        with pytest.raises(NonUnitError):
            zser([2, 3]).exact_div(2)

    def test_to_ring_roundtrip(self):
        s = zser([3, -5, 7])
        assert s.to_ring(QQ).to_ring(ZZ) == s
        assert s.to_ring(GF(5)) == QSeries.make(GF(5), 3, [3, 0, 2])


short_ints = st.integers(min_value=-40, max_value=40)


@st.composite
def z_series(draw, order=6):
    return zser(draw(st.lists(short_ints, min_size=order, max_size=order)))


@settings(max_examples=150, deadline=None)
@given(z_series(), z_series(), z_series())
def test_ring_axioms_mod_qk(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@settings(max_examples=100, deadline=None)
@given(z_series(), st.sampled_from([1, -1]))
def test_invert_is_two_sided(tail, unit):
    s = QSeries.make(ZZ, 6, [unit] + list(tail.coeffs[1:]))
    inv = s.invert()
    assert s * inv == QSeries.one(ZZ, 6)
    assert inv * s == QSeries.one(ZZ, 6)


@settings(max_examples=150, deadline=None)
@given(st.integers(-1000, 1000), st.integers(-1000, 1000),
       st.sampled_from([2, 3, 5, 7, 11]))
def test_reduction_commutes_with_arithmetic(a, b, p):
    fp = GF(p)
    for op in (lambda x, y: x + y, lambda x, y: x * y, lambda x, y: x - y):
        direct = op(Scalar.of(fp, a), Scalar.of(fp, b)).val
        via_z = op(Scalar.of(ZZ, a), Scalar.of(ZZ, b)).val % p
        assert direct == via_z


class TestDivisorPowerSum:
    def test_small_values(self):
        assert divisor_power_sum(3, 1) == 1
        assert divisor_power_sum(3, 2) == 9
        assert divisor_power_sum(0, 4) == 3
        assert divisor_power_sum(1, 6) == 12

    def test_sigma5_of_3(self):
        # divisors of 3 are 1 and 3
        assert divisor_power_sum(5, 3) == 1 + 3 ** 5 == 244

    def test_against_enumeration(self):
        for n in range(1, 60):
            for k in (0, 1, 3, 5):
                brute = sum(d ** k for d in range(1, n + 1) if n % d == 0)
                assert divisor_power_sum(k, n) == brute

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            divisor_power_sum(3, 0)
