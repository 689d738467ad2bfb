import random
from fractions import Fraction

import pytest

from tatemirror import weierstrass as ws
from tatemirror.errors import NonUnitError, NormalizationFailure
from tatemirror.exactnum import GF, QQ, ZZ, QSeries, Scalar


def zcurve(values):
    return ws.WeierstrassCoeffs.from_ints(ZZ, values)


def qcurve(values):
    return ws.WeierstrassCoeffs.from_ints(QQ, values)


def series_curve(lists, order):
    return ws.WeierstrassCoeffs.from_series(ZZ, order, lists)


class TestReparamApply:
    def test_identity(self):
        w = zcurve([1, 2, 3, 4, 6])
        g = ws.Reparam.identity_like(w.a1)
        assert ws.reparam_apply(g, w) == w

    def test_unit_flip(self):
        w = zcurve([-1, 0, 0, 0, 0])
        g = ws.Reparam.from_ints(ZZ, [-1, 0, 0, 0])
        assert ws.reparam_apply(g, w) == zcurve([1, 0, 0, 0, 0])

    def test_x_translation_on_zero_curve(self):
        r = 4
        g = ws.Reparam.from_ints(ZZ, [1, 0, r, 0])
        moved = ws.reparam_apply(g, zcurve([0, 0, 0, 0, 0]))
        assert moved == zcurve([0, 3 * r, 0, 3 * r * r, r ** 3])

    def test_noninvertible_u_rejected(self):
        g = ws.Reparam.from_ints(ZZ, [2, 0, 0, 0])
        with pytest.raises(NonUnitError):
            ws.reparam_apply(g, zcurve([1, 0, 0, 0, 0]))


def random_reparam(rng, bound=4):
    u = rng.choice([1, -1])
    s, r, t = (rng.randint(-bound, bound) for _ in range(3))
    return ws.Reparam.from_ints(ZZ, [u, s, r, t])


def random_curve(rng, bound=5):
    return zcurve([rng.randint(-bound, bound) for _ in range(5)])


class TestReparamCompose:
    def test_identity_neutral(self):
        rng = random.Random(1)
        for _ in range(10):
            g = random_reparam(rng)
            e = ws.Reparam.identity_like(g.u)
            assert ws.reparam_compose(e, g) == g
            assert ws.reparam_compose(g, e) == g

    def test_translations_add(self):
        g1 = ws.Reparam.from_ints(ZZ, [1, 0, 2, 0])
        g2 = ws.Reparam.from_ints(ZZ, [1, 0, 5, 0])
        assert ws.reparam_compose(g2, g1) == ws.Reparam.from_ints(ZZ, [1, 0, 7, 0])

    def test_action_law(self):
        rng = random.Random(2)
        for _ in range(200):
            g1, g2 = random_reparam(rng), random_reparam(rng)
            w = random_curve(rng)
            lhs = ws.reparam_apply(ws.reparam_compose(g2, g1), w)
            rhs = ws.reparam_apply(g2, ws.reparam_apply(g1, w))
            assert lhs == rhs


class TestDiscriminant:
    def test_nodal_cubic(self):
        delta, c4 = ws.discriminant(zcurve([1, 0, 0, 0, 0]))
        assert delta.val == 0 and c4.val == 1

    def test_cuspidal_cubic(self):
        delta, c4 = ws.discriminant(zcurve([0, 0, 0, 0, 0]))
        assert delta.val == 0 and c4.val == 0

    def test_smooth_example(self):
        delta, c4 = ws.discriminant(zcurve([0, 0, 0, -1, 0]))
        assert delta.val == 64 and c4.val == 48

    def test_covariance(self):
        rng = random.Random(3)
        for _ in range(200):
            g = random_reparam(rng)
            w = random_curve(rng)
            d0, c0 = ws.discriminant(w)
            d1, c1 = ws.discriminant(ws.reparam_apply(g, w))
            u = g.u.val
            assert d1.val * u ** 12 == d0.val
            assert c1.val * u ** 4 == c0.val


class TestClassifyFiber:
    def test_node_over_every_prime(self):
        for p in (2, 3, 5, 7, 11):
            w = ws.WeierstrassCoeffs.from_ints(GF(p), [1, 0, 0, 0, 0])
            assert ws.classify_fiber(w) is ws.Fiber.NODE

    def test_cusp_over_q(self):
        assert ws.classify_fiber(qcurve([0, 0, 0, 0, 0])) is ws.Fiber.CUSP

    def test_smooth_over_q(self):
        assert ws.classify_fiber(qcurve([0, 0, 0, -1, 0])) is ws.Fiber.SMOOTH

    def test_series_input_rejected(self):
        w = series_curve([[1], [0], [0], [0], [0]], 2)
        with pytest.raises(ValueError):
            ws.classify_fiber(w)

    def test_integer_scalars_rejected(self):
        with pytest.raises(ValueError):
            ws.classify_fiber(zcurve([1, 0, 0, 0, 0]))

    def test_hessian_crosscheck(self):
        # the (delta, c4) classification agrees with the singular-point scan
        w = ws.WeierstrassCoeffs.from_ints(GF(13), [1, 0, 0, 0, 0])
        points = ws.singular_points_mod_p(w)
        assert points == [((0, 0), True)]


class TestTateCoeffs:
    def test_order_one_specializes_to_nodal_cubic(self):
        a4, a6 = ws.tate_coeffs(1)
        assert a4.is_zero() and a6.is_zero()

    def test_quartic_expansion(self):
        a4, _ = ws.tate_coeffs(5)
        assert list(a4.coeffs) == [0, -5, -45, -140, -365]

    def test_sextic_expansion(self):
        _, a6 = ws.tate_coeffs(5)
        assert list(a6.coeffs) == [0, -1, -23, -154, -647]

    def test_sextic_against_divisor_enumeration(self):
        _, a6 = ws.tate_coeffs(30)
        for n in range(1, 30):
            s3 = sum(d ** 3 for d in range(1, n + 1) if n % d == 0)
            s5 = sum(d ** 5 for d in range(1, n + 1) if n % d == 0)
            num = 5 * s3 + 7 * s5
            assert num % 12 == 0
            assert a6.coeffs[n] == -num // 12


class TestTateNormalize:
    def test_normal_form_is_fixed(self):
        w = ws.tate_curve(6)
        g, out = ws.tate_normalize(w)
        assert out == w
        assert g == ws.Reparam.identity_like(w.a1)

    def test_constant_unit_flip(self):
        w = series_curve([[-1], [0], [0], [0], [0]], 3)
        g, out = ws.tate_normalize(w)
        assert out == series_curve([[1], [0], [0], [0], [0]], 3)
        assert g.u.coeffs[0] == -1

    def test_idempotent(self):
        rng = random.Random(4)
        for _ in range(20):
            g = random_reparam(rng)
            moved = ws.reparam_apply(
                ws.Reparam.from_series(ZZ, 5, [[g.u.val], [g.s.val], [g.r.val], [g.t.val]]),
                ws.tate_curve(5))
            _, once = ws.tate_normalize(moved)
            g2, twice = ws.tate_normalize(once)
            assert twice == once
            assert g2 == ws.Reparam.identity_like(once.a1)

    def test_postconditions_on_scrambled_tate(self):
        rng = random.Random(5)
        order = 6
        for _ in range(20):
            lists = [[rng.choice([1, -1])] + [2 * rng.randint(-3, 3) for _ in range(order - 1)],
                     [rng.randint(-5, 5) for _ in range(order)],
                     [rng.randint(-5, 5) for _ in range(order)],
                     [rng.randint(-5, 5) for _ in range(order)]]
            g = ws.Reparam.from_series(ZZ, order, lists)
            w = ws.reparam_apply(g, ws.tate_curve(order))
            gn, out = ws.tate_normalize(w)
            assert out.a1 == QSeries.one(ZZ, order)
            assert out.a2.is_zero() and out.a3.is_zero()
            assert ws.reparam_apply(gn, w) == out

    def test_order_by_order_branch(self):
        # an odd higher a1 coefficient rules out any constant-u solution,
        # forcing the order-by-order lift
        order = 6
        u = QSeries.make(ZZ, order, [1, 1])
        g = ws.Reparam(u, QSeries.zero(ZZ, order), QSeries.zero(ZZ, order),
                       QSeries.zero(ZZ, order))
        w = ws.reparam_apply(g, ws.tate_curve(order))
        assert any(c % 2 for c in w.a1.coeffs[1:])
        gn, out = ws.tate_normalize(w)
        assert out.a1 == QSeries.one(ZZ, order)
        assert out.a2.is_zero() and out.a3.is_zero()
        assert gn.u.coeffs[1:] != (0,) * (order - 1)
        assert ws.reparam_apply(gn, w) == out

    def test_even_a1_rejected(self):
        w = series_curve([[2], [0], [0], [0], [0]], 2)
        with pytest.raises(NormalizationFailure):
            ws.tate_normalize(w)

    def test_smooth_fiber_rejected(self):
        w = series_curve([[0], [0], [0], [-1], [0]], 2)
        with pytest.raises(NormalizationFailure):
            ws.tate_normalize(w)


class TestQuarticGauge:
    def test_pins_and_is_idempotent(self):
        order = 6
        w = ws.tate_curve(order)
        moved = ws.reparam_apply(ws.normal_form_stabilizer(order, 1, 3), w)
        moved = ws.reparam_apply(ws.normal_form_stabilizer(order, 2, -2), moved)
        assert moved.a1 == w.a1 and moved.a2 == w.a2 and moved.a3 == w.a3
        assert moved.a4 != w.a4
        g, back = ws.match_quartic_gauge(moved, w.a4)
        assert back == w
        g2, again = ws.match_quartic_gauge(back, w.a4)
        assert again == back
        assert g2 == ws.Reparam.identity_like(w.a1)

    def test_requires_normal_form(self):
        order = 3
        with pytest.raises(ValueError):
            ws.match_quartic_gauge(series_curve([[-1], [0], [0], [0], [0]], order),
                                   QSeries.zero(ZZ, order))


class TestLieLayer:
    def test_d_matrix_values_over_q(self):
        mat, coker, ker = ws.lie_d_matrix(QQ)
        expected = [[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 2, 0],
                    [0, 0, 0, 0], [0, 0, 0, 0]]
        assert [[int(v) for v in row] for row in mat] == expected
        assert (coker, ker) == (2, 1)

    @pytest.mark.parametrize("char,coker,ker", [(0, 2, 1), (2, 4, 3), (3, 3, 2)])
    def test_ranks_by_characteristic(self, char, coker, ker):
        fld = QQ if char == 0 else GF(char)
        _, got_coker, got_ker = ws.lie_d_matrix(fld)
        assert (got_coker, got_ker) == (coker, ker)
        basis = ws.ker_d_basis(fld)
        assert len(basis) == ker

    def test_vector_field_matches_hand_derivative(self):
        # the x-translation direction at the origin moves (a2, a4, a6)
        # like (3r, 3r^2, r^3); its derivative at r = 0 is (0, 3, 0, 0, 0)
        dr = ws.LieElement.of(QQ, dr=1)
        assert [int(v) for v in ws.lie_vector_field(dr, [0] * 5)] == [0, 3, 0, 0, 0]

    def test_vector_field_at_general_point(self):
        du = ws.LieElement.of(QQ, du=1)
        vec = ws.lie_vector_field(du, [1, 1, 1, 1, 1])
        assert [int(v) for v in vec] == [-1, -2, -3, -4, -6]

    def test_adjoint_eigenvalues_char0(self):
        du = ws.LieElement.of(QQ, du=1)
        a4 = ws.coeff_direction(QQ, "a4")
        a6 = ws.coeff_direction(QQ, "a6")
        assert ws.adjoint_bracket(du, a4) == [Fraction(v) for v in (0, 0, 0, -4, 0)]
        assert ws.adjoint_bracket(du, a6) == [Fraction(v) for v in (0, 0, 0, 0, -6)]

    def test_adjoint_kills_image_directions(self):
        du = ws.LieElement.of(QQ, du=1)
        mat, _, _ = ws.lie_d_matrix(QQ)
        image_of_ds = [row[0] for row in mat]
        assert ws.adjoint_bracket(du, image_of_ds) == [QQ.zero()] * 5

    def test_adjoint_requires_kernel_element(self):
        ds = ws.LieElement.of(QQ, ds=1)
        with pytest.raises(ValueError):
            ws.adjoint_bracket(ds, ws.coeff_direction(QQ, "a4"))

    def test_matrix_brackets(self):
        ds = ws.LieElement.of(QQ, ds=1)
        dr = ws.LieElement.of(QQ, dr=1)
        dt = ws.LieElement.of(QQ, dt=1)
        du = ws.LieElement.of(QQ, du=1)
        assert ws.lie_bracket(ds, dr).as_vector() == [0, 0, Fraction(1), 0]
        assert ws.lie_bracket(dt, du).as_vector() == [0, 0, Fraction(-3), 0]
        assert ws.lie_bracket(ds, du).as_vector() == [Fraction(-1), 0, 0, 0]
        assert ws.lie_bracket(dr, du).as_vector() == [0, Fraction(-2), 0, 0]
