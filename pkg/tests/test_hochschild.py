import random

import pytest

from tatemirror import hochschild as hh
from tatemirror.errors import VerificationFailure
from tatemirror.exactnum import GF, QQ, ring_of_characteristic

CHARS = (0, 2, 3, 5)


def rings(char):
    fld = ring_of_characteristic(char)
    return hh.PlaneCurveRing(fld, 0), hh.PlaneCurveRing(fld, 1)


class TestNormalForm:
    def test_defining_relation_cusp(self):
        cusp, _ = rings(0)
        assert hh.normal_form(cusp, {(0, 2): 1}) == {(3, 0): QQ.coerce(1)}

    def test_y_cubed_in_node_ring(self):
        _, node = rings(0)
        got = hh.normal_form(node, {(0, 3): 1})
        assert got == {(3, 1): QQ.coerce(1), (4, 0): QQ.coerce(-1),
                       (2, 1): QQ.coerce(1)}

    def test_idempotent_on_random_inputs(self):
        rng = random.Random(41)
        for char in CHARS:
            cusp, node = rings(char)
            for ring in (cusp, node):
                for _ in range(25):
                    poly = ring.poly({(rng.randint(0, 4), rng.randint(0, 4)):
                                      rng.randint(-6, 6) for _ in range(5)})
                    once = ring.normal_form(poly)
                    assert ring.normal_form(once) == once
                    assert all(b <= 1 for (_, b) in once)

    def test_mul_respects_relation(self):
        cusp, _ = rings(0)
        y = {(0, 1): QQ.coerce(1)}
        assert cusp.mul(y, y) == {(3, 0): QQ.coerce(1)}

    def test_defining_polynomial_reduces_to_zero(self):
        for char in CHARS:
            for ring in rings(char):
                assert ring.normal_form(ring.f_polynomial()) == {}


class TestTjurina:
    @pytest.mark.parametrize("char,dim", [(0, 2), (2, 4), (3, 3), (5, 2)])
    def test_cusp_dimension(self, char, dim):
        cusp, _ = rings(char)
        got, basis = hh.tjurina_dim(cusp)
        assert got == dim
        assert (0, 0) in basis and len(basis) == dim

    def test_cusp_basis_char0(self):
        cusp, _ = rings(0)
        _, basis = hh.tjurina_dim(cusp)
        assert basis == [(0, 0), (1, 0)]

    @pytest.mark.parametrize("char", CHARS)
    def test_node_dimension_is_one(self, char):
        _, node = rings(char)
        dim, basis = hh.tjurina_dim(node)
        assert dim == 1 and basis == [(0, 0)]

    def test_undersized_window_raises(self):
        from tatemirror.errors import StabilizationError
        cusp, _ = rings(0)
        with pytest.raises(StabilizationError):
            hh.tjurina_dim(cusp, bound=0)


class TestKoszulMiddle:
    @pytest.mark.parametrize("char", CHARS)
    def test_matches_tjurina_dimension(self, char):
        cusp, node = rings(char)
        for ring in (cusp, node):
            tdim, _ = hh.tjurina_dim(ring)
            assert hh.koszul_h1_dim(ring) == tdim

    def test_generator_pairs_are_syzygies(self):
        for char in CHARS:
            cusp, node = rings(char)
            for ring in (cusp, node):
                fx, fy = ring.f_x(), ring.f_y()
                for a1, a2 in hh.koszul_middle_generators(ring):
                    combo = ring.add(ring.mul(a1, fx), ring.mul(a2, fy))
                    assert combo == {}


class TestOmegaPairing:
    @pytest.mark.parametrize("char", CHARS)
    def test_vanishes_for_both_curves(self, char):
        cusp, node = rings(char)
        for ring in (cusp, node):
            gens = hh.koszul_middle_generators(ring)
            matrix = hh.omega_pairing(ring, gens)
            assert all(entry == {} for row in matrix for entry in row)

    def test_detects_fabricated_nonzero_pair(self):
        cusp, _ = rings(0)
        fake = [({(0, 0): QQ.coerce(1)}, {}), ({}, {(0, 0): QQ.coerce(1)})]
        with pytest.raises(VerificationFailure):
            hh.omega_pairing(cusp, fake)

    def test_diagonal_always_zero(self):
        cusp, _ = rings(0)
        gens = hh.koszul_middle_generators(cusp)
        matrix = hh.omega_pairing(cusp, gens)
        for i in range(len(gens)):
            assert matrix[i][i] == {}


class TestGradedRanks:
    def test_beta_bucket(self):
        cusp, _ = rings(0)
        table = hh.cusp_graded_ranks(cusp, 2, -6)
        assert table.rank(2, -6) == 1

    def test_degree_two_row_char0(self):
        cusp, _ = rings(0)
        assert hh.cusp_graded_ranks(cusp, 2, -8).row(2) == {-6: 1, -4: 1}

    def test_degree_two_row_char2(self):
        cusp, _ = rings(2)
        assert hh.cusp_graded_ranks(cusp, 2, -8).row(2) == \
            {-6: 1, -4: 1, -3: 1, -1: 1}

    @pytest.mark.parametrize("char", CHARS)
    def test_full_window_matches_prediction(self, char):
        cusp, _ = rings(char)
        got = hh.cusp_graded_ranks(cusp, 8, -12)
        want = hh.predicted_cusp_table(char, 8, -12)
        assert got.restrict(2) == want.restrict(2)

    def test_node_rejected(self):
        _, node = rings(0)
        with pytest.raises(ValueError):
            hh.cusp_graded_ranks(node, 4, -6)

    def test_window_guard(self):
        table = hh.predicted_cusp_table(0, 4, -8)
        with pytest.raises(KeyError):
            table.rank(5, -2)
        with pytest.raises(KeyError):
            table.rank(2, -9)


class TestLowDegreeRows:
    # below the comparison window the dga still computes honest values:
    # degree 0 is the constants, degree 1 the nonpositively graded syzygy
    # pairs, whose dimensions per characteristic are dim T - 1 with the
    # internal degrees of the curve's global vector fields
    @pytest.mark.parametrize("char,row1", [
        (0, {0: 1}),
        (2, {-3: 1, -1: 1, 0: 1}),
        (3, {-2: 1, 0: 1}),
        (5, {0: 1}),
    ])
    def test_rows_zero_and_one(self, char, row1):
        cusp, _ = rings(char)
        table = hh.cusp_graded_ranks(cusp, 1, -12)
        assert table.row(0) == {0: 1}
        assert table.row(1) == row1


class TestPredictedTable:
    def test_degree_one_buckets(self):
        assert hh.predicted_cusp_table(0, 2, -6).rank(1, 0) == 1
        assert hh.predicted_cusp_table(2, 2, -6).rank(1, -3) == 1
        assert hh.predicted_cusp_table(3, 2, -6).rank(1, -2) == 1

    def test_beta_gamma_bucket_char0(self):
        assert hh.predicted_cusp_table(0, 4, -8).rank(3, -6) == 1

    def test_zero_buckets_absent(self):
        table = hh.predicted_cusp_table(0, 6, -12)
        assert (2, -5) not in table.ranks
        assert table.rank(2, -5) == 0
