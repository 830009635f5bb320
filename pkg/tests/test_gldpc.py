import numpy as np
import pytest
from numpy.testing import assert_array_equal

from codes.families import make_code, spc
from codes.gf2 import gf2_nullspace, gf2_rank
from config import SUBCODES
from core.errors import CodeConstructionError, ConfigError
from graph.exponent import ExponentMatrix, load_exponent_matrix, parse_exponent_text, row_overlap
from graph.gldpc import full_parity_check_matrix, generalize, lift, overlap


class TestExponentMatrix:
    def test_fixture_shapes(self):
        assert load_exponent_matrix("g_r4_1").entries.shape == (4, 14)
        assert load_exponent_matrix("g_r4_3").row_degrees == [15, 15, 15, 15]
        assert load_exponent_matrix("g_r4_4").row_degrees == [6, 6, 7, 7]

    def test_entry_out_of_range(self):
        with pytest.raises(CodeConstructionError):
            ExponentMatrix(np.array([[0, 5]]), 4)

    def test_row_needs_two_entries(self):
        with pytest.raises(CodeConstructionError):
            ExponentMatrix(np.array([[0, -1], [0, 1]]), 4)

    def test_path_needs_lifting_size(self, tmp_path):
        path = tmp_path / "p.txt"
        path.write_text("0 1\n1 0\n")
        with pytest.raises(ConfigError):
            load_exponent_matrix(str(path))
        assert load_exponent_matrix(str(path), 3).name == "p"

    def test_parse_skips_comments(self):
        assert parse_exponent_text("# header\n0 -1\n\n-1 0\n") == [[0, -1], [-1, 0]]


class TestLift:
    def test_diagonal(self):
        g = lift(ExponentMatrix(np.array([[0, -1], [-1, 0]]), 2, min_row_degree=1))
        assert g.check_count == 4
        assert g.row_neighbors[0].tolist() == [[0], [1]]
        assert g.row_neighbors[1].tolist() == [[2], [3]]

    def test_shifted_circulant(self):
        g = lift(ExponentMatrix(np.array([[0, 1]]), 3))
        for t in range(3):
            assert set(g.row_neighbors[0][t].tolist()) == {t, 3 + (1 + t) % 3}

    def test_g_r4_1_fixture(self):
        g = lift(load_exponent_matrix("g_r4_1", 34))
        assert g.N == 476
        assert g.row_neighbors[0].shape == (34, 7)

    def test_variable_degrees_follow_block_columns(self, hamming_lifted_code):
        col_deg = np.repeat(hamming_lifted_code.exp.col_degrees, hamming_lifted_code.ZC)
        assert_array_equal(hamming_lifted_code.var_degrees, col_deg)


class TestGeneralize:
    def test_hamming_lifted_parameters(self, hamming_lifted_code):
        code = hamming_lifted_code
        assert code.N == 476
        assert code.check_equations == 3 * 34 * 3 + 34
        assert code.K == 136
        assert code.rate == pytest.approx(2 / 7)

    def test_all_spc_equals_base(self):
        exp = load_exponent_matrix("g_r4_1", 32)
        base = lift(exp)
        code = generalize(base)
        h = full_parity_check_matrix(code)
        assert h.shape == (128, 448)
        assert_array_equal(h.sum(axis=1), np.full(128, 7))
        for i, nb in enumerate(base.row_neighbors):
            for t in (0, 13, 31):
                assert_array_equal(code.nodes[i * 32 + t].neighbors, nb[t])

    def test_degree_mismatch_names_row(self):
        exp = load_exponent_matrix("g_r4_2")
        with pytest.raises(CodeConstructionError, match="row 1"):
            generalize(lift(exp), {0: "hamming_7_4"})

    def test_random_assignment_reproducible(self):
        base = lift(load_exponent_matrix("g_r4_1", 32))
        a = generalize(base, {0: "hamming_7_4"}, "random", seed=3)
        b = generalize(base, {0: "hamming_7_4"}, "random", seed=3)
        for x, y in zip(a.nodes, b.nodes):
            assert_array_equal(x.assignment, y.assignment)
        assert sorted(a.nodes[0].assignment.tolist()) == list(range(7))

    def test_unknown_policy(self):
        with pytest.raises(ConfigError):
            generalize(lift(load_exponent_matrix("g_r4_1", 32)), policy="greedy")

    def test_codewords_restrict_to_subcodes(self, hamming_lifted_code, rng):
        g = hamming_lifted_code.generator
        for _ in range(5):
            word = (rng.integers(0, 2, g.shape[0]) @ g.astype(np.int64)) % 2
            assert hamming_lifted_code.is_codeword(word)
            for node in hamming_lifted_code.nodes[::17]:
                assert node.subcode.contains(word[node.coord_vars])

    def test_g_r4_2_rank(self):
        exp = load_exponent_matrix("g_r4_2")
        code = generalize(lift(exp), {0: "shortened_hamming_6_3", 1: "shortened_hamming_6_3",
                                      2: "shortened_hamming_6_3"})
        assert code.N == 540
        assert code.check_equations == 450
        assert code.rank <= 450
        assert code.K == 540 - code.rank

    def test_expand_rows(self, hamming_lifted_code):
        seq = hamming_lifted_code.expand_rows([3, 0])
        assert seq[:34] == list(range(102, 136))
        assert seq[34:] == list(range(34))


class TestParityCheck:
    def test_single_spc_node(self):
        code = generalize(lift(ExponentMatrix(np.array([[0, 0, 0]]), 1)))
        assert full_parity_check_matrix(code).tolist() == [[1, 1, 1]]

    def test_single_hamming_node(self):
        code = generalize(lift(ExponentMatrix(np.array([[0] * 7]), 1)), {0: "hamming_7_4"})
        assert_array_equal(full_parity_check_matrix(code), np.array(SUBCODES["hamming_7_4"]["H"]))


class TestOverlap:
    def test_self_and_disjoint(self, hamming_lifted_code):
        a, b = hamming_lifted_code.nodes[0], hamming_lifted_code.nodes[1]
        assert overlap(a, a) == 7
        assert overlap(a, b) == 0

    def test_symmetric(self, mixed_code):
        nodes = mixed_code.nodes
        for a, b in [(0, 90), (3, 100), (50, 170)]:
            assert overlap(nodes[a], nodes[b]) == overlap(nodes[b], nodes[a])

    def test_row_overlap_g_r4_4(self):
        exp = load_exponent_matrix("g_r4_4")
        assert row_overlap(exp, 0, 2) == 3
        assert row_overlap(exp, 1, 3) == 3
        assert row_overlap(exp, 2, 2) == 7

    def test_aligned_shifts(self, mixed_code):
        # rows 1 and 3 of g_r4_4 share block columns 0, 2, 4; shifts (0, 0, 0) vs (0, 27, 33)
        node_row1 = mixed_code.nodes[0]
        shared = [overlap(node_row1, mixed_code.nodes[90 + t]) for t in range(45)]
        assert max(shared) <= 3
        assert shared[0] == 1

    def test_row_overlap_bounds_node_overlap(self, mixed_code):
        exp = mixed_code.exp
        for a in range(0, 180, 23):
            for b in range(0, 180, 31):
                ra, rb = a // 45, b // 45
                if ra != rb:
                    assert overlap(mixed_code.nodes[a], mixed_code.nodes[b]) <= row_overlap(exp, ra, rb)
