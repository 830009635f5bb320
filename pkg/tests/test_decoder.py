import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from channels import BiAwgnChannel, BinaryErasureChannel
from channels.bec import ERASED
from core.errors import ConfigError
from decoding.decoder import MessagePassingDecoder, compile_groups, decode, edge_index, v2c
from decoding.rules import EXACT, MIN, gc_c2v_awgn, gc_c2v_bec, spc_c2v_awgn
from decoding.schedule import Schedule, format_sequence, parse_sequence
from graph.exponent import ExponentMatrix, load_exponent_matrix
from graph.gldpc import generalize, lift
from sim.experiment import build_code, parse_config

E = int(ERASED)


def _single_node(width, subcodes=None):
    return generalize(lift(ExponentMatrix(np.array([[0] * width]), 1)), subcodes)


@pytest.fixture(scope="module")
def small_code():
    cfg = parse_config({
        "code": {
            "exponent_matrix": [
                [0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1],
                [-1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0, -1, 0],
                [0, -1, -1, 3, -1, 1, 2, -1, -1, 1, 3, -1, 3, -1],
                [-1, 0, 2, -1, 0, -1, -1, 2, 0, -1, -1, 3, -1, 3],
            ],
            "lifting_size": 4,
            "subcodes": {1: "hamming_7_4", 3: "simplex_7_3"},
        },
    })
    return build_code(cfg)


def _reference_layered(code, received, sequence, iterations, kind, mode=EXACT):
    """Node-by-node scalar decoder."""
    c2v = np.zeros(code.num_edges) if kind == "awgn" else np.full(code.num_edges, E)
    post = received.astype(np.float64).copy()
    for _ in range(iterations):
        for nid in sequence:
            node = code.nodes[nid]
            vars_, edges = node.coord_vars, node.coord_edges
            if kind == "awgn":
                msgs = post[vars_] - c2v[edges]
                new = [
                    spc_c2v_awgn(np.delete(msgs, i)) if node.is_spc
                    else gc_c2v_awgn(node.subcode, np.delete(msgs, i), i, mode)
                    for i in range(node.degree)
                ]
                c2v[edges] = new
                post[vars_] = msgs + c2v[edges]
            else:
                msgs = []
                for v, e in zip(vars_, edges):
                    others = [c2v[x] for x in np.flatnonzero(code.edge_vars == v) if x != e]
                    known = [s for s in [received[v]] + others if s != E]
                    msgs.append(known[0] if known else E)
                msgs = np.array(msgs)
                c2v[edges] = [gc_c2v_bec(node.subcode, np.delete(msgs, i), i) for i in range(node.degree)]
    if kind == "awgn":
        return post
    out = received.copy()
    for v in range(code.N):
        known = [s for s in [received[v]] + list(c2v[code.edge_vars == v]) if s != E]
        out[v] = known[0] if known else E
    return out


class TestSmallCases:
    def test_single_spc_resolves_erasure(self):
        code = _single_node(3)
        res = decode(code, np.array([0, E, 0], dtype=np.uint8), Schedule.layered([0]), max_iterations=1)
        assert_array_equal(res.decisions, [0, 0, 0])
        assert res.success

    def test_strong_awgn_decodes_zero(self, hamming_lifted_code):
        res = decode(hamming_lifted_code, np.full(hamming_lifted_code.N, 10.0), Schedule.flooding(), max_iterations=1)
        assert res.success
        assert not res.decisions.any()

    def test_kind_inferred_from_dtype(self):
        code = _single_node(3)
        res = decode(code, np.array([E, E, 0], dtype=np.uint8), Schedule.flooding(), max_iterations=2)
        assert_array_equal(res.decisions, [E, E, 0])
        assert not res.success

    @pytest.mark.parametrize("value", [-10, 3])
    def test_integer_input_outside_bec_alphabet_rejected(self, hamming_lifted_code, value):
        with pytest.raises(ValueError, match="BEC input"):
            decode(hamming_lifted_code, np.full(hamming_lifted_code.N, value), Schedule.flooding(), 1)

    def test_integer_llrs_with_explicit_kind(self, hamming_lifted_code):
        n = hamming_lifted_code.N
        res = decode(hamming_lifted_code, np.full(n, -10), Schedule.flooding(), 1, kind="awgn")
        ref = decode(hamming_lifted_code, np.full(n, -10.0), Schedule.flooding(), 1)
        assert_array_equal(res.decisions, ref.decisions)
        assert res.decisions.all()
        assert not res.success

    def test_batch_rejects_bad_symbols(self, hamming_lifted_code):
        dec = MessagePassingDecoder(hamming_lifted_code, "bec", 1)
        with pytest.raises(ValueError, match="BEC input"):
            dec.decode_batch(np.full((2, hamming_lifted_code.N), 5, dtype=np.uint8), Schedule.flooding())

    def test_length_mismatch(self, hamming_lifted_code):
        with pytest.raises(ValueError):
            decode(hamming_lifted_code, np.zeros(10), Schedule.flooding())

    def test_schedule_must_be_permutation(self, hamming_lifted_code):
        with pytest.raises(ConfigError):
            decode(hamming_lifted_code, np.zeros(hamming_lifted_code.N), Schedule.layered([0, 1, 2]))

    def test_bad_rule(self, hamming_lifted_code):
        with pytest.raises(ConfigError):
            MessagePassingDecoder(hamming_lifted_code, "awgn", gc_rule="bcjr")


class TestV2C:
    def _three_rows(self):
        return generalize(lift(ExponentMatrix(np.array([[0, 0], [0, 0], [0, 0]]), 1)))

    def test_first_iteration_awgn(self):
        code = self._three_rows()
        dec = MessagePassingDecoder(code, "awgn")
        state = dec.init_state(np.array([[1.5, -0.5]]))
        assert v2c(code, state, 0, 1) == pytest.approx(1.5)

    def test_first_iteration_bec(self):
        code = self._three_rows()
        state = MessagePassingDecoder(code, "bec").init_state(np.array([[1, E]], dtype=np.uint8))
        assert v2c(code, state, 0, 2) == 1
        assert v2c(code, state, 1, 2) == E

    def test_sum_of_other_messages(self):
        code = self._three_rows()
        state = MessagePassingDecoder(code, "awgn").init_state(np.array([[1.0, 0.0]]))
        state.c2v[0, edge_index(code, 1, 0)] = 0.5
        state.c2v[0, edge_index(code, 2, 0)] = -0.25
        state.c2v[0, edge_index(code, 0, 0)] = 7.0
        state.posterior[0, 0] = 1.0 + 0.5 - 0.25 + 7.0
        assert v2c(code, state, 0, 0) == pytest.approx(1.25)


class TestAgainstReference:
    @pytest.mark.parametrize("mode", [EXACT, MIN])
    def test_awgn_layered_random_node_order(self, small_code, rng, mode):
        dec = MessagePassingDecoder(small_code, "awgn", gc_rule=mode)
        seq = rng.permutation(len(small_code.nodes)).tolist()
        schedule = Schedule.layered(seq)
        received = BiAwgnChannel(1.2).transmit(np.zeros((3, small_code.N)), rng)
        for b in range(3):
            state = dec.init_state(received[b:b + 1])
            for _ in range(2):
                for group in dec.groups(schedule):
                    dec._layered_update(state, group)
            ref = _reference_layered(small_code, received[b], seq, 2, "awgn", mode)
            assert_allclose(state.posterior[0], ref, rtol=1e-7, atol=1e-7)

    def test_bec_layered_row_order(self, small_code, rng):
        seq = small_code.expand_rows([3, 1, 0, 2])
        received = BinaryErasureChannel(0.35).transmit(np.zeros((4, small_code.N), dtype=np.uint8), rng)
        res = MessagePassingDecoder(small_code, "bec", 2, check_invariants=True).decode_batch(
            received, Schedule.layered(seq))
        for b in range(4):
            ref = _reference_layered(small_code, received[b], seq, 2, "bec")
            assert_array_equal(res.decisions[b], ref)


class TestGroups:
    def test_one_group_per_row(self, hamming_lifted_code):
        groups = compile_groups(hamming_lifted_code, Schedule.layered(hamming_lifted_code.expand_rows([0, 2, 1, 3])))
        assert len(groups) == 4

    def test_disjoint_rows_with_same_subcode_merge(self, hamming_lifted_code):
        # rows 1 and 2 of g_r4_1 use alternate block columns
        groups = compile_groups(hamming_lifted_code, Schedule.layered(hamming_lifted_code.expand_rows([0, 1, 2, 3])))
        assert len(groups) == 3
        assert len(groups[0].node_ids) == 68

    def test_groups_cover_sequence_in_order(self, small_code, rng):
        seq = rng.permutation(len(small_code.nodes)).tolist()
        groups = compile_groups(small_code, Schedule.layered(seq))
        flat = [int(n) for g in groups for n in g.node_ids]
        assert flat == seq


class TestBecInvariants:
    @pytest.mark.parametrize("schedule", ["1,2,3,4", "4,1,2,3", "2,4,1,3", "flooding"])
    def test_monotone_no_miscorrection(self, hamming_lifted_code, rng, schedule):
        sched = Schedule.flooding() if schedule == "flooding" else \
            Schedule.layered(hamming_lifted_code.expand_rows(parse_sequence(schedule)))
        dec = MessagePassingDecoder(hamming_lifted_code, "bec", 4, check_invariants=True)
        g = hamming_lifted_code.generator.astype(np.int64)
        sent = (rng.integers(0, 2, (200, g.shape[0])) @ g) % 2
        received = BinaryErasureChannel(0.45).transmit(sent, rng)
        res = dec.decode_batch(received, sched, sent)
        resolved = res.decisions != E
        assert_array_equal(res.decisions[resolved], sent[resolved])
        assert (np.diff(res.unresolved, axis=1) <= 0).all()

    def test_flooding_and_layered_reach_same_fixed_point(self, hamming_lifted_code, rng):
        received = BinaryErasureChannel(0.5).transmit(np.zeros((50, hamming_lifted_code.N), dtype=np.uint8), rng)
        flood = MessagePassingDecoder(hamming_lifted_code, "bec", 300).decode_batch(received, Schedule.flooding())
        layered = MessagePassingDecoder(hamming_lifted_code, "bec", 300).decode_batch(
            received, Schedule.layered(hamming_lifted_code.expand_rows([3, 2, 1, 0])))
        assert_array_equal(flood.decisions, layered.decisions)

    def test_all_erased_stays_erased(self, hamming_lifted_code):
        received = np.full((1, hamming_lifted_code.N), E, dtype=np.uint8)
        res = MessagePassingDecoder(hamming_lifted_code, "bec", 3).decode_batch(received, Schedule.flooding())
        assert res.block_errors == 1
        assert res.unresolved[0].tolist() == [hamming_lifted_code.N] * 3


FIXTURE_CODES = {
    "g_r4_1": ("g_r4_1", {0: "hamming_7_4", 1: "hamming_7_4", 2: "hamming_7_4"}, "sequential"),
    "g_r4_2": ("g_r4_2", {0: "shortened_hamming_6_3", 1: "shortened_hamming_6_3", 2: "shortened_hamming_6_3"},
               "sequential"),
    "g_r4_3": ("g_r4_3", {0: "hamming_15_11", 1: "hamming_15_11", 2: "hamming_15_11"}, "sequential"),
    "g_r4_4": ("g_r4_4", {0: "shortened_hamming_6_3", 2: "hamming_7_4"}, "sequential"),
    "g_r4_4_random": ("g_r4_4", {0: "shortened_hamming_6_3", 2: "hamming_7_4"}, "random"),
}


@pytest.fixture(scope="module", params=sorted(FIXTURE_CODES))
def fixture_code(request):
    name, subcodes, policy = FIXTURE_CODES[request.param]
    return generalize(lift(load_exponent_matrix(name)), subcodes, policy, seed=11)


@pytest.mark.slow
class TestBecInvariantsAllFixtures:
    @pytest.mark.parametrize("order", ["1,2,3,4", "4,3,2,1", "flooding"])
    def test_monotone_no_miscorrection(self, fixture_code, order):
        rng = np.random.default_rng(2024)
        sched = Schedule.flooding() if order == "flooding" else \
            Schedule.layered(fixture_code.expand_rows(parse_sequence(order)))
        dec = MessagePassingDecoder(fixture_code, "bec", 4, check_invariants=True)
        g = fixture_code.generator.astype(np.int64)
        for _ in range(5):
            sent = (rng.integers(0, 2, (2_000, g.shape[0])) @ g) % 2
            received = BinaryErasureChannel(0.4).transmit(sent, rng)
            res = dec.decode_batch(received, sched, sent)
            resolved = res.decisions != E
            assert_array_equal(res.decisions[resolved], sent[resolved])
            assert (np.diff(res.unresolved, axis=1) <= 0).all()

    def test_flooding_and_layered_reach_same_fixed_point(self, fixture_code):
        rng = np.random.default_rng(2025)
        received = BinaryErasureChannel(0.4).transmit(np.zeros((1_000, fixture_code.N), dtype=np.uint8), rng)
        layered = Schedule.layered(fixture_code.expand_rows([3, 2, 1, 0]))
        flood = MessagePassingDecoder(fixture_code, "bec", 200, early_stop=True).decode_batch(
            received, Schedule.flooding())
        layer = MessagePassingDecoder(fixture_code, "bec", 200, early_stop=True).decode_batch(received, layered)
        assert_array_equal(flood.decisions, layer.decisions)


class TestEarlyStop:
    def test_stops_after_first_iteration(self, hamming_lifted_code, rng):
        received = BiAwgnChannel(0.3).transmit(np.zeros((5, hamming_lifted_code.N)), rng)
        dec = MessagePassingDecoder(hamming_lifted_code, "awgn", 5, early_stop=True)
        res = dec.decode_batch(received, Schedule.layered(hamming_lifted_code.expand_rows([0, 1, 2, 3])))
        assert res.success.all()
        assert (res.iterations_used == 1).all()

    def test_results_match_without_early_stop_for_bec(self, hamming_lifted_code, rng):
        received = BinaryErasureChannel(0.3).transmit(np.zeros((40, hamming_lifted_code.N), dtype=np.uint8), rng)
        sched = Schedule.layered(hamming_lifted_code.expand_rows([0, 1, 2, 3]))
        a = MessagePassingDecoder(hamming_lifted_code, "bec", 5, early_stop=True).decode_batch(received, sched)
        b = MessagePassingDecoder(hamming_lifted_code, "bec", 5).decode_batch(received, sched)
        assert_array_equal(a.success, b.success)


class TestScheduleText:
    def test_parse_and_format(self):
        assert parse_sequence("1,3,2,4") == [0, 2, 1, 3]
        assert format_sequence([0, 2, 1, 3]) == "1,3,2,4"

    def test_rejects_zero_index(self):
        with pytest.raises(ConfigError):
            parse_sequence("0,1,2")

    def test_rejects_garbage(self):
        with pytest.raises(ConfigError):
            parse_sequence("1,a")
