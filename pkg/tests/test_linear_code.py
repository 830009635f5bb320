import numpy as np
import pytest
from numpy.testing import assert_array_equal

from codes.families import make_code, spc
from codes.linear_code import (
    LinearCode,
    binom,
    enumerate_codewords,
    macwilliams_transform,
    read_parity_check,
    weight_enumerator,
    write_parity_check,
)
from config import SUBCODES
from core.errors import CapacityError, CodeConstructionError, ConfigError


def _as_set(words):
    return {"".join(str(b) for b in w) for w in words}


class TestEnumeration:
    def test_spc3(self):
        assert _as_set(enumerate_codewords(spc(3))) == {"000", "011", "101", "110"}

    def test_repetition(self):
        rep = LinearCode([[1, 1, 0], [0, 1, 1]])
        assert _as_set(enumerate_codewords(rep)) == {"000", "111"}

    def test_hamming_spectrum(self, hamming):
        assert enumerate_codewords(hamming).shape == (16, 7)
        assert hamming.weight_spectrum.tolist() == [1, 0, 0, 7, 7, 0, 0, 1]

    def test_closed_under_addition(self, hamming, rng):
        words = hamming.codewords
        for _ in range(20):
            a, b = words[rng.integers(0, 16, 2)]
            assert hamming.contains(a ^ b)

    def test_deterministic_order(self, hamming):
        again = LinearCode(SUBCODES["hamming_7_4"]["H"])
        assert_array_equal(again.codewords, hamming.codewords)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            _ = spc(18).codewords


class TestWeightEnumerator:
    @pytest.mark.parametrize("name,d,a", [
        ("spc(6)", 2, 15),
        ("hamming_7_4", 3, 7),
        ("simplex_7_3", 4, 7),
        ("shortened_hamming_6_3", 3, 4),
        ("hamming_subcode_7_3", 3, 3),
        ("hamming_15_11", 3, 35),
    ])
    def test_d_min_and_a_min(self, name, d, a):
        spectrum, d_min, a_min = weight_enumerator(make_code(name))
        assert (d_min, a_min) == (d, a)
        assert spectrum[0] == 1
        assert sum(spectrum) == 2 ** make_code(name).k

    def test_simplex_all_weight_four(self):
        assert make_code("simplex_7_3").weight_spectrum.tolist() == [1, 0, 0, 0, 7, 0, 0, 0]

    def test_shortened_spectrum(self):
        assert make_code("shortened_hamming_6_3").weight_spectrum.tolist() == [1, 0, 0, 4, 3, 0, 0]

    @pytest.mark.parametrize("n", [3, 6, 7, 10])
    def test_spc_a2(self, n):
        assert spc(n).weight_spectrum[2] == binom(n, 2)


class TestFamilies:
    def test_spc7(self):
        code = make_code("spc(7)")
        assert (code.n, code.k, code.d_min) == (7, 6, 2)
        assert code.is_spc

    def test_explicit_h(self):
        code = make_code({"H": SUBCODES["shortened_hamming_6_3"]["H"]})
        assert (code.n, code.k) == (6, 3)

    def test_simplex_is_hamming_dual(self, hamming):
        simplex = make_code("simplex_7_3")
        assert not ((hamming.codewords.astype(int) @ simplex.codewords.T.astype(int)) % 2).any()
        assert simplex.k + hamming.k == 7

    def test_15_11_name_resolves_to_hamming(self):
        code = make_code("shortened_hamming_15_11")
        ref = make_code("hamming_15_11")
        assert_array_equal(code.H, ref.H)
        assert code.label == "(15,11,3) Hamming"
        assert (code.n, code.k, code.d_min) == (15, 11, 3)

    def test_fourteen_column_variant(self):
        code = make_code("shortened_hamming_14_10")
        assert (code.n, code.k, code.d_min) == (14, 10, 3)

    def test_bare_spc_needs_length(self):
        assert make_code("spc", length=5).n == 5
        with pytest.raises(ConfigError):
            make_code("spc")

    def test_unknown_name(self):
        with pytest.raises(ConfigError):
            make_code("golay_23_12")

    def test_zero_column_rejected(self):
        with pytest.raises(CodeConstructionError):
            LinearCode([[1, 0, 1], [1, 0, 0]])

    def test_rank_deficient_h_normalised(self):
        code = LinearCode([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
        assert (code.rank, code.k, code.H.shape) == (2, 1, (2, 3))


class TestMacWilliams:
    @pytest.mark.parametrize("name", ["hamming_7_4", "simplex_7_3", "shortened_hamming_6_3",
                                      "hamming_subcode_7_3", "spc(6)", "hamming_15_11"])
    def test_dual_spectrum(self, name):
        code = make_code(name)
        predicted = macwilliams_transform(code.weight_spectrum.tolist(), code.k)
        assert predicted == code.dual().weight_spectrum.tolist()

    def test_rejects_impossible_spectrum(self):
        with pytest.raises(ValueError):
            macwilliams_transform([1, 2, 0], 1)


class TestBinom:
    def test_convention(self):
        assert binom(5, 2) == 10
        assert binom(2, 3) == 0
        assert binom(-1, 0) == 0
        assert binom(3, -1) == 0
        assert binom(0, 0) == 1


class TestParityCheckFiles:
    def test_write_then_read(self, tmp_path, hamming):
        path = tmp_path / "ham.txt"
        write_parity_check(hamming, str(path))
        assert path.read_text().splitlines()[0] == "# n=7 k=4"
        loaded = read_parity_check(str(path))
        assert_array_equal(loaded.H, hamming.H)

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("# n=7 k=3\n1 1 1\n")
        with pytest.raises(CodeConstructionError):
            read_parity_check(str(path))

    def test_ragged_rows(self, tmp_path):
        path = tmp_path / "ragged.txt"
        path.write_text("1 1 1\n1 1\n")
        with pytest.raises(CodeConstructionError):
            read_parity_check(str(path))


class TestEncoding:
    def test_encode_gives_codewords(self, hamming, rng):
        words = hamming.encode(rng.integers(0, 2, (10, 4)))
        assert not hamming.syndrome(words).any()

    def test_message_length(self, hamming):
        with pytest.raises(ValueError):
            hamming.encode([1, 0, 1])
