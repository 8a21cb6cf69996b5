import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cslcs import (
    BinaryString,
    InputError,
    Seed,
    SizeLimitError,
    lcs,
    lcs_bitparallel,
    lcs_bruteforce,
    lcs_dp,
    random_string,
)

bitstrings = st.text(alphabet="01", max_size=24)
short_bitstrings = st.text(alphabet="01", max_size=12)


class TestBinaryString:
    def test_round_trip(self):
        s = BinaryString.from_text("010011")
        assert s.to_text() == "010011"
        assert len(s) == 6
        assert s.count1() == 3

    def test_letter_aliases(self):
        assert BinaryString.from_text("IOOO").to_text() == "1000"
        assert BinaryString.from_text("iooi").to_text() == "1001"

    def test_rejects_bad_characters(self):
        with pytest.raises(InputError):
            BinaryString.from_text("10Z1")

    def test_packed_words_lsb_first(self):
        s = BinaryString.from_text("1" + "0" * 63 + "1")
        assert len(s.words) == 2
        assert int(s.words[0]) == 1
        assert int(s.words[1]) == 1

    def test_slicing(self):
        s = BinaryString.from_text("10110")
        assert s[1:4].to_text() == "011"
        assert s[0] == 1


class TestDp:
    def test_worked_example(self):
        assert lcs_dp("1000", "0100").length == 3

    def test_identity(self):
        for text in ("", "0", "0110", "1" * 40):
            assert lcs_dp(text, text).length == len(text)

    def test_empty(self):
        assert lcs_dp("", "10101").length == 0

    @given(short_bitstrings, short_bitstrings)
    @settings(max_examples=150, deadline=None)
    def test_matches_bruteforce(self, a, b):
        assert lcs_dp(a, b).length == lcs_bruteforce(a, b).length


class TestBitparallel:
    def test_worked_example(self):
        assert lcs_bitparallel("1000", "0100").length == 3

    def test_empty(self):
        assert lcs_bitparallel("", "111").length == 0
        assert lcs_bitparallel("111", "").length == 0

    def test_multiword(self):
        a = random_string(300, Seed(5, 0))
        b = random_string(417, Seed(5, 1))
        assert lcs_bitparallel(a, b).length == lcs_dp(a, b).length

    @given(bitstrings, bitstrings)
    @settings(max_examples=200, deadline=None)
    def test_matches_dp(self, a, b):
        assert lcs_bitparallel(a, b).length == lcs_dp(a, b).length


class TestBruteforce:
    def test_examples(self):
        assert lcs_bruteforce("1000", "0100").length == 3
        assert lcs_bruteforce("01", "10").length == 1
        assert lcs_bruteforce("0000", "1111").length == 0

    def test_size_guard(self):
        with pytest.raises(SizeLimitError):
            lcs_bruteforce("0" * 21, "1" * 21)

    def test_guard_uses_shorter_side(self):
        assert lcs_bruteforce("0" * 5, "0" * 100).length == 5


class TestDispatch:
    def test_engines(self):
        assert lcs("1000", "0100", "dp").engine == "dp"
        assert lcs("1000", "0100", "bitparallel").engine == "bitparallel"
        assert lcs("1000", "0100", "bruteforce").engine == "bruteforce"

    def test_unknown_engine(self):
        with pytest.raises(InputError):
            lcs("1", "1", "magic")


class TestProperties:
    @given(bitstrings, bitstrings)
    @settings(max_examples=100, deadline=None)
    def test_symmetry(self, a, b):
        assert lcs_dp(a, b).length == lcs_dp(b, a).length

    @given(bitstrings, bitstrings, st.sampled_from("01"))
    @settings(max_examples=100, deadline=None)
    def test_append_monotonicity(self, a, b, c):
        base = lcs_dp(a, b).length
        assert lcs_dp(a + c, b).length >= base
        assert lcs_dp(a, b + c).length >= base

    @given(bitstrings, bitstrings)
    @settings(max_examples=100, deadline=None)
    def test_min_bound(self, a, b):
        assert lcs_dp(a, b).length <= min(len(a), len(b))


class TestRandomString:
    def test_zero_length(self):
        assert len(random_string(0, Seed(1))) == 0

    def test_deterministic(self):
        s1 = random_string(1000, Seed(42, 3))
        s2 = random_string(1000, Seed(42, 3))
        assert s1 == s2

    def test_streams_differ(self):
        assert random_string(64, Seed(42, 0)) != random_string(64, Seed(42, 1))

    def test_prefix_consistency(self):
        long = random_string(128, Seed(9, 0))
        short = random_string(100, Seed(9, 0))
        assert long[:100] == short

    def test_bit_frequency(self):
        n = 10**6
        s = random_string(n, Seed(7, 0))
        sigma = np.sqrt(0.25 / n)
        assert abs(s.count1() / n - 0.5) < 4 * sigma

    def test_negative_length_rejected(self):
        with pytest.raises(InputError):
            random_string(-1, Seed(0))
