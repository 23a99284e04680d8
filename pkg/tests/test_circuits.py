import itertools

import pytest

from covmoments.circuits import (
    CensusResult,
    census_s,
    census_s_exhaustive,
    census_w,
    census_w_exhaustive,
    predicted_count_s,
    predicted_count_w,
    verify_containment,
)
from covmoments.partitions import (
    SizeLimitError,
    Word,
    enumerate_partitions,
    is_special_symmetric,
)

W = Word.from_text


def all_words(m):
    return [p.to_word() for p in enumerate_partitions(m)]


def ss_words(m):
    return [p.to_word() for p in enumerate_partitions(m) if is_special_symmetric(p)]


def non_ss_words(m):
    return [p.to_word() for p in enumerate_partitions(m) if not is_special_symmetric(p)]


class TestCensusS:
    def test_single_letter_base_case(self):
        assert census_s(W("aa"), 2, 3).exact_count == 6
        assert census_s(W("aaaa"), 2, 3).exact_count == 6
        for p, n in [(1, 1), (3, 2), (4, 4)]:
            assert census_s(W("aa"), p, n).exact_count == p * n

    def test_abba(self):
        result = census_s(W("abba"), 2, 2)
        assert result.exact_count == 8 == result.predicted_count

    def test_crossing_pair_counts_low(self):
        result = census_s(W("abab"), 2, 2)
        assert result.exact_count < 8
        assert result.predicted_count is None

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_propagation_matches_exhaustive_oracle(self, m):
        for word in all_words(m):
            for p, n in itertools.product((1, 2, 3), (1, 2, 3)):
                assert (
                    census_s(word, p, n).exact_count
                    == census_s_exhaustive(word, p, n).exact_count
                )

    def test_propagation_matches_exhaustive_rectangular(self):
        for word in all_words(4):
            for p, n in [(4, 2), (2, 4), (4, 3)]:
                assert (
                    census_s(word, p, n).exact_count
                    == census_s_exhaustive(word, p, n).exact_count
                )

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_ss_words_count_exactly(self, m):
        for word in ss_words(m):
            for p, n in itertools.product(range(1, 5), range(1, 5)):
                result = census_s(word, p, n)
                assert result.exact_count == result.predicted_count

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_non_ss_ratio_decays(self, m):
        for word in non_ss_words(m):
            b = word.distinct_letters
            ratios = [census_s(word, N, N).exact_count / N ** (b + 1) for N in (2, 3, 4)]
            assert ratios[0] >= ratios[1] >= ratios[2]
            assert ratios[2] < 1

    def test_budget(self):
        with pytest.raises(SizeLimitError):
            census_s(W("aabb"), 100, 100, budget=10)
        with pytest.raises(SizeLimitError):
            census_s_exhaustive(W("aabb"), 100, 100, budget=10)

    def test_odd_length_rejected(self):
        with pytest.raises(ValueError):
            census_s(W("aab"), 2, 2)


class TestCensusW:
    def test_examples(self):
        assert census_w(W("aa"), 3).exact_count == 9
        assert census_w(W("abba"), 2).exact_count == 8

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_propagation_matches_exhaustive_oracle(self, m):
        for word in all_words(m):
            for N in (2, 3):
                assert (
                    census_w(word, N).exact_count == census_w_exhaustive(word, N).exact_count
                )

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_ss_words_hit_scale_exactly(self, m):
        # stated in the source material only as a limit; exhaustive checks show
        # exact equality at finite N for every special symmetric word tried
        for word in ss_words(m):
            for N in (2, 3, 4):
                result = census_w(word, N)
                assert result.exact_count == N ** (word.distinct_letters + 1)
                assert result.exact_count == result.predicted_count

    def test_ss8_words_hit_scale_exactly(self):
        for word in ss_words(8):
            assert census_w(word, 2).exact_count == 2 ** (word.distinct_letters + 1)

    @pytest.mark.parametrize("m", [2, 4])
    def test_non_ss_ratio_decays(self, m):
        for word in non_ss_words(m):
            b = word.distinct_letters
            ratios = [census_w(word, N).exact_count / N ** (b + 1) for N in (2, 3, 4)]
            assert ratios[0] >= ratios[1] >= ratios[2]


class TestPredictions:
    def test_aabb(self):
        assert predicted_count_s(W("aabb"), 3, 5) == 3 * 25

    def test_single_letter(self):
        for p, n in [(2, 3), (7, 7)]:
            assert predicted_count_s(W("aa"), p, n) == p * n

    def test_non_ss_is_none(self):
        assert predicted_count_s(W("abab"), 2, 2) is None
        assert predicted_count_w(W("abab"), 2) is None

    def test_wigner_prediction(self):
        assert predicted_count_w(W("abba"), 3) == 27


class TestContainment:
    @pytest.mark.parametrize("text,p,n", [("aa", 2, 3), ("abba", 2, 2), ("abab", 2, 2)])
    def test_examples(self, text, p, n):
        assert verify_containment(W(text), p, n)

    @pytest.mark.parametrize("m", [2, 4, 6])
    def test_all_words_contained(self, m):
        for word in all_words(m):
            for p, n in itertools.product((1, 2, 3), (1, 2, 3)):
                assert verify_containment(word, p, n)


class TestCensusResult:
    def test_fields(self):
        result = census_s(W("aabb"), 2, 3)
        assert result == CensusResult("aabb", "S", 2, 3, 2 * 9, 2 * 9)

    def test_ratio(self):
        result = census_w(W("aa"), 4)
        assert result.ratio_to_scale == 1.0
