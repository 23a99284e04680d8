import pytest

from covmoments.hypergraphs import (
    Hypergraph,
    NoiryClassKey,
    count_acyclic_pairs,
    count_noiry_classes,
    enumerate_ss_words,
    hypergraph_to_word,
    is_acyclic,
    word_to_hypergraph,
)
from covmoments.partitions import (
    Partition,
    SizeLimitError,
    Word,
    enumerate_partitions,
    is_special_symmetric,
    word_statistics,
)

W = Word.from_text


def ss_words_by_definition(k):
    return sorted(
        (p.to_word() for p in enumerate_partitions(2 * k) if is_special_symmetric(p)),
        key=lambda w: w.letters,
    )


def all_partitions(k):
    return list(enumerate_partitions(k)) if k > 1 else [Partition(1, ((1,),))]


class TestWordToHypergraph:
    def test_single_letter(self):
        h = word_to_hypergraph(W("aa"))
        assert h.sigma.as_lists() == [[1]]
        assert h.tau.as_lists() == [[1]]
        assert is_acyclic(h)

    def test_abba(self):
        h = word_to_hypergraph(W("abba"))
        assert h.sigma.as_lists() == [[1], [2]]
        assert h.tau.as_lists() == [[1, 2]]

    def test_aabb(self):
        h = word_to_hypergraph(W("aabb"))
        assert h.sigma.as_lists() == [[1, 2]]
        assert h.tau.as_lists() == [[1], [2]]

    def test_non_ss_rejected(self):
        with pytest.raises(ValueError):
            word_to_hypergraph(W("abab"))

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_block_count_identity(self, k):
        for word in ss_words_by_definition(k):
            h = word_to_hypergraph(word)
            assert len(h.sigma.blocks) + len(h.tau.blocks) == word_statistics(word).b + 1

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_every_image_is_acyclic(self, k):
        for word in ss_words_by_definition(k):
            assert is_acyclic(word_to_hypergraph(word))


class TestAcyclicity:
    def test_single_vertex_single_edge(self):
        assert is_acyclic(word_to_hypergraph(W("aa")))

    def test_two_edges_sharing_two_vertices(self):
        sigma = Partition.from_blocks([[1], [2]])
        tau = Partition.from_blocks([[1], [2]])
        h = Hypergraph.from_partitions(sigma, tau)
        assert not h.pairwise_intersections_ok()
        assert not is_acyclic(h)

    def test_six_cycle_passes_pairwise_but_is_cyclic(self):
        # three edges and three vertices in a ring: pairwise intersections are
        # single vertices, yet the incidence graph has a 6-cycle
        singletons = Partition.from_blocks([[1], [2], [3]])
        h = Hypergraph.from_partitions(singletons, singletons)
        assert h.pairwise_intersections_ok()
        assert not is_acyclic(h)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_forest_implies_pairwise(self, k):
        for sigma in all_partitions(k):
            for tau in all_partitions(k):
                h = Hypergraph(k, sigma, tau)
                if is_acyclic(h):
                    assert h.pairwise_intersections_ok()

    def test_disagreement_instances_recorded(self):
        # the pairwise reading alone is NOT equivalent to forestness; these
        # counts pin the first disagreements
        observed = {}
        for k in (1, 2, 3, 4):
            observed[k] = sum(
                1
                for sigma in all_partitions(k)
                for tau in all_partitions(k)
                if Hypergraph(k, sigma, tau).pairwise_intersections_ok()
                and not is_acyclic(Hypergraph(k, sigma, tau))
            )
        assert observed == {1: 0, 2: 0, 3: 1, 4: 17}

    def test_mismatched_ground_sets_rejected(self):
        with pytest.raises(ValueError):
            Hypergraph.from_partitions(
                Partition.from_blocks([[1, 2]]), Partition.from_blocks([[1], [2], [3]])
            )


class TestInverse:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_roundtrip_identity(self, k):
        for word in ss_words_by_definition(k):
            assert hypergraph_to_word(word_to_hypergraph(word)) == word

    def test_examples(self):
        h = Hypergraph.from_partitions(
            Partition.from_blocks([[1, 2]]), Partition.from_blocks([[1], [2]])
        )
        assert hypergraph_to_word(h).text == "aabb"
        h = Hypergraph.from_partitions(
            Partition.from_blocks([[1]]), Partition.from_blocks([[1]])
        )
        assert hypergraph_to_word(h).text == "aa"

    def test_cyclic_input_rejected(self):
        singletons = Partition.from_blocks([[1], [2], [3]])
        with pytest.raises(ValueError):
            hypergraph_to_word(Hypergraph.from_partitions(singletons, singletons))

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_injectivity(self, k):
        images = [word_to_hypergraph(w) for w in ss_words_by_definition(k)]
        assert len({(h.sigma.blocks, h.tau.blocks) for h in images}) == len(images)


class TestEnumerationByPairs:
    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_matches_definition_enumeration(self, k):
        assert list(enumerate_ss_words(k)) == ss_words_by_definition(k)

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_acyclic_pair_counts_equal_ss_counts(self, k):
        by_definition = {}
        for word in ss_words_by_definition(k):
            b = word.distinct_letters
            by_definition[b] = by_definition.get(b, 0) + 1
        assert count_acyclic_pairs(k) == by_definition

    def test_cap(self):
        with pytest.raises(SizeLimitError):
            enumerate_ss_words(8)


class TestNoiryClasses:
    def test_k1(self):
        assert count_noiry_classes(1) == {NoiryClassKey(1, 1, (2,)): 1}

    def test_k2(self):
        assert count_noiry_classes(2) == {
            NoiryClassKey(1, 1, (4,)): 1,
            NoiryClassKey(2, 1, (2, 2)): 1,
            NoiryClassKey(2, 2, (2, 2)): 1,
        }

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_totals_match_ss_census(self, k):
        assert sum(count_noiry_classes(k).values()) == len(ss_words_by_definition(k))

    def test_multiplicities_sum_to_2k(self):
        for k in (1, 2, 3, 4):
            for key in count_noiry_classes(k):
                assert sum(key.sizes) == 2 * k

    def test_invalid_key_rejected(self):
        with pytest.raises(ValueError):
            NoiryClassKey(2, 1, (2, 1))
        with pytest.raises(ValueError):
            NoiryClassKey(2, 1, (2,))
