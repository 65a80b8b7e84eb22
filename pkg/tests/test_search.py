"""Constrained enumeration: pruning correctness against the brute-force
oracle, relabeling quotients, guards, and emission determinism."""

import itertools

import pytest

from sbc import (
    Alphabet,
    BlockMap,
    ContradictoryConstraintsError,
    SearchConstraints,
    SpaceTooLargeError,
    canonical_relabeling,
    enumerate_block_maps,
    is_progressive,
    is_regressive,
    relabel_block_map,
    weak_progressive_order,
)


A2 = Alphabet(2)
ALL_BINARY = [
    BlockMap(A2, 2, t) for t in itertools.product(range(2), repeat=4)
]


def brute_filter(progressive=None, regressive=None, weak_order=None,
                 weak_order_is_bound=False):
    """Filter the 16 binary window-2 tables directly."""
    out = []
    for d in ALL_BINARY:
        if progressive is not None and is_progressive(d).holds != progressive:
            continue
        if regressive is not None and is_regressive(d).holds != regressive:
            continue
        if weak_order is not None:
            least = weak_progressive_order(d, max(weak_order, 6))
            if weak_order_is_bound:
                if least is None or least > weak_order:
                    continue
            elif least != weak_order:
                continue
        out.append(d)
    return out


class TestCounts:
    @pytest.mark.parametrize(
        "kwargs,expected",
        [
            (dict(regressive=True), 4),
            (dict(progressive=True), 4),
            (dict(progressive=True, regressive=True), 2),
        ],
    )
    def test_binary_window_two_counts(self, kwargs, expected):
        c = SearchConstraints(alphabet_size=2, window=2, count_only=True, **kwargs)
        assert enumerate_block_maps(c).count == expected

    def test_window_one_progressive_maps_are_permutations(self):
        c = SearchConstraints(alphabet_size=2, window=1, progressive=True)
        result = enumerate_block_maps(c)
        assert [d.table for d in result.tables] == [(0, 1), (1, 0)]

    def test_pruned_counts_match_permutation_formula(self):
        import math

        for k in (2, 3):
            c = SearchConstraints(alphabet_size=k, window=2, regressive=True, count_only=True)
            assert enumerate_block_maps(c).count == math.factorial(k) ** k

    def test_doubly_pruned_count_is_latin_square_count(self):
        # rows and columns both permutations: 12 Latin squares of order 3
        c = SearchConstraints(
            alphabet_size=3, window=2,
            progressive=True, regressive=True, count_only=True,
        )
        assert enumerate_block_maps(c).count == 12


class TestOracleEquivalence:
    @pytest.mark.parametrize("progressive", [None, True, False])
    @pytest.mark.parametrize("regressive", [None, True, False])
    @pytest.mark.parametrize(
        "weak", [None, (1, False), (2, False), (2, True)]
    )
    def test_matches_post_filtering(self, progressive, regressive, weak):
        weak_order, is_bound = weak if weak else (None, False)
        if progressive is True and weak_order == 2 and not is_bound:
            pytest.skip("contradictory combination raises by design")
        if progressive is False and weak_order == 1 and not is_bound:
            pytest.skip("contradictory combination raises by design")
        c = SearchConstraints(
            alphabet_size=2,
            window=2,
            progressive=progressive,
            regressive=regressive,
            weak_order=weak_order,
            weak_order_is_bound=is_bound,
        )
        result = enumerate_block_maps(c)
        expected = brute_filter(progressive, regressive, weak_order, is_bound)
        assert list(result.tables) == expected
        assert result.count == len(expected)


class TestEmission:
    def test_lexicographic_order_and_determinism(self):
        c = SearchConstraints(alphabet_size=2, window=2, regressive=True)
        first = enumerate_block_maps(c)
        second = enumerate_block_maps(c)
        assert first == second
        tables = [d.table for d in first.tables]
        assert tables == sorted(tables)

    def test_limit_truncates_but_count_is_exact(self):
        c = SearchConstraints(alphabet_size=2, window=2, regressive=True, limit=2)
        result = enumerate_block_maps(c)
        assert len(result.tables) == 2
        assert result.count == 4

    def test_count_only_matches_emission(self):
        for kwargs in (dict(regressive=True), dict(progressive=False)):
            full = enumerate_block_maps(
                SearchConstraints(alphabet_size=2, window=2, **kwargs)
            )
            counted = enumerate_block_maps(
                SearchConstraints(alphabet_size=2, window=2, count_only=True, **kwargs)
            )
            assert counted.count == full.count
            assert counted.tables == ()


class TestRelabeling:
    def test_properties_invariant_under_relabeling(self):
        for d in ALL_BINARY:
            for perm in itertools.permutations(range(2)):
                image = relabel_block_map(d, perm)
                assert is_progressive(image).holds == is_progressive(d).holds
                assert is_regressive(image).holds == is_regressive(d).holds
                assert weak_progressive_order(image, 4) == weak_progressive_order(d, 4)

    def test_canonical_form_is_orbit_minimum(self):
        for d in ALL_BINARY:
            orbit = {
                relabel_block_map(d, perm).table
                for perm in itertools.permutations(range(2))
            }
            assert canonical_relabeling(d).table == min(orbit)

    def test_quotient_emits_one_representative_per_orbit(self):
        plain = enumerate_block_maps(
            SearchConstraints(alphabet_size=2, window=2, regressive=True)
        )
        quotient = enumerate_block_maps(
            SearchConstraints(
                alphabet_size=2, window=2, regressive=True, modulo_relabeling=True
            )
        )
        orbits = {canonical_relabeling(d).table for d in plain.tables}
        assert {d.table for d in quotient.tables} == orbits
        assert quotient.count == len(orbits)

    def test_relabel_validates_permutation(self):
        with pytest.raises(ValueError):
            relabel_block_map(ALL_BINARY[0], (0, 0))


class TestGuards:
    def test_unpruned_large_space_refused(self):
        c = SearchConstraints(alphabet_size=2, window=5)
        with pytest.raises(SpaceTooLargeError):
            enumerate_block_maps(c)

    def test_pruning_lifts_the_guard(self):
        c = SearchConstraints(
            alphabet_size=2, window=5, progressive=True, count_only=True
        )
        assert enumerate_block_maps(c).count == 2 ** 16

    def test_contradictory_weak_order(self):
        with pytest.raises(ContradictoryConstraintsError):
            enumerate_block_maps(
                SearchConstraints(
                    alphabet_size=2, window=2, progressive=True, weak_order=2
                )
            )
        with pytest.raises(ContradictoryConstraintsError):
            enumerate_block_maps(
                SearchConstraints(
                    alphabet_size=2, window=2, progressive=False, weak_order=1
                )
            )

    def test_constraint_field_validation(self):
        with pytest.raises(ValueError):
            SearchConstraints(alphabet_size=0, window=1)
        with pytest.raises(ValueError):
            SearchConstraints(alphabet_size=2, window=2, limit=-1)
        with pytest.raises(ValueError):
            SearchConstraints(alphabet_size=2, window=2, weak_order=0)


class TestCoveringConstraint:
    def test_covering_filter_on_binary_family(self):
        # a binary window-2 table is a 2-fold covering iff progressive
        result = enumerate_block_maps(
            SearchConstraints(alphabet_size=2, window=2, covering=2)
        )
        expected = [d for d in brute_filter(progressive=True)]
        assert list(result.tables) == expected

    def test_covering_one_at_window_one(self):
        result = enumerate_block_maps(
            SearchConstraints(alphabet_size=2, window=1, covering=1)
        )
        # exactly the permutations: identity and the flip map
        assert [d.table for d in result.tables] == [(0, 1), (1, 0)]
