"""Cost criteria: scalar formulas, identities, decompositions."""

from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_order_profile, random_schedule
from consched.criteria import (
    CriterionKind,
    binary_task_cost,
    choice_decomposition,
    distance_task_cost,
    interval_arrays,
    kendall_tau_distance,
    late_at_slot,
    profile_cost,
    spearman_distance,
)
from consched.model import (
    EncodingKind,
    IntervalPreference,
    PreferenceProfile,
    Schedule,
    parse_profile,
)

profiles = st.tuples(st.integers(2, 6), st.integers(1, 5), st.randoms(use_true_random=False)).map(
    lambda t: random_order_profile(random.Random(t[2].randint(0, 10**9)), t[0], t[1])
)


@st.composite
def profile_and_schedule(draw):
    n = draw(st.integers(2, 6))
    v = draw(st.integers(1, 5))
    seed = draw(st.integers(0, 10**9))
    rng = random.Random(seed)
    return random_order_profile(rng, n, v), random_schedule(rng, n)


def _single_task_cost(fn, completion: int, window: tuple[int, int], n: int = 9) -> int:
    """Price task 1 at the given slot against one voter window."""
    order = list(range(2, n + 1))
    order.insert(completion - 1, 1)
    windows = [(0, n)] * n
    windows[0] = window
    return fn(Schedule(tuple(order)), IntervalPreference(tuple(windows)), 1)


class TestScalarCosts:
    @pytest.mark.parametrize(
        "completion, window, want",
        [
            (3, (0, 3), 0),  # inside
            (3, (3, 4), 1),  # one slot early
            (5, (0, 3), 2),  # two slots late
            (1, (2, 4), 2),  # two slots early
            (4, (3, 4), 0),  # boundary: slot d is on time
            (3, (2, 4), 0),  # boundary: slot r+1 is on time
        ],
    )
    def test_distance(self, completion, window, want):
        assert _single_task_cost(distance_task_cost, completion, window) == want

    @pytest.mark.parametrize(
        "completion, window, want",
        [(3, (0, 3), 0), (4, (0, 3), 1), (3, (3, 4), 1), (4, (3, 4), 0), (2, (1, 4), 0)],
    )
    def test_binary(self, completion, window, want):
        assert _single_task_cost(binary_task_cost, completion, window) == want

    @given(st.integers(1, 9), st.integers(0, 8), st.integers(1, 9))
    def test_binary_agrees_with_distance_sign(self, completion, r, d):
        if r >= d:
            r, d = max(d - 1, 0), max(r, 1) + 1
        distance = _single_task_cost(distance_task_cost, completion, (r, d))
        assert _single_task_cost(binary_task_cost, completion, (r, d)) == (
            1 if distance > 0 else 0
        )


class TestProfileCost:
    def test_order_mode_requires_encoding(self):
        profile = parse_profile("profile order\ntasks 2\nvoters 1\npref 1 : 1 2\n")
        with pytest.raises(ValueError, match="encoding"):
            profile_cost(Schedule((1, 2)), profile, CriterionKind.DISTANCE)

    def test_interval_mode_forbids_encoding(self):
        profile = parse_profile("profile interval\ntasks 2\nvoters 1\npref 1 : (0,1) (1,2)\n")
        with pytest.raises(ValueError, match="encoding"):
            profile_cost(
                Schedule((1, 2)), profile, CriterionKind.DISTANCE, EncodingKind.TARDINESS
            )

    @given(profile_and_schedule())
    def test_multiplicity_equals_repetition(self, ps):
        profile, schedule = ps
        merged = PreferenceProfile(
            mode="order", entries=tuple((p, 1) for p in profile.iter_voters())
        )
        for criterion in CriterionKind:
            for encoding in EncodingKind:
                assert profile_cost(schedule, profile, criterion, encoding) == profile_cost(
                    schedule, merged, criterion, encoding
                )

    @given(profile_and_schedule())
    def test_identities_between_encodings(self, ps):
        profile, schedule = ps
        dev = profile_cost(schedule, profile, CriterionKind.DISTANCE, EncodingKind.DEVIATION)
        tard = profile_cost(schedule, profile, CriterionKind.DISTANCE, EncodingKind.TARDINESS)
        early = profile_cost(schedule, profile, CriterionKind.DISTANCE, EncodingKind.EARLINESS)
        assert dev == 2 * tard
        assert tard == early

    @given(profile_and_schedule())
    def test_tardiness_splits_over_slots(self, ps):
        profile, schedule = ps
        tard = profile_cost(schedule, profile, CriterionKind.DISTANCE, EncodingKind.TARDINESS)
        assert tard == sum(
            late_at_slot(schedule, profile, y) for y in range(1, profile.n + 1)
        )

    @given(profile_and_schedule())
    def test_binary_counts_match_direct_definitions(self, ps):
        profile, schedule = ps
        comp = schedule.completions()
        pairs_late = pairs_moved = pairs_early = 0
        for pref in profile.iter_voters():
            pc = pref.schedule.completions()
            pairs_late += sum(c > p for c, p in zip(comp, pc))
            pairs_early += sum(c < p for c, p in zip(comp, pc))
            pairs_moved += sum(c != p for c, p in zip(comp, pc))
        assert pairs_late == profile_cost(
            schedule, profile, CriterionKind.BINARY, EncodingKind.LATE_TASKS
        )
        assert pairs_early == profile_cost(
            schedule, profile, CriterionKind.BINARY, EncodingKind.EARLINESS
        )
        assert pairs_moved == profile_cost(
            schedule, profile, CriterionKind.BINARY, EncodingKind.EXACT_POSITION
        )

    def test_identical_preference_costs_zero(self):
        profile = parse_profile("profile order\ntasks 3\nvoters 2\npref 2 : 2 3 1\n")
        s = Schedule((2, 3, 1))
        for criterion in CriterionKind:
            for encoding in EncodingKind:
                assert profile_cost(s, profile, criterion, encoding) == 0


class TestRankDistances:
    @given(profile_and_schedule())
    def test_spearman_is_deviation_cost(self, ps):
        profile, schedule = ps
        assert spearman_distance(schedule, profile) == profile_cost(
            schedule, profile, CriterionKind.DISTANCE, EncodingKind.DEVIATION
        )

    def test_kendall_adjacent_swap(self):
        profile = parse_profile("profile order\ntasks 3\nvoters 1\npref 1 : 1 2 3\n")
        assert kendall_tau_distance(Schedule((1, 3, 2)), profile) == 1

    def test_kendall_reversal_is_all_pairs(self):
        profile = parse_profile("profile order\ntasks 4\nvoters 2\npref 2 : 1 2 3 4\n")
        assert kendall_tau_distance(Schedule((4, 3, 2, 1)), profile) == 2 * 6

    @given(profile_and_schedule())
    def test_pair_inversions_bound_footrule(self, ps):
        # classical two-sided bound linking the two per-voter distances
        profile, schedule = ps
        for pref in profile.iter_voters():
            single = PreferenceProfile(mode="order", entries=((pref, 1),))
            delta = kendall_tau_distance(schedule, single)
            rho = spearman_distance(schedule, single)
            assert delta <= rho <= 2 * delta


class TestChoiceDecomposition:
    def test_slot_counts_on_contested_profile(self):
        profile = parse_profile(
            "profile order\ntasks 3\nvoters 3\npref 1 : 1 2 3\npref 1 : 1 3 2\npref 1 : 2 1 3\n"
        )
        choices = choice_decomposition(profile)
        assert len(choices) == 9
        at_slot_1 = sorted(c.task for c in choices if c.slot == 1)
        assert at_slot_1 == [1, 1, 2]
        assert {c.voter for c in choices} == {1, 2, 3}

    def test_multiplicity_expands_voters(self):
        profile = parse_profile("profile order\ntasks 2\nvoters 3\npref 3 : 2 1\n")
        choices = choice_decomposition(profile)
        assert len(choices) == 6
        assert {c.voter for c in choices} == {1, 2, 3}

    @given(profile_and_schedule())
    def test_late_at_slot_matches_decomposition(self, ps):
        profile, schedule = ps
        choices = choice_decomposition(profile)
        for y in range(1, profile.n + 1):
            direct = sum(
                1 for c in choices if c.slot <= y and schedule.completion(c.task) > y
            )
            assert late_at_slot(schedule, profile, y) == direct


class TestIntervalArrays:
    @given(profiles, st.sampled_from(list(EncodingKind)))
    def test_arrays_price_like_profile_cost(self, profile, encoding):
        rel, due, mult = interval_arrays(profile, encoding)
        assert rel.shape == due.shape == (len(mult), profile.n)
        assert int(mult.sum()) == profile.v
        rng = random.Random(7)
        s = random_schedule(rng, profile.n)
        comp = np.array(s.completions(), dtype=np.int64)
        dist = int(
            (mult[:, None] * (np.maximum(comp - due, 0) + np.maximum(rel - comp + 1, 0))).sum()
        )
        assert dist == profile_cost(s, profile, CriterionKind.DISTANCE, encoding)
        binary = int((mult[:, None] * ((comp > due) | (comp <= rel))).sum())
        assert binary == profile_cost(s, profile, CriterionKind.BINARY, encoding)
