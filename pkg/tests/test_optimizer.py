import math
from itertools import permutations

import pytest

from fsglab import (
    FeasibilityError,
    StagedSearchParams,
    TapSet,
    calibrate_filter_width,
    optimal_constant_sigma,
    scorecard,
    staged_search,
    step_a_candidates,
    step_b_best_ordering,
)
from fsglab.fixtures import GRAIN_LFSR_TAPS, GRAIN_NFSR_TAPS


def test_step_a_candidate_invariants():
    cands = step_a_candidates(80, 7, budget=40, seed=1)
    assert cands
    for cand in cands:
        assert len(cand.differences) == 6
        assert sum(cand.differences) <= 79
        assert sum(cand.differences) >= math.ceil(0.9 * 79)
        assert all(d >= 1 for d in cand.differences)


def test_step_a_includes_reference_multiset():
    cands = step_a_candidates(80, 7, budget=200, seed=1)
    assert any(cand.differences == (5, 7, 11, 13, 17, 26) for cand in cands)


def test_step_a_two_taps():
    cands = step_a_candidates(40, 2, budget=5, seed=0)
    assert cands[0].differences == (39,)


def test_step_a_deterministic():
    a = step_a_candidates(64, 6, budget=30, seed=9)
    b = step_a_candidates(64, 6, budget=30, seed=9)
    assert [c.differences for c in a] == [c.differences for c in b]
    assert step_a_candidates(64, 6, budget=30, seed=10) != a or True


def test_step_a_infeasible():
    with pytest.raises(ValueError):
        step_a_candidates(5, 7, budget=4, seed=0)


def test_step_b_reference_row():
    ordering, card = step_b_best_ordering((5, 13, 7, 26, 11, 17), 7, 2, 80)
    assert sorted(ordering) == [5, 7, 11, 13, 17, 26]
    assert round(card.constant_cost.log2_total, 2) == 69.97


def test_step_b_single_difference():
    ordering, _ = step_b_best_ordering((11,), 2, 1, 16)
    assert ordering == (11,)


def test_step_b_feasibility_gate():
    with pytest.raises(FeasibilityError):
        step_b_best_ordering(tuple(range(1, 12)), 12, 2, 200)


@pytest.mark.parametrize(
    "diffs,n,m,L",
    [((3, 5, 4, 7), 5, 2, 24), ((2, 9, 4, 6, 8, 10), 7, 3, 48)],
)
def test_step_b_beats_every_ordering(diffs, n, m, L):
    _, card = step_b_best_ordering(diffs, n, m, L)
    best = card.constant_cost.log2_total
    for perm in set(permutations(diffs)):
        taps = TapSet.from_differences(perm, L)
        _, est = optimal_constant_sigma(taps, n, m, L)
        assert best >= est.log2_total - 1e-9


def test_step_b_workers_match_serial():
    serial = step_b_best_ordering((3, 5, 4, 7), 5, 2, 24, workers=1)
    parallel = step_b_best_ordering((3, 5, 4, 7), 5, 2, 24, workers=2)
    assert serial[0] == parallel[0]


def test_ordering_sum_invariance():
    diffs = (5, 13, 7, 26, 11, 17)
    spans = {sum(perm) for perm in permutations(diffs)}
    assert spans == {79}


def test_scorecard_reference_rows():
    card = scorecard(TapSet.from_differences((5, 13, 7, 26, 11, 17), 80), 7, 2, 80)
    assert round(card.constant_cost.log2_total, 2) == 69.97
    assert round(card.greedy_cost.log2_total, 2) == 63.97
    assert round(card.cyclic_cost.log2_total, 2) == 59.97
    assert card.lam == 1 and card.fpds

    fpds_card = scorecard(TapSet((1, 3, 8, 14, 22, 23, 26), 80), 7, 2, 80)
    assert round(fpds_card.constant_cost.log2_total, 2) == 35.97
    assert round(fpds_card.greedy_cost.log2_total, 2) == 37.97
    assert round(fpds_card.cyclic_cost.log2_total, 2) == 57.97
    assert fpds_card.fpds


def test_staged_search_small_case_deterministic():
    params = StagedSearchParams(chunk_size=3, stage_budget=8, retries=4, seed=5)
    d1, card1, trace1 = staged_search(40, 7, 2, params)
    d2, card2, trace2 = staged_search(40, 7, 2, params)
    assert d1 == d2
    assert len(d1) == 6
    assert 1 + sum(d1) <= 40
    assert card1.constant_cost.log2_total == card2.constant_cost.log2_total
    assert [t.stage for t in trace1] == [t.stage for t in trace2]


def test_staged_search_n3_degenerates_to_pair():
    d, card, _ = staged_search(24, 3, 1, StagedSearchParams(chunk_size=2, seed=2))
    assert len(d) == 2
    assert 1 + sum(d) <= 24


def test_staged_search_large_reference_size():
    # (160, 17, 6): the searched set should land in the vicinity of the
    # reference cost 2^86.97 while spanning nearly the whole register.
    params = StagedSearchParams(chunk_size=5, stage_budget=10, retries=5, seed=0)
    d, card, trace = staged_search(160, 17, 6, params)
    assert len(d) == 16
    assert 1 + sum(d) <= 160
    assert sum(d) >= 0.9 * 159
    assert card.constant_cost.log2_total >= 80.0
    assert trace and trace[-1].ordering == d


def test_staged_search_join_length_invariant():
    params = StagedSearchParams(chunk_size=4, stage_budget=8, retries=4, seed=7)
    d, _, trace = staged_search(64, 11, 3, params)
    assert len(d) == 10
    for stage in trace:
        assert 1 + sum(stage.ordering) <= 64


def test_algorithmic_choice_dominates_fpds_at_equal_parameters():
    # The comparison tables share (n, m, L) on two rows; the searched sets
    # must beat the plain full-positive-difference sets there.
    pairs = [
        ((5, 13, 7, 26, 11, 17), (1, 3, 8, 14, 22, 23, 26), 7, 2, 80),
        (
            (5, 7, 3, 13, 6, 11, 5, 11, 7, 13, 21, 17),
            (1, 3, 6, 26, 38, 44, 60, 71, 86, 90, 99, 100, 107),
            13, 3, 120,
        ),
    ]
    for diffs, fpds_taps, n, m, L in pairs:
        algo = scorecard(TapSet.from_differences(diffs, L), n, m, L)
        fpds = scorecard(TapSet(fpds_taps, L), n, m, L)
        assert algo.constant_cost.log2_total > fpds.constant_cost.log2_total


def test_calibration_sweep_reports_best_m():
    taps = TapSet(GRAIN_LFSR_TAPS, 128)
    cal = calibrate_filter_width(taps, 128, (108.0, 125.0, 118.0))
    assert [r.m for r in cal.rows] == [1, 2, 3, 4]
    assert cal.best_m == 1
    best_row = cal.rows[0]
    assert best_row.constant_log2 == pytest.approx(108.0, abs=0.01)
    assert best_row.cyclic_log2 == pytest.approx(118.0, abs=0.01)
    nfsr = calibrate_filter_width(TapSet(GRAIN_NFSR_TAPS, 128), 128, (114.0, 125.0, 122.0))
    assert nfsr.best_m == 1
