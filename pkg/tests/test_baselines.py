import math

import numpy as np
import pytest

from colsel import (
    BadArgumentsError,
    GeneratorSpec,
    first_r_select,
    generate,
    random_subset_select,
    run_selection,
)
from colsel.baselines import condition_number


class TestRandomSubsetSelect:
    def test_identity_extremes_are_unit(self):
        results = random_subset_select(np.eye(12), 4, seed=0, trials=8)
        assert len(results) == 8
        for res in results:
            assert res.extremes[0] == pytest.approx(1.0, abs=1e-12)
            assert res.extremes[1] == pytest.approx(1.0, abs=1e-12)
            assert res.condition_number == pytest.approx(1.0, abs=1e-12)

    def test_duplicate_pair_eventually_degenerates(self):
        x = generate(
            GeneratorSpec("duplicated_columns", 8, 6, seed=1, params={"distinct": 5})
        )
        results = random_subset_select(x, 2, seed=3, trials=60)
        hit = [r for r in results if r.selected == [0, 5]]
        assert hit, "enough trials should draw the duplicated pair"
        assert min(r.extremes[0] for r in hit) == pytest.approx(0.0, abs=1e-12)

    def test_subsets_are_valid_and_deterministic(self):
        x = generate(GeneratorSpec("random_sphere", 10, 30, seed=2))
        a = random_subset_select(x, 5, seed=9, trials=10)
        b = random_subset_select(x, 5, seed=9, trials=10)
        assert [r.selected for r in a] == [r.selected for r in b]
        for res in a:
            assert len(set(res.selected)) == 5
            assert all(0 <= i < 30 for i in res.selected)
            assert res.selected == sorted(res.selected)

    def test_extremes_straddle_one(self):
        # trace R over R eigenvalues with unit diagonal forces straddling
        x = generate(GeneratorSpec("random_sphere", 15, 40, seed=5))
        for res in random_subset_select(x, 6, seed=1, trials=20):
            assert res.extremes[1] >= 1.0 - 1e-10
            assert res.extremes[0] <= 1.0 + 1e-10

    def test_argument_validation(self):
        x = np.eye(4)
        with pytest.raises(BadArgumentsError):
            random_subset_select(x, 5, seed=0, trials=1)
        with pytest.raises(BadArgumentsError):
            random_subset_select(x, 2, seed=0, trials=0)
        with pytest.raises(BadArgumentsError):
            random_subset_select(x, 0, seed=0, trials=1)


class TestFirstR:
    def test_takes_leading_columns(self):
        res = first_r_select(np.eye(9), 3)
        assert res.selected == [0, 1, 2]
        assert res.method == "first_R"
        assert res.condition_number == pytest.approx(1.0, abs=1e-12)

    def test_budget_validated(self):
        with pytest.raises(BadArgumentsError):
            first_r_select(np.eye(3), 4)


def test_condition_number_infinite_marker():
    assert condition_number(0.0, 2.0) == math.inf
    assert condition_number(-1e-18, 2.0) == math.inf
    assert condition_number(0.5, 2.0) == pytest.approx(4.0)


def test_greedy_beats_random_median():
    # comparison statistic, not a theorem: the greedy extremes should be no
    # worse than the median uniform draw on a generic instance
    x = generate(GeneratorSpec("random_sphere", 50, 200, seed=42))
    report = run_selection(x, 0.75)
    greedy_cond = condition_number(*report.final_extremes)
    results = random_subset_select(x, report.params.budget, seed=0, trials=100)
    median_cond = float(np.median([r.condition_number for r in results]))
    assert greedy_cond <= median_cond + 1e-9
