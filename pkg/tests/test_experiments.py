import itertools

import pytest

import latdiam.experiments as experiments
from latdiam.errors import InputError, VerificationFailure
from latdiam.experiments import (
    CSV_COLUMNS,
    SuiteSpec,
    _sample_pairs,
    _unrank_pair,
    report_to_csv_str,
    report_to_json_str,
    run_suite,
    suite_instances,
)
from latdiam.generators import SplitMix64

SMALL = SuiteSpec(
    seed=5,
    hypercube_dims=(1, 2),
    hexagon_dims=(1, 2),
    include_octagon=True,
    matching_graphs=("path2", "triangle"),
    random_count=5,
    random_budget=(5, 12),
    product_pairs=3,
    draws_per_instance=2,
    max_pairs_per_instance=25,
)


class TestSuiteSpec:
    def test_round_trip(self):
        again = SuiteSpec.from_json(SMALL.to_json())
        assert again == SMALL

    def test_desk_scale_limits(self):
        with pytest.raises(InputError):
            SuiteSpec(random_dims=(5,))
        with pytest.raises(InputError):
            SuiteSpec(random_ks=(9,))
        with pytest.raises(InputError):
            SuiteSpec(matching_graphs=("petersen",))

    def test_unknown_fields_rejected(self):
        with pytest.raises(InputError):
            SuiteSpec.from_json({"sed": 1})

    def test_instance_list_is_deterministic(self):
        a = suite_instances(SMALL)
        b = suite_instances(SMALL)
        assert a == b
        assert len(a) == 2 + 2 + 1 + 2 + 5


class TestPairSampling:
    def test_unrank_covers_all_pairs(self):
        count = 7
        total = count * (count - 1) // 2
        pairs = {_unrank_pair(r, count) for r in range(total)}
        assert pairs == set(itertools.combinations(range(count), 2))

    def test_small_sets_keep_all_pairs(self):
        assert len(_sample_pairs(6, 100, SplitMix64(1))) == 15

    def test_large_sets_are_sampled(self):
        pairs = _sample_pairs(40, 30, SplitMix64(1))
        assert len(pairs) == 30
        assert all(0 <= a < b < 40 for a, b in pairs)


class TestRunSuite:
    def test_report_is_deterministic(self):
        r1 = run_suite(SMALL)
        r2 = run_suite(SMALL)
        assert report_to_json_str(r1) == report_to_json_str(r2)
        assert report_to_csv_str(r1) == report_to_csv_str(r2)

    def test_summary_and_rows(self):
        report = run_suite(SMALL)
        assert report.summary["violations"] == 0
        assert report.summary["instances"] == len(report.rows) == 12
        assert report.summary["rng"] == "splitmix64"
        assert report.summary["product_pairs"] == 3
        for row in report.rows:
            assert row["diameter"] <= row["bound"] <= row["ko_bound"]
            assert row["vertices"] <= (row["k"] + 1) ** row["d"]
            assert row["walk_budget_ok"] and row["route_budget_ok"]

    def test_parallel_run_matches_serial(self):
        serial = run_suite(SMALL)
        parallel = run_suite(SMALL, jobs=2)
        assert report_to_json_str(serial) == report_to_json_str(parallel)

    def test_csv_has_fixed_columns(self):
        report = run_suite(SMALL)
        lines = report_to_csv_str(report).splitlines()
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 1 + len(report.rows)

    def test_bad_jobs(self):
        with pytest.raises(InputError):
            run_suite(SMALL, jobs=0)


class TestViolationHandling:
    def test_poisoned_bound_aborts_with_reproducer(self, monkeypatch):
        # Force an impossible bound so the diameter check must fail; the run
        # has to abort with the offending polytope attached.
        monkeypatch.setattr(experiments, "diameter_bound", lambda d, k: -1)
        with pytest.raises(VerificationFailure) as err:
            run_suite(SMALL)
        violations = err.value.dump["violations"]
        assert violations
        assert violations[0]["kind"] == "diameter_bound"
        assert "polytope" in violations[0]
