"""
Tests for the duality verdicts, the Duerr harness, UQSD feasibility and the
Bagan comparison table.
"""

import math

import numpy as np
import pytest

from helpers import two_path_state
from npath_duality.duality_suite import (
    DualityVerdict,
    DurrReport,
    bagan_comparison,
    check_additive_duality,
    check_dq_identity,
    check_mixed_duality,
    check_pure_duality,
    durr_criteria,
    ensemble_distinguishability_DQ,
    identifiable_paths,
    random_corpus,
    uqsd_feasible,
)
from npath_duality.errors import PreconditionError, UnknownFamilyError
from npath_duality.joint_state import DetectorSet, Ensemble, PathAmplitudes, PureJointState
from npath_duality.measures import distinguishability_D, full_report
from npath_duality.scenarios import (
    degenerate_state,
    figure1_state,
    figure2_state,
    phase_flipped,
    random_ensemble,
    theta_grid,
)


class TestPureDuality:

    def test_figure1_grid_saturates(self):
        for theta in theta_grid():
            assert check_pure_duality(figure1_state(theta)).saturated

    def test_orthogonal_detectors(self, orthogonal_state):
        verdict = check_pure_duality(orthogonal_state)
        assert verdict.sum == 1.0
        assert verdict.detail.dist_D == 1.0
        assert verdict.detail.coherence_C == 0.0

    def test_random_corpus_saturates(self):
        for state in random_corpus(200, seed=3):
            verdict = check_pure_duality(state)
            assert verdict.saturated, verdict.sum

    def test_rejects_non_positive_tolerance(self, orthogonal_state):
        with pytest.raises(PreconditionError):
            check_pure_duality(orthogonal_state, tol=0.0)

    def test_verdict_flag_must_match_sum(self, orthogonal_state):
        report = full_report(orthogonal_state)
        with pytest.raises(ValueError):
            DualityVerdict(sum=0.5, saturated=True, tolerance=1e-12, detail=report)

    def test_verdict_to_dict_nests_report(self, orthogonal_state):
        data = check_pure_duality(orthogonal_state).to_dict()
        assert data["saturated"] is True
        assert data["detail"]["dist_D"] == 1.0


class TestMixedDuality:

    def test_single_component_reduces_to_pure(self):
        state = figure1_state(0.6)
        verdict = check_mixed_duality(Ensemble(((1.0, state),)))
        assert verdict.sum == pytest.approx(1.0, abs=1e-12)
        assert verdict.saturated

    def test_orthogonal_components(self):
        a = PureJointState(PathAmplitudes.normalized([1.0, 1.0, 1.0]), DetectorSet(np.eye(3)))
        b = PureJointState(PathAmplitudes.normalized([1.0, 2.0, 0.5j]), DetectorSet(np.eye(3)))
        verdict = check_mixed_duality(Ensemble.normalized([0.3, 0.7], [a, b]))
        assert verdict.detail.coherence_C == 0.0
        assert verdict.detail.dist_DQ == pytest.approx(1.0, abs=1e-15)
        assert verdict.sum == pytest.approx(1.0, abs=1e-12)

    def test_figure1_mixture_is_bounded(self):
        ensemble = Ensemble.normalized([1.0, 1.0], [figure1_state(0.0), figure1_state(math.pi / 4)])
        verdict = check_mixed_duality(ensemble)
        assert verdict.bounded
        assert verdict.sum <= 1.0 + 1e-12

    def test_phase_flipped_mixture_is_strict(self):
        state = figure1_state(math.pi / 4)
        ensemble = Ensemble.normalized([1.0, 1.0], [state, phase_flipped(state, 1)])
        verdict = check_mixed_duality(ensemble)
        assert verdict.detail.coherence_C == pytest.approx(0.0, abs=1e-15)
        assert verdict.sum == pytest.approx(8.0 / 9.0, abs=1e-12)
        assert verdict.sum < 1.0 - 1e-9
        assert not verdict.saturated
        assert verdict.bounded

    def test_weighted_dq(self):
        ensemble = Ensemble.normalized([1.0, 3.0], [figure1_state(0.0), figure1_state(math.pi / 4)])
        assert ensemble_distinguishability_DQ(ensemble) == pytest.approx(0.25 + 0.75 * 2 / 3, abs=1e-12)

    @pytest.mark.property
    def test_random_ensembles_bounded(self, rng):
        for _ in range(200):
            ensemble = random_ensemble(int(rng.integers(2, 6)), int(rng.integers(2, 6)), rng)
            assert check_mixed_duality(ensemble).bounded


class TestIdentities:

    def test_dq_identity_orthogonal(self, orthogonal_state):
        assert check_dq_identity(orthogonal_state)

    def test_dq_identity_figure2(self):
        assert check_dq_identity(figure2_state(math.pi / 8))

    def test_dq_identity_random(self):
        assert all(check_dq_identity(s) for s in random_corpus(200, seed=4))

    def test_additive_pure(self):
        assert check_additive_duality(figure1_state(0.9))
        assert all(check_additive_duality(s) for s in random_corpus(50, seed=5))

    def test_additive_ensemble(self, rng):
        for _ in range(50):
            assert check_additive_duality(random_ensemble(3, 3, rng))


class TestUQSD:

    def test_orthonormal(self):
        assert uqsd_feasible(DetectorSet(np.eye(3)))

    def test_degenerate(self):
        assert not uqsd_feasible(degenerate_state(4).dets)

    def test_figure2_pi_over_6(self):
        assert uqsd_feasible(figure2_state(math.pi / 6).dets)

    def test_figure1_loses_feasibility_at_pi_over_4(self):
        assert uqsd_feasible(figure1_state(math.pi / 6).dets)
        assert not uqsd_feasible(figure1_state(math.pi / 4).dets)

    def test_identifiable_paths_degenerate(self):
        # only a_1 .. a_{n-3} lie outside the span of the others
        assert identifiable_paths(degenerate_state(5).dets) == [0, 1]

    def test_identifiable_paths_independent_set(self):
        assert identifiable_paths(figure2_state(0.3).dets) == [0, 1, 2]


class TestDurr:

    @pytest.mark.parametrize("n", [2, 3])
    def test_all_criteria_pass(self, n):
        report = durr_criteria(n, probes=200, seed=42)
        assert report.all_ok, report.to_dict()
        assert report.probe_count > 0

    def test_seed_deterministic(self):
        assert durr_criteria(3, probes=100, seed=9) == durr_criteria(3, probes=100, seed=9)

    def test_two_paths_monotone_in_overlap(self):
        values = [distinguishability_D(two_path_state(g)) for g in np.linspace(0.0, 0.99, 50)]
        assert all(b < a for a, b in zip(values, values[1:]))

    def test_certain_path_with_orthogonal_detectors(self):
        state = PureJointState(PathAmplitudes([1.0, 0.0, 0.0]), DetectorSet(np.eye(3)))
        assert distinguishability_D(state) == 1.0

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            durr_criteria(1)
        with pytest.raises(PreconditionError):
            durr_criteria(3, probes=0)

    def test_report_requires_probes(self):
        with pytest.raises(ValueError):
            DurrReport(True, True, True, True, probe_count=0)


class TestBaganComparison:

    def test_figure1_dominance(self):
        table = bagan_comparison("figure1", theta_grid())
        assert table.d2_dominates()
        assert table.min_gap >= -1e-12

    def test_figure1_gap_at_pi_over_4(self):
        table = bagan_comparison("figure1", [math.pi / 4])
        row = table.rows[0]
        assert row.D2 - row.DB2_bound == pytest.approx(4.0 / 9.0, abs=1e-12)

    def test_figure1_equality_only_where_sin_2theta_vanishes(self):
        table = bagan_comparison("figure1", theta_grid())
        for row in table.rows:
            gap = row.D2 - row.DB2_bound
            if abs(math.sin(2 * row.theta)) > 1e-6:
                assert gap > 0.0
            else:
                assert gap == pytest.approx(0.0, abs=1e-12)

    def test_figure1_complementary(self):
        assert bagan_comparison("figure1", theta_grid()).complementary()

    def test_figure2_bound_tracks_coherence(self):
        table = bagan_comparison("figure2", theta_grid())
        assert table.bound_tracks_coherence(0.0, math.pi / 4)

    def test_figure2_at_pi_over_4(self):
        row = bagan_comparison("figure2", [math.pi / 4]).rows[0]
        assert row.C2 == pytest.approx(16 / 81, abs=1e-12)
        assert row.D2 == pytest.approx(65 / 81, abs=1e-12)

    def test_summary_and_dict(self):
        table = bagan_comparison("2", theta_grid(0.0, 1.0, 5))
        summary = table.summary()
        assert summary["family"] == "figure2"
        assert summary["points"] == 5
        data = table.to_dict()
        assert len(data["rows"]) == 5
        assert len(data["c2_increments"]) == 4

    def test_unknown_family(self):
        with pytest.raises(UnknownFamilyError):
            bagan_comparison("random", [0.0, 0.1])
