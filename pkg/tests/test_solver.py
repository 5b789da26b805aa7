"""Alternating-solve behavior: reductions, determinism, and diagnostics."""

from dataclasses import replace

import numpy as np
import pytest

from fdmimo import (PfSystem, SinrTargets, SystemConfig, ZERO_POWER_DBM,
                    build_canceller, converged, dbm_to_mw, draw_channel_set,
                    mw_to_dbm, pf_solve, select_taps, solve, trial_rng)


def make_trial(cfg, master_seed, trial, tx_mode="mrt", rate=6.0):
    rng = trial_rng(master_seed, trial, 0)
    ch = draw_channel_set(cfg, rng)
    c1 = build_canceller(ch.h_11, select_taps(ch.h_11, cfg.n_tap),
                         cfg.amp_imp_db, cfg.phase_imp_deg, rng)
    c2 = build_canceller(ch.h_22, select_taps(ch.h_22, cfg.n_tap),
                         cfg.amp_imp_db, cfg.phase_imp_deg, rng)
    return solve(cfg, ch, (c1, c2), SinrTargets.from_rate(rate),
                 trial_rng(master_seed, trial, 1), tx_mode)


class TestConverged:
    def test_equal_vectors(self):
        assert converged(np.array([1.0, 1.0]), np.array([1.0, 1.0]), 1e-3)

    def test_large_change(self):
        assert not converged(np.array([1.0, 1.0]), np.array([2.0, 2.0]), 1e-3)

    def test_below_threshold(self):
        assert converged(np.array([1.0, 1.0]), np.array([1.0 + 1e-9, 1.0]), 1e-6)

    def test_zero_previous_guarded(self):
        assert converged(np.zeros(2), np.zeros(2), 1e-6)
        assert not converged(np.zeros(2), np.array([1.0, 0.0]), 1e-6)

    def test_rejects_non_positive_tol(self):
        with pytest.raises(ValueError):
            converged(np.ones(2), np.ones(2), 0.0)


class TestPerfectCancellation:
    def test_decoupled_links_hit_targets(self):
        # full tap mask with perfect hardware: the SI term vanishes entirely
        cfg = SystemConfig(n_tap=16, amp_imp_db=0.0, phase_imp_deg=0.0)
        res = make_trial(cfg, 31, 0, rate=8.0)
        assert res.converged and res.feasible
        assert not res.power_outage
        targets = np.array([255.0, 255.0])
        np.testing.assert_allclose(res.achieved_sinr, targets, rtol=1e-6)
        np.testing.assert_array_equal(res.residual_si_dbm,
                                      [ZERO_POWER_DBM, ZERO_POWER_DBM])


class TestScalarReduction:
    def test_matches_direct_power_solve(self):
        # 1x1 antennas with no canceller: every beamformer is a unit phase,
        # so the alternation collapses to the closed-form power solve
        cfg = SystemConfig(M=1, N=1, n_tap=0, pl_si_db=170.0, max_iter=50)
        rate = 2.0
        res = make_trial(cfg, 77, 3, rate=rate)
        assert res.converged and res.feasible

        rng = trial_rng(77, 3, 0)
        ch = draw_channel_set(cfg, rng)
        gamma = 2.0 ** rate - 1.0
        s1 = abs(ch.h_21[0, 0]) ** 2
        s2 = abs(ch.h_12[0, 0]) ** 2
        i1 = abs(ch.h_11[0, 0]) ** 2
        i2 = abs(ch.h_22[0, 0]) ** 2
        sys_ = PfSystem(gamma=np.array([[0.0, gamma], [gamma, 0.0]]),
                        m_diag=np.diag([i1 / s1, i2 / s2]),
                        m_vec=np.array([1.0 / s1, 1.0 / s2]))
        direct = pf_solve(sys_, cfg.sigma2_mw)
        assert direct.feasible
        np.testing.assert_allclose(res.state.p, direct.p, rtol=1e-12)
        np.testing.assert_allclose(res.achieved_sinr, [gamma, gamma], rtol=1e-12)


class TestDeterminism:
    def test_identical_runs_bit_identical(self):
        cfg = SystemConfig()
        a = make_trial(cfg, 5, 9, rate=8.0)
        b = make_trial(cfg, 5, 9, rate=8.0)
        assert a.iterations == b.iterations
        assert a.converged == b.converged
        np.testing.assert_array_equal(a.state.p, b.state.p)
        np.testing.assert_array_equal(a.state.u_1, b.state.u_1)
        np.testing.assert_array_equal(a.achieved_sinr, b.achieved_sinr)

    def test_different_seeds_differ(self):
        cfg = SystemConfig()
        a = make_trial(cfg, 5, 9, rate=8.0)
        b = make_trial(cfg, 6, 9, rate=8.0)
        assert not np.array_equal(a.state.p, b.state.p)


class TestConstraintTightness:
    @pytest.mark.parametrize("tx_mode", ["mrt", "zf_rq", "rq_rq"])
    def test_converged_runs_meet_targets_exactly(self, tx_mode):
        cfg = SystemConfig()
        targets = np.array([63.0, 63.0])  # rate 6
        checked = 0
        for trial in range(30):
            res = make_trial(cfg, 13, trial, tx_mode=tx_mode, rate=6.0)
            if res.converged and res.feasible:
                np.testing.assert_allclose(res.achieved_sinr, targets, rtol=1e-6)
                checked += 1
        assert checked >= 25


class TestZfNullingInSolver:
    def test_residual_below_floor_on_converged_runs(self):
        cfg = SystemConfig()
        checked = 0
        for trial in range(20):
            res = make_trial(cfg, 17, trial, tx_mode="zf_rq", rate=8.0)
            if res.converged:
                assert np.all(res.residual_si_dbm < -300.0)
                checked += 1
        assert checked >= 18


class TestResidualMonotonicInTaps:
    def test_mean_residual_ordering(self):
        # more taps -> (weakly) less residual SI after beamforming
        means = {}
        for n_tap in (0, 8, 16):
            cfg = SystemConfig(n_tap=n_tap)
            acc = []
            for trial in range(200):
                res = make_trial(cfg, 555, trial, rate=6.0)
                acc.extend(dbm_to_mw(x) for x in res.residual_si_dbm)
            means[n_tap] = mw_to_dbm(float(np.mean(acc)))
        assert means[16] <= means[8] <= means[0]


class TestInfeasiblePath:
    def test_persistent_infeasibility_aborts(self):
        # scalar link with SI as strong as the signal is hopeless at rate 8
        cfg = SystemConfig(M=1, N=1, n_tap=0, pl_si_db=0.0)
        res = make_trial(cfg, 3, 0, rate=8.0)
        assert not res.feasible
        assert not res.converged
        assert res.iterations == 5  # the infeasible-streak limit
        assert np.all(res.state.p <= cfg.p_max_mw + 1e-12)


class TestDiagnostics:
    def test_power_outage_flag(self):
        cfg = SystemConfig(p_max_dbm=0.0)  # rate 8 needs ~100x more than 1 mW
        res = make_trial(cfg, 11, 0, rate=8.0)
        assert res.converged
        assert res.power_outage == bool(min(res.state.p) > cfg.p_max_mw)
        assert res.power_outage

    def test_huge_cap_never_binds(self):
        cfg = SystemConfig(p_max_dbm=1e9)
        res = make_trial(cfg, 11, 1, rate=4.0)
        assert not res.power_outage
        assert res.converged

    def test_wall_time_positive(self):
        res = make_trial(SystemConfig(), 11, 2, rate=2.0)
        assert res.wall_time_s > 0.0

    def test_iterations_within_cap(self):
        cfg = SystemConfig(max_iter=7)
        res = make_trial(cfg, 11, 3, rate=8.0)
        assert res.iterations <= 7

    def test_unknown_mode_rejected(self):
        with pytest.raises(ValueError, match="tx_mode"):
            make_trial(SystemConfig(), 11, 4, tx_mode="wishful")
