"""Extremal witnesses and sharp-constant sweeps."""

import math

import pytest

from rcbs import (
    EXPECTED_CONSTANTS,
    THEOREM_IDS,
    InvalidParams,
    UnknownTheorem,
    check_witness,
    default_schedule,
    make_witness,
    sharpness_sweep,
    witness_report,
)


class TestMakeWitness:
    def test_thm21_configuration(self):
        cfg = make_witness("thm21", r=1.0)
        assert cfg.dataset.a == (0 + 0j, 2 + 0j)
        assert cfg.dataset.b == (1 + 0j, 1 + 0j)
        assert cfg.params == {"alpha": 1.0, "r": 1.0}
        rep = witness_report(cfg)
        assert rep.slack == 0.0

    def test_thm51_configuration(self):
        cfg = make_witness("thm51", eps=0.25)
        assert cfg.dataset.b == (1.5 + 0j, 0.5 + 0j)
        rep = witness_report(cfg)
        assert rep.rhs_chain[0] == pytest.approx(0.25, abs=1e-15)  # gap_re exactly

    def test_thm62_configuration(self):
        cfg = make_witness("thm62", eps=0.5)
        assert cfg.dataset.a == (1.5 + 0j, 0.5 + 0j)
        assert cfg.dataset.b == (1 + 0j, 1 + 0j)
        verdict = check_witness(cfg)
        assert verdict.worst_margin == pytest.approx(0.0, abs=1e-15)

    def test_thm22_needs_alpha_above_r(self):
        with pytest.raises(InvalidParams):
            make_witness("thm22", eps=1.5)

    def test_eps_range_validation(self):
        with pytest.raises(InvalidParams):
            make_witness("thm51", eps=1.0)
        with pytest.raises(InvalidParams):
            make_witness("thm52", eps=0.0)
        with pytest.raises(InvalidParams):
            make_witness("thm21", r=-1.0)
        with pytest.raises(InvalidParams):
            make_witness("thm61")

    def test_unknown_theorem(self):
        with pytest.raises(UnknownTheorem):
            make_witness("nosuch", eps=0.1)

    def test_expected_constants(self):
        assert EXPECTED_CONSTANTS == {
            "thm21": 2.0,
            "thm22": 1.0,
            "thm24": 0.5,
            "thm51": 1.0,
            "thm61": 0.5,
            "thm62": 0.25,
            "thm52": 0.25,
        }


class TestHypothesisExactness:
    @pytest.mark.parametrize("tid", THEOREM_IDS)
    def test_witness_hypothesis_margin(self, tid):
        for eps in (0.5, 0.1, 1e-3, 1e-6):
            cfg = make_witness(tid, eps=eps)
            verdict = check_witness(cfg)
            assert verdict.holds
            assert verdict.worst_margin >= -1e-12


class TestSweeps:
    def test_thm21_exact(self):
        res = sharpness_sweep("thm21")
        assert res.schedule == (1.0,)
        assert res.estimates == (2.0,)
        assert res.limit_gap == 0.0

    @pytest.mark.parametrize("tid", THEOREM_IDS)
    def test_convergence(self, tid):
        res = sharpness_sweep(tid)
        assert res.limit_gap < 1e-3
        # approach from the feasible side: never past the claimed constant
        for est in res.estimates:
            assert est <= res.expected_constant + 1e-9
        # monotone in eps (nondecreasing as eps decreases)
        for prev, nxt in zip(res.estimates, res.estimates[1:]):
            assert nxt >= prev - 1e-15

    def test_thm61_closed_form(self):
        res = sharpness_sweep("thm61")
        for eps, est in zip(res.schedule, res.estimates):
            assert est == pytest.approx(1.0 / (1.0 + math.sqrt(1.0 + eps)), abs=1e-15)
        assert abs(res.estimates[-1] - 0.5) < 1e-6

    def test_thm51_closed_form(self):
        res = sharpness_sweep("thm51")
        for eps, est in zip(res.schedule, res.estimates):
            assert est == pytest.approx(1.0 / (1.0 + eps), rel=1e-9)
        assert abs(res.estimates[-1] - 1.0) < 1.1e-6

    def test_schedule_validation(self):
        with pytest.raises(InvalidParams):
            sharpness_sweep("thm61", (1e-3, 1e-2))
        with pytest.raises(InvalidParams):
            sharpness_sweep("thm61", ())
        with pytest.raises(UnknownTheorem):
            sharpness_sweep("nosuch")

    def test_default_schedule(self):
        assert default_schedule("thm61") == tuple(10.0 ** (-k) for k in range(1, 7))
        assert default_schedule("thm21") == (1.0,)


class TestEstimateCrossValidation:
    """Closed-form extractions agree with report-derived ratios at moderate eps."""

    @pytest.mark.parametrize("eps", (0.1, 0.01))
    def test_thm24(self, eps):
        cfg = make_witness("thm24", eps=eps)
        rep = witness_report(cfg)
        est_report = 0.5 * rep.rhs_chain[0] / rep.rhs_chain[1]
        est_closed = 1.0 / (1.0 + math.sqrt(1.0 + eps * eps))
        assert est_report == pytest.approx(est_closed, rel=1e-9)

    @pytest.mark.parametrize("eps", (0.1, 0.01))
    def test_thm61(self, eps):
        cfg = make_witness("thm61", eps=eps)
        rep = witness_report(cfg)
        est_report = 0.5 * rep.rhs_chain[1] / rep.rhs_chain[2]
        est_closed = 1.0 / (1.0 + math.sqrt(1.0 + eps))
        assert est_report == pytest.approx(est_closed, rel=1e-9)

    @pytest.mark.parametrize("eps", (0.1, 0.01))
    def test_thm62(self, eps):
        cfg = make_witness("thm62", eps=eps)
        rep = witness_report(cfg)
        est_report = 0.25 * rep.rhs_chain[1] / rep.rhs_chain[2]
        est_closed = 1.0 / (2.0 * (1.0 + math.sqrt(1.0 + eps * eps)))
        assert est_report == pytest.approx(est_closed, rel=1e-9)

    @pytest.mark.parametrize("eps", (0.1, 0.01))
    def test_thm52(self, eps):
        cfg = make_witness("thm52", eps=eps)
        rep = witness_report(cfg)
        est_report = 0.25 * rep.lhs / rep.rhs_chain[0]
        est_closed = (1.0 - eps * eps) / 4.0
        assert est_report == pytest.approx(est_closed, rel=1e-9)
