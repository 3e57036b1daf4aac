"""Extremal configurations and empirical sharp-constant sweeps.

Each theorem's proof supplies a parametrized dataset family on which the
bound is tight up to a vanishing term; driving the parameter to zero pins
the claimed best-possible constant. make_witness builds the exact proof
configuration, sharpness_sweep extracts the implied constant along a
decreasing schedule.

Square-root differences like sqrt(1+e)-1 are extracted through the
cancellation-free equivalent e/(1+sqrt(1+e)); the report-derived ratios are
used where they are exact (tests cross-check the two routes at moderate
parameter values).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bounds import (
    thm21_bound,
    thm22_bounds,
    thm24_bound,
    thm51_gap_bound,
    thm52_bounds,
    thm61_bound,
    thm62_bounds,
)
from .conditions import (
    Band,
    ConditionVerdict,
    Disk,
    check_disk,
    check_offset,
    check_transformed_band,
)
from .core import BoundReport, DEFAULT_POLICY, TolerancePolicy, WeightedDataset
from .errors import InvalidParams, UnknownTheorem

__all__ = [
    "EXPECTED_CONSTANTS",
    "THEOREM_IDS",
    "WitnessConfig",
    "SweepResult",
    "make_witness",
    "check_witness",
    "witness_report",
    "sharpness_sweep",
    "default_schedule",
]

EXPECTED_CONSTANTS = {
    "thm21": 2.0,
    "thm22": 1.0,
    "thm24": 0.5,
    "thm51": 1.0,
    "thm61": 0.5,
    "thm62": 0.25,
    "thm52": 0.25,
}

THEOREM_IDS = tuple(EXPECTED_CONSTANTS)


@dataclass(frozen=True)
class WitnessConfig:
    """A proof's extremal dataset plus the parameters the bound needs."""

    theorem_id: str
    params: dict[str, float]
    dataset: WeightedDataset
    expected_constant: float


@dataclass(frozen=True)
class SweepResult:
    """Constant estimates along a decreasing parameter schedule."""

    theorem_id: str
    schedule: tuple[float, ...]
    estimates: tuple[float, ...]
    expected_constant: float
    limit_gap: float

    def __post_init__(self):
        for lo, hi in zip(self.schedule[1:], self.schedule):
            if not lo < hi:
                raise InvalidParams("sweep schedule must be strictly decreasing")
        if not all(math.isfinite(e) for e in self.estimates):
            raise InvalidParams("sweep produced a non-finite estimate")


def _base(theorem_id: str) -> float:
    try:
        return EXPECTED_CONSTANTS[theorem_id]
    except KeyError:
        raise UnknownTheorem(f"unknown theorem id {theorem_id!r}") from None


def make_witness(theorem_id: str, eps: float | None = None, **params) -> WitnessConfig:
    """The proof's extremal configuration for a theorem.

    thm21 takes r (> 0); thm22/thm24 take alpha (default 1) and eps = r;
    the rest take eps. Admissible ranges follow the proofs: eps in (0, 1)
    where a strict hypothesis or positivity must survive, eps > 0 otherwise.
    """
    expected = _base(theorem_id)

    if theorem_id == "thm21":
        r = params.pop("r", eps if eps is not None else 1.0)
        if params:
            raise InvalidParams(f"unexpected parameters {sorted(params)}")
        if not r > 0.0:
            raise InvalidParams("thm21 witness needs r > 0")
        ds = WeightedDataset([0.0, 2.0 * r], [1.0, 1.0])
        return WitnessConfig(theorem_id, {"alpha": r, "r": r}, ds, expected)

    if theorem_id in ("thm22", "thm24"):
        alpha = params.pop("alpha", 1.0)
        r = params.pop("r", eps)
        if params:
            raise InvalidParams(f"unexpected parameters {sorted(params)}")
        if r is None:
            raise InvalidParams(f"{theorem_id} witness needs eps (= r)")
        if not (r > 0.0 and alpha > 0.0):
            raise InvalidParams(f"{theorem_id} witness needs alpha, r > 0")
        if theorem_id == "thm22" and not alpha > r:
            raise InvalidParams("thm22 witness needs alpha > r")
        ds = WeightedDataset([alpha + r, alpha - r], [1.0, 1.0])
        return WitnessConfig(theorem_id, {"alpha": alpha, "r": r}, ds, expected)

    if theorem_id in ("thm51", "thm61"):
        if params:
            raise InvalidParams(f"unexpected parameters {sorted(params)}")
        if eps is None:
            raise InvalidParams(f"{theorem_id} witness needs eps")
        hi = 1.0 if theorem_id == "thm51" else math.inf
        if not (0.0 < eps < hi):
            raise InvalidParams(f"{theorem_id} witness needs eps in (0, {hi})")
        s = math.sqrt(eps)
        # a and the auxiliary direction e = (1, -1) satisfy
        # sum p|a|^2 = sum p|e|^2 = 1 and sum p*a*e = 0 at p = (1/2, 1/2).
        ds = WeightedDataset([1.0, 1.0], [1.0 + s, 1.0 - s])
        return WitnessConfig(theorem_id, {"eps": eps, "r": s}, ds, expected)

    if theorem_id in ("thm62", "thm52"):
        if params:
            raise InvalidParams(f"unexpected parameters {sorted(params)}")
        if eps is None:
            raise InvalidParams(f"{theorem_id} witness needs eps")
        if not (0.0 < eps < 1.0):
            raise InvalidParams(f"{theorem_id} witness needs eps in (0, 1)")
        gamma = 1.0 - eps
        Gamma = 1.0 + eps
        if theorem_id == "thm62":
            ds = WeightedDataset([Gamma, gamma], [1.0, 1.0])
        else:
            ds = WeightedDataset([gamma, gamma], [1.0, 1.0])
        return WitnessConfig(
            theorem_id,
            {"eps": eps, "gamma": gamma, "Gamma": Gamma},
            ds,
            expected,
        )

    raise UnknownTheorem(f"unknown theorem id {theorem_id!r}")


def check_witness(
    cfg: WitnessConfig, policy: TolerancePolicy = DEFAULT_POLICY
) -> ConditionVerdict:
    """Run the hypothesis checker the witness's theorem relies on."""
    tid = cfg.theorem_id
    if tid in ("thm21", "thm22", "thm24"):
        return check_disk(
            cfg.dataset, Disk(cfg.params["alpha"], cfg.params["r"]), policy
        )
    if tid in ("thm51", "thm61"):
        return check_offset(
            cfg.dataset, cfg.params["r"], require_strict=(tid == "thm51"),
            policy=policy,
        )
    return check_transformed_band(
        cfg.dataset, Band(cfg.params["gamma"], cfg.params["Gamma"]), policy
    )


def witness_report(
    cfg: WitnessConfig, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Principal bound report for the witness's theorem."""
    tid = cfg.theorem_id
    ds = cfg.dataset
    if tid == "thm21":
        return thm21_bound(ds, Disk(cfg.params["alpha"], cfg.params["r"]), policy)
    if tid == "thm22":
        return thm22_bounds(ds, Disk(cfg.params["alpha"], cfg.params["r"]), policy)[0]
    if tid == "thm24":
        return thm24_bound(ds, Disk(cfg.params["alpha"], cfg.params["r"]), policy)
    if tid == "thm51":
        return thm51_gap_bound(ds, cfg.params["r"], policy)
    if tid == "thm61":
        return thm61_bound(ds, cfg.params["r"], policy)
    band = Band(cfg.params["gamma"], cfg.params["Gamma"])
    if tid == "thm62":
        return thm62_bounds(ds, band, policy)
    return thm52_bounds(ds, band, policy)


def _estimate(cfg: WitnessConfig, policy: TolerancePolicy) -> float:
    """Implied constant for one witness, computed without cancellation."""
    tid = cfg.theorem_id
    if tid == "thm21":
        rep = witness_report(cfg, policy)
        return rep.lhs / (rep.rhs_chain[0] / 2.0)
    if tid == "thm22":
        rep = witness_report(cfg, policy)
        return rep.lhs / rep.rhs_chain[0]
    if tid == "thm24":
        # (sqrt(r^2 + a^2) - a) * a / r^2 == a / (sqrt(r^2 + a^2) + a)
        a = cfg.params["alpha"]
        r = cfg.params["r"]
        return a / (math.sqrt(r * r + a * a) + a)
    if tid == "thm51":
        rep = witness_report(cfg, policy)
        return rep.rhs_chain[0] / rep.rhs_chain[1]
    if tid == "thm61":
        # (sqrt(1+eps) - 1) / eps == 1 / (1 + sqrt(1+eps))
        eps = cfg.params["eps"]
        return 1.0 / (1.0 + math.sqrt(1.0 + eps))
    if tid == "thm62":
        # (sqrt(1+eps^2) - 1) / (2 eps^2) == 1 / (2 (1 + sqrt(1+eps^2)))
        eps = cfg.params["eps"]
        return 1.0 / (2.0 * (1.0 + math.sqrt(1.0 + eps * eps)))
    # thm52: Gamma*gamma / (Gamma+gamma)^2 at Gamma = 1+eps, gamma = 1-eps
    g = cfg.params["gamma"]
    G = cfg.params["Gamma"]
    s = G + g
    return G * g / (s * s)


def default_schedule(theorem_id: str) -> tuple[float, ...]:
    """Default sweep schedule: geometric 1e-1 .. 1e-6 (single point for thm21)."""
    _base(theorem_id)
    if theorem_id == "thm21":
        return (1.0,)
    return tuple(10.0 ** (-k) for k in range(1, 7))


def sharpness_sweep(
    theorem_id: str,
    schedule: tuple[float, ...] | None = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> SweepResult:
    """Estimate the sharp constant along a strictly decreasing schedule.

    Every witness is constructed and its hypothesis re-checked before the
    constant is extracted; a failing witness hypothesis indicates a bug.
    """
    expected = _base(theorem_id)
    if schedule is None:
        schedule = default_schedule(theorem_id)
    schedule = tuple(float(v) for v in schedule)
    if not schedule:
        raise InvalidParams("sweep schedule must be nonempty")
    estimates = []
    for eps in schedule:
        cfg = make_witness(theorem_id, eps=eps)
        verdict = check_witness(cfg, policy)
        if verdict.worst_margin < -1e-12:
            raise AssertionError(
                f"witness hypothesis violated for {theorem_id} at eps={eps}: "
                f"margin={verdict.worst_margin}"
            )
        estimates.append(_estimate(cfg, policy))
    return SweepResult(
        theorem_id=theorem_id,
        schedule=schedule,
        estimates=tuple(estimates),
        expected_constant=expected,
        limit_gap=abs(estimates[-1] - expected),
    )
