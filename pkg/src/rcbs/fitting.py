"""Tightest hypothesis parameters for a dataset.

The disk is the smallest enclosing disk of the ratio points: every right
side of the regular disk bounds grows with r at fixed center, so the minimal
disk is the canonical (near-optimal, not jointly optimal) choice. The band
is derived from that disk with direction alpha/|alpha| (the bounds only see
gamma+Gamma and |Gamma-gamma|, so the direction is fixed for determinism).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .backend import kernels
from .conditions import Band, Disk, RealBandParams, check_real_band
from .core import (
    DEFAULT_POLICY,
    TolerancePolicy,
    WeightedDataset,
    cabs,
    ratio_points,
)
from .errors import EmptyInput, InvalidParams, ZeroDenominator

__all__ = [
    "Applicability",
    "FitResult",
    "min_enclosing_disk",
    "fit_band",
    "fit_offset_radius",
    "fit",
]


def min_enclosing_disk(points: Sequence[complex]) -> Disk:
    """Unique smallest closed disk containing all points.

    Fixed-seed randomized incremental algorithm; deterministic for a given
    input order.
    """
    if len(points) == 0:
        raise EmptyInput("min_enclosing_disk needs at least one point")
    xs = np.array([z.real for z in points], dtype=np.float64)
    ys = np.array([z.imag for z in points], dtype=np.float64)
    cx, cy, r = kernels.enclosing_disk(xs, ys)
    return Disk(complex(cx, cy), r)


def fit_band(d: Disk) -> Band:
    """Band endpoints reproducing the disk: gamma = alpha - r*u, Gamma = alpha + r*u.

    u = alpha/|alpha| (or 1 for alpha = 0). Re(Gamma*conj(gamma)) equals
    |alpha|^2 - r^2 for any unit u. Requires r > 0, otherwise the endpoints
    would coincide.
    """
    if not (d.r > 0.0):
        raise InvalidParams("fit_band needs a positive radius")
    am = cabs(d.alpha)
    if am == 0.0:
        u = complex(1.0, 0.0)
    else:
        u = complex(d.alpha.real / am, d.alpha.imag / am)
    step = complex(d.r * u.real, d.r * u.imag)
    return Band(gamma=d.alpha - step, Gamma=d.alpha + step)


def fit_offset_radius(ds: WeightedDataset) -> float:
    """Minimal admissible squared offset radius sum p|b - conj(a)|^2."""
    return kernels.offset_sum(ds.p, ds.a_re, ds.a_im, ds.b_re, ds.b_im)


@dataclass(frozen=True)
class Applicability:
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class FitResult:
    """Fitted hypothesis parameters plus per-family applicability flags."""

    disk: Optional[Disk]
    band: Optional[Band]
    real_band: Optional[RealBandParams]
    offset_r2: float
    applicability: dict[str, Applicability] = field(default_factory=dict)


def fit(ds: WeightedDataset, policy: TolerancePolicy = DEFAULT_POLICY) -> FitResult:
    """Fit all hypothesis families and record which bounds are evaluable."""
    flags: dict[str, Applicability] = {}

    disk: Optional[Disk] = None
    disk_reason = ""
    try:
        disk = min_enclosing_disk(ratio_points(ds))
    except ZeroDenominator as exc:
        disk_reason = str(exc)

    band: Optional[Band] = None
    if disk is None:
        band_reason = disk_reason
    elif disk.r > 0.0:
        band = fit_band(disk)
        band_reason = ""
    else:
        band_reason = "all ratio points coincide: band endpoints would be equal"

    ok = disk is not None
    flags["thm21"] = Applicability(ok, disk_reason)
    flags["thm22"] = Applicability(ok, disk_reason)
    if not ok:
        flags["thm24"] = Applicability(False, disk_reason)
    elif not (disk.r > 0.0):
        flags["thm24"] = Applicability(False, "zero fitted radius (needs r > 0)")
    elif cabs(disk.alpha) <= policy.strict_threshold(disk.r):
        flags["thm24"] = Applicability(False, "fitted center too close to 0")
    else:
        flags["thm24"] = Applicability(True)

    ok = band is not None
    flags["thm31"] = Applicability(ok, band_reason)
    if not ok:
        flags["thm41"] = Applicability(False, band_reason)
        flags["thm52"] = Applicability(False, band_reason)
        flags["thm62"] = Applicability(False, band_reason)
    else:
        scale = max(cabs(band.Gamma), cabs(band.gamma))
        if cabs(band.Gamma + band.gamma) <= policy.strict_threshold(scale):
            reason = "Gamma = -gamma for the fitted band (center at 0)"
            flags["thm41"] = Applicability(False, reason)
            flags["thm62"] = Applicability(False, reason)
        else:
            flags["thm41"] = Applicability(True)
            flags["thm62"] = Applicability(True)
        if band.re_gg <= policy.strict_threshold(
            cabs(band.Gamma) * cabs(band.gamma)
        ):
            flags["thm52"] = Applicability(
                False, "Re(Gamma*conj(gamma)) not strictly positive"
            )
        else:
            flags["thm52"] = Applicability(True)

    offset_r2 = fit_offset_radius(ds)
    if offset_r2 > 0.0:
        # thm51's strict part r^2 < s_aa may still fail; that shows up as
        # hypothesis_ok=False on the report, not as inapplicability.
        flags["thm51"] = Applicability(True)
        flags["thm61"] = Applicability(True)
    else:
        reason = "offset radius is zero (b equals conj(a) exactly)"
        flags["thm51"] = Applicability(False, reason)
        flags["thm61"] = Applicability(False, reason)

    real_band = check_real_band(ds)
    flags["classical"] = Applicability(
        real_band is not None,
        "" if real_band is not None else "data not real strictly positive",
    )

    return FitResult(
        disk=disk,
        band=band,
        real_band=real_band,
        offset_r2=offset_r2,
        applicability=flags,
    )
