"""Hypothesis checkers for the containment and positivity conditions.

Every checker returns a ConditionVerdict with per-term signed margins
(nonnegative = satisfied) so a caller can see which index breaks a
hypothesis. Ratio points are always a_k / conj(b_k); the printed variant
that divides by b_k instead of conj(b_k) is not implemented (for real data
the two coincide, and only this reading makes the band/disk equivalence an
identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .backend import kernels
from .core import (
    DEFAULT_POLICY,
    TolerancePolicy,
    WeightedDataset,
    aggregates,
    cabs,
    cabs2,
)
from .errors import EquivalenceMismatch, InvalidParams

__all__ = [
    "Disk",
    "Band",
    "RealBandParams",
    "ConditionVerdict",
    "check_disk",
    "check_band",
    "check_real_band",
    "check_offset",
    "check_transformed_band",
    "band_forms",
    "transformed_forms",
]


@dataclass(frozen=True)
class Disk:
    """Closed disk {z : |z - alpha| <= r}."""

    alpha: complex
    r: float

    def __post_init__(self):
        if not (self.r >= 0.0):
            raise InvalidParams(f"disk radius must be nonnegative, got {self.r}")

    def is_regular(self, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
        """Whether the disk avoids the origin strictly: |alpha| > r."""
        am = cabs(self.alpha)
        return am - self.r > policy.strict_threshold(max(am, self.r))


@dataclass(frozen=True)
class Band:
    """Endpoint pair (gamma, Gamma) of the band condition.

    The band is the disk with center (gamma+Gamma)/2 and radius
    |Gamma-gamma|/2; re_gg = Re(Gamma * conj(gamma)) equals
    |center|^2 - radius^2 and controls which bound family applies.
    """

    gamma: complex
    Gamma: complex

    def __post_init__(self):
        if self.Gamma == self.gamma:
            raise InvalidParams("band endpoints must differ (Gamma != gamma)")

    @property
    def center(self) -> complex:
        return (self.gamma + self.Gamma) / 2.0

    @property
    def radius(self) -> float:
        return cabs(self.Gamma - self.gamma) / 2.0

    @property
    def re_gg(self) -> float:
        return (
            self.Gamma.real * self.gamma.real + self.Gamma.imag * self.gamma.imag
        )

    @property
    def sum_nonzero(self) -> bool:
        """Gamma != -gamma, required by the Shisha-Mond type bounds."""
        return self.Gamma != -self.gamma

    def disk(self) -> Disk:
        return Disk(self.center, self.radius)


@dataclass(frozen=True)
class RealBandParams:
    """Ratio bounds 0 < m <= a_k/b_k <= M, optionally with componentwise boxes."""

    m: float
    M: float
    m1: Optional[float] = None
    M1: Optional[float] = None
    m2: Optional[float] = None
    M2: Optional[float] = None

    def __post_init__(self):
        if not (0.0 < self.m <= self.M):
            raise InvalidParams(f"need 0 < m <= M, got m={self.m}, M={self.M}")
        for lo, hi, lo_name in ((self.m1, self.M1, "m1"), (self.m2, self.M2, "m2")):
            if (lo is None) != (hi is None):
                raise InvalidParams(f"{lo_name} and its upper bound come in pairs")
            if lo is not None and not (0.0 < lo <= hi):
                raise InvalidParams(f"need 0 < {lo_name} <= its upper bound")

    @property
    def has_box(self) -> bool:
        return self.m1 is not None and self.m2 is not None


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of a hypothesis check.

    per_term holds the signed margins (for aggregate conditions these are the
    per-term contributions and worst_margin is the aggregate value).
    """

    holds: bool
    worst_margin: float
    worst_index: int
    per_term: tuple[float, ...]


def _argmin(values) -> int:
    worst = values[0]
    idx = 0
    for k in range(1, len(values)):
        if values[k] < worst:
            worst = values[k]
            idx = k
    return idx


def check_disk(
    ds: WeightedDataset, d: Disk, policy: TolerancePolicy = DEFAULT_POLICY
) -> ConditionVerdict:
    """Containment of every ratio point a_k/conj(b_k) in the disk."""
    zr, zi = ds.ratio_arrays
    out = np.empty(ds.n, dtype=np.float64)
    kernels.disk_margins(zr, zi, d.alpha.real, d.alpha.imag, d.r, out)
    margins = tuple(out.tolist())
    idx = _argmin(margins)
    worst = margins[idx]
    tol = policy.strict_threshold(max(d.r, cabs(d.alpha)))
    return ConditionVerdict(
        holds=worst >= -tol, worst_margin=worst, worst_index=idx, per_term=margins
    )


def band_forms(z: complex, gamma: complex, Gamma: complex) -> tuple[float, float]:
    """Pointwise (quadratic, disk) values of the band condition.

    quadratic = Re[(Gamma - z)(conj(z) - conj(gamma))]
    disk      = |Gamma-gamma|^2/4 - |z - (gamma+Gamma)/2|^2
    The two are equal in exact arithmetic.
    """
    quad = (Gamma.real - z.real) * (z.real - gamma.real) - (
        Gamma.imag - z.imag
    ) * (gamma.imag - z.imag)
    c = (gamma + Gamma) / 2.0
    disk = 0.25 * cabs2(Gamma - gamma) - cabs2(z - c)
    return quad, disk


def check_band(
    ds: WeightedDataset, band: Band, policy: TolerancePolicy = DEFAULT_POLICY
) -> ConditionVerdict:
    """Band containment; evaluates both stated forms and cross-checks them.

    The verdict is computed from the disk form (bit-for-bit identical to
    check_disk on the derived disk). The quadratic form is evaluated per term
    and compared against the algebraically identical disk expression; a
    mismatch raises EquivalenceMismatch and indicates a bug, never data.
    """
    verdict = check_disk(ds, band.disk(), policy)
    zr, zi = ds.ratio_arrays
    quad = np.empty(ds.n, dtype=np.float64)
    kernels.band_quadratic(
        zr, zi, band.gamma.real, band.gamma.imag, band.Gamma.real, band.Gamma.imag, quad
    )
    r = band.radius
    for k in range(ds.n):
        dist = r - verdict.per_term[k]
        disk_val = r * r - dist * dist
        q = float(quad[k])
        scale = max(1.0, abs(q), r * r, dist * dist)
        if abs(q - disk_val) > policy.verify_tol * scale:
            raise EquivalenceMismatch(
                f"band forms disagree at index {k}: quadratic={q!r}, "
                f"disk={disk_val!r}"
            )
    return verdict


def check_real_band(ds: WeightedDataset) -> Optional[RealBandParams]:
    """Tight real ratio band and componentwise box, or None if inapplicable.

    Applicable only to datasets with all entries real and strictly positive.
    """
    if not ds.real_positive:
        return None
    ratios = ds.a_re / ds.b_re
    return RealBandParams(
        m=float(ratios.min()),
        M=float(ratios.max()),
        m1=float(ds.a_re.min()),
        M1=float(ds.a_re.max()),
        m2=float(ds.b_re.min()),
        M2=float(ds.b_re.max()),
    )


def check_offset(
    ds: WeightedDataset,
    r: float,
    require_strict: bool,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> ConditionVerdict:
    """Offset condition sum p|b - conj(a)|^2 <= r^2, optionally with r^2 < s_aa.

    per_term carries the condition parts: index 0 is r^2 minus the offset
    sum; in strict mode index 1 is s_aa - r^2, which must clear the strict
    threshold.
    """
    if not (r > 0.0):
        raise InvalidParams(f"offset radius must be positive, got {r}")
    off = kernels.offset_sum(ds.p, ds.a_re, ds.a_im, ds.b_re, ds.b_im)
    r2 = r * r
    margin1 = r2 - off
    tol1 = policy.strict_threshold(max(r2, off))
    ok = margin1 >= -tol1
    if not require_strict:
        return ConditionVerdict(
            holds=ok, worst_margin=margin1, worst_index=0, per_term=(margin1,)
        )
    s_aa = aggregates(ds, policy).s_aa
    margin2 = s_aa - r2
    ok2 = margin2 > policy.strict_threshold(max(s_aa, r2))
    per_term = (margin1, margin2)
    idx = _argmin(per_term)
    return ConditionVerdict(
        holds=ok and ok2,
        worst_margin=per_term[idx],
        worst_index=idx,
        per_term=per_term,
    )


def transformed_forms(
    x: complex, y: complex, gamma: complex, Gamma: complex
) -> tuple[float, float]:
    """Pointwise (quadratic, disk) values of the transformed band condition.

    quadratic = Re[(Gamma*conj(y) - x)(conj(x) - conj(gamma)*y)]
    disk      = |Gamma-gamma|^2 |y|^2 / 4 - |x - ((gamma+Gamma)/2)*conj(y)|^2
    """
    t1 = Gamma * y.conjugate() - x
    t2 = x.conjugate() - gamma.conjugate() * y
    quad = t1.real * t2.real - t1.imag * t2.imag
    c = (gamma + Gamma) / 2.0
    disk = 0.25 * cabs2(Gamma - gamma) * cabs2(y) - cabs2(x - c * y.conjugate())
    return quad, disk


def check_transformed_band(
    ds: WeightedDataset, band: Band, policy: TolerancePolicy = DEFAULT_POLICY
) -> ConditionVerdict:
    """Aggregate transformed band condition with roles x := a, y := b.

    Zero y entries are legal here. Both stated forms are computed with
    compensated summation and must agree (they are identical term by term);
    the common value is the verdict margin, and per_term carries the
    per-index disk-form contributions for diagnostics.
    """
    out = np.empty(ds.n, dtype=np.float64)
    q_sum, d_sum = kernels.transformed_sums(
        ds.p,
        ds.a_re,
        ds.a_im,
        ds.b_re,
        ds.b_im,
        band.gamma.real,
        band.gamma.imag,
        band.Gamma.real,
        band.Gamma.imag,
        out,
    )
    s_yy = aggregates(ds, policy).s_bb
    pos_part = 0.25 * cabs2(band.Gamma - band.gamma) * s_yy
    scale = max(1.0, abs(q_sum), abs(d_sum), pos_part)
    if abs(q_sum - d_sum) > policy.verify_tol * scale:
        raise EquivalenceMismatch(
            f"transformed band forms disagree: quadratic={q_sum!r}, disk={d_sum!r}"
        )
    margins = tuple(out.tolist())
    idx = _argmin(margins)
    return ConditionVerdict(
        holds=d_sum >= -policy.strict_threshold(scale),
        worst_margin=d_sum,
        worst_index=idx,
        per_term=margins,
    )
