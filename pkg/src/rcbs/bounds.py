"""Evaluators for every reverse-CBS inequality in the family.

Each evaluator returns one BoundReport (or a short list when an additive
companion or a branch form belongs with it) and never asserts: a violated
inequality or a failed hypothesis is data for the caller, not an error.
Errors are reserved for structurally invalid parameters.

Two deliberate corrections are applied by default, with the printed forms
still available behind flags:

* klamkin_mclenaghan: the default right side multiplies by the sum of
  squares of b (the printed a-form is dimensionally inhomogeneous and
  numerically violated);
* generalized_dm: the ratio condition is read as m <= b_k/a_k <= M (the
  printed a/b reading is violated at u=v=1/2);
* thm31: the first bound uses denominator 4*Re(Gamma*conj(gamma)); the
  printed factor 2 form is weaker and available via the form flag.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .conditions import (
    Band,
    Disk,
    RealBandParams,
    check_band,
    check_disk,
    check_offset,
    check_real_band,
    check_transformed_band,
)
from .core import (
    DEFAULT_POLICY,
    BoundReport,
    TolerancePolicy,
    WeightedDataset,
    aggregates,
    cabs,
    cabs2,
    make_report,
    raw_aggregates,
    unit_aggregates,
)
from .errors import Inapplicable, InvalidParams, ZeroDenominator

__all__ = [
    "DmWeights",
    "KmVariant",
    "Thm31Form",
    "GdmRatio",
    "PRODUCT_VARIANTS",
    "ADDITIVE_VARIANTS",
    "product_ratio_bounds",
    "additive_classical_bounds",
    "thm21_bound",
    "thm22_bounds",
    "thm24_bound",
    "thm31_bounds",
    "thm41_bounds",
    "thm51_gap_bound",
    "thm52_bounds",
    "thm61_bound",
    "thm62_bounds",
]


@dataclass(frozen=True)
class DmWeights:
    """Convex weights (u, v) of the generalized Diaz-Metcalf bound."""

    u: float
    v: float

    def __post_init__(self):
        if not (0.0 <= self.u <= 1.0 and 0.0 <= self.v <= 1.0):
            raise InvalidParams("u and v must lie in [0, 1]")
        if abs(self.u + self.v - 1.0) > 1e-12:
            raise InvalidParams("u + v must equal 1")
        if self.v > self.u:
            raise InvalidParams("need v <= u")


class KmVariant(enum.Enum):
    """Right-side variant of the Klamkin-McLenaghan bound."""

    PAPER_LITERAL = "paper_literal"
    B_SQUARED_CORRECTED = "b_squared_corrected"


class Thm31Form(enum.Enum):
    """First-denominator variant of the complex Cassels-type bound."""

    CORRECTED_QUARTER = "corrected_quarter"
    PAPER_LITERAL_HALF = "paper_literal_half"


class GdmRatio(enum.Enum):
    """Which ratio the generalized Diaz-Metcalf condition constrains."""

    B_OVER_A = "b_over_a"
    A_OVER_B = "a_over_b"


PRODUCT_VARIANTS = ("polya_szego", "cassels", "grueb_reinboldt")
ADDITIVE_VARIANTS = (
    "shisha_mond",
    "ozeki",
    "diaz_metcalf",
    "generalized_dm",
    "klamkin_mclenaghan",
)


def _re_conj_mult(u: complex, v: complex) -> float:
    """Re(conj(u) * v)."""
    return u.real * v.real + u.imag * v.imag


def _require_real_positive(ds: WeightedDataset, variant: str):
    if not ds.real_positive:
        raise Inapplicable(
            f"{variant} requires real strictly positive data"
        )


def _fit_params(ds: WeightedDataset) -> RealBandParams:
    params = check_real_band(ds)
    assert params is not None  # guarded by _require_real_positive
    return params


def _ratio_hypothesis(num, den, m: float, M: float):
    """Per-term margins of m <= num_k/den_k <= M for positive arrays."""
    t = num / den
    return tuple(
        min(float(tk) - m, M - float(tk)) for tk in t.tolist()
    )


def _box_hypothesis(ds: WeightedDataset, params: RealBandParams):
    if not params.has_box:
        raise InvalidParams("this variant needs the componentwise box bounds")
    m1, M1, m2, M2 = params.m1, params.M1, params.m2, params.M2
    margins = []
    for k in range(ds.n):
        av = float(ds.a_re[k])
        bv = float(ds.b_re[k])
        margins.append(min(av - m1, M1 - av, bv - m2, M2 - bv))
    return tuple(margins)


def _hyp_summary(margins, policy: TolerancePolicy, scale: float):
    idx = 0
    worst = margins[0]
    for k in range(1, len(margins)):
        if margins[k] < worst:
            worst = margins[k]
            idx = k
    return worst >= -policy.strict_threshold(scale), worst, idx


def _unit_weight_note(ds: WeightedDataset) -> tuple[str, ...]:
    if bool(np.all(ds.w_arr == 1.0)):
        return ()
    return ("unweighted bound: dataset weights ignored",)


def product_ratio_bounds(
    ds: WeightedDataset,
    variant: str,
    params: Optional[RealBandParams] = None,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> BoundReport:
    """Product-form classical reverses (ratio of the two CBS sides).

    polya_szego works on unweighted sums and the componentwise box; cassels
    uses the ratio bounds (m, M) with raw weights; grueb_reinboldt uses the
    box with raw weights.
    """
    if variant not in PRODUCT_VARIANTS:
        raise InvalidParams(f"unknown product variant {variant!r}")
    _require_real_positive(ds, variant)
    if params is None:
        params = _fit_params(ds)

    notes: tuple[str, ...] = ()
    if variant == "polya_szego":
        agg = unit_aggregates(ds)
        notes = _unit_weight_note(ds)
        margins = _box_hypothesis(ds, params)
        scale = max(params.M1, params.M2)
        q = params.M1 * params.M2 / (params.m1 * params.m2)
        rhs = 0.25 * (math.sqrt(q) + math.sqrt(1.0 / q)) ** 2
    elif variant == "cassels":
        agg = raw_aggregates(ds)
        margins = _ratio_hypothesis(ds.a_re, ds.b_re, params.m, params.M)
        scale = params.M
        rhs = (params.M + params.m) ** 2 / (4.0 * params.m * params.M)
    else:  # grueb_reinboldt
        agg = raw_aggregates(ds)
        margins = _box_hypothesis(ds, params)
        scale = max(params.M1, params.M2)
        prod = params.M1 * params.M2
        prodm = params.m1 * params.m2
        rhs = (prod + prodm) ** 2 / (4.0 * prodm * prod)

    sab = agg.s_ab.real
    if sab == 0.0:
        raise ZeroDenominator(-1, f"{variant}: sum w*a*b vanished")
    lhs = agg.s_aa * agg.s_bb / (sab * sab)
    ok, worst, idx = _hyp_summary(margins, policy, scale)
    return make_report(
        variant, ok, worst, lhs, (rhs,), notes=notes, hypothesis_worst_index=idx
    )


def additive_classical_bounds(
    ds: WeightedDataset,
    variant: str,
    params: Optional[RealBandParams] = None,
    dm: Optional[DmWeights] = None,
    km_variant: KmVariant = KmVariant.B_SQUARED_CORRECTED,
    gdm_ratio: GdmRatio = GdmRatio.B_OVER_A,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> BoundReport:
    """Difference-form classical reverses.

    shisha_mond, ozeki, and diaz_metcalf are unweighted; generalized_dm and
    klamkin_mclenaghan use raw weights. See the module docstring for the
    corrected default forms.
    """
    if variant not in ADDITIVE_VARIANTS:
        raise InvalidParams(f"unknown additive variant {variant!r}")
    _require_real_positive(ds, variant)

    notes: list[str] = []
    if variant in ("shisha_mond", "ozeki", "diaz_metcalf"):
        agg = unit_aggregates(ds)
        notes.extend(_unit_weight_note(ds))
        if params is None:
            params = _fit_params(ds)
        margins = _box_hypothesis(ds, params)
        scale = max(params.M1, params.M2)
        m1, M1, m2, M2 = params.m1, params.M1, params.m2, params.M2
        sab = agg.s_ab.real
        if variant == "shisha_mond":
            if sab == 0.0:
                raise ZeroDenominator(-1, "shisha_mond: sum a*b vanished")
            lhs = agg.s_aa / sab - sab / agg.s_bb
            rhs = (math.sqrt(M1 / m2) - math.sqrt(m1 / M2)) ** 2
            hint = agg.s_aa / abs(sab) + abs(sab) / agg.s_bb
        elif variant == "ozeki":
            lhs = agg.gap
            rhs = 0.25 * ds.n * ds.n * (M1 * M2 - m1 * m2) ** 2
            hint = agg.s_aa * agg.s_bb
        else:  # diaz_metcalf
            lhs = agg.s_bb + (m2 * M2 / (m1 * M1)) * agg.s_aa
            rhs = (M2 / m1 + m2 / M1) * sab
            hint = 0.0
    elif variant == "generalized_dm":
        agg = raw_aggregates(ds)
        if dm is None:
            dm = DmWeights(0.5, 0.5)
        if gdm_ratio is GdmRatio.B_OVER_A:
            num, den = ds.b_re, ds.a_re
        else:
            num, den = ds.a_re, ds.b_re
        if params is None:
            ratios = num / den
            params = RealBandParams(float(ratios.min()), float(ratios.max()))
        margins = _ratio_hypothesis(num, den, params.m, params.M)
        scale = params.M
        sab = agg.s_ab.real
        lhs = dm.u * agg.s_bb + dm.v * params.m * params.M * agg.s_aa
        rhs = (dm.v * params.m + dm.u * params.M) * sab
        hint = 0.0
        notes.append(f"ratio_condition={gdm_ratio.value}")
    else:  # klamkin_mclenaghan
        agg = raw_aggregates(ds)
        if params is None:
            ratios = ds.a_re / ds.b_re
            params = RealBandParams(float(ratios.min()), float(ratios.max()))
        margins = _ratio_hypothesis(ds.a_re, ds.b_re, params.m, params.M)
        scale = params.M
        sab = agg.s_ab.real
        lhs = agg.gap
        factor = (math.sqrt(params.M) - math.sqrt(params.m)) ** 2
        if km_variant is KmVariant.B_SQUARED_CORRECTED:
            rhs = factor * sab * agg.s_bb
        else:
            rhs = factor * sab * agg.s_aa
        hint = agg.s_aa * agg.s_bb
        notes.append(f"variant={km_variant.value}")

    ok, worst, idx = _hyp_summary(margins, policy, scale)
    return make_report(
        variant, ok, worst, lhs, (rhs,), notes=tuple(notes),
        hypothesis_worst_index=idx, scale_hint=hint,
    )


def thm21_bound(
    ds: WeightedDataset, d: Disk, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Additive disk bound: s_aa + (|alpha|^2 - r^2) s_bb <= 2 Re(conj(alpha) s_ab)."""
    hyp = check_disk(ds, d, policy)
    agg = aggregates(ds, policy)
    am = cabs(d.alpha)
    dsq = (am - d.r) * (am + d.r)
    lhs = agg.s_aa + dsq * agg.s_bb
    rhs = 2.0 * _re_conj_mult(d.alpha, agg.s_ab)
    hint = agg.s_aa + (am * am + d.r * d.r) * agg.s_bb
    return make_report(
        "thm21",
        hyp.holds,
        hyp.worst_margin,
        lhs,
        (rhs,),
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=hint,
    )


def thm22_bounds(
    ds: WeightedDataset, d: Disk, policy: TolerancePolicy = DEFAULT_POLICY
) -> list[BoundReport]:
    """Multiplicative disk reverse, dispatched on disk regularity.

    |alpha| > r: the product bound plus its additive companion; |alpha| = r
    (within the strict threshold): the boundary chain; |alpha| < r: the
    origin-in-disk chain.
    """
    hyp = check_disk(ds, d, policy)
    agg = aggregates(ds, policy)
    am = cabs(d.alpha)
    r = d.r
    thr = policy.strict_threshold(max(am, r))
    re_a = _re_conj_mult(d.alpha, agg.s_ab)
    sab2 = cabs2(agg.s_ab)
    prod_hint = agg.s_aa * agg.s_bb
    sum_hint = agg.s_aa + (am * am + r * r) * agg.s_bb + 2.0 * am * cabs(agg.s_ab)
    if am - r > thr:
        denom = (am - r) * (am + r)
        main = make_report(
            "thm22",
            hyp.holds,
            hyp.worst_margin,
            agg.s_aa * agg.s_bb,
            (re_a * re_a / denom, am * am * sab2 / denom),
            notes=("branch=regular",),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=prod_hint,
        )
        additive = make_report(
            "thm22_additive",
            hyp.holds,
            hyp.worst_margin,
            agg.gap,
            (r * r * sab2 / denom,),
            notes=("branch=regular",),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=prod_hint,
        )
        return [main, additive]
    if r - am > thr:
        t = (r - am) * (r + am)
        base = t * agg.s_bb
        return [
            make_report(
                "thm22_interior",
                hyp.holds,
                hyp.worst_margin,
                agg.s_aa,
                (base + 2.0 * re_a, base + 2.0 * am * cabs(agg.s_ab)),
                notes=("branch=origin_in_disk",),
                hypothesis_worst_index=hyp.worst_index,
                scale_hint=sum_hint,
            )
        ]
    return [
        make_report(
            "thm22_boundary",
            hyp.holds,
            hyp.worst_margin,
            agg.s_aa,
            (2.0 * re_a, 2.0 * am * cabs(agg.s_ab)),
            notes=("branch=origin_on_boundary",),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=sum_hint,
        )
    ]


def thm24_bound(
    ds: WeightedDataset, d: Disk, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Difference-of-roots disk reverse; needs alpha != 0 and r > 0."""
    if not (d.r > 0.0):
        raise InvalidParams("thm24 requires r > 0")
    am = cabs(d.alpha)
    if am <= policy.strict_threshold(d.r):
        raise InvalidParams("thm24 requires alpha bounded away from 0")
    hyp = check_disk(ds, d, policy)
    agg = aggregates(ds, policy)
    root = math.sqrt(agg.s_aa * agg.s_bb)
    re_unit = _re_conj_mult(d.alpha, agg.s_ab) / am
    lhs = root - cabs(agg.s_ab)
    chain = (root - re_unit, 0.5 * (d.r * d.r / am) * agg.s_bb)
    return make_report(
        "thm24",
        hyp.holds,
        hyp.worst_margin,
        lhs,
        chain,
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=root,
    )


def thm31_bounds(
    ds: WeightedDataset,
    band: Band,
    form: Thm31Form = Thm31Form.CORRECTED_QUARTER,
    policy: TolerancePolicy = DEFAULT_POLICY,
) -> list[BoundReport]:
    """Cassels-type band reverse, dispatched on Re(Gamma*conj(gamma)).

    Positive: the product bound (quarter or printed-half form) plus the
    additive companion. Zero / negative: the touching / negative chains.
    """
    hyp = check_band(ds, band, policy)
    agg = aggregates(ds, policy)
    re_gg = band.re_gg
    thr = policy.strict_threshold(cabs(band.Gamma) * cabs(band.gamma))
    sum_gg = band.gamma + band.Gamma
    re_s = _re_conj_mult(sum_gg, agg.s_ab)
    absum = cabs(sum_gg)
    sab2 = cabs2(agg.s_ab)
    prod_hint = agg.s_aa * agg.s_bb
    if re_gg > thr:
        denom1 = (2.0 if form is Thm31Form.PAPER_LITERAL_HALF else 4.0) * re_gg
        main = make_report(
            "thm31",
            hyp.holds,
            hyp.worst_margin,
            agg.s_aa * agg.s_bb,
            (re_s * re_s / denom1, absum * absum * sab2 / (4.0 * re_gg)),
            notes=(f"form={form.value}", "branch=positive"),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=prod_hint,
        )
        additive = make_report(
            "thm31_additive",
            hyp.holds,
            hyp.worst_margin,
            agg.gap,
            (cabs2(band.Gamma - band.gamma) * sab2 / (4.0 * re_gg),),
            notes=("branch=positive",),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=prod_hint,
        )
        return [main, additive]
    if re_gg >= -thr:
        return [
            make_report(
                "thm31_touching",
                hyp.holds,
                hyp.worst_margin,
                agg.s_aa,
                (re_s, absum * cabs(agg.s_ab)),
                notes=("branch=zero",),
                hypothesis_worst_index=hyp.worst_index,
                scale_hint=agg.s_aa + absum * cabs(agg.s_ab),
            )
        ]
    base = -re_gg * agg.s_bb
    return [
        make_report(
            "thm31_negative",
            hyp.holds,
            hyp.worst_margin,
            agg.s_aa,
            (base + re_s, base + absum * cabs(agg.s_ab)),
            notes=("branch=negative",),
            hypothesis_worst_index=hyp.worst_index,
            scale_hint=agg.s_aa + base + absum * cabs(agg.s_ab),
        )
    ]


def _require_sum_nonzero(band: Band, policy: TolerancePolicy, who: str) -> float:
    absum = cabs(band.Gamma + band.gamma)
    if absum <= policy.strict_threshold(max(cabs(band.Gamma), cabs(band.gamma))):
        raise InvalidParams(f"{who} requires Gamma != -gamma")
    return absum


def thm41_bounds(
    ds: WeightedDataset, band: Band, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Shisha-Mond-type band reverse; needs Gamma != gamma, -gamma."""
    absum = _require_sum_nonzero(band, policy, "thm41")
    hyp = check_band(ds, band, policy)
    agg = aggregates(ds, policy)
    root = math.sqrt(agg.s_aa * agg.s_bb)
    re_unit = _re_conj_mult(band.gamma + band.Gamma, agg.s_ab) / absum
    lhs = root - cabs(agg.s_ab)
    chain = (
        root - re_unit,
        0.25 * (cabs2(band.Gamma - band.gamma) / absum) * agg.s_bb,
    )
    return make_report(
        "thm41",
        hyp.holds,
        hyp.worst_margin,
        lhs,
        chain,
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=root,
    )


def thm51_gap_bound(
    ds: WeightedDataset, r: float, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Gap bound under the strict offset condition: gap <= gap_re <= r^2 s_bb."""
    hyp = check_offset(ds, r, require_strict=True, policy=policy)
    agg = aggregates(ds, policy)
    gap_re = agg.s_aa * agg.s_bb - agg.re_ab * agg.re_ab
    return make_report(
        "thm51",
        hyp.holds,
        hyp.worst_margin,
        agg.gap,
        (gap_re, r * r * agg.s_bb),
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=agg.s_aa * agg.s_bb,
    )


def thm52_bounds(
    ds: WeightedDataset, band: Band, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Product bound under the aggregate transformed band condition."""
    re_gg = band.re_gg
    if re_gg <= policy.strict_threshold(cabs(band.Gamma) * cabs(band.gamma)):
        raise InvalidParams("thm52 requires Re(Gamma*conj(gamma)) > 0")
    hyp = check_transformed_band(ds, band, policy)
    agg = aggregates(ds, policy)
    sum_gg = band.gamma + band.Gamma
    re_s = _re_conj_mult(sum_gg, agg.s_ab)
    chain = (
        0.25 * re_s * re_s / re_gg,
        0.25 * cabs2(sum_gg) * cabs2(agg.s_ab) / re_gg,
    )
    return make_report(
        "thm52",
        hyp.holds,
        hyp.worst_margin,
        agg.s_aa * agg.s_bb,
        chain,
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=agg.s_aa * agg.s_bb,
    )


def thm61_bound(
    ds: WeightedDataset, r: float, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Root-minus-pairing chain under the plain offset condition."""
    hyp = check_offset(ds, r, require_strict=False, policy=policy)
    agg = aggregates(ds, policy)
    root = math.sqrt(agg.s_bb * agg.s_aa)
    lhs = root - cabs(agg.s_ab)
    chain = (root - abs(agg.re_ab), root - agg.re_ab, 0.5 * r * r)
    return make_report(
        "thm61",
        hyp.holds,
        hyp.worst_margin,
        lhs,
        chain,
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=root,
    )


def thm62_bounds(
    ds: WeightedDataset, band: Band, policy: TolerancePolicy = DEFAULT_POLICY
) -> BoundReport:
    """Root-minus-pairing chain under the transformed band condition."""
    absum = _require_sum_nonzero(band, policy, "thm62")
    hyp = check_transformed_band(ds, band, policy)
    agg = aggregates(ds, policy)
    root = math.sqrt(agg.s_aa * agg.s_bb)
    re_unit = _re_conj_mult(band.gamma + band.Gamma, agg.s_ab) / absum
    lhs = root - cabs(agg.s_ab)
    chain = (
        root - abs(re_unit),
        root - re_unit,
        0.25 * (cabs2(band.Gamma - band.gamma) / absum) * agg.s_bb,
    )
    return make_report(
        "thm62",
        hyp.holds,
        hyp.worst_margin,
        lhs,
        chain,
        hypothesis_worst_index=hyp.worst_index,
        scale_hint=root,
    )
