"""Dataset ingestion, command dispatch, and report serialization.

Commands:

* ``rcbs analyze FILE`` — fit hypothesis parameters (or take overrides),
  evaluate every applicable bound, and emit a text or JSON report. Exit code
  0 on success, 1 on input errors, 2 when a hypothesis-passing bound is
  violated beyond tolerance (impossible with the corrected default forms
  unless there is a bug).
* ``rcbs witness THEOREM`` — run the sharpness sweep for one theorem and
  report the estimated constant. Exit code 0 iff the limit gap is < 1e-3.

The environment variable RCBS_TOL overrides the default verification
tolerance. Reports are deterministic: same input, same bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import bounds as _bounds
from .bounds import KmVariant, Thm31Form
from .conditions import Band, Disk
from .core import (
    BoundReport,
    DEFAULT_POLICY,
    TolerancePolicy,
    WeightedDataset,
    cabs,
)
from .errors import (
    InvalidParams,
    ParseError,
    RcbsError,
    UnknownTheorem,
)
from .fitting import Applicability, FitResult, fit, fit_band
from .witnesses import (
    EXPECTED_CONSTANTS,
    SweepResult,
    default_schedule,
    sharpness_sweep,
)

__all__ = [
    "AnalysisReport",
    "parse_dataset",
    "analyze_dataset",
    "report_to_obj",
    "render_json",
    "render_text",
    "main",
]

_CSV_COLUMNS = ("re_a", "im_a", "re_b", "im_b", "weight")
_LIMIT_GAP_TOL = 1e-3


# ---------------------------------------------------------------------------
# Dataset ingestion
# ---------------------------------------------------------------------------


def _parse_float(text: str, line: int, field: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", line=line, field=field) from None


def _parse_csv(path: str) -> WeightedDataset:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError("empty file: missing CSV header", line=1)
        header = [name.strip() for name in reader.fieldnames]
        unknown = [h for h in header if h not in _CSV_COLUMNS]
        if unknown:
            raise ParseError(f"unknown columns {unknown}", line=1)
        for required in ("re_a", "re_b"):
            if required not in header:
                raise ParseError(f"missing required column {required!r}", line=1)
        a, b, w = [], [], []
        lineno = 1
        for row in reader:
            lineno += 1
            vals = {}
            for col in _CSV_COLUMNS:
                raw = row.get(col)
                if col in header:
                    if raw is None or raw.strip() == "":
                        raise ParseError("missing value", line=lineno, field=col)
                    vals[col] = _parse_float(raw.strip(), lineno, col)
                else:
                    vals[col] = 1.0 if col == "weight" else 0.0
            a.append(complex(vals["re_a"], vals["im_a"]))
            b.append(complex(vals["re_b"], vals["im_b"]))
            w.append(vals["weight"])
    if not a:
        raise ParseError("empty dataset: no data rows")
    return WeightedDataset(a, b, w)


def _entry_to_complex(value, index: int, name: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(float(value), 0.0)
    if isinstance(value, list) and 1 <= len(value) <= 2:
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            re = float(value[0])
            im = float(value[1]) if len(value) == 2 else 0.0
            return complex(re, im)
    raise ParseError(
        f"entry must be a number or [re, im] pair, got {value!r}",
        field=f"{name}[{index}]",
    )


def _parse_json(path: str) -> WeightedDataset:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object with keys 'a', 'b'")
    for key in ("a", "b"):
        if key not in obj or not isinstance(obj[key], list):
            raise ParseError(f"missing or non-array key {key!r}")
    a = [_entry_to_complex(v, i, "a") for i, v in enumerate(obj["a"])]
    b = [_entry_to_complex(v, i, "b") for i, v in enumerate(obj["b"])]
    w = None
    if "w" in obj:
        if not isinstance(obj["w"], list):
            raise ParseError("key 'w' must be an array")
        w = []
        for i, v in enumerate(obj["w"]):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"weight must be a number, got {v!r}", field=f"w[{i}]")
            w.append(float(v))
    extra = sorted(set(obj) - {"a", "b", "w"})
    if extra:
        raise ParseError(f"unknown keys {extra}")
    if not a:
        raise ParseError("empty dataset: no entries in 'a'")
    return WeightedDataset(a, b, w)


def parse_dataset(path: str, format: str) -> WeightedDataset:
    """Load a dataset from a CSV or JSON file.

    CSV header: re_a[,im_a],re_b[,im_b][,weight]; missing im columns default
    to 0 and missing weight to 1. JSON: {"a": [...], "b": [...], "w": [...]}
    with entries given as numbers or [re, im] pairs, "w" optional.
    """
    if format == "csv":
        return _parse_csv(path)
    if format == "json":
        return _parse_json(path)
    raise InvalidParams(f"unknown dataset format {format!r}")


# ---------------------------------------------------------------------------
# Analysis
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisReport:
    """Everything one analyze run produced, ready for serialization."""

    n: int
    real_only: bool
    real_positive: bool
    weight_sum: float
    policy: TolerancePolicy
    km_variant: KmVariant
    thm31_form: Thm31Form
    disk: Optional[Disk]
    disk_source: str
    band: Optional[Band]
    band_source: str
    fit_result: FitResult
    applicability: dict[str, Applicability]
    bounds: tuple[BoundReport, ...]
    errata_notes: tuple[str, ...]
    violations: tuple[str, ...]


def _errata_notes(km_variant: KmVariant, thm31_form: Thm31Form) -> tuple[str, ...]:
    km = (
        "corrected right side (factor sum w*b^2)"
        if km_variant is KmVariant.B_SQUARED_CORRECTED
        else "printed right side (factor sum w*a^2; known to be violable)"
    )
    t31 = (
        "corrected first denominator 4*Re(Gamma*conj(gamma)); reduces to "
        "cassels on real data"
        if thm31_form is Thm31Form.CORRECTED_QUARTER
        else "printed first denominator 2*Re(Gamma*conj(gamma)); weaker form"
    )
    return (
        f"klamkin_mclenaghan evaluated with the {km} [--km-variant]",
        "generalized_dm ratio condition read as m <= b/a <= M (the printed "
        "a/b reading is violable at u = v = 1/2 and is not used)",
        f"thm31 evaluated with the {t31} [--thm31-form]",
        "ratio points are always a/conj(b); the printed form dividing by b "
        "coincides with it for real data",
    )


def analyze_dataset(
    ds: WeightedDataset,
    policy: TolerancePolicy = DEFAULT_POLICY,
    disk: Optional[Disk] = None,
    band: Optional[Band] = None,
    km_variant: KmVariant = KmVariant.B_SQUARED_CORRECTED,
    thm31_form: Thm31Form = Thm31Form.CORRECTED_QUARTER,
) -> AnalysisReport:
    """Fit (or take overrides), run all applicable bounds, collect violations."""
    fit_result = fit(ds, policy)

    disk_source = "fitted"
    if disk is not None:
        disk_source = "override"
    else:
        disk = fit_result.disk

    band_source = "fitted"
    if band is not None:
        band_source = "override"
    elif disk_source == "override" and disk is not None and disk.r > 0.0:
        band = fit_band(disk)
        band_source = "derived-from-override"
    else:
        band = fit_result.band

    flags: dict[str, Applicability] = {}
    no_ratio = "" if ds.b_nonzero else "some b_k = 0: no ratio points"
    if disk is None:
        flags["thm21"] = flags["thm22"] = Applicability(False, no_ratio or "no disk")
        flags["thm24"] = Applicability(False, no_ratio or "no disk")
    elif no_ratio:
        flags["thm21"] = flags["thm22"] = Applicability(False, no_ratio)
        flags["thm24"] = Applicability(False, no_ratio)
    else:
        flags["thm21"] = flags["thm22"] = Applicability(True)
        if not (disk.r > 0.0):
            flags["thm24"] = Applicability(False, "zero radius (needs r > 0)")
        elif cabs(disk.alpha) <= policy.strict_threshold(disk.r):
            flags["thm24"] = Applicability(False, "center too close to 0")
        else:
            flags["thm24"] = Applicability(True)

    if band is None:
        reason = no_ratio or "no band (degenerate or unavailable)"
        for key in ("thm31", "thm41", "thm52", "thm62"):
            flags[key] = Applicability(False, reason)
    else:
        flags["thm31"] = (
            Applicability(True) if not no_ratio else Applicability(False, no_ratio)
        )
        scale = max(cabs(band.Gamma), cabs(band.gamma))
        sum_ok = cabs(band.Gamma + band.gamma) > policy.strict_threshold(scale)
        sum_reason = "" if sum_ok else "Gamma = -gamma"
        flags["thm41"] = (
            Applicability(True)
            if sum_ok and not no_ratio
            else Applicability(False, no_ratio or sum_reason)
        )
        flags["thm62"] = (
            Applicability(True) if sum_ok else Applicability(False, sum_reason)
        )
        re_gg_ok = band.re_gg > policy.strict_threshold(
            cabs(band.Gamma) * cabs(band.gamma)
        )
        flags["thm52"] = (
            Applicability(True)
            if re_gg_ok
            else Applicability(False, "Re(Gamma*conj(gamma)) not strictly positive")
        )

    offset_r2 = fit_result.offset_r2
    if offset_r2 > 0.0:
        flags["thm51"] = flags["thm61"] = Applicability(True)
    else:
        reason = "offset radius is zero (b equals conj(a) exactly)"
        flags["thm51"] = flags["thm61"] = Applicability(False, reason)

    flags["classical"] = fit_result.applicability["classical"]

    reports: list[BoundReport] = []
    if flags["classical"].ok:
        for variant in _bounds.PRODUCT_VARIANTS:
            reports.append(
                _bounds.product_ratio_bounds(ds, variant, policy=policy)
            )
        for variant in _bounds.ADDITIVE_VARIANTS:
            reports.append(
                _bounds.additive_classical_bounds(
                    ds, variant, km_variant=km_variant, policy=policy
                )
            )
    if flags["thm21"].ok:
        reports.append(_bounds.thm21_bound(ds, disk, policy))
        reports.extend(_bounds.thm22_bounds(ds, disk, policy))
    if flags["thm24"].ok:
        reports.append(_bounds.thm24_bound(ds, disk, policy))
    if flags["thm31"].ok:
        reports.extend(_bounds.thm31_bounds(ds, band, thm31_form, policy))
    if flags["thm41"].ok:
        reports.append(_bounds.thm41_bounds(ds, band, policy))
    if flags["thm51"].ok:
        reports.append(_bounds.thm51_gap_bound(ds, math.sqrt(offset_r2), policy))
    if flags["thm52"].ok:
        reports.append(_bounds.thm52_bounds(ds, band, policy))
    if flags["thm61"].ok:
        reports.append(_bounds.thm61_bound(ds, math.sqrt(offset_r2), policy))
    if flags["thm62"].ok:
        reports.append(_bounds.thm62_bounds(ds, band, policy))

    violations = []
    for rep in reports:
        if rep.hypothesis_ok:
            v = rep.violation(policy.verify_tol)
            if v > 0.0:
                violations.append(
                    f"{rep.bound_id}: lhs exceeds a right side by relative {v:.6e}"
                )

    return AnalysisReport(
        n=ds.n,
        real_only=ds.real_only,
        real_positive=ds.real_positive,
        weight_sum=ds.total_weight,
        policy=policy,
        km_variant=km_variant,
        thm31_form=thm31_form,
        disk=disk,
        disk_source=disk_source if disk is not None else "none",
        band=band,
        band_source=band_source if band is not None else "none",
        fit_result=fit_result,
        applicability=flags,
        bounds=tuple(reports),
        errata_notes=_errata_notes(km_variant, thm31_form),
        violations=tuple(violations),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _cnum(z: complex) -> list[float]:
    return [z.real, z.imag]


def _bound_obj(rep: BoundReport) -> dict:
    return {
        "id": rep.bound_id,
        "hypothesis_ok": rep.hypothesis_ok,
        "hypothesis_margin": rep.hypothesis_margin,
        "hypothesis_worst_index": rep.hypothesis_worst_index,
        "lhs": rep.lhs,
        "rhs_chain": list(rep.rhs_chain),
        "slack": rep.slack,
        "tightness": rep.tightness,
        "notes": list(rep.notes),
    }


def report_to_obj(report: AnalysisReport) -> dict:
    fit_obj: dict = {
        "offset_r2": report.fit_result.offset_r2,
        "applicability": {
            key: {"ok": app.ok, "reason": app.reason}
            for key, app in sorted(report.applicability.items())
        },
    }
    if report.disk is not None:
        fit_obj["disk"] = {
            "alpha": _cnum(report.disk.alpha),
            "r": report.disk.r,
            "source": report.disk_source,
        }
    else:
        fit_obj["disk"] = None
    if report.band is not None:
        fit_obj["band"] = {
            "gamma": _cnum(report.band.gamma),
            "Gamma": _cnum(report.band.Gamma),
            "re_gg": report.band.re_gg,
            "source": report.band_source,
        }
    else:
        fit_obj["band"] = None
    rb = report.fit_result.real_band
    if rb is not None:
        fit_obj["real_band"] = {
            "m": rb.m,
            "M": rb.M,
            "m1": rb.m1,
            "M1": rb.M1,
            "m2": rb.m2,
            "M2": rb.M2,
        }
    else:
        fit_obj["real_band"] = None
    return {
        "dataset": {
            "n": report.n,
            "real_only": report.real_only,
            "real_positive": report.real_positive,
            "weight_sum": report.weight_sum,
        },
        "policy": {
            "verify_tol": report.policy.verify_tol,
            "strict_margin": report.policy.strict_margin,
        },
        "forms": {
            "km_variant": report.km_variant.value,
            "thm31_form": report.thm31_form.value,
        },
        "fit": fit_obj,
        "bounds": [_bound_obj(rep) for rep in report.bounds],
        "errata_notes": list(report.errata_notes),
        "violations": list(report.violations),
    }


def render_json(obj: dict) -> str:
    """Canonical JSON: sorted keys, fixed separators, shortest-round-trip floats."""
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def render_text(report: AnalysisReport) -> str:
    lines = []
    lines.append(
        f"dataset: n={report.n} real_only={report.real_only} "
        f"real_positive={report.real_positive} weight_sum={report.weight_sum!r}"
    )
    if report.disk is not None:
        lines.append(
            f"disk ({report.disk_source}): alpha={report.disk.alpha!r} "
            f"r={report.disk.r!r}"
        )
    else:
        lines.append("disk: none")
    if report.band is not None:
        lines.append(
            f"band ({report.band_source}): gamma={report.band.gamma!r} "
            f"Gamma={report.band.Gamma!r} re_gg={report.band.re_gg!r}"
        )
    else:
        lines.append("band: none")
    rb = report.fit_result.real_band
    if rb is not None:
        lines.append(
            f"real band: m={rb.m!r} M={rb.M!r} box=[{rb.m1!r}, {rb.M1!r}] x "
            f"[{rb.m2!r}, {rb.M2!r}]"
        )
    lines.append(f"offset_r2: {report.fit_result.offset_r2!r}")
    skipped = [
        f"{key} ({app.reason})"
        for key, app in sorted(report.applicability.items())
        if not app.ok
    ]
    if skipped:
        lines.append("skipped: " + "; ".join(skipped))
    lines.append("bounds:")
    for rep in report.bounds:
        hyp = "ok " if rep.hypothesis_ok else "VIOLATED-HYP"
        chain = " <= ".join(repr(v) for v in rep.rhs_chain)
        lines.append(f"  {rep.bound_id:<18} hyp={hyp} lhs={rep.lhs!r} <= {chain}")
        lines.append(
            f"  {'':<18} slack={rep.slack!r} tightness={rep.tightness!r} "
            f"hyp_margin={rep.hypothesis_margin!r}"
            + (f" notes={'; '.join(rep.notes)}" if rep.notes else "")
        )
    lines.append("errata notes:")
    for note in report.errata_notes:
        lines.append(f"  - {note}")
    if report.violations:
        lines.append("VIOLATIONS:")
        for v in report.violations:
            lines.append(f"  - {v}")
    else:
        lines.append("violations: none")
    return "\n".join(lines) + "\n"


def render_sweep_text(res: SweepResult) -> str:
    lines = [f"theorem: {res.theorem_id}  expected constant: {res.expected_constant!r}"]
    lines.append(f"{'eps':>12}  estimate")
    for eps, est in zip(res.schedule, res.estimates):
        lines.append(f"{eps:>12.6g}  {est!r}")
    lines.append(f"limit gap: {res.limit_gap!r}")
    return "\n".join(lines) + "\n"


def render_sweep_json(res: SweepResult) -> str:
    return render_json(
        {
            "theorem": res.theorem_id,
            "expected_constant": res.expected_constant,
            "schedule": list(res.schedule),
            "estimates": list(res.estimates),
            "limit_gap": res.limit_gap,
        }
    )


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------


def _parse_complex_flag(text: str, name: str) -> complex:
    parts = text.split(",")
    if len(parts) not in (1, 2):
        raise InvalidParams(f"{name} expects RE or RE,IM, got {text!r}")
    try:
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise InvalidParams(f"{name} expects numbers, got {text!r}") from None
    return complex(re, im)


def _default_tol() -> float:
    raw = os.environ.get("RCBS_TOL")
    if raw is None:
        return DEFAULT_POLICY.verify_tol
    try:
        return float(raw)
    except ValueError:
        raise InvalidParams(f"RCBS_TOL must be a number, got {raw!r}") from None


def _infer_format(path: str, override: Optional[str]) -> str:
    if override:
        return override
    if path.endswith(".json"):
        return "json"
    if path.endswith(".csv"):
        return "csv"
    raise InvalidParams(
        f"cannot infer format of {path!r}; pass --input-format csv|json"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcbs",
        description=(
            "Evaluate, verify, and parameter-fit reverse "
            "Cauchy-Bunyakovsky-Schwarz bounds for weighted complex n-tuples."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="evaluate all applicable bounds on a dataset")
    pa.add_argument("path", help="dataset file (CSV or JSON)")
    pa.add_argument(
        "--input-format", choices=("csv", "json"), default=None,
        help="dataset format (default: inferred from the extension)",
    )
    pa.add_argument("--alpha", metavar="RE[,IM]", help="disk center override")
    pa.add_argument("--radius", type=float, help="disk radius override")
    pa.add_argument("--gamma", metavar="RE[,IM]", help="band endpoint override")
    pa.add_argument("--Gamma", metavar="RE[,IM]", help="band endpoint override")
    pa.add_argument(
        "--fit", action="store_true", default=True,
        help="auto-fit hypothesis parameters (default; overrides win)",
    )
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument(
        "--tol", type=float, default=None,
        help="relative verification tolerance (default 1e-9 or RCBS_TOL)",
    )
    pa.add_argument(
        "--km-variant", choices=("corrected", "literal"), default="corrected",
        help="klamkin_mclenaghan right side (default: corrected)",
    )
    pa.add_argument(
        "--thm31-form", choices=("quarter", "half"), default="quarter",
        help="thm31 first denominator (default: quarter, the corrected form)",
    )

    pw = sub.add_parser("witness", help="run a sharpness sweep for one theorem")
    pw.add_argument(
        "theorem", help=f"one of: {', '.join(EXPECTED_CONSTANTS)}"
    )
    pw.add_argument(
        "--sweep", metavar="LO,HI,POINTS", default=None,
        help="geometric schedule from LO down to HI (default 1e-1,1e-6,6)",
    )
    pw.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def _cmd_analyze(args) -> int:
    fmt = _infer_format(args.path, args.input_format)
    ds = parse_dataset(args.path, fmt)

    tol = args.tol if args.tol is not None else _default_tol()
    policy = TolerancePolicy(verify_tol=tol)

    disk = None
    if (args.alpha is None) != (args.radius is None):
        raise InvalidParams("--alpha and --radius must be given together")
    if args.alpha is not None:
        disk = Disk(_parse_complex_flag(args.alpha, "--alpha"), args.radius)

    band = None
    if (args.gamma is None) != (args.Gamma is None):
        raise InvalidParams("--gamma and --Gamma must be given together")
    if args.gamma is not None:
        band = Band(
            _parse_complex_flag(args.gamma, "--gamma"),
            _parse_complex_flag(args.Gamma, "--Gamma"),
        )

    km = (
        KmVariant.B_SQUARED_CORRECTED
        if args.km_variant == "corrected"
        else KmVariant.PAPER_LITERAL
    )
    form = (
        Thm31Form.CORRECTED_QUARTER
        if args.thm31_form == "quarter"
        else Thm31Form.PAPER_LITERAL_HALF
    )

    report = analyze_dataset(
        ds, policy=policy, disk=disk, band=band, km_variant=km, thm31_form=form
    )
    if args.format == "json":
        sys.stdout.write(render_json(report_to_obj(report)))
    else:
        sys.stdout.write(render_text(report))
    return 2 if report.violations else 0


def _parse_sweep_flag(text: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidParams(f"--sweep expects LO,HI,POINTS, got {text!r}")
    try:
        lo = float(parts[0])
        hi = float(parts[1])
        npts = int(parts[2])
    except ValueError:
        raise InvalidParams(f"--sweep expects numbers, got {text!r}") from None
    if not (lo > hi > 0.0) or npts < 1:
        raise InvalidParams("--sweep needs LO > HI > 0 and POINTS >= 1")
    if npts == 1:
        return (lo,)
    ratio = hi / lo
    return tuple(lo * ratio ** (i / (npts - 1)) for i in range(npts))


def _cmd_witness(args) -> int:
    if args.theorem not in EXPECTED_CONSTANTS:
        raise UnknownTheorem(f"unknown theorem id {args.theorem!r}")
    schedule = (
        _parse_sweep_flag(args.sweep)
        if args.sweep is not None
        else default_schedule(args.theorem)
    )
    res = sharpness_sweep(args.theorem, schedule)
    if args.format == "json":
        sys.stdout.write(render_sweep_json(res))
    else:
        sys.stdout.write(render_sweep_text(res))
    return 0 if res.limit_gap < _LIMIT_GAP_TOL else 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; input errors are exit 1 here
        return 0 if exc.code in (0, None) else 1
    try:
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_witness(args)
    except RcbsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
