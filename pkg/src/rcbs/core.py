"""Dataset container, weighted aggregate sums, and shared report records.

Conventions used throughout the package:

* the pairing sum is the literal bilinear product sum(p * a * b) — no
  conjugation is ever inserted silently;
* ratio points are a_k / conj(b_k);
* raw weights are stored; the normalized view p = w / sum(w) is what the
  disk/band/offset bounds consume, while the classical ratio bounds work on
  raw (or unit) weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .backend import kernels
from .errors import InvariantViolation, ZeroDenominator

__all__ = [
    "TolerancePolicy",
    "DEFAULT_POLICY",
    "WeightedDataset",
    "CbsAggregates",
    "BoundReport",
    "aggregates",
    "ratio_points",
    "cabs",
    "cabs2",
]


def cabs2(z: complex) -> float:
    """|z|^2 via the componentwise formula used by the kernels."""
    return z.real * z.real + z.imag * z.imag


def cabs(z: complex) -> float:
    """|z| via sqrt(re^2 + im^2); kept consistent with the kernel arithmetic."""
    return math.sqrt(z.real * z.real + z.imag * z.imag)


@dataclass(frozen=True)
class TolerancePolicy:
    """Numeric tolerances shared by checkers and bound evaluators.

    verify_tol is the relative tolerance for "this inequality holds";
    strict_margin is the minimum relative margin demanded of strict
    hypotheses (|alpha| > r, r^2 < s_aa, Re(Gamma*conj(gamma)) > 0) before
    the corresponding divisors are trusted.
    """

    verify_tol: float = 1e-9
    strict_margin: float = 1e-12
    normalize_weights: bool = True

    def __post_init__(self):
        if not (self.verify_tol > 0):
            raise InvariantViolation("verify_tol must be positive")
        if not (self.strict_margin >= 0):
            raise InvariantViolation("strict_margin must be nonnegative")

    def strict_threshold(self, scale: float) -> float:
        """Absolute threshold for strict hypotheses at the given scale."""
        return self.strict_margin * max(1.0, scale)


DEFAULT_POLICY = TolerancePolicy()


def _as_float_array(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvariantViolation(f"{name} must be one-dimensional")
    return arr


class WeightedDataset:
    """Paired complex sequences (a_k, b_k) with nonnegative weights w_k.

    Immutable after construction. Accepts any sequences convertible to
    complex/float; weights default to 1. Component arrays are stored as
    read-only float64 arrays, which is what the kernels consume.
    """

    __slots__ = (
        "a_re",
        "a_im",
        "b_re",
        "b_im",
        "w_arr",
        "__dict__",
    )

    def __init__(self, a: Sequence[complex], b: Sequence[complex], w=None):
        za = np.asarray(a, dtype=np.complex128)
        zb = np.asarray(b, dtype=np.complex128)
        if za.ndim != 1 or zb.ndim != 1:
            raise InvariantViolation("a and b must be one-dimensional sequences")
        n = za.shape[0]
        if n < 1:
            raise InvariantViolation("dataset must contain at least one entry")
        if zb.shape[0] != n:
            raise InvariantViolation(
                f"length mismatch: len(a)={n}, len(b)={zb.shape[0]}"
            )
        if w is None:
            wa = np.ones(n, dtype=np.float64)
        else:
            wa = _as_float_array(w, "w")
            if wa.shape[0] != n:
                raise InvariantViolation(
                    f"length mismatch: len(a)={n}, len(w)={wa.shape[0]}"
                )
        if not np.all(np.isfinite(za)) or not np.all(np.isfinite(zb)):
            raise InvariantViolation("a and b entries must be finite")
        if not np.all(np.isfinite(wa)):
            raise InvariantViolation("weights must be finite")
        if np.any(wa < 0.0):
            raise InvariantViolation("weights must be nonnegative")

        self.a_re = np.ascontiguousarray(za.real)
        self.a_im = np.ascontiguousarray(za.imag)
        self.b_re = np.ascontiguousarray(zb.real)
        self.b_im = np.ascontiguousarray(zb.imag)
        self.w_arr = np.ascontiguousarray(wa)
        for arr in (self.a_re, self.a_im, self.b_re, self.b_im, self.w_arr):
            arr.flags.writeable = False

        if not (self.total_weight > 0.0):
            raise InvariantViolation("sum of weights must be positive")

    @property
    def n(self) -> int:
        return self.a_re.shape[0]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"WeightedDataset(n={self.n})"

    @cached_property
    def a(self) -> tuple[complex, ...]:
        return tuple(complex(x, y) for x, y in zip(self.a_re, self.a_im))

    @cached_property
    def b(self) -> tuple[complex, ...]:
        return tuple(complex(x, y) for x, y in zip(self.b_re, self.b_im))

    @cached_property
    def w(self) -> tuple[float, ...]:
        return tuple(self.w_arr.tolist())

    @cached_property
    def total_weight(self) -> float:
        return kernels.vec_sum(self.w_arr)

    @cached_property
    def p(self) -> np.ndarray:
        """Normalized weights w / sum(w) (read-only array)."""
        p = self.w_arr / self.total_weight
        p.flags.writeable = False
        return p

    @cached_property
    def b_nonzero(self) -> bool:
        """Whether every b_k is nonzero (required by the disk/band bounds)."""
        return bool(np.all((self.b_re != 0.0) | (self.b_im != 0.0)))

    @cached_property
    def real_only(self) -> bool:
        return bool(np.all(self.a_im == 0.0) and np.all(self.b_im == 0.0))

    @cached_property
    def real_positive(self) -> bool:
        """All entries real with a_k > 0 and b_k > 0."""
        return self.real_only and bool(
            np.all(self.a_re > 0.0) and np.all(self.b_re > 0.0)
        )

    # Cached sums; keyed by the three weightings the bounds use.
    @cached_property
    def _sums_normalized(self):
        return kernels.aggregate_sums(
            self.p, self.a_re, self.a_im, self.b_re, self.b_im
        )

    @cached_property
    def _sums_raw(self):
        return kernels.aggregate_sums(
            self.w_arr, self.a_re, self.a_im, self.b_re, self.b_im
        )

    @cached_property
    def _sums_unit(self):
        ones = np.ones(self.n, dtype=np.float64)
        return kernels.aggregate_sums(
            ones, self.a_re, self.a_im, self.b_re, self.b_im
        )

    @cached_property
    def ratio(self) -> tuple[complex, ...]:
        """Ratio points z_k = a_k / conj(b_k); raises ZeroDenominator."""
        out = []
        for k in range(self.n):
            br = self.b_re[k]
            bi = self.b_im[k]
            if br == 0.0 and bi == 0.0:
                raise ZeroDenominator(k)
            z = complex(self.a_re[k], self.a_im[k]) / complex(br, -bi)
            out.append(z)
        return tuple(out)

    @cached_property
    def ratio_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        z = self.ratio
        zr = np.array([v.real for v in z], dtype=np.float64)
        zi = np.array([v.imag for v in z], dtype=np.float64)
        zr.flags.writeable = False
        zi.flags.writeable = False
        return zr, zi


@dataclass(frozen=True)
class CbsAggregates:
    """The three recurring weighted sums plus derived gap quantities.

    gap = s_aa*s_bb - |s_ab|^2 is the quantity the additive reverses bound;
    re_ab equals Re(s_ab) (the componentwise compensated sums coincide).
    """

    s_aa: float
    s_bb: float
    s_ab: complex
    gap: float
    re_ab: float

    @classmethod
    def from_sums(cls, saa: float, sbb: float, sre: float, sim: float):
        sab = complex(sre, sim)
        return cls(
            s_aa=saa,
            s_bb=sbb,
            s_ab=sab,
            gap=saa * sbb - (sre * sre + sim * sim),
            re_ab=sre,
        )


def aggregates(
    ds: WeightedDataset, policy: TolerancePolicy = DEFAULT_POLICY
) -> CbsAggregates:
    """Weighted aggregates of a dataset using the normalized weights.

    With policy.normalize_weights=False the raw weights are used as-is (the
    caller asserts they already sum to one).
    """
    sums = ds._sums_normalized if policy.normalize_weights else ds._sums_raw
    return CbsAggregates.from_sums(*sums)


def raw_aggregates(ds: WeightedDataset) -> CbsAggregates:
    """Aggregates over the raw (unnormalized) weights."""
    return CbsAggregates.from_sums(*ds._sums_raw)


def unit_aggregates(ds: WeightedDataset) -> CbsAggregates:
    """Unweighted aggregates (w_k = 1), as the classical unweighted bounds use."""
    return CbsAggregates.from_sums(*ds._sums_unit)


def ratio_points(ds: WeightedDataset) -> tuple[complex, ...]:
    """z_k = a_k / conj(b_k) for each k, order preserving."""
    return ds.ratio


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality.

    The full printed chain is lhs <= rhs_chain[0] <= rhs_chain[1] <= ...;
    slack and tightness refer to the first link. Hypothesis failure is data,
    not an error: the report still carries both sides.
    """

    bound_id: str
    hypothesis_ok: bool
    hypothesis_margin: float
    lhs: float
    rhs_chain: tuple[float, ...]
    slack: float
    tightness: float
    notes: tuple[str, ...] = ()
    hypothesis_worst_index: int = -1
    scale_hint: float = 0.0

    @property
    def chain(self) -> tuple[float, ...]:
        """All chain members including the left side, in printed order."""
        return (self.lhs,) + self.rhs_chain

    @property
    def scale(self) -> float:
        """Tolerance scale max(1, |lhs|, max |rhs|, hint).

        The hint is the magnitude of the quantities the members were computed
        from (e.g. s_aa*s_bb for gap-type members whose value can be pure
        cancellation residue); without it, near-zero members of large
        products would be held to an unattainable absolute tolerance.
        """
        m = max(1.0, abs(self.lhs), self.scale_hint)
        for v in self.rhs_chain:
            av = abs(v)
            if av > m:
                m = av
        return m

    def violation(self, tol: float) -> float:
        """Worst relative exceedance of lhs over any chain member (0 if sound).

        Only meaningful when the hypothesis holds; a positive value beyond
        ``tol`` means the claimed upper bound failed.
        """
        worst = 0.0
        s = self.scale
        for v in self.rhs_chain:
            exceed = (self.lhs - v) / s
            if exceed > worst:
                worst = exceed
        return worst if worst > tol else 0.0


def make_report(
    bound_id: str,
    hypothesis_ok: bool,
    hypothesis_margin: float,
    lhs: float,
    rhs_chain: Sequence[float],
    notes: Sequence[str] = (),
    hypothesis_worst_index: int = -1,
    scale_hint: float = 0.0,
) -> BoundReport:
    chain = tuple(float(v) for v in rhs_chain)
    first = chain[0]
    return BoundReport(
        bound_id=bound_id,
        hypothesis_ok=hypothesis_ok,
        hypothesis_margin=float(hypothesis_margin),
        lhs=float(lhs),
        rhs_chain=chain,
        slack=first - lhs,
        tightness=(lhs / first) if first > 0.0 else 0.0,
        notes=tuple(notes),
        hypothesis_worst_index=hypothesis_worst_index,
        scale_hint=float(scale_hint),
    )
