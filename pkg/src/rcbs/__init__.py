"""Reverse Cauchy-Bunyakovsky-Schwarz bounds for weighted complex n-tuples.

Evaluates the classical real reverses (Polya-Szego, Shisha-Mond, Ozeki,
Diaz-Metcalf, Cassels, Grueb-Reinboldt, Klamkin-McLenaghan and the
generalized Diaz-Metcalf form) and their complex disk/band/offset-condition
counterparts, fits the tightest hypothesis parameters, and confirms each
sharp constant empirically from the proofs' extremal configurations.
"""

from .backend import active_backend
from .bounds import (
    ADDITIVE_VARIANTS,
    PRODUCT_VARIANTS,
    DmWeights,
    GdmRatio,
    KmVariant,
    Thm31Form,
    additive_classical_bounds,
    product_ratio_bounds,
    thm21_bound,
    thm22_bounds,
    thm24_bound,
    thm31_bounds,
    thm41_bounds,
    thm51_gap_bound,
    thm52_bounds,
    thm61_bound,
    thm62_bounds,
)
from .conditions import (
    Band,
    ConditionVerdict,
    Disk,
    RealBandParams,
    band_forms,
    check_band,
    check_disk,
    check_offset,
    check_real_band,
    check_transformed_band,
    transformed_forms,
)
from .core import (
    BoundReport,
    CbsAggregates,
    DEFAULT_POLICY,
    TolerancePolicy,
    WeightedDataset,
    aggregates,
    ratio_points,
)
from .errors import (
    EmptyInput,
    EquivalenceMismatch,
    Inapplicable,
    InvalidParams,
    InvariantViolation,
    ParseError,
    RcbsError,
    UnknownTheorem,
    ZeroDenominator,
)
from .fitting import (
    Applicability,
    FitResult,
    fit,
    fit_band,
    fit_offset_radius,
    min_enclosing_disk,
)
from .witnesses import (
    EXPECTED_CONSTANTS,
    THEOREM_IDS,
    SweepResult,
    WitnessConfig,
    check_witness,
    default_schedule,
    make_witness,
    sharpness_sweep,
    witness_report,
)

__version__ = "0.1.0"
