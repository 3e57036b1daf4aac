"""Condition checkers, per-term margins, and the proved equivalences."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_complex_dataset
from rcbs import (
    Band,
    Disk,
    InvalidParams,
    WeightedDataset,
    ZeroDenominator,
    band_forms,
    check_band,
    check_disk,
    check_offset,
    check_real_band,
    check_transformed_band,
    transformed_forms,
)


class TestDiskType:
    def test_negative_radius_rejected(self):
        with pytest.raises(InvalidParams):
            Disk(1 + 0j, -0.5)

    def test_regular_flag(self):
        assert Disk(2 + 0j, 1.0).is_regular()
        assert not Disk(1 + 0j, 1.0).is_regular()
        assert not Disk(0.5 + 0j, 1.0).is_regular()


class TestBandType:
    def test_equal_endpoints_rejected(self):
        with pytest.raises(InvalidParams):
            Band(1 + 1j, 1 + 1j)

    def test_derived_quantities(self):
        band = Band(1 + 0j, 3 + 0j)
        assert band.center == 2 + 0j
        assert band.radius == 1.0
        assert band.re_gg == 3.0
        assert band.sum_nonzero

    def test_sum_zero_flag(self):
        assert not Band(-1 - 1j, 1 + 1j).sum_nonzero

    def test_center_radius_identity_random(self):
        rng = np.random.default_rng(3)
        for _ in range(500):
            g, G = (complex(*rng.uniform(-10, 10, 2)) for _ in range(2))
            if g == G:
                continue
            band = Band(g, G)
            lhs = abs(band.center) ** 2 - band.radius**2
            scale = max(1.0, abs(lhs), abs(band.re_gg))
            assert abs(lhs - band.re_gg) <= 1e-12 * scale


class TestCheckDisk:
    def test_boundary_pair(self):
        v = check_disk(WeightedDataset([3, 1], [1, 1]), Disk(2 + 0j, 1.0))
        assert v.holds
        assert v.worst_margin == 0.0
        assert v.per_term == (0.0, 0.0)

    def test_point_disk(self):
        v = check_disk(WeightedDataset([2], [1]), Disk(2 + 0j, 0.0))
        assert v.holds and v.worst_margin == 0.0

    def test_failure_margin_and_index(self):
        v = check_disk(WeightedDataset([3, 1], [1, 1]), Disk(2 + 0j, 0.5))
        assert not v.holds
        assert v.worst_margin == -0.5
        assert v.worst_index == 0

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            check_disk(WeightedDataset([1], [0]), Disk(0j, 1.0))

    def test_radius_monotonicity(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            ds = random_complex_dataset(rng, n_max=8)
            if not ds.b_nonzero:
                continue
            alpha = complex(*rng.uniform(-5, 5, 2))
            r = float(rng.uniform(0.0, 5.0))
            dr = float(rng.uniform(0.0, 3.0))
            v1 = check_disk(ds, Disk(alpha, r))
            v2 = check_disk(ds, Disk(alpha, r + dr))
            if v1.holds:
                assert v2.holds
            for m1, m2 in zip(v1.per_term, v2.per_term):
                assert abs((m2 - m1) - dr) <= 1e-12 * max(1.0, abs(m1), abs(m2))


class TestCheckBand:
    def test_real_band_reduces_to_disk(self):
        ds = WeightedDataset([3, 1], [1, 1])
        v = check_band(ds, Band(1 + 0j, 3 + 0j))
        assert v.holds and v.worst_margin == 0.0

    def test_endpoint_is_boundary(self):
        g = 0.7 + 0.3j
        ds = WeightedDataset([g], [1])
        v = check_band(ds, Band(g, 2 + 1j))
        assert v.holds
        assert v.worst_margin == pytest.approx(0.0, abs=1e-15)

    def test_center_point_margin(self):
        band = Band(1 + 0j, 2 + 1j)
        ds = WeightedDataset([1.5 + 0.5j], [1])
        v = check_band(ds, band)
        assert v.holds
        assert v.worst_margin == pytest.approx(math.sqrt(2) / 2, abs=1e-15)

    def test_verdict_bit_for_bit_with_disk(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            ds = random_complex_dataset(rng, n_max=8)
            if not ds.b_nonzero:
                continue
            g, G = (complex(*rng.uniform(-5, 5, 2)) for _ in range(2))
            if g == G:
                continue
            band = Band(g, G)
            vb = check_band(ds, band)
            vd = check_disk(ds, band.disk())
            assert vb == vd


class TestCheckRealBand:
    def test_componentwise_extrema(self):
        params = check_real_band(WeightedDataset([3, 1], [1, 1]))
        assert params is not None
        assert (params.m, params.M) == (1.0, 3.0)
        assert (params.m1, params.M1) == (1.0, 3.0)
        assert (params.m2, params.M2) == (1.0, 1.0)

    def test_constant_ratio(self):
        params = check_real_band(WeightedDataset([1, 1], [1, 1]))
        assert params is not None and params.m == params.M == 1.0

    def test_inapplicable_complex(self):
        assert check_real_band(WeightedDataset([1j, 1], [1, 1])) is None

    def test_inapplicable_nonpositive(self):
        assert check_real_band(WeightedDataset([-1, 1], [1, 1])) is None
        assert check_real_band(WeightedDataset([1, 1], [0, 1])) is None


class TestCheckOffset:
    def test_proof_configuration(self):
        ds = WeightedDataset([1, 1], [1.5, 0.5])
        v = check_offset(ds, 0.5, require_strict=True)
        assert v.holds
        assert v.per_term[0] == pytest.approx(0.0, abs=1e-15)

    def test_conjugate_b(self):
        v = check_offset(WeightedDataset([1], [1]), 0.1, require_strict=True)
        assert v.holds

    def test_part_one_failure(self):
        v = check_offset(WeightedDataset([1], [3]), 1.0, require_strict=True)
        assert not v.holds
        assert v.per_term[0] == pytest.approx(-3.0)
        assert v.worst_index == 0

    def test_strict_part_failure(self):
        # offset fine but r^2 >= s_aa
        v = check_offset(WeightedDataset([1], [1]), 2.0, require_strict=True)
        assert not v.holds
        v2 = check_offset(WeightedDataset([1], [1]), 2.0, require_strict=False)
        assert v2.holds

    def test_r_must_be_positive(self):
        with pytest.raises(InvalidParams):
            check_offset(WeightedDataset([1], [1]), 0.0, require_strict=False)


class TestCheckTransformedBand:
    def test_boundary_pair(self):
        ds = WeightedDataset([3, 1], [1, 1])
        v = check_transformed_band(ds, Band(1 + 0j, 3 + 0j))
        assert v.holds
        assert v.worst_margin == pytest.approx(0.0, abs=1e-15)

    def test_zero_vectors_legal(self):
        ds = WeightedDataset([0], [0])
        v = check_transformed_band(ds, Band(1 + 0j, 3 + 0j))
        assert v.holds and v.worst_margin == 0.0

    def test_failure_value(self):
        ds = WeightedDataset([5], [1])
        v = check_transformed_band(ds, Band(1 + 0j, 3 + 0j))
        assert not v.holds
        assert v.worst_margin == pytest.approx(-8.0)


finite = st.floats(-10, 10, allow_nan=False)
cnum = st.tuples(finite, finite).map(lambda t: complex(*t))


@given(cnum, cnum, cnum)
@settings(deadline=None)
def test_pointwise_band_identity(z, g, G):
    quad, disk = band_forms(z, g, G)
    scale = max(1.0, abs(z) ** 2, abs(g) ** 2, abs(G) ** 2)
    assert abs(quad - disk) <= 1e-12 * scale


@given(cnum, cnum, cnum, cnum)
@settings(deadline=None)
def test_pointwise_transformed_identity(x, y, g, G):
    quad, disk = transformed_forms(x, y, g, G)
    scale = max(1.0, abs(x) ** 2, abs(y) ** 2, abs(g) ** 2, abs(G) ** 2)
    assert abs(quad - disk) <= 1e-12 * scale * max(1.0, abs(y) ** 2)
