"""Tests for the float, fixed-point and LUT kernels."""

from decimal import ROUND_HALF_UP, Decimal

import numpy as np
import pytest
from scipy.stats import norm

from fast_polar.errors import CorruptionError, ParameterError
from fast_polar.kernels import (
    FixedFormat,
    FixedKernel,
    FloatKernel,
    LutKernel,
    combine,
    combine_zero_left,
    default_channel_scale,
    f_fixed,
    f_float,
    g_fixed,
    g_float,
    make_kernel,
    quantize_channel_llr,
)
from fast_polar.quantdesign import channel_llr_parameters, design_channel_quantizer, design_luts, relabel_map
from fast_polar.quantdesign.channel import sigma_from_ebn0


@pytest.fixture(scope="module")
def lut_kernels():
    channel = design_channel_quantizer(sigma_from_ebn0(3.0, 0.5), 16)
    ms = design_luts(8, channel, "ms-ib")
    return {
        "ib": LutKernel(design_luts(8, channel, "ib")),
        "ms-ib": LutKernel(ms),
        "re-ms-ib": LutKernel(design_luts(8, channel, "re-ms-ib")),
    }


class TestFloatKernel:
    """Min-sum f and the g update on reals."""

    def test_f_examples(self):
        assert f_float(2.0, -3.0) == -2.0
        assert f_float(0.0, -7.0) == 0.0
        assert f_float(-1.5, -4.0) == 1.5

    def test_g_examples(self):
        assert g_float(1.0, 2.0, 0) == 3.0
        assert g_float(1.0, 2.0, 1) == 1.0
        assert g_float(1.0, 2.0, 0) + g_float(-1.0, 2.0, 0) == 4.0

    def test_exhaustive_small_integers(self):
        values = np.arange(-4, 5, dtype=float)
        a, b = np.meshgrid(values, values, indexing="ij")
        expected_f = np.where(a * b < 0, -1, 1) * np.minimum(abs(a), abs(b))
        assert np.array_equal(f_float(a, b), expected_f)
        assert np.array_equal(g_float(a, b, np.zeros_like(a)), a + b)
        assert np.array_equal(g_float(a, b, np.ones_like(a)), b - a)

    def test_hard_decision(self):
        kernel = FloatKernel()
        assert kernel.hard_decision(np.array([0.0, -0.0, 2.0, -1e-9])).tolist() == [0, 0, 0, 1]
        llr = np.array([0.5, -3.0, 7.25])
        assert np.array_equal(kernel.hard_decision(-llr), 1 - kernel.hard_decision(llr))


class TestFixedKernel:
    """Saturating Qi.Qc arithmetic."""

    def setup_method(self):
        self.fmt = FixedFormat(5, 4)

    def test_format(self):
        assert self.fmt.internal_max == 15
        assert self.fmt.channel_max == 7
        assert FixedFormat.parse("5.4") == self.fmt
        assert str(self.fmt) == "5.4"

    def test_invalid_format(self):
        with pytest.raises(ParameterError):
            FixedFormat(3, 4)
        with pytest.raises(ParameterError):
            FixedFormat(2, 1)
        with pytest.raises(ParameterError):
            FixedFormat.parse("5-4")

    def test_saturating_examples(self):
        assert g_fixed(7, 12, 0, self.fmt) == 15
        assert g_fixed(7, 12, 1, self.fmt) == 5
        assert g_fixed(-12, -7, 0, self.fmt) == -15
        assert f_fixed(-15, 15, self.fmt) == -15

    def test_matches_float_without_saturation(self):
        values = np.arange(-7, 8)
        a, b = np.meshgrid(values, values, indexing="ij")
        for bit in (0, 1):
            bits = np.full(a.shape, bit)
            assert np.array_equal(g_fixed(a, b, bits, self.fmt), g_float(a, b, bits))
        assert np.array_equal(f_fixed(a, b, self.fmt), f_float(a, b))

    def test_channel_quantization(self):
        assert quantize_channel_llr(0.0, self.fmt, 2.0) == 0
        assert quantize_channel_llr(1e6, self.fmt, 2.0) == 7
        assert quantize_channel_llr(-1e6, self.fmt, 2.0) == -7
        with pytest.raises(ParameterError):
            quantize_channel_llr(1.0, self.fmt, 0.0)

    def test_round_half_away_from_zero(self):
        grid = np.arange(-20, 21) / 4.0
        expected = [int(Decimal(str(v)).quantize(Decimal("1"), rounding=ROUND_HALF_UP)) for v in grid]
        assert quantize_channel_llr(grid, self.fmt, 1.0).tolist() == expected

    def test_default_scale_saturation(self):
        sigma = sigma_from_ebn0(3.0, 0.5)
        scale = default_channel_scale(self.fmt, sigma)
        mu, s = channel_llr_parameters(sigma)
        level = (self.fmt.channel_max + 0.5) / scale
        tail = norm.sf(level, loc=mu, scale=s) + norm.cdf(-level, loc=mu, scale=s)
        assert tail == pytest.approx(0.01, rel=1e-6)

    def test_kernel_maps_channel(self):
        kernel = FixedKernel(self.fmt, 1.0)
        assert kernel.name == "fixed:5.4"
        assert kernel.map_channel(np.array([0.4, -2.5, 30.0])).tolist() == [0, -3, 7]
        with pytest.raises(ParameterError):
            FixedKernel(self.fmt, -1.0)


class TestCombine:
    """Bit-estimate combination."""

    def test_examples(self):
        assert combine(np.array([0, 0]), np.array([1, 0])).tolist() == [1, 0, 1, 0]
        same = np.array([1, 0, 1, 1])
        assert combine(same, same).tolist() == [0, 0, 0, 0, 1, 0, 1, 1]
        assert combine_zero_left(np.array([1, 1])).tolist() == [1, 1, 1, 1]

    def test_batched(self):
        beta_l = np.array([[1, 0], [0, 1]])
        beta_r = np.array([[1, 1], [0, 0]])
        assert combine(beta_l, beta_r).tolist() == [[0, 1, 1, 1], [0, 1, 0, 0]]

    def test_length_mismatch(self):
        with pytest.raises(ParameterError):
            combine(np.array([0, 1]), np.array([1]))


class TestLutKernel:
    """Table lookups over designed LUT sets."""

    def test_minsum_examples(self, lut_kernels):
        assert lut_kernels["ms-ib"].f(np.array([15]), np.array([15]), 1)[0] == 15
        assert lut_kernels["re-ms-ib"].f(np.array([8]), np.array([8]), 1)[0] == 8

    def test_hard_decision_msb_rule(self, lut_kernels):
        kernel = lut_kernels["ib"]
        assert kernel.hard_decision(np.array([8]))[0] == 0
        assert kernel.hard_decision(np.array([7]))[0] == 1
        t = np.arange(16)
        assert np.array_equal(kernel.hard_decision(15 - t), 1 - kernel.hard_decision(t))
        rho = relabel_map(16)
        assert np.array_equal(lut_kernels["re-ms-ib"].hard_decision(rho[t]), kernel.hard_decision(t))

    def test_g_flip_symmetry(self, lut_kernels):
        kernel = lut_kernels["ib"]
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        for node in range(1, 8):
            ones = kernel.g(a, b, np.ones_like(a), node)
            assert np.array_equal(ones, kernel.g(15 - a, b, np.zeros_like(a), node))

    def test_relabeled_kernel_is_conjugate(self, lut_kernels):
        ms, re = lut_kernels["ms-ib"], lut_kernels["re-ms-ib"]
        assert re.use_circuit
        rho = relabel_map(16)
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        for node in range(1, 8):
            assert np.array_equal(re.f(rho[a], rho[b], node), rho[ms.f(a, b, node)])
            for bit in (0, 1):
                bits = np.full(a.shape, bit)
                assert np.array_equal(re.g(rho[a], rho[b], bits, node), rho[ms.g(a, b, bits, node)])

    def test_circuit_equals_table(self, lut_kernels):
        table_kernel = LutKernel(lut_kernels["re-ms-ib"].lut_set, use_circuit=False)
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        assert np.array_equal(table_kernel.f(a, b, 3), lut_kernels["re-ms-ib"].f(a, b, 3))

    def test_circuit_needs_relabeled_set(self, lut_kernels):
        with pytest.raises(ParameterError):
            LutKernel(lut_kernels["ms-ib"].lut_set, use_circuit=True)

    def test_channel_mapping_is_relabeled(self, lut_kernels):
        llr = np.linspace(-20, 20, 201)
        rho = relabel_map(16)
        assert np.array_equal(lut_kernels["re-ms-ib"].map_channel(llr), rho[lut_kernels["ms-ib"].map_channel(llr)])

    def test_out_of_range_message(self, lut_kernels):
        with pytest.raises(CorruptionError):
            lut_kernels["ib"].f(np.array([16]), np.array([3]), 1)
        with pytest.raises(CorruptionError):
            lut_kernels["ib"].g(np.array([2]), np.array([-1]), np.array([0]), 1)

    def test_missing_node(self, lut_kernels):
        with pytest.raises(CorruptionError):
            lut_kernels["ib"].f(np.array([1]), np.array([3]), 99)


class TestMakeKernel:
    """Kernel specs."""

    def test_float_and_fixed(self, code_8_5):
        assert isinstance(make_kernel("float", code_8_5), FloatKernel)
        fixed = make_kernel("fixed:5.4", code_8_5, channel_scale=1.5)
        assert isinstance(fixed, FixedKernel)
        assert fixed.scale == 1.5
        assert make_kernel("fixed:6.4", code_8_5).scale > 0

    def test_lut_kernel_from_set(self, code_8_5, lut_kernels):
        kernel = make_kernel("ms-ib", code_8_5, lut_set=lut_kernels["ms-ib"].lut_set)
        assert isinstance(kernel, LutKernel)
        assert kernel.lut_set is lut_kernels["ms-ib"].lut_set

    def test_designs_when_no_set_given(self, code_8_5):
        kernel = make_kernel("ib", code_8_5, levels=8, grid_size=512)
        assert kernel.size == 8
        assert kernel.lut_set.table_count == 14

    def test_bad_specs(self, code_8_5, code_128_64, lut_kernels):
        with pytest.raises(ParameterError):
            make_kernel("bogus", code_8_5)
        with pytest.raises(ParameterError):
            make_kernel("fixed:5", code_8_5)
        with pytest.raises(ParameterError):
            make_kernel("ib", code_8_5, lut_set=lut_kernels["ms-ib"].lut_set)
        with pytest.raises(ParameterError):
            make_kernel("ms-ib", code_128_64, lut_set=lut_kernels["ms-ib"].lut_set)
