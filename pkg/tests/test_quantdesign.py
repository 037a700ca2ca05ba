"""Tests for IB quantizers, density evolution and LUT design."""

import os
import unittest

import numpy as np
import pytest

from fast_polar.errors import DesignError, ParameterError
from fast_polar.quantdesign import (
    EdgeDistribution,
    Labeling,
    LutVariant,
    MessageAlphabet,
    awgn_capacity,
    bsc_distribution,
    conjugate_f_table,
    conjugate_g_table,
    design_channel_quantizer,
    design_luts,
    f_density,
    flip_label,
    g_density,
    ib_quantize,
    minsum_lut,
    mutual_information,
    natural_minsum_circuit,
    relabel_lut_set,
    relabel_map,
    relabeled_minsum_circuit,
    sigma_from_ebn0,
)

SLOW = os.environ.get("FAST_POLAR_SLOW") == "1"


def binary_entropy(p):
    if p in (0.0, 1.0):
        return 0.0
    return float(-p * np.log2(p) - (1 - p) * np.log2(1 - p))


def random_symmetric_source(rng, positive_symbols):
    """Symmetric pmf over 2*positive_symbols symbols, sorted by LLR, plus the positive-half masses."""
    ratio = np.sort(rng.uniform(0.51, 0.99, size=positive_symbols))
    weight = rng.uniform(0.1, 1.0, size=positive_symbols)
    h0, h1 = ratio * weight, (1 - ratio) * weight
    total = 2 * weight.sum()
    h0, h1 = h0 / total, h1 / total
    joint = np.stack([np.concatenate([h1[::-1], h0]), np.concatenate([h0[::-1], h1])])
    return joint, h0, h1


def partition_information(h0, h1, cuts):
    """I(X;T) of the symmetric contiguous partition of the positive half at ``cuts``."""
    edges = [0] + list(cuts) + [h0.shape[0]]
    q0 = np.array([h0[a:b].sum() for a, b in zip(edges, edges[1:])])
    q1 = np.array([h1[a:b].sum() for a, b in zip(edges, edges[1:])])
    joint = np.stack([np.concatenate([q1[::-1], q0]), np.concatenate([q0[::-1], q1])])
    return mutual_information(joint)


class TestAlphabets:
    """Labelings, relabeling and edge distributions."""

    def test_relabel_map_of_eight(self):
        assert relabel_map(8).tolist() == [3, 2, 1, 0, 4, 5, 6, 7]

    def test_relabel_map_of_sixteen(self):
        rho = relabel_map(16)
        assert rho[:8].tolist() == list(range(7, -1, -1))
        assert rho[8:].tolist() == list(range(8, 16))

    def test_relabel_map_is_involution_keeping_msb(self):
        for size in (2, 4, 8, 16, 32):
            rho = relabel_map(size)
            assert np.array_equal(rho[rho], np.arange(size))
            assert np.array_equal(rho >= size // 2, np.arange(size) >= size // 2)

    def test_relabel_map_rejects_odd_size(self):
        with pytest.raises(ParameterError):
            relabel_map(6)

    def test_flip_label(self):
        assert flip_label(0, 8) == 7
        assert flip_label(4, 8) == 3

    def test_message_alphabet_validation(self):
        MessageAlphabet(4, (-2.0, -0.5, 0.5, 2.0))
        with pytest.raises(ParameterError):
            MessageAlphabet(4, (-2.0, 0.5, -0.5, 2.0))
        with pytest.raises(ParameterError):
            MessageAlphabet(4, (-2.0, -0.5, 0.5, 3.0))
        with pytest.raises(ParameterError):
            MessageAlphabet(4, (-1.0, 1.0))

    def test_relabeled_alphabet_meaning(self):
        natural = MessageAlphabet(4, (-2.0, -0.5, 0.5, 2.0))
        relabeled = natural.relabeled()
        assert relabeled.labeling is Labeling.RELABELED
        assert relabeled.llr(1) == natural.llr(0)
        assert relabeled.llr(0) == natural.llr(1)
        assert relabeled.llr(3) == natural.llr(3)

    def test_bsc_information(self):
        assert bsc_distribution(0.0).mutual_information == pytest.approx(1.0)
        assert bsc_distribution(0.5).mutual_information == pytest.approx(0.0, abs=1e-12)
        assert bsc_distribution(0.11).mutual_information == pytest.approx(1 - binary_entropy(0.11))
        assert bsc_distribution(0.11).error_probability == pytest.approx(0.11)

    def test_edge_distribution_validation(self):
        with pytest.raises(ParameterError):
            EdgeDistribution(np.array([[0.3, 0.3], [0.3, 0.3]]))
        with pytest.raises(ParameterError):
            EdgeDistribution(np.array([[0.6, -0.1], [0.25, 0.25]]))
        with pytest.raises(ParameterError):
            EdgeDistribution(np.ones((3, 2)) / 6)


class TestIBQuantizer:
    """Optimal contiguous quantizer."""

    def setup_method(self):
        self.rng = np.random.default_rng(7)

    def test_two_levels_is_sign_quantizer(self):
        joint, _, _ = random_symmetric_source(self.rng, 5)
        mapping, dist = ib_quantize(joint, 2)
        assert mapping.tolist() == [0] * 5 + [1] * 5
        assert dist.size == 2

    def test_full_size_is_identity(self):
        joint, _, _ = random_symmetric_source(self.rng, 4)
        mapping, dist = ib_quantize(joint, 8)
        assert mapping.tolist() == list(range(8))
        assert dist.mutual_information == pytest.approx(mutual_information(joint))

    def test_labels_ascend_with_llr(self):
        joint, _, _ = random_symmetric_source(self.rng, 20)
        order = self.rng.permutation(40)
        mapping, _ = ib_quantize(joint[:, order], 8)
        restored = np.empty(40, dtype=np.int64)
        restored[order] = mapping
        assert np.all(np.diff(restored) >= 0)

    def test_output_is_antisymmetric(self):
        joint, _, _ = random_symmetric_source(self.rng, 30)
        _, dist = ib_quantize(joint, 16)
        assert np.allclose(dist.joint[0], dist.joint[1][::-1])
        alphabet = dist.alphabet()
        assert np.allclose(alphabet.llr_values, -np.asarray(alphabet.llr_values)[::-1])

    def test_zero_llr_symbol_goes_to_upper_half(self):
        joint = np.array([[0.05, 0.1, 0.2, 0.3], [0.3, 0.1, 0.2, 0.05]])
        joint = joint / joint.sum()
        mapping, _ = ib_quantize(joint, 2)
        assert mapping[1] == 1 and mapping[2] == 1
        assert mapping[0] == 0 and mapping[3] == 1

    def test_dp_dominates_random_partitions(self):
        self._check_dominance(trials=300)

    @unittest.skipUnless(SLOW, "long-running; set FAST_POLAR_SLOW=1")
    def test_dp_dominates_many_random_partitions(self):
        self._check_dominance(trials=10_000)

    def _check_dominance(self, trials):
        for _ in range(5):
            joint, h0, h1 = random_symmetric_source(self.rng, 6)
            _, dist = ib_quantize(joint, 4)
            best = dist.mutual_information
            for _ in range(trials // 5):
                cut = int(self.rng.integers(1, 6))
                assert best >= partition_information(h0, h1, [cut]) - 1e-12

    def test_information_grows_with_levels(self):
        joint, _, _ = random_symmetric_source(self.rng, 64)
        values = [ib_quantize(joint, levels)[1].mutual_information for levels in (2, 4, 8, 16, 32)]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] <= mutual_information(joint) + 1e-12

    def test_source_too_small(self):
        joint, _, _ = random_symmetric_source(self.rng, 2)
        with pytest.raises(DesignError):
            ib_quantize(joint, 8)
        _, dist = ib_quantize(joint, 8, shrink=True)
        assert dist.size == 4

    def test_unnormalized_source(self):
        with pytest.raises(ParameterError):
            ib_quantize(np.array([[0.2, 0.2], [0.2, 0.2]]), 2)

    def test_prebinned_source_stays_close(self):
        joint, _, _ = random_symmetric_source(self.rng, 400)
        exact = ib_quantize(joint, 8)[1].mutual_information
        binned = ib_quantize(joint, 8, max_symbols=64)[1].mutual_information
        assert binned <= exact + 1e-12
        assert binned == pytest.approx(exact, abs=5e-3)


class TestChannelQuantizer:
    """AWGN channel quantizer design."""

    def test_two_levels_threshold_at_zero(self):
        quantizer = design_channel_quantizer(0.8, 2)
        assert quantizer.thresholds.tolist() == [0.0]

    def test_information_chain(self):
        sigma = 0.7
        values = [design_channel_quantizer(sigma, levels).distribution.mutual_information
                  for levels in (2, 4, 8, 16)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert values[-1] <= awgn_capacity(sigma) + 1e-6

    def test_sixteen_levels_close_to_capacity(self):
        sigma = np.sqrt(0.25059)
        quantizer = design_channel_quantizer(sigma, 16)
        assert len(quantizer.thresholds) == 15
        assert np.allclose(quantizer.thresholds, -quantizer.thresholds[::-1])
        assert awgn_capacity(sigma) - quantizer.distribution.mutual_information < 0.01

    def test_quantize_search_rule(self):
        quantizer = design_channel_quantizer(0.8, 8)
        assert quantizer.quantize(0.0) == 4
        assert quantizer.quantize(-1e-9) == 3
        labels = quantizer.quantize(np.linspace(-50, 50, 1001))
        assert np.all(np.diff(labels) >= 0)
        assert labels.min() == 0 and labels.max() == 7

    def test_invalid_design(self):
        with pytest.raises(ParameterError):
            design_channel_quantizer(0.0, 16)
        with pytest.raises(ParameterError):
            design_channel_quantizer(0.8, 16, grid_size=64)


class TestPairDensities:
    """Check-node and variable-node pair densities against BSC closed forms."""

    def test_f_density_bsc(self):
        eps = 0.1
        bsc = bsc_distribution(eps)
        pair = f_density(bsc, bsc)
        expected = 1 - binary_entropy(2 * eps * (1 - eps))
        assert mutual_information(pair.joint) == pytest.approx(expected)
        assert pair.shape == (2, 2)

    def test_f_density_with_known_partner(self):
        eps = 0.2
        known = EdgeDistribution(np.array([[0.0, 0.5], [0.5, 0.0]]))
        pair = f_density(bsc_distribution(eps), known)
        assert mutual_information(pair.joint) == pytest.approx(1 - binary_entropy(eps))

    def test_g_density_bsc(self):
        eps = 0.1
        bsc = bsc_distribution(eps)
        pair = g_density(bsc, bsc)
        agree = (1 - eps) ** 2 + eps ** 2
        expected = agree * (1 - binary_entropy(eps ** 2 / agree))
        assert mutual_information(pair.joint) == pytest.approx(expected)

    def test_g_density_previous_bit_symmetry(self):
        dist = design_channel_quantizer(0.8, 8).distribution
        joint = g_density(dist, dist).joint.reshape(2, 8, 8, 2)
        assert np.allclose(joint[:, :, :, 1], joint[:, ::-1, :, 0])

    def test_alphabet_mismatch(self):
        with pytest.raises(DesignError):
            f_density(bsc_distribution(0.1), design_channel_quantizer(0.8, 4).distribution)
        with pytest.raises(DesignError):
            g_density(bsc_distribution(0.1), design_channel_quantizer(0.8, 4).distribution)


class TestMinSumTables:
    """Closed-form min-sum table and its two circuits."""

    def test_eight_level_examples(self):
        table = minsum_lut(8)
        assert table[7, 7] == 7
        assert table[0, 7] == 0
        assert table[0, 0] == 7

    @pytest.mark.parametrize("size", [4, 8, 16])
    def test_matches_real_arithmetic(self, size):
        delta = (size - 1) / 2
        table = minsum_lut(size)
        for ta in range(size):
            for tb in range(size):
                a, b = ta - delta, tb - delta
                out = np.sign(a) * np.sign(b) * min(abs(a), abs(b)) + delta
                assert table[ta, tb] == int(out)

    @pytest.mark.parametrize("size", [4, 8, 16])
    def test_circuits_match_table(self, size):
        ta, tb = np.meshgrid(np.arange(size), np.arange(size), indexing="ij")
        table = minsum_lut(size)
        assert np.array_equal(natural_minsum_circuit(ta, tb, size), table)
        relabeled = conjugate_f_table(table, relabel_map(size))
        assert np.array_equal(relabeled_minsum_circuit(ta, tb, size), relabeled)


@pytest.fixture(scope="module")
def channel_8():
    return design_channel_quantizer(sigma_from_ebn0(3.0, 0.5), 16)


@pytest.fixture(scope="module")
def lut_sets_8(channel_8):
    ib = design_luts(8, channel_8, "ib")
    ms = design_luts(8, channel_8, "ms-ib")
    re = design_luts(8, channel_8, "re-ms-ib")
    return {"ib": ib, "ms-ib": ms, "re-ms-ib": re}


class TestLutDesign:
    """Per-node tables of the three LUT variants."""

    def test_table_count(self, lut_sets_8):
        for lut_set in lut_sets_8.values():
            assert lut_set.table_count == 14
            assert sorted(lut_set.f_tables) == list(range(1, 8))
            assert lut_set.leaf_error_probabilities.shape == (8,)

    def test_minsum_variants_share_one_f_table(self, lut_sets_8):
        assert lut_sets_8["ms-ib"].distinct_f_tables() == 1
        assert lut_sets_8["re-ms-ib"].distinct_f_tables() == 1
        assert np.array_equal(lut_sets_8["ms-ib"].f_tables[1], minsum_lut(16))

    def test_relabeled_set_is_conjugate(self, lut_sets_8):
        ms, re = lut_sets_8["ms-ib"], lut_sets_8["re-ms-ib"]
        rho = relabel_map(16)
        assert re.alphabet.labeling is Labeling.RELABELED
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        for node in range(1, 8):
            assert np.array_equal(re.f_tables[node][rho[a], rho[b]], rho[ms.f_tables[node][a, b]])
            for bit in (0, 1):
                assert np.array_equal(re.g_tables[node][rho[a], rho[b], bit],
                                      rho[ms.g_tables[node][a, b, bit]])
        assert np.array_equal(re.g_tables[3], conjugate_g_table(ms.g_tables[3], rho))

    def test_relabel_lut_set_matches_design(self, lut_sets_8):
        relabeled = relabel_lut_set(lut_sets_8["ms-ib"])
        for node in range(1, 8):
            assert np.array_equal(relabeled.g_tables[node], lut_sets_8["re-ms-ib"].g_tables[node])
        with pytest.raises(ParameterError):
            relabel_lut_set(lut_sets_8["ib"])

    def test_f_output_sign(self, lut_sets_8):
        a, b = np.meshgrid(np.arange(16), np.arange(16), indexing="ij")
        same_sign = (a >= 8) == (b >= 8)
        for variant in ("ib", "ms-ib"):
            for table in lut_sets_8[variant].f_tables.values():
                assert np.array_equal(table >= 8, same_sign)

    def test_g_tables_flip_symmetry(self, lut_sets_8):
        flipped = flip_label(np.arange(16), 16)
        for variant in ("ib", "ms-ib"):
            for table in lut_sets_8[variant].g_tables.values():
                assert np.array_equal(table[:, :, 1], table[flipped, :, 0])

    def test_g_tables_monotone_in_second_input(self, lut_sets_8):
        for table in lut_sets_8["ib"].g_tables.values():
            assert np.all(np.diff(table[:, :, 0].astype(int), axis=1) >= 0)
        for variant in ("ib", "ms-ib"):
            root = lut_sets_8[variant].g_tables[1]
            assert np.all(np.diff(root[:, :, 0].astype(int), axis=1) >= 0)

    def test_node_llr_meanings_recorded(self, lut_sets_8):
        node_llr = lut_sets_8["ib"].node_llr
        assert sorted(node_llr) == list(range(1, 16))
        assert all(values.shape == (16,) for values in node_llr.values())

    def test_variant_names(self, lut_sets_8):
        assert lut_sets_8["re-ms-ib"].variant is LutVariant.RE_MS_IB
        assert lut_sets_8["re-ms-ib"].relabeled
        assert not lut_sets_8["ms-ib"].relabeled

    def test_non_power_of_two_alphabet(self):
        quantizer = design_channel_quantizer(0.8, 6, grid_size=64)
        with pytest.raises(DesignError):
            design_luts(8, quantizer, "ib")

    def test_worse_leaves_come_first(self, lut_sets_8):
        errors = lut_sets_8["ib"].leaf_error_probabilities
        assert errors[0] > errors[7]
        assert np.all((errors >= 0) & (errors <= 0.5))
