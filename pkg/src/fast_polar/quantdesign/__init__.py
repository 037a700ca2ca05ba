"""Information-bottleneck quantizers, density evolution and LUT design."""

from .channel import (
    ChannelQuantizer,
    awgn_capacity,
    channel_llr_parameters,
    design_channel_quantizer,
    sigma_from_ebn0,
)
from .density import PairDensity, boxplus, f_density, g_density, push_through_table
from .ib import (
    EdgeDistribution,
    Labeling,
    MessageAlphabet,
    bsc_distribution,
    flip_label,
    ib_quantize,
    llr_values,
    mutual_information,
    relabel_map,
)
from .luts import (
    LutSet,
    LutVariant,
    bit_channel_error_probabilities,
    conjugate_f_table,
    conjugate_g_table,
    design_luts,
    lut_set_from_tables,
    minsum_lut,
    natural_minsum_circuit,
    relabel_lut_set,
    relabeled_minsum_circuit,
)

__all__ = [
    "ChannelQuantizer",
    "EdgeDistribution",
    "Labeling",
    "LutSet",
    "LutVariant",
    "MessageAlphabet",
    "PairDensity",
    "awgn_capacity",
    "bit_channel_error_probabilities",
    "boxplus",
    "bsc_distribution",
    "channel_llr_parameters",
    "conjugate_f_table",
    "conjugate_g_table",
    "design_channel_quantizer",
    "design_luts",
    "f_density",
    "flip_label",
    "g_density",
    "ib_quantize",
    "llr_values",
    "lut_set_from_tables",
    "minsum_lut",
    "mutual_information",
    "natural_minsum_circuit",
    "push_through_table",
    "relabel_lut_set",
    "relabel_map",
    "relabeled_minsum_circuit",
    "sigma_from_ebn0",
]
