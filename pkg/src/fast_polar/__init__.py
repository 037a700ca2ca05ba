"""Fast-Polar: LUT-based and fixed-point unrolled polar decoders, designed and simulated."""

__version__ = "0.1.0"

from .code import (
    DecoderTree,
    NodeKind,
    PolarCode,
    TreeNode,
    build_tree,
    construct,
    encode_nonsystematic,
    encode_systematic,
    polar_transform,
    rank_bit_channels,
)
from .decode import DecodeOutput, decode_sc, decode_ssc, extract_message
from .errors import (
    CorruptionError,
    DesignError,
    FastPolarError,
    ParameterError,
    PolarSerializationError,
    ResultsIOError,
)
from .kernels import FixedFormat, FixedKernel, FloatKernel, Kernel, LutKernel, make_kernel

__all__ = [
    "__version__",
    "CorruptionError",
    "DecodeOutput",
    "DecoderTree",
    "DesignError",
    "FastPolarError",
    "FixedFormat",
    "FixedKernel",
    "FloatKernel",
    "Kernel",
    "LutKernel",
    "NodeKind",
    "ParameterError",
    "PolarCode",
    "PolarSerializationError",
    "ResultsIOError",
    "TreeNode",
    "build_tree",
    "construct",
    "decode_sc",
    "decode_ssc",
    "encode_nonsystematic",
    "encode_systematic",
    "extract_message",
    "make_kernel",
    "polar_transform",
    "rank_bit_channels",
]
