"""Message-domain kernels: the f, g, hard-decision and combine computations.

Every kernel works on arrays with a leading frame axis. ``node_id`` is the
heap id of the decoder-tree node issuing the operation; only the LUT kernel
uses it.
"""

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from logging import getLogger
from typing import Optional

import numpy as np
from scipy.optimize import brentq
from scipy.stats import norm

from .errors import CorruptionError, ParameterError
from .quantdesign.channel import channel_llr_parameters, design_channel_quantizer, sigma_from_ebn0
from .quantdesign.ib import relabel_map
from .quantdesign.luts import LutSet, LutVariant, design_luts, relabeled_minsum_circuit

logger = getLogger(__name__)


# ---------------------------------------------------------------------------
# Bit-vector operations shared by every kernel
# ---------------------------------------------------------------------------

def combine(beta_l: np.ndarray, beta_r: np.ndarray) -> np.ndarray:
    """[beta_l xor beta_r, beta_r] along the last axis."""
    beta_l = np.asarray(beta_l, dtype=np.uint8)
    beta_r = np.asarray(beta_r, dtype=np.uint8)
    if beta_l.shape != beta_r.shape:
        raise ParameterError(f"combine needs equal shapes, got {beta_l.shape} and {beta_r.shape}")
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=-1)


def combine_zero_left(beta_r: np.ndarray) -> np.ndarray:
    """C0R: the left estimate is all-zero, so the output is [beta_r, beta_r]."""
    beta_r = np.asarray(beta_r, dtype=np.uint8)
    return np.concatenate([beta_r, beta_r], axis=-1)


# ---------------------------------------------------------------------------
# Scalar-domain formulas
# ---------------------------------------------------------------------------

def f_float(a, b):
    """Min-sum check node: sign(a b) min(|a|, |b|) with sign(0) = +1."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sign = np.where((a < 0) ^ (b < 0), -1.0, 1.0)
    return sign * np.minimum(np.abs(a), np.abs(b))


def g_float(a, b, bit):
    """Variable node: b + a when bit is 0, b - a when bit is 1."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return b + (1.0 - 2.0 * np.asarray(bit, dtype=float)) * a


@dataclass(frozen=True)
class FixedFormat:
    """Two's-complement Qi.Qc format with a symmetric saturation range."""

    q_internal: int
    q_channel: int

    def __post_init__(self):
        if not self.q_internal >= self.q_channel >= 2:
            raise ParameterError(
                f"need q_internal >= q_channel >= 2, got {self.q_internal}.{self.q_channel}"
            )

    @property
    def internal_max(self) -> int:
        return 2 ** (self.q_internal - 1) - 1

    @property
    def channel_max(self) -> int:
        return 2 ** (self.q_channel - 1) - 1

    @classmethod
    def parse(cls, text: str) -> "FixedFormat":
        match = re.fullmatch(r"(\d+)\.(\d+)", text.strip())
        if not match:
            raise ParameterError(f"fixed-point format must look like Qi.Qc, got {text!r}")
        return cls(int(match.group(1)), int(match.group(2)))

    def __str__(self) -> str:
        return f"{self.q_internal}.{self.q_channel}"


def f_fixed(a, b, fmt: FixedFormat):
    a = np.asarray(a, dtype=np.int32)
    b = np.asarray(b, dtype=np.int32)
    sign = np.where((a < 0) ^ (b < 0), -1, 1).astype(np.int32)
    return sign * np.minimum(np.abs(a), np.abs(b))


def g_fixed(a, b, bit, fmt: FixedFormat):
    a = np.asarray(a, dtype=np.int32)
    b = np.asarray(b, dtype=np.int32)
    total = b + (1 - 2 * np.asarray(bit, dtype=np.int32)) * a
    return np.clip(total, -fmt.internal_max, fmt.internal_max)


def quantize_channel_llr(llr, fmt: FixedFormat, scale: float) -> np.ndarray:
    """round(llr * scale), half away from zero, clamped to the channel range."""
    if scale <= 0:
        raise ParameterError(f"channel scale must be positive, got {scale}")
    scaled = np.asarray(llr, dtype=float) * scale
    rounded = np.sign(scaled) * np.floor(np.abs(scaled) + 0.5)
    return np.clip(rounded, -fmt.channel_max, fmt.channel_max).astype(np.int32)


def default_channel_scale(fmt: FixedFormat, sigma: float, saturation_probability: float = 0.01) -> float:
    """Scale putting P(|round(L * scale)| > channel_max) at ``saturation_probability``.

    L is the BPSK-AWGN channel LLR at noise level ``sigma``.
    """
    if not 0 < saturation_probability < 1:
        raise ParameterError(f"saturation probability must lie in (0, 1), got {saturation_probability}")
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    mu, s = channel_llr_parameters(sigma)

    def excess(level):
        return norm.sf(level, loc=mu, scale=s) + norm.cdf(-level, loc=mu, scale=s) - saturation_probability

    level = brentq(excess, 1e-9, mu + 40.0 * s)
    return (fmt.channel_max + 0.5) / level


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

class Kernel(ABC):
    """Arithmetic personality of a decoder."""

    name: str = "kernel"

    @abstractmethod
    def map_channel(self, llr: np.ndarray) -> np.ndarray:
        """Map real channel LLRs into this kernel's message domain."""

    @abstractmethod
    def f(self, a: np.ndarray, b: np.ndarray, node_id: int) -> np.ndarray:
        pass

    @abstractmethod
    def g(self, a: np.ndarray, b: np.ndarray, bits: np.ndarray, node_id: int) -> np.ndarray:
        pass

    @abstractmethod
    def hard_decision(self, messages: np.ndarray) -> np.ndarray:
        pass

    combine = staticmethod(combine)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"


class FloatKernel(Kernel):
    name = "float"

    def map_channel(self, llr):
        return np.asarray(llr, dtype=float)

    def f(self, a, b, node_id=0):
        return f_float(a, b)

    def g(self, a, b, bits, node_id=0):
        return g_float(a, b, bits)

    def hard_decision(self, messages):
        return (np.asarray(messages) < 0).astype(np.uint8)


class FixedKernel(Kernel):
    """Saturating integer min-sum with a Qi.Qc format."""

    def __init__(self, fmt: FixedFormat, scale: float):
        if scale <= 0:
            raise ParameterError(f"channel scale must be positive, got {scale}")
        self.fmt = fmt
        self.scale = float(scale)
        self.name = f"fixed:{fmt}"

    def map_channel(self, llr):
        return quantize_channel_llr(llr, self.fmt, self.scale)

    def f(self, a, b, node_id=0):
        return f_fixed(a, b, self.fmt)

    def g(self, a, b, bits, node_id=0):
        return g_fixed(a, b, bits, self.fmt)

    def hard_decision(self, messages):
        return (np.asarray(messages) < 0).astype(np.uint8)


class LutKernel(Kernel):
    """Table-lookup decoder over a designed LUT set.

    With ``use_circuit`` the re-MS-IB f block is evaluated as the XNOR-sign,
    min-magnitude circuit instead of a lookup; both give the same labels.
    """

    def __init__(self, lut_set: LutSet, use_circuit: Optional[bool] = None):
        self.lut_set = lut_set
        self.size = lut_set.size
        self.half = self.size // 2
        self.name = lut_set.variant.value
        if use_circuit is None:
            use_circuit = lut_set.variant is LutVariant.RE_MS_IB
        if use_circuit and lut_set.variant is not LutVariant.RE_MS_IB:
            raise ParameterError("the functional f circuit only exists for re-ms-ib")
        self.use_circuit = use_circuit
        self._rho = relabel_map(self.size) if lut_set.relabeled else None

    def _check(self, *arrays):
        for arr in arrays:
            if arr.size and (arr.max() >= self.size or arr.min() < 0):
                raise CorruptionError(f"message outside the {self.size}-label alphabet")

    def map_channel(self, llr):
        labels = self.lut_set.channel.quantize(llr)
        if self._rho is not None:
            labels = self._rho[labels]
        return labels.astype(np.uint8)

    def f(self, a, b, node_id):
        a = np.asarray(a)
        b = np.asarray(b)
        self._check(a, b)
        if self.use_circuit:
            return relabeled_minsum_circuit(a, b, self.size).astype(np.uint8)
        try:
            table = self.lut_set.f_tables[node_id]
        except KeyError:
            raise CorruptionError(f"no f table for node {node_id}") from None
        return table[a, b]

    def g(self, a, b, bits, node_id):
        a = np.asarray(a)
        b = np.asarray(b)
        self._check(a, b)
        try:
            table = self.lut_set.g_tables[node_id]
        except KeyError:
            raise CorruptionError(f"no g table for node {node_id}") from None
        return table[a, b, np.asarray(bits, dtype=np.intp)]

    def hard_decision(self, messages):
        # MSB set means the positive half under both labelings
        return (np.asarray(messages) < self.half).astype(np.uint8)


# ---------------------------------------------------------------------------
# Kernel specs
# ---------------------------------------------------------------------------

KERNEL_SPEC_HELP = "float | fixed:Qi.Qc | ib | ms-ib | re-ms-ib"


def make_kernel(
    spec: str,
    code,
    design_ebn0_db: Optional[float] = None,
    levels: int = 16,
    grid_size: int = 2048,
    channel_scale: Optional[float] = None,
    lut_set: Optional[LutSet] = None,
) -> Kernel:
    """Build a kernel from its textual spec for ``code``.

    LUT kernels are designed at ``design_ebn0_db`` (default: the code's
    design point) unless a ready ``lut_set`` is supplied. The fixed kernel's
    channel scale defaults to ~1% saturation at that same point.
    """
    spec = spec.strip().lower()
    ebn0 = code.design_ebn0_db if design_ebn0_db is None else design_ebn0_db
    if spec == "float":
        return FloatKernel()
    if spec.startswith("fixed:"):
        fmt = FixedFormat.parse(spec.split(":", 1)[1])
        if channel_scale is None:
            channel_scale = default_channel_scale(fmt, sigma_from_ebn0(ebn0, max(code.rate, 1.0 / code.N)))
        logger.info("fixed-point kernel %s with channel scale %.4f", fmt, channel_scale)
        return FixedKernel(fmt, channel_scale)
    try:
        variant = LutVariant(spec)
    except ValueError:
        raise ParameterError(f"unknown decoder kernel {spec!r}; expected {KERNEL_SPEC_HELP}") from None
    if lut_set is None:
        sigma = sigma_from_ebn0(ebn0, max(code.rate, 1.0 / code.N))
        channel_q = design_channel_quantizer(sigma, levels, grid_size=grid_size)
        lut_set = design_luts(code, channel_q, variant)
    elif lut_set.variant is not variant:
        raise ParameterError(f"LUT set is {lut_set.variant.value}, kernel spec asks for {variant.value}")
    if lut_set.N != code.N:
        raise ParameterError(f"LUT set is for N={lut_set.N}, code has N={code.N}")
    return LutKernel(lut_set)
