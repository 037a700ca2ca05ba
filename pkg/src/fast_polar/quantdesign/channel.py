"""BPSK-AWGN channel model and its information-bottleneck quantizer."""

from dataclasses import dataclass
from logging import getLogger
from typing import Tuple, Union

import numpy as np
from scipy.integrate import quad
from scipy.stats import norm

from ..errors import ParameterError
from .ib import DEFAULT_MAX_SYMBOLS, EdgeDistribution, MessageAlphabet, ib_quantize

logger = getLogger(__name__)

DEFAULT_GRID_SIZE = 2048


def sigma_from_ebn0(ebn0_db: float, rate: float) -> float:
    """Noise standard deviation for unit-energy BPSK: sigma^2 = 1/(2 R 10^(EbN0/10))."""
    if not 0 < rate <= 1:
        raise ParameterError(f"rate must lie in (0, 1], got {rate}")
    return float(np.sqrt(1.0 / (2.0 * rate * 10.0 ** (ebn0_db / 10.0))))


def channel_llr_parameters(sigma: float) -> Tuple[float, float]:
    """Mean and standard deviation of the channel LLR given x=0."""
    return 2.0 / sigma ** 2, 2.0 / sigma


def awgn_capacity(sigma: float) -> float:
    """I(X;Y) in bits of the unquantized BPSK-AWGN channel.

    Integrates E[log2(1 + exp(-L))] over the LLR density given x=0.
    """
    mu, s = channel_llr_parameters(sigma)

    def integrand(llr):
        return norm.pdf(llr, loc=mu, scale=s) * np.logaddexp(0.0, -llr) / np.log(2.0)

    loss, _ = quad(integrand, mu - 12 * s, mu + 12 * s, limit=200)
    return 1.0 - loss


@dataclass(frozen=True, eq=False)
class ChannelQuantizer:
    """Threshold quantizer of real channel LLRs onto Natural labels."""

    thresholds: np.ndarray
    distribution: EdgeDistribution
    sigma: float

    @property
    def size(self) -> int:
        return self.distribution.size

    @property
    def alphabet(self) -> MessageAlphabet:
        return self.distribution.alphabet()

    def quantize(self, llr) -> np.ndarray:
        """Label = number of thresholds <= llr, so LLR 0 lands on |T|/2."""
        return np.searchsorted(self.thresholds, np.asarray(llr, dtype=float), side="right")


def design_channel_quantizer(
    sigma: float,
    alphabet: Union[int, MessageAlphabet],
    grid_size: int = DEFAULT_GRID_SIZE,
    max_symbols: int = DEFAULT_MAX_SYMBOLS,
) -> ChannelQuantizer:
    """Design the |T|-level channel quantizer for noise level ``sigma``.

    The LLR density given each bit is discretized on a uniform grid spanning
    +-(4 mu + 6 s) with the outer bins absorbing the tails, then quantized by
    ``ib_quantize``. Thresholds are grid edges mirrored about 0.

    Raises:
        ParameterError: sigma <= 0 or a grid too coarse for the alphabet.
    """
    levels = alphabet.size if isinstance(alphabet, MessageAlphabet) else int(alphabet)
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if grid_size < 8 * levels or grid_size % 2:
        raise ParameterError(f"grid_size must be even and >= 8*|T|={8 * levels}, got {grid_size}")

    mu, s = channel_llr_parameters(sigma)
    span = 4.0 * mu + 6.0 * s
    edges = np.linspace(-span, span, grid_size + 1)
    half = grid_size // 2
    edges[half] = 0.0
    cdf_edges = edges.copy()
    cdf_edges[0], cdf_edges[-1] = -np.inf, np.inf
    p0 = 0.5 * np.diff(norm.cdf(cdf_edges, loc=mu, scale=s))
    # upper bins lose precision to cancellation near cdf=1
    p0[half:] = 0.5 * -np.diff(norm.sf(cdf_edges[half:], loc=mu, scale=s))
    p1 = p0[::-1].copy()
    joint = np.stack([p0, p1])
    joint /= joint.sum()

    mapping, distribution = ib_quantize(joint, levels, max_symbols=max_symbols)
    positive = mapping[half:]
    cut = np.flatnonzero(np.diff(positive)) + 1
    upper = edges[half + cut]
    thresholds = np.concatenate([-upper[::-1], [0.0], upper])
    logger.debug("channel quantizer sigma=%.4f |T|=%d I(X;T)=%.5f", sigma, levels,
                 distribution.mutual_information)
    return ChannelQuantizer(thresholds=thresholds, distribution=distribution, sigma=float(sigma))
