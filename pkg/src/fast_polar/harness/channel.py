"""BPSK over AWGN with per-frame counter-based random streams."""

import numpy as np

from ..errors import ParameterError
from ..quantdesign.channel import sigma_from_ebn0

NOISELESS_LLR = 1.0e3

__all__ = ["NOISELESS_LLR", "awgn_channel", "frame_stream", "gaussian", "noiseless_channel", "sigma_from_ebn0"]


def frame_stream(seed: int, ebn0_index: int, frame_index: int) -> np.random.Generator:
    """Independent Philox stream for one frame of one Eb/N0 point.

    The stream depends on nothing but its three keys, so results do not
    depend on how frames are split across workers.
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(ebn0_index, frame_index))
    return np.random.Generator(np.random.Philox(sequence))


def gaussian(rng: np.random.Generator, count: int) -> np.ndarray:
    """Standard normal samples by Box-Muller on the stream's uniforms."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:count]


def awgn_channel(codeword, sigma: float, rng: np.random.Generator) -> np.ndarray:
    """Channel LLRs 2y/sigma^2 of BPSK (0 -> +1, 1 -> -1) plus N(0, sigma^2) noise."""
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    bits = np.asarray(codeword, dtype=float)
    symbols = 1.0 - 2.0 * bits
    noise = gaussian(rng, bits.size).reshape(bits.shape) * sigma
    return 2.0 * (symbols + noise) / sigma ** 2


def noiseless_channel(codeword) -> np.ndarray:
    """Large-magnitude LLRs standing in for the sigma -> 0 limit."""
    return (1.0 - 2.0 * np.asarray(codeword, dtype=float)) * NOISELESS_LLR
