"""Message alphabets, edge distributions and the optimal contiguous quantizer.

The quantizer solves max I(X;T) over partitions of an LLR-sorted source into
contiguous clusters. For binary-input symmetric sources the optimum is
contiguous in LLR order, so a dynamic program over the partition boundaries
of the positive half is exact.
"""

from dataclasses import dataclass
from enum import Enum
from logging import getLogger
from typing import Optional, Tuple

import numpy as np
from scipy.special import xlogy

from ..errors import DesignError, ParameterError

logger = getLogger(__name__)

LN2 = np.log(2.0)
DEFAULT_MAX_SYMBOLS = 1024
LLR_DECIMALS = 9
_TIE_TOLERANCE = 1e-12


class Labeling(str, Enum):
    NATURAL = "natural"
    RELABELED = "relabeled"


def relabel_map(alphabet_size: int) -> np.ndarray:
    """The partially flipped alphabet: magnitudes inverted on the negative half.

    rho(t) = |T|/2 - 1 - t for t < |T|/2, identity otherwise. rho is an
    involution and keeps the MSB.
    """
    if alphabet_size < 2 or alphabet_size & (alphabet_size - 1):
        raise ParameterError(f"alphabet size must be a power of two >= 2, got {alphabet_size}")
    half = alphabet_size // 2
    rho = np.arange(alphabet_size)
    rho[:half] = half - 1 - rho[:half]
    return rho


def flip_label(t, alphabet_size: int):
    """Label of the sign-flipped LLR under Natural labeling."""
    return alphabet_size - 1 - t


@dataclass(frozen=True)
class MessageAlphabet:
    """Integer message alphabet and the LLR each Natural label stands for."""

    size: int
    llr_values: Tuple[float, ...]
    labeling: Labeling = Labeling.NATURAL

    def __post_init__(self):
        if self.size < 2 or self.size & (self.size - 1):
            raise ParameterError(f"alphabet size must be a power of two >= 2, got {self.size}")
        values = np.asarray(self.llr_values, dtype=float)
        object.__setattr__(self, "llr_values", tuple(float(v) for v in values))
        if values.shape != (self.size,):
            raise ParameterError(f"expected {self.size} LLR values, got {values.shape[0]}")
        if np.any(np.diff(values) <= 0):
            raise ParameterError("LLR values must be strictly increasing in the Natural label")
        if not np.allclose(values, -values[::-1], rtol=1e-6, atol=1e-9):
            raise ParameterError("LLR values must be anti-symmetric about the alphabet midpoint")

    @property
    def half(self) -> int:
        return self.size // 2

    def natural_label(self, t):
        """Map a label of this alphabet to its Natural-labeling position."""
        if self.labeling is Labeling.RELABELED:
            return relabel_map(self.size)[t]
        return t

    def llr(self, t) -> np.ndarray:
        return np.asarray(self.llr_values)[self.natural_label(np.asarray(t))]

    def relabeled(self) -> "MessageAlphabet":
        return MessageAlphabet(self.size, self.llr_values, Labeling.RELABELED)


def mutual_information(joint: np.ndarray) -> float:
    """I(X;T) in bits of a joint pmf laid out as (2, |T|)."""
    joint = np.asarray(joint, dtype=float)
    px = joint.sum(axis=1)
    pt = joint.sum(axis=0)
    nats = xlogy(joint, joint).sum() - xlogy(px, px).sum() - xlogy(pt, pt).sum()
    return float(max(nats, 0.0) / LN2)


def llr_values(joint: np.ndarray) -> np.ndarray:
    """Per-symbol log(p(s|x=0)/p(s|x=1)), +-inf where one side has no mass.

    Symbols without any mass get LLR 0.
    """
    joint = np.asarray(joint, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        llr = np.log(joint[0]) - np.log(joint[1])
    return np.where(np.isnan(llr), 0.0, llr)


@dataclass(frozen=True, eq=False)
class EdgeDistribution:
    """Joint pmf p(x, t) of the transmitted bit and the message on one edge."""

    joint: np.ndarray

    def __post_init__(self):
        joint = np.asarray(self.joint, dtype=float)
        if joint.ndim != 2 or joint.shape[0] != 2:
            raise ParameterError(f"joint pmf must have shape (2, |T|), got {joint.shape}")
        if np.any(joint < 0) or not np.isfinite(joint).all():
            raise ParameterError("joint pmf has negative or non-finite entries")
        if abs(joint.sum() - 1.0) > 1e-9:
            raise ParameterError(f"joint pmf sums to {joint.sum():.12g}, expected 1")
        joint.setflags(write=False)
        object.__setattr__(self, "joint", joint)

    @property
    def size(self) -> int:
        return self.joint.shape[1]

    @property
    def llr_values(self) -> np.ndarray:
        return llr_values(self.joint)

    @property
    def mutual_information(self) -> float:
        return mutual_information(self.joint)

    @property
    def error_probability(self) -> float:
        """Bit error probability of the MSB decision (t >= |T|/2 decides 0)."""
        half = self.size // 2
        return float(self.joint[0, :half].sum() + self.joint[1, half:].sum())

    def alphabet(self) -> MessageAlphabet:
        return MessageAlphabet(self.size, tuple(self.llr_values))


def bsc_distribution(eps: float) -> EdgeDistribution:
    """|T|=2 edge distribution of a BSC(eps) under uniform input."""
    if not 0.0 <= eps <= 0.5:
        raise ParameterError(f"crossover probability must lie in [0, 0.5], got {eps}")
    return EdgeDistribution(0.5 * np.array([[eps, 1.0 - eps], [1.0 - eps, eps]]))


def _validate_source(joint) -> np.ndarray:
    joint = np.asarray(joint, dtype=float)
    if joint.ndim != 2 or joint.shape[0] != 2:
        raise ParameterError(f"source pmf must have shape (2, |S|), got {joint.shape}")
    if np.any(joint < 0) or not np.isfinite(joint).all():
        raise ParameterError("source pmf has negative or non-finite entries")
    if abs(joint.sum() - 1.0) > 1e-9:
        raise ParameterError(f"source pmf sums to {joint.sum():.12g}, expected 1")
    return joint


def _fold_positive_half(joint: np.ndarray, llr: np.ndarray):
    """Group symbols by |LLR| and fold the negative half onto the positive one.

    Returns the group of every symbol (-1 for the zero-LLR atom), the sign of
    every symbol and the folded half masses (h0, h1) per group, ascending in
    |LLR|. The zero atom is split evenly and merged into the first group.
    """
    magnitude = np.round(np.abs(llr), LLR_DECIMALS)
    zero = magnitude == 0
    positive = (llr > 0) & ~zero
    negative = (llr < 0) & ~zero
    nonzero = ~zero
    if not nonzero.any():
        raise DesignError("source carries no information: every symbol has LLR 0")

    keys, inverse = np.unique(magnitude[nonzero], return_inverse=True)
    inverse = inverse.ravel()
    groups = np.full(llr.shape, -1, dtype=np.int64)
    groups[nonzero] = inverse
    m = keys.shape[0]

    pos0 = np.bincount(groups[positive], weights=joint[0, positive], minlength=m)
    pos1 = np.bincount(groups[positive], weights=joint[1, positive], minlength=m)
    neg0 = np.bincount(groups[negative], weights=joint[0, negative], minlength=m)
    neg1 = np.bincount(groups[negative], weights=joint[1, negative], minlength=m)
    if not (np.allclose(pos0, neg1, rtol=1e-6, atol=1e-10) and np.allclose(pos1, neg0, rtol=1e-6, atol=1e-10)):
        raise ParameterError("source pmf is not symmetric under the bit flip")

    h0 = (pos0 + neg1) / 2.0
    h1 = (pos1 + neg0) / 2.0
    if zero.any():
        h0[0] += joint[0, zero].sum() / 2.0
        h1[0] += joint[1, zero].sum() / 2.0
    sign = np.where(negative, -1, 1)
    return groups, sign, h0, h1


def _prebin(h0: np.ndarray, h1: np.ndarray, cap: int, clusters: int) -> np.ndarray:
    """Contiguous degrading merge of the folded groups down to at most ``cap`` bins."""
    total = h0 + h1
    with np.errstate(divide="ignore", invalid="ignore"):
        posterior = np.where(total > 0, h0 / total, 0.5)
    bins = np.clip(np.floor((posterior - 0.5) * 2 * cap), 0, cap - 1).astype(np.int64)
    # posterior is monotone along the groups, so bins are already contiguous
    bins = np.maximum.accumulate(bins)
    _, bins = np.unique(bins, return_inverse=True)
    if bins.max() + 1 < clusters:
        m = h0.shape[0]
        bins = (np.arange(m) * min(cap, m)) // m
    return bins.ravel()


def _cluster_costs(h0: np.ndarray, h1: np.ndarray) -> np.ndarray:
    """(m+1, m+1) matrix of the MI contribution of cluster [i, j); -inf when j <= i."""
    c0 = np.concatenate([[0.0], np.cumsum(h0)])
    c1 = np.concatenate([[0.0], np.cumsum(h1)])
    p0 = c0[None, :] - c0[:, None]
    p1 = c1[None, :] - c1[:, None]
    p0 = np.maximum(p0, 0.0)
    p1 = np.maximum(p1, 0.0)
    s = p0 + p1
    nats = xlogy(p0, p0) + xlogy(p1, p1) - xlogy(s, s) + s * LN2
    cost = nats / LN2
    m1 = c0.shape[0]
    upper = np.triu(np.ones((m1, m1), dtype=bool), k=1)
    return np.where(upper, cost, -np.inf)


def _optimal_boundaries(cost: np.ndarray, clusters: int) -> np.ndarray:
    """Right ends of ``clusters`` contiguous clusters maximizing the summed cost.

    Ties resolve to the lexicographically smallest boundary list.
    """
    m = cost.shape[0] - 1
    best = np.full(m + 1, -np.inf)
    best[m] = 0.0
    tables = [best]
    for _ in range(clusters):
        best = np.max(cost + tables[-1][None, :], axis=1)
        tables.append(best)

    boundaries = []
    i = 0
    for remaining in range(clusters, 0, -1):
        values = cost[i] + tables[remaining - 1]
        target = tables[remaining][i]
        tol = _TIE_TOLERANCE * max(1.0, abs(target))
        j = int(np.flatnonzero(values >= target - tol)[0])
        boundaries.append(j)
        i = j
    return np.asarray(boundaries)


def ib_quantize(
    joint,
    levels: int,
    llr: Optional[np.ndarray] = None,
    max_symbols: int = DEFAULT_MAX_SYMBOLS,
    shrink: bool = False,
) -> Tuple[np.ndarray, EdgeDistribution]:
    """Quantize a symmetric binary-input source into ``levels`` messages.

    Args:
        joint: Source pmf p(x, s), shape (2, |S|).
        levels: Target alphabet size |T|.
        llr: Optional per-symbol LLRs used for ordering; derived from
            ``joint`` when omitted or where a symbol has no mass.
        max_symbols: Cap on distinct positive |LLR| groups solved exactly.
        shrink: Allow a smaller alphabet when the source has too few
            distinct symbols instead of failing.

    Returns:
        (mapping, distribution): the label of every source symbol, in the
        source's order, and the quantized EdgeDistribution. Labels ascend
        with LLR; symbols with LLR 0 map to label |T|/2.

    Raises:
        ParameterError: malformed or non-normalized source pmf.
        DesignError: fewer source symbols than ``levels``.
    """
    joint = _validate_source(joint)
    if levels < 2 or levels % 2:
        raise ParameterError(f"levels must be an even number >= 2, got {levels}")
    if joint.shape[1] < levels and not shrink:
        raise DesignError(f"source has {joint.shape[1]} symbols, fewer than |T|={levels}")

    derived = llr_values(joint)
    if llr is None:
        llr = derived
    else:
        llr = np.asarray(llr, dtype=float)
        massive = joint.sum(axis=0) > 0
        llr = np.where(massive, derived, llr)

    groups, sign, h0, h1 = _fold_positive_half(joint, llr)
    clusters = levels // 2
    m = h0.shape[0]
    if m < clusters:
        if not shrink:
            raise DesignError(
                f"source has {m} distinct positive LLR values, cannot fill {clusters} clusters"
            )
        clusters = m

    group_bins = np.arange(m)
    if m > max_symbols:
        group_bins = _prebin(h0, h1, max_symbols, clusters)
        nbins = int(group_bins.max()) + 1
        h0 = np.bincount(group_bins, weights=h0, minlength=nbins)
        h1 = np.bincount(group_bins, weights=h1, minlength=nbins)
        logger.debug("pre-binned %d symbol groups into %d bins", m, nbins)
        clusters = min(clusters, nbins)

    cost = _cluster_costs(h0, h1)
    boundaries = _optimal_boundaries(cost, clusters)
    bin_cluster = np.searchsorted(boundaries, np.arange(h0.shape[0]), side="right")

    q0 = np.bincount(bin_cluster, weights=h0, minlength=clusters)
    q1 = np.bincount(bin_cluster, weights=h1, minlength=clusters)
    out = np.zeros((2, 2 * clusters))
    out[0, clusters:] = q0
    out[1, clusters:] = q1
    out[0, :clusters] = q1[::-1]
    out[1, :clusters] = q0[::-1]

    symbol_cluster = bin_cluster[group_bins[np.maximum(groups, 0)]]
    mapping = np.where(sign > 0, clusters + symbol_cluster, clusters - 1 - symbol_cluster)
    mapping = mapping.astype(np.int64)
    return mapping, EdgeDistribution(out / out.sum())
