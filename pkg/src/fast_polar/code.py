"""Polar code construction, encoding and the pruned SSC decoder tree."""

from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import FrozenSet, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import ParameterError
from .quantdesign.channel import design_channel_quantizer, sigma_from_ebn0
from .quantdesign.luts import bit_channel_error_probabilities

logger = getLogger(__name__)

DEFAULT_FIDELITY = 256


def is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


@dataclass(frozen=True)
class PolarCode:
    """A static (N, k) polar code: block length, frozen set and design point.

    Bit index 0 is u_0 / x_0. ``frozen`` holds the N-k frozen positions.
    """

    N: int
    k: int
    frozen: FrozenSet[int]
    design_ebn0_db: float = 3.0

    def __post_init__(self):
        if not isinstance(self.N, (int, np.integer)) or not is_power_of_two(int(self.N)) or self.N < 2:
            raise ParameterError(f"N must be a power of two >= 2, got {self.N}")
        if not 0 <= self.k <= self.N:
            raise ParameterError(f"k must satisfy 0 <= k <= N={self.N}, got {self.k}")
        frozen = frozenset(int(i) for i in self.frozen)
        object.__setattr__(self, "frozen", frozen)
        if len(frozen) != self.N - self.k:
            raise ParameterError(
                f"frozen set has {len(frozen)} indices, expected N-k={self.N - self.k}"
            )
        if frozen and (min(frozen) < 0 or max(frozen) >= self.N):
            raise ParameterError(f"frozen indices must lie in [0, {self.N})")

    @property
    def n(self) -> int:
        return int(self.N).bit_length() - 1

    @property
    def rate(self) -> float:
        return self.k / self.N

    @property
    def frozen_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[sorted(self.frozen)] = True
        return mask

    @property
    def info_indices(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen_mask)

    @property
    def frozen_indices(self) -> np.ndarray:
        return np.array(sorted(self.frozen), dtype=np.int64)

    def is_frozen(self, index: int) -> bool:
        return index in self.frozen


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------

def polar_transform(bits: np.ndarray) -> np.ndarray:
    """Compute ``bits @ F^{(x)n}`` over GF(2) with butterflies.

    Works on a single vector or on a (frames, N) batch.
    """
    x = np.array(bits, dtype=np.uint8, copy=True)
    length = x.shape[-1]
    if not is_power_of_two(length):
        raise ParameterError(f"vector length must be a power of two, got {length}")
    lead = x.shape[:-1]
    half = 1
    while half < length:
        view = x.reshape(lead + (length // (2 * half), 2, half))
        view[..., 0, :] ^= view[..., 1, :]
        half *= 2
    return x


def generator_matrix(n: int) -> np.ndarray:
    """Dense F^{(x)n}; only used for small oracles and systematic fallback."""
    kernel = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    matrix = np.ones((1, 1), dtype=np.uint8)
    for _ in range(n):
        matrix = np.kron(matrix, kernel)
    return matrix


def _as_batch(bits, length: int, what: str) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(bits)
    single = arr.ndim == 1
    arr = np.atleast_2d(arr)
    if arr.ndim != 2 or arr.shape[1] != length:
        raise ParameterError(f"{what} must have length {length}, got shape {np.shape(bits)}")
    return arr.astype(np.uint8), single


def encode_nonsystematic(code: PolarCode, u) -> np.ndarray:
    """x = u F^{(x)n}; ``u`` may be a single vector or a batch."""
    batch, single = _as_batch(u, code.N, "u")
    x = polar_transform(batch)
    return x[0] if single else x


def encode_systematic(code: PolarCode, msg) -> np.ndarray:
    """Systematic encoding: the information positions of x carry ``msg``.

    Two butterfly passes with the frozen positions reset in between. Frozen
    sets that are not domination contiguous break the two-pass identity; those
    frames are re-encoded by back-substitution on the unit-triangular
    information submatrix.
    """
    batch, single = _as_batch(msg, code.k, "msg")
    info = code.info_indices
    v = np.zeros((batch.shape[0], code.N), dtype=np.uint8)
    v[:, info] = batch
    y = polar_transform(v)
    y[:, code.frozen_indices] = 0
    x = polar_transform(y)

    bad = np.any(x[:, info] != batch, axis=1)
    if np.any(bad):
        logger.debug("two-pass systematic encoding failed on %d frame(s), solving directly", int(bad.sum()))
        x[bad] = _encode_systematic_direct(code, batch[bad])
    return x[0] if single else x


def _encode_systematic_direct(code: PolarCode, msgs: np.ndarray) -> np.ndarray:
    info = code.info_indices
    sub = generator_matrix(code.n)[np.ix_(info, info)].astype(np.int64)
    u_info = np.zeros(msgs.shape, dtype=np.int64)
    for j in range(code.k - 1, -1, -1):
        acc = u_info[:, j + 1:] @ sub[j + 1:, j]
        u_info[:, j] = (msgs[:, j] + acc) % 2
    u = np.zeros((msgs.shape[0], code.N), dtype=np.uint8)
    u[:, info] = u_info.astype(np.uint8)
    return polar_transform(u)


def extract_u(code: PolarCode, x) -> np.ndarray:
    """Recover u from a codeword; F^{(x)n} is its own inverse over GF(2)."""
    batch, single = _as_batch(x, code.N, "x")
    u = polar_transform(batch)
    return u[0] if single else u


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def rank_bit_channels(N: int, sigma: float, fidelity: int = DEFAULT_FIDELITY) -> Tuple[np.ndarray, np.ndarray]:
    """Bit-channel indices ordered least reliable first, with error probabilities.

    Reliabilities come from quantized density evolution over a ``fidelity``
    level design alphabet. Equal error probabilities put the lower index first.
    """
    if not is_power_of_two(N) or N < 2:
        raise ParameterError(f"N must be a power of two >= 2, got {N}")
    if not is_power_of_two(fidelity) or fidelity < 16:
        raise ParameterError(f"fidelity must be a power of two >= 16, got {fidelity}")
    if sigma <= 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")

    channel = design_channel_quantizer(
        sigma, fidelity, grid_size=max(2048, 8 * fidelity), max_symbols=fidelity
    )
    errors = bit_channel_error_probabilities(N, channel.distribution, max_symbols=fidelity)
    # lexsort uses the last key as primary: descending error, then ascending index
    order = np.lexsort((np.arange(N), -errors))
    return order, errors


def construct(
    N: int,
    k: int,
    design_ebn0_db: float,
    fidelity: int = DEFAULT_FIDELITY,
    design_sigma: Optional[float] = None,
) -> PolarCode:
    """Freeze the N-k least reliable bit channels at the design point."""
    if not is_power_of_two(N) or N < 2:
        raise ParameterError(f"N must be a power of two >= 2, got {N}")
    if not 0 < k <= N:
        raise ParameterError(f"k must satisfy 0 < k <= N={N}, got {k}")
    sigma = design_sigma if design_sigma is not None else sigma_from_ebn0(design_ebn0_db, k / N)
    order, _ = rank_bit_channels(N, sigma, fidelity)
    frozen = frozenset(int(i) for i in order[: N - k])
    logger.info("constructed (%d, %d) code at %.2f dB (sigma=%.4f, fidelity=%d)",
                N, k, design_ebn0_db, sigma, fidelity)
    return PolarCode(N=N, k=k, frozen=frozen, design_ebn0_db=float(design_ebn0_db))


# ---------------------------------------------------------------------------
# Decoder tree
# ---------------------------------------------------------------------------

class NodeKind(str, Enum):
    RATE0 = "rate0"
    RATE1 = "rate1"
    INTERNAL = "internal"


@dataclass(frozen=True)
class TreeNode:
    """A decoder-tree node covering leaf indices [lo, hi).

    ``heap_id`` numbers the node in the full binary tree (root=1, children
    2i and 2i+1), the same key the LUT tables use.
    """

    heap_id: int
    lo: int
    hi: int
    kind: NodeKind
    left: Optional["TreeNode"] = field(default=None, repr=False)
    right: Optional["TreeNode"] = field(default=None, repr=False)

    @property
    def length(self) -> int:
        return self.hi - self.lo

    @property
    def is_leaf(self) -> bool:
        return self.kind is not NodeKind.INTERNAL

    def describe(self):
        """Nested tuple form, handy for comparing tree shapes."""
        if self.is_leaf:
            return (self.kind.value, self.length)
        return (self.kind.value, self.length, self.left.describe(), self.right.describe())


@dataclass(frozen=True)
class DecoderTree:
    N: int
    root: TreeNode

    def nodes(self) -> Iterator[TreeNode]:
        """Nodes in SC visiting order (pre-order, left before right)."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            if not node.is_leaf:
                stack.append(node.right)
                stack.append(node.left)

    def leaves(self) -> List[TreeNode]:
        return [node for node in self.nodes() if node.is_leaf]

    def count(self, kind: NodeKind) -> int:
        return sum(1 for node in self.nodes() if node.kind is kind)


def _build_node(mask: np.ndarray, heap_id: int, lo: int, hi: int) -> TreeNode:
    span = mask[lo:hi]
    if span.all():
        return TreeNode(heap_id, lo, hi, NodeKind.RATE0)
    if not span.any():
        return TreeNode(heap_id, lo, hi, NodeKind.RATE1)
    mid = (lo + hi) // 2
    left = _build_node(mask, 2 * heap_id, lo, mid)
    right = _build_node(mask, 2 * heap_id + 1, mid, hi)
    return TreeNode(heap_id, lo, hi, NodeKind.INTERNAL, left, right)


def build_tree(code: PolarCode) -> DecoderTree:
    """Maximally pruned SSC tree: pure spans collapse into Rate0/Rate1 leaves."""
    return DecoderTree(N=code.N, root=_build_node(code.frozen_mask, 1, 0, code.N))


def code_from_frozen(N: int, frozen: Sequence[int], design_ebn0_db: float = 3.0) -> PolarCode:
    frozen = frozenset(int(i) for i in frozen)
    return PolarCode(N=N, k=N - len(frozen), frozen=frozen, design_ebn0_db=design_ebn0_db)
