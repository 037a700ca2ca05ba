"""Quantized density evolution and the IB / MS-IB / re-MS-IB lookup tables."""

from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import TYPE_CHECKING, Dict, Optional, Tuple, Union

import numpy as np

from ..errors import DesignError, ParameterError
from .channel import ChannelQuantizer
from .density import f_density, g_density, push_through_table
from .ib import DEFAULT_MAX_SYMBOLS, EdgeDistribution, Labeling, MessageAlphabet, ib_quantize, relabel_map

if TYPE_CHECKING:
    from ..code import PolarCode

logger = getLogger(__name__)


class LutVariant(str, Enum):
    IB = "ib"
    MS_IB = "ms-ib"
    RE_MS_IB = "re-ms-ib"


def _bit_width(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise ParameterError(f"alphabet size must be a power of two >= 2, got {size}")
    return size.bit_length() - 1


def minsum_lut(alphabet: Union[int, MessageAlphabet]) -> np.ndarray:
    """Closed-form min-sum f table over Natural labels.

    t_o = f(t_a - D, t_b - D) + D with D = (|T|-1)/2. Evaluated on doubled
    integers so every output is exact.
    """
    size = alphabet.size if isinstance(alphabet, MessageAlphabet) else int(alphabet)
    _bit_width(size)
    t = np.arange(size)
    shifted = 2 * t - (size - 1)
    a, b = np.meshgrid(shifted, shifted, indexing="ij")
    sign = np.where((a < 0) ^ (b < 0), -1, 1)
    f2 = sign * np.minimum(np.abs(a), np.abs(b))
    return (f2 + size - 1) // 2


def natural_minsum_circuit(ta, tb, size: int) -> np.ndarray:
    """Bit-level min-sum block on Natural labels.

    Sign is the XOR of the MSBs inverted at the output; magnitudes are
    bit-inverted when their MSB is 0 before the min, and the result is
    inverted again for a negative output.
    """
    width = _bit_width(size)
    mask = size // 2 - 1
    ta = np.asarray(ta, dtype=np.int64)
    tb = np.asarray(tb, dtype=np.int64)
    msb_a, msb_b = ta >> (width - 1), tb >> (width - 1)
    mag_a = np.where(msb_a == 1, ta & mask, ~ta & mask)
    mag_b = np.where(msb_b == 1, tb & mask, ~tb & mask)
    smallest = np.minimum(mag_a, mag_b)
    sign = 1 - (msb_a ^ msb_b)
    mag = np.where(sign == 1, smallest, ~smallest & mask)
    return (sign << (width - 1)) | mag


def relabeled_minsum_circuit(ta, tb, size: int) -> np.ndarray:
    """Bit-level min-sum block on the partially flipped alphabet: XNOR sign, raw magnitude min."""
    width = _bit_width(size)
    mask = size // 2 - 1
    ta = np.asarray(ta, dtype=np.int64)
    tb = np.asarray(tb, dtype=np.int64)
    sign = 1 - ((ta >> (width - 1)) ^ (tb >> (width - 1)))
    return (sign << (width - 1)) | np.minimum(ta & mask, tb & mask)


def conjugate_f_table(table: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """re(rho a, rho b) = rho(table(a, b)); rho is an involution."""
    return rho[table[np.ix_(rho, rho)]]


def conjugate_g_table(table: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return rho[table[np.ix_(rho, rho, np.arange(2))]]


@dataclass(frozen=True, eq=False)
class LutSet:
    """Per-node decoding tables for an unpruned tree of length N.

    Tables are keyed by heap id (root=1) over internal nodes 1..N-1. f
    tables are (|T|, |T|), g tables (|T|, |T|, 2). ``node_llr`` holds the
    natural-order LLR meaning of the messages entering every node, leaves
    included.
    """

    variant: LutVariant
    alphabet: MessageAlphabet
    channel: ChannelQuantizer
    N: int
    f_tables: Dict[int, np.ndarray]
    g_tables: Dict[int, np.ndarray]
    leaf_error_probabilities: np.ndarray
    node_llr: Dict[int, np.ndarray] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return self.alphabet.size

    @property
    def relabeled(self) -> bool:
        return self.alphabet.labeling is Labeling.RELABELED

    @property
    def table_count(self) -> int:
        return len(self.f_tables) + len(self.g_tables)

    def distinct_f_tables(self) -> int:
        return len({table.tobytes() for table in self.f_tables.values()})


def _evolve(
    N: int,
    channel: EdgeDistribution,
    levels: int,
    minsum_f: bool,
    keep_tables: bool,
    max_symbols: int,
    shrink: bool,
):
    """Propagate edge distributions from the root to the N leaves."""
    n = N.bit_length() - 1
    f_tables: Dict[int, np.ndarray] = {}
    g_tables: Dict[int, np.ndarray] = {}
    node_llr: Dict[int, np.ndarray] = {}
    level = {1: channel}
    ms_table = minsum_lut(levels) if minsum_f else None

    for depth in range(n):
        children: Dict[int, EdgeDistribution] = {}
        for node, dist in level.items():
            if keep_tables:
                node_llr[node] = dist.llr_values
            pair = f_density(dist, dist)
            if minsum_f:
                f_table = ms_table
                left = push_through_table(pair, f_table, levels)
            else:
                mapping, left = ib_quantize(pair.joint, levels, llr=pair.llr,
                                            max_symbols=max_symbols, shrink=shrink)
                f_table = mapping.reshape(pair.shape)
            pair = g_density(dist, dist)
            mapping, right = ib_quantize(pair.joint, levels, llr=pair.llr,
                                         max_symbols=max_symbols, shrink=shrink)
            if keep_tables:
                f_tables[node] = f_table
                g_tables[node] = mapping.reshape(pair.shape)
            children[2 * node] = left
            children[2 * node + 1] = right
        level = children
        logger.info("density evolution depth %d/%d: %d nodes, mean I(X;T)=%.4f", depth + 1, n,
                    len(level), float(np.mean([d.mutual_information for d in level.values()])))

    errors = np.zeros(N)
    for node, dist in level.items():
        errors[node - N] = dist.error_probability
        if keep_tables:
            node_llr[node] = dist.llr_values
    return f_tables, g_tables, errors, node_llr


def bit_channel_error_probabilities(
    N: int, channel: EdgeDistribution, max_symbols: int = DEFAULT_MAX_SYMBOLS
) -> np.ndarray:
    """Per-leaf error probabilities from IB density evolution, indexed by bit position."""
    _, _, errors, _ = _evolve(N, channel, channel.size, minsum_f=False, keep_tables=False,
                              max_symbols=max_symbols, shrink=True)
    return errors


def design_luts(
    code: Union["PolarCode", int],
    channel_q: ChannelQuantizer,
    variant: Union[LutVariant, str] = LutVariant.IB,
    max_symbols: int = DEFAULT_MAX_SYMBOLS,
) -> LutSet:
    """Design one f and one g table for every internal node of the full tree.

    Args:
        code: The code (only its length matters) or the length N itself.
        channel_q: Channel quantizer; its alphabet is the message alphabet.
        variant: IB tables everywhere, or min-sum f tables (MS-IB), or
            min-sum tables on the partially flipped alphabet (re-MS-IB).
        max_symbols: Exact-DP cap forwarded to ``ib_quantize``.

    Raises:
        DesignError: the channel alphabet is not a power-of-two size.
    """
    variant = LutVariant(variant)
    N = code if isinstance(code, (int, np.integer)) else code.N
    levels = channel_q.size
    if levels < 2 or levels & (levels - 1):
        raise DesignError(f"channel alphabet size {levels} is not a power of two")
    minsum = variant is not LutVariant.IB
    f_tables, g_tables, errors, node_llr = _evolve(
        int(N), channel_q.distribution, levels, minsum_f=minsum, keep_tables=True,
        max_symbols=max_symbols, shrink=False,
    )
    lut_set = LutSet(
        variant=LutVariant.MS_IB if minsum else LutVariant.IB,
        alphabet=channel_q.alphabet,
        channel=channel_q,
        N=int(N),
        f_tables={node: t.astype(np.uint8) for node, t in f_tables.items()},
        g_tables={node: t.astype(np.uint8) for node, t in g_tables.items()},
        leaf_error_probabilities=errors,
        node_llr=node_llr,
    )
    if variant is LutVariant.RE_MS_IB:
        lut_set = relabel_lut_set(lut_set)
    logger.info("designed %s LUT set: N=%d, |T|=%d, %d tables", variant.value, N, levels,
                lut_set.table_count)
    return lut_set


def relabel_lut_set(lut_set: LutSet) -> LutSet:
    """re-MS-IB set obtained by conjugating an MS-IB set with rho."""
    if lut_set.variant is not LutVariant.MS_IB:
        raise ParameterError(f"only an ms-ib set can be relabeled, got {lut_set.variant.value}")
    rho = relabel_map(lut_set.size)
    return LutSet(
        variant=LutVariant.RE_MS_IB,
        alphabet=lut_set.alphabet.relabeled(),
        channel=lut_set.channel,
        N=lut_set.N,
        f_tables={node: conjugate_f_table(t, rho).astype(np.uint8) for node, t in lut_set.f_tables.items()},
        g_tables={node: conjugate_g_table(t, rho).astype(np.uint8) for node, t in lut_set.g_tables.items()},
        leaf_error_probabilities=lut_set.leaf_error_probabilities,
        node_llr=lut_set.node_llr,
    )


def lut_set_from_tables(
    variant: Union[LutVariant, str],
    channel_q: ChannelQuantizer,
    N: int,
    f_tables: Dict[int, np.ndarray],
    g_tables: Dict[int, np.ndarray],
    leaf_error_probabilities: Optional[np.ndarray] = None,
    node_llr: Optional[Dict[int, np.ndarray]] = None,
) -> LutSet:
    """Rebuild a LutSet from stored tables, checking shapes and label ranges."""
    variant = LutVariant(variant)
    levels = channel_q.size
    expected = set(range(1, N))
    if set(f_tables) != expected or set(g_tables) != expected:
        raise DesignError(f"a LUT set for N={N} needs tables for nodes 1..{N - 1}")
    checked_f, checked_g = {}, {}
    for node in sorted(expected):
        f = np.asarray(f_tables[node]).reshape(levels, levels)
        g = np.asarray(g_tables[node]).reshape(levels, levels, 2)
        if f.max() >= levels or g.max() >= levels or f.min() < 0 or g.min() < 0:
            raise DesignError(f"table at node {node} has labels outside [0, {levels})")
        checked_f[node] = f.astype(np.uint8)
        checked_g[node] = g.astype(np.uint8)
    alphabet = channel_q.alphabet
    if variant is LutVariant.RE_MS_IB:
        alphabet = alphabet.relabeled()
    errors = np.zeros(N) if leaf_error_probabilities is None else np.asarray(leaf_error_probabilities, dtype=float)
    meanings = {int(node): np.asarray(llr, dtype=float) for node, llr in (node_llr or {}).items()}
    if any(llr.shape != (levels,) for llr in meanings.values()):
        raise DesignError(f"node LLR meanings must hold {levels} values each")
    return LutSet(variant=variant, alphabet=alphabet, channel=channel_q, N=N,
                  f_tables=checked_f, g_tables=checked_g, leaf_error_probabilities=errors,
                  node_llr=meanings)


def table_rows(table: np.ndarray) -> Tuple[int, ...]:
    """Row-major flattening used by the JSON form."""
    return tuple(int(v) for v in np.asarray(table).ravel())
