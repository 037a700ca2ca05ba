"""Unrolling a pruned decoder tree into a dataflow graph of hardware blocks."""

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from logging import getLogger
from typing import Dict, Iterator, List, Optional

import networkx as nx
import numpy as np

from ..code import DecoderTree, NodeKind, TreeNode
from ..kernels import Kernel, combine

logger = getLogger(__name__)


class BlockKind(str, Enum):
    F = "F"
    G = "G"
    G0R = "G0R"
    I = "I"  # noqa: E741
    C = "C"
    C0R = "C0R"
    CHANNEL_IN = "ChannelIn"
    OUT = "Out"

    @property
    def is_wire(self) -> bool:
        """I and C0R contain no logic."""
        return self in (BlockKind.I, BlockKind.C0R)

    @property
    def payload(self) -> str:
        """Kind of value the block drives: LLR messages or bit estimates."""
        if self in (BlockKind.F, BlockKind.G, BlockKind.G0R, BlockKind.CHANNEL_IN):
            return "alpha"
        return "beta"


@dataclass(frozen=True)
class BlockNode:
    """One hardware block; ``inputs`` maps an input role to its producer id.

    Roles: ``alpha`` (F, G, G0R, I), ``beta_l``/``beta_r`` (G uses beta_l,
    C uses both or beta_l alone when the right child is Rate0, C0R uses
    beta_r), ``beta`` (Out).
    """

    id: int
    kind: BlockKind
    width: int
    node_id: int = 0
    inputs: Dict[str, int] = field(default_factory=dict)

    @property
    def predecessors(self) -> List[int]:
        return sorted(set(self.inputs.values()))


class DataflowGraph:
    """Acyclic block graph backed by a networkx DiGraph."""

    def __init__(self):
        self.graph = nx.DiGraph()
        self.output_id: Optional[int] = None
        self.N = 0

    def add(self, kind: BlockKind, width: int, node_id: int = 0, **inputs: int) -> BlockNode:
        block = BlockNode(id=self.graph.number_of_nodes(), kind=kind, width=width,
                          node_id=node_id, inputs=dict(inputs))
        self.graph.add_node(block.id, block=block)
        for role, source in inputs.items():
            self.graph.add_edge(source, block.id, role=role)
        return block

    def block(self, block_id: int) -> BlockNode:
        return self.graph.nodes[block_id]["block"]

    def blocks(self) -> Iterator[BlockNode]:
        for block_id in sorted(self.graph.nodes):
            yield self.block(block_id)

    def topological_order(self) -> List[int]:
        return list(nx.lexicographical_topological_sort(self.graph))

    def consumers(self, block_id: int) -> List[int]:
        return sorted(self.graph.successors(block_id))

    def __len__(self) -> int:
        return self.graph.number_of_nodes()

    @property
    def is_empty(self) -> bool:
        return len(self) == 0


def block_counts(graph: DataflowGraph, include_io: bool = False) -> Counter:
    """Multiset of block kinds; channel input and output excluded by default."""
    counts = Counter()
    for block in graph.blocks():
        if include_io or block.kind not in (BlockKind.CHANNEL_IN, BlockKind.OUT):
            counts[block.kind.value] += 1
    return counts


@dataclass
class _BetaRef:
    """A bit estimate not yet materialized: ``source`` replicated ``factor`` times."""

    source: int
    width: int
    factor: int = 1
    materialized: Optional[int] = None


class _Unroller:
    def __init__(self):
        self.graph = DataflowGraph()

    def materialize(self, ref: _BetaRef) -> int:
        # chains of C0R collapse into one replicating wire
        if ref.factor == 1:
            return ref.source
        if ref.materialized is None:
            block = self.graph.add(BlockKind.C0R, ref.width * ref.factor, beta_r=ref.source)
            ref.materialized = block.id
        return ref.materialized

    def emit(self, node: TreeNode, alpha: int) -> Optional[_BetaRef]:
        if node.kind is NodeKind.RATE0:
            return None
        if node.kind is NodeKind.RATE1:
            block = self.graph.add(BlockKind.I, node.length, node.heap_id, alpha=alpha)
            return _BetaRef(block.id, node.length)

        half = node.length // 2
        beta_l = None
        if node.left.kind is not NodeKind.RATE0:
            f_block = self.graph.add(BlockKind.F, half, node.heap_id, alpha=alpha)
            beta_l = self.emit(node.left, f_block.id)

        beta_r = None
        if node.right.kind is not NodeKind.RATE0:
            if beta_l is None:
                g_block = self.graph.add(BlockKind.G0R, half, node.heap_id, alpha=alpha)
            else:
                g_block = self.graph.add(BlockKind.G, half, node.heap_id, alpha=alpha,
                                         beta_l=self.materialize(beta_l))
            beta_r = self.emit(node.right, g_block.id)

        if beta_l is None:
            return _BetaRef(beta_r.source, beta_r.width, beta_r.factor * 2)
        inputs = {"beta_l": self.materialize(beta_l)}
        if beta_r is not None:
            inputs["beta_r"] = self.materialize(beta_r)
        block = self.graph.add(BlockKind.C, node.length, node.heap_id, **inputs)
        return _BetaRef(block.id, node.length)


def unroll(tree: DecoderTree) -> DataflowGraph:
    """Emit one block per decoding operation of the pruned tree.

    A Rate0 root gives an empty graph: the decoder is the constant zero word.
    """
    unroller = _Unroller()
    graph = unroller.graph
    graph.N = tree.N
    if tree.root.kind is NodeKind.RATE0:
        return graph
    channel = graph.add(BlockKind.CHANNEL_IN, tree.N)
    root_beta = unroller.emit(tree.root, channel.id)
    out = graph.add(BlockKind.OUT, tree.N, beta=unroller.materialize(root_beta))
    graph.output_id = out.id
    logger.debug("unrolled N=%d tree into %d blocks: %s", tree.N, len(graph), dict(block_counts(graph)))
    return graph


def evaluate_block(block: BlockNode, kernel: Kernel, inputs: Dict[str, np.ndarray]) -> np.ndarray:
    """Combinational function of one block over (frames, width) arrays."""
    kind = block.kind
    if kind in (BlockKind.F, BlockKind.G, BlockKind.G0R):
        alpha = inputs["alpha"]
        half = block.width
        a, b = alpha[:, :half], alpha[:, half:]
        if kind is BlockKind.F:
            return kernel.f(a, b, block.node_id)
        bits = inputs["beta_l"] if kind is BlockKind.G else np.zeros(a.shape, dtype=np.uint8)
        return kernel.g(a, b, bits, block.node_id)
    if kind is BlockKind.I:
        return kernel.hard_decision(inputs["alpha"])
    if kind is BlockKind.C:
        beta_l = inputs["beta_l"]
        beta_r = inputs.get("beta_r")
        if beta_r is None:
            beta_r = np.zeros(beta_l.shape, dtype=np.uint8)
        return combine(beta_l, beta_r)
    if kind is BlockKind.C0R:
        beta_r = inputs["beta_r"]
        return np.tile(beta_r, (1, block.width // beta_r.shape[1]))
    if kind is BlockKind.OUT:
        return inputs["beta"]
    raise ValueError(f"block {block.id} of kind {kind.value} has no combinational function")
