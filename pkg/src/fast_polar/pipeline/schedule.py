"""Clock-cycle scheduling and register allocation of an unrolled decoder.

Cycle convention: the channel LLRs are captured in cycle 1; F, G, G0R and C
blocks take one cycle each; I and C0R blocks are wires and share a cycle with
a neighbour. A value born in cycle b and last read in cycle c needs one
register per cycle boundary b..c-1 when frames enter every cycle.
"""

from dataclasses import dataclass, field
from logging import getLogger
from typing import Dict, List, Optional

from ..errors import ParameterError
from .graph import BlockKind, DataflowGraph

logger = getLogger(__name__)


@dataclass(frozen=True)
class PipelineMode:
    """Deep pipelining (II=1) or partial pipelining with initiation interval ``ii``."""

    kind: str = "deep"
    ii: int = 1

    def __post_init__(self):
        if self.kind not in ("deep", "partial"):
            raise ParameterError(f"pipeline mode must be 'deep' or 'partial', got {self.kind!r}")
        if self.ii < 1:
            raise ParameterError(f"initiation interval must be >= 1, got {self.ii}")
        if self.kind == "deep" and self.ii != 1:
            raise ParameterError("deep pipelining always has an initiation interval of 1")

    @classmethod
    def deep(cls) -> "PipelineMode":
        return cls("deep", 1)

    @classmethod
    def partial(cls, ii: int) -> "PipelineMode":
        return cls("partial", ii)

    def __str__(self) -> str:
        return "deep" if self.kind == "deep" else f"partial({self.ii})"


@dataclass(frozen=True)
class Register:
    """Pipeline register loading ``value_id`` at the end of cycle ``boundary``."""

    value_id: int
    payload: str
    width: int
    birth: int
    boundary: int
    lifetime: int
    dotted: bool = False

    @property
    def offset(self) -> int:
        return self.boundary - self.birth


@dataclass
class PipelineSchedule:
    graph: DataflowGraph
    mode: PipelineMode
    cycles: Dict[int, int]
    births: Dict[int, int]
    registers: List[Register] = field(default_factory=list)
    removed_registers: List[Register] = field(default_factory=list)
    latency_cc: int = 0

    @property
    def initiation_interval(self) -> int:
        return self.mode.ii

    def registers_for(self, value_id: int) -> List[Register]:
        return [r for r in self.registers if r.value_id == value_id]

    def source_register(self, value_id: int, consumer_cycle: int) -> Optional[Register]:
        """Register a consumer in ``consumer_cycle`` reads; None when it reads the wire."""
        if consumer_cycle <= self.births[value_id]:
            return None
        candidates = [r for r in self.registers_for(value_id) if r.boundary < consumer_cycle]
        return max(candidates, key=lambda r: r.boundary)

    def register_bits(self, message_bits: int, channel_bits: Optional[int] = None) -> int:
        """Storage bits: LLR registers hold message words, bit-estimate registers one bit."""
        channel_bits = message_bits if channel_bits is None else channel_bits
        total = 0
        for reg in self.registers:
            if reg.payload == "beta":
                total += reg.width
            elif self.graph.block(reg.value_id).kind is BlockKind.CHANNEL_IN:
                total += reg.width * channel_bits
            else:
                total += reg.width * message_bits
        return total


def _assign_cycles(graph: DataflowGraph):
    cycles: Dict[int, int] = {}
    births: Dict[int, int] = {}
    ready: Dict[int, int] = {}
    pending_wires = []

    for block_id in graph.topological_order():
        block = graph.block(block_id)
        kind = block.kind
        if kind is BlockKind.CHANNEL_IN:
            cycles[block_id] = births[block_id] = 1
            ready[block_id] = 2
        elif kind is BlockKind.I:
            producer = block.inputs["alpha"]
            cycles[block_id] = births[block_id] = births[producer]
            ready[block_id] = births[block_id] + 1
        elif kind is BlockKind.C0R:
            ready[block_id] = ready[block.inputs["beta_r"]]
            pending_wires.append(block_id)
        else:
            cycle = max(ready[p] for p in block.predecessors)
            cycles[block_id] = births[block_id] = cycle
            ready[block_id] = cycle + 1

    for block_id in pending_wires:
        consumers = [c for c in graph.consumers(block_id) if graph.block(c).kind is not BlockKind.OUT]
        if consumers:
            cycle = min(cycles[c] for c in consumers)
        else:
            cycle = births[graph.block(block_id).inputs["beta_r"]]
        cycles[block_id] = births[block_id] = cycle
    if graph.output_id is not None:
        # the output block is the register after the last cycle
        value = graph.block(graph.output_id).inputs["beta"]
        cycles[graph.output_id] = births[graph.output_id] = births[value] + 1
    return cycles, births


def schedule(graph: DataflowGraph, mode: Optional[PipelineMode] = None) -> PipelineSchedule:
    """Assign cycles and pipeline registers.

    In partial mode with interval ii, a value only needs registers every ii
    boundaries after its birth: each register then holds the frame for ii
    cycles, which is exactly how long frames injected ii cycles apart leave
    it unchanged. The skipped boundaries are reported as dotted registers.
    """
    mode = mode or PipelineMode.deep()
    if graph.is_empty:
        return PipelineSchedule(graph=graph, mode=mode, cycles={}, births={})

    cycles, births = _assign_cycles(graph)
    registers: List[Register] = []
    removed: List[Register] = []
    for block in graph.blocks():
        if block.kind is BlockKind.OUT:
            continue
        consumers = graph.consumers(block.id)
        if not consumers:
            continue
        birth = births[block.id]
        last_use = max(cycles[c] for c in consumers)
        for boundary in range(birth, last_use):
            offset = boundary - birth
            kept = offset % mode.ii == 0
            lifetime = min(mode.ii, last_use - boundary) if kept else 1
            reg = Register(value_id=block.id, payload=block.kind.payload, width=block.width,
                           birth=birth, boundary=boundary, lifetime=lifetime, dotted=not kept)
            (registers if kept else removed).append(reg)

    latency = max(c for b, c in cycles.items() if b != graph.output_id)
    result = PipelineSchedule(graph=graph, mode=mode, cycles=cycles, births=births,
                              registers=registers, removed_registers=removed, latency_cc=latency)
    logger.info("scheduled %d blocks (%s): latency %d CC, II %d, %d registers (%d removed)",
                len(graph), mode, latency, mode.ii, len(registers), len(removed))
    return result


@dataclass(frozen=True)
class LatencyCheck:
    latency_cc: int
    initiation_interval: int
    target_latency: int
    target_ii: int

    @property
    def latency_delta(self) -> int:
        return self.latency_cc - self.target_latency

    @property
    def ii_delta(self) -> int:
        return self.initiation_interval - self.target_ii

    @property
    def matches(self) -> bool:
        return self.latency_delta == 0 and self.ii_delta == 0

    def describe(self) -> str:
        if self.matches:
            return f"latency {self.latency_cc} CC and II {self.initiation_interval} match the targets"
        return (
            f"convention delta: latency {self.latency_cc} CC vs target {self.target_latency} "
            f"({self.latency_delta:+d}), II {self.initiation_interval} vs target {self.target_ii} "
            f"({self.ii_delta:+d}); cycle costs F/G/G0R/C=1, I/C0R=0, one capture cycle"
        )


def check_latency_target(
    sched: PipelineSchedule, target_latency: int = 86, target_ii: int = 10
) -> LatencyCheck:
    """Compare against a reference latency / II pair and log any delta."""
    check = LatencyCheck(sched.latency_cc, sched.initiation_interval, target_latency, target_ii)
    if check.matches:
        logger.info(check.describe())
    else:
        logger.warning(check.describe())
    return check
