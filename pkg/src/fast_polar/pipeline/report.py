"""Throughput / latency arithmetic and the structured schedule export."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from ..errors import ParameterError
from .graph import BlockKind
from .schedule import PipelineSchedule, Register


@dataclass(frozen=True)
class OperatingPoint:
    """Externally measured implementation figures for one decoder variant."""

    name: str
    clock_hz: float
    area_mm2: float


# Reported ASIC results for the (128, 64) decoders at II=10; inputs, never computed here.
REFERENCE_OPERATING_POINTS: Dict[str, OperatingPoint] = {
    "fixed:5.4": OperatingPoint("fixed:5.4", 1.47e9, 0.090),
    "ib": OperatingPoint("ib", 1.38e9, 0.254),
    "ms-ib": OperatingPoint("ms-ib", 1.40e9, 0.218),
    "re-ms-ib": OperatingPoint("re-ms-ib", 1.51e9, 0.069),
}


@dataclass(frozen=True)
class ThroughputReport:
    info_throughput_bps: float
    latency_ns: float
    latency_cc: int
    initiation_interval: int
    clock_hz: float
    register_bit_count: int
    area_mm2: Optional[float] = None

    @property
    def info_throughput_gbps(self) -> float:
        return self.info_throughput_bps / 1e9

    @property
    def area_efficiency(self) -> Optional[float]:
        """Gbps per mm^2, only when an area figure was supplied."""
        if self.area_mm2 is None:
            return None
        return self.info_throughput_gbps / self.area_mm2

    def summary(self) -> str:
        return (f"latency_cc={self.latency_cc} II={self.initiation_interval} "
                f"throughput={self.info_throughput_gbps:.3f} Gbps latency={self.latency_ns:.1f} ns")


def throughput_report(
    sched: PipelineSchedule,
    clock_hz: float,
    code,
    message_bits: int,
    channel_bits: Optional[int] = None,
    area_mm2: Optional[float] = None,
) -> ThroughputReport:
    """k * clock / II information throughput and latency_cc / clock latency.

    Args:
        sched: The pipeline schedule.
        clock_hz: Clock frequency.
        code: Code supplying k.
        message_bits: Word width of internal LLR registers.
        channel_bits: Word width of channel LLR registers (default: message_bits).
        area_mm2: Optional external area figure for the efficiency metric.
    """
    if clock_hz <= 0:
        raise ParameterError(f"clock frequency must be positive, got {clock_hz}")
    ii = sched.initiation_interval
    return ThroughputReport(
        info_throughput_bps=code.k * clock_hz / ii,
        latency_ns=sched.latency_cc / clock_hz * 1e9,
        latency_cc=sched.latency_cc,
        initiation_interval=ii,
        clock_hz=clock_hz,
        register_bit_count=sched.register_bits(message_bits, channel_bits),
        area_mm2=area_mm2,
    )


def _register_entry(sched: PipelineSchedule, reg: Register, message_bits: int, channel_bits: int) -> Dict[str, Any]:
    block = sched.graph.block(reg.value_id)
    if reg.payload == "beta":
        word = 1
    elif block.kind is BlockKind.CHANNEL_IN:
        word = channel_bits
    else:
        word = message_bits
    return {
        "value": reg.value_id,
        "source": block.kind.value,
        "payload": reg.payload,
        "boundary": reg.boundary,
        "width": reg.width,
        "bits": reg.width * word,
    }


def export_schedule(
    sched: PipelineSchedule, message_bits: int = 4, channel_bits: Optional[int] = None
) -> Dict[str, Any]:
    """Plain-data description of a schedule: blocks per cycle, registers and totals.

    Blocks are listed by cycle then id; registers by boundary then value id.
    """
    channel_bits = message_bits if channel_bits is None else channel_bits
    by_cycle: Dict[int, List[Dict[str, Any]]] = {}
    for block in sched.graph.blocks():
        cycle = sched.cycles[block.id]
        by_cycle.setdefault(cycle, []).append({
            "id": block.id,
            "kind": block.kind.value,
            "width": block.width,
            "node": block.node_id,
            "inputs": sorted(block.inputs.values()),
        })
    cycles = [{"cycle": c, "blocks": by_cycle[c]} for c in sorted(by_cycle)]

    def entries(registers):
        ordered = sorted(registers, key=lambda r: (r.boundary, r.value_id))
        return [_register_entry(sched, r, message_bits, channel_bits) for r in ordered]

    registers = entries(sched.registers)
    alpha_bits = sum(r["bits"] for r in registers if r["payload"] == "alpha")
    beta_bits = sum(r["bits"] for r in registers if r["payload"] == "beta")
    return {
        "mode": str(sched.mode),
        "latency_cc": sched.latency_cc,
        "initiation_interval": sched.initiation_interval,
        "message_bits": message_bits,
        "channel_bits": channel_bits,
        "cycles": cycles,
        "registers": registers,
        "removed_registers": entries(sched.removed_registers),
        "totals": {
            "registers": len(registers),
            "register_bits": alpha_bits + beta_bits,
            "alpha_bits": alpha_bits,
            "beta_bits": beta_bits,
        },
    }
