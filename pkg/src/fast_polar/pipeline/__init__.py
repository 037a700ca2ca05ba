"""Unrolled decoder generation: dataflow graph, schedule, simulation and reports."""

from .graph import BlockKind, BlockNode, DataflowGraph, block_counts, evaluate_block, unroll
from .report import (
    REFERENCE_OPERATING_POINTS,
    OperatingPoint,
    ThroughputReport,
    export_schedule,
    throughput_report,
)
from .schedule import LatencyCheck, PipelineMode, PipelineSchedule, Register, check_latency_target, schedule
from .simulator import PipelineSimulator

__all__ = [
    "BlockKind",
    "BlockNode",
    "DataflowGraph",
    "LatencyCheck",
    "OperatingPoint",
    "PipelineMode",
    "PipelineSchedule",
    "PipelineSimulator",
    "REFERENCE_OPERATING_POINTS",
    "Register",
    "ThroughputReport",
    "block_counts",
    "check_latency_target",
    "evaluate_block",
    "export_schedule",
    "schedule",
    "throughput_report",
    "unroll",
]
