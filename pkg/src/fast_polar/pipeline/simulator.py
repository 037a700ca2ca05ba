"""Cycle-accurate functional simulation of a scheduled unrolled decoder."""

from collections import defaultdict
from logging import getLogger
from typing import Dict, Optional, Tuple

import numpy as np

from ..errors import ParameterError
from ..kernels import Kernel
from .graph import BlockKind, evaluate_block
from .schedule import PipelineSchedule

logger = getLogger(__name__)

RegisterKey = Tuple[int, int]


class PipelineSimulator:
    """Register-file model of the pipeline.

    Frame j enters the channel input in absolute cycle t_j = 1 + j * period.
    A register at boundary b is load-enabled by frame j's valid token at the
    end of cycle t_j + b - 1. Blocks are evaluated combinationally from the
    registers (or wires) the schedule connects them to, so frames injected
    faster than the initiation interval overwrite each other exactly as the
    hardware would.
    """

    def __init__(self, sched: PipelineSchedule, kernel: Kernel):
        self.schedule = sched
        self.graph = sched.graph
        self.kernel = kernel
        self._sources: Dict[Tuple[int, int], Optional[RegisterKey]] = {}

    def _source(self, value_id: int, consumer_cycle: int) -> Optional[RegisterKey]:
        key = (value_id, consumer_cycle)
        if key not in self._sources:
            reg = self.schedule.source_register(value_id, consumer_cycle)
            self._sources[key] = None if reg is None else (reg.value_id, reg.boundary)
        return self._sources[key]

    def run(self, channel_msgs, period: Optional[int] = None) -> np.ndarray:
        """Stream frames through the pipeline and return each frame's root estimate."""
        msgs = np.atleast_2d(np.asarray(channel_msgs))
        frames = msgs.shape[0]
        period = self.schedule.initiation_interval if period is None else int(period)
        if period < 1:
            raise ParameterError(f"injection period must be >= 1, got {period}")
        if self.graph.is_empty:
            return np.zeros((frames, self.graph.N), dtype=np.uint8)
        if msgs.shape[1] != self.graph.N:
            raise ParameterError(f"expected {self.graph.N} channel messages per frame, got {msgs.shape[1]}")

        sched = self.schedule
        out_block = self.graph.block(self.graph.output_id)
        out_cycle = sched.cycles[out_block.id]
        root_value = out_block.inputs["beta"]
        starts = 1 + period * np.arange(frames)

        loads = defaultdict(list)
        reads = defaultdict(list)
        for j, start in enumerate(starts):
            for reg in sched.registers:
                loads[start + reg.boundary - 1].append((reg.value_id, reg.boundary))
            reads[start + out_cycle - 1].append(j)

        contents: Dict[RegisterKey, np.ndarray] = {}
        outputs = np.zeros((frames, self.graph.N), dtype=np.uint8)
        blank = np.zeros_like(msgs[:1])

        for now in range(1, int(max(max(loads), max(reads))) + 1):
            memo: Dict[int, np.ndarray] = {}
            live = int(np.searchsorted(starts, now, side="right")) - 1

            def register(key: RegisterKey, width: int) -> np.ndarray:
                value = contents.get(key)
                if value is None:
                    return np.zeros((1, width), dtype=blank.dtype)
                return value

            def evaluate(value_id: int) -> np.ndarray:
                if value_id in memo:
                    return memo[value_id]
                block = self.graph.block(value_id)
                if block.kind is BlockKind.CHANNEL_IN:
                    result = msgs[live:live + 1] if live >= 0 else blank
                else:
                    cycle = sched.cycles[value_id]
                    inputs = {role: read(src, cycle) for role, src in block.inputs.items()}
                    result = evaluate_block(block, self.kernel, inputs)
                memo[value_id] = result
                return result

            def read(value_id: int, consumer_cycle: int) -> np.ndarray:
                key = self._source(value_id, consumer_cycle)
                if key is None:
                    return evaluate(value_id)
                return register(key, self.graph.block(value_id).width)

            for j in reads.get(now, ()):
                outputs[j] = read(root_value, out_cycle)[0]

            updates = {}
            for value_id, boundary in loads.get(now, ()):
                updates[(value_id, boundary)] = read(value_id, boundary)
            contents.update(updates)

        logger.debug("simulated %d frames at period %d over %d cycles", frames, period, now)
        return outputs
