"""Seeded Monte-Carlo FER/BER sweeps over a list of decoders."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from logging import getLogger
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..code import PolarCode, build_tree, encode_systematic
from ..decode import decoder_for
from ..errors import DesignError, ParameterError
from ..kernels import Kernel, LutKernel, make_kernel
from ..serializers.pydantic_models import PolarCodeModel, SweepConfigModel
from ..serializers.serializers import code_from_model, load_code
from .channel import awgn_channel, frame_stream, noiseless_channel, sigma_from_ebn0

logger = getLogger(__name__)


@dataclass(frozen=True)
class DecoderSpec:
    """A kernel spec plus decoding algorithm, written ``<kernel>[/sc|/ssc]``."""

    kernel: str
    algorithm: str = "ssc"

    @classmethod
    def parse(cls, text: str, default_algorithm: str = "ssc") -> "DecoderSpec":
        text = text.strip().lower()
        kernel, _, algorithm = text.partition("/")
        algorithm = algorithm or default_algorithm
        if algorithm not in ("sc", "ssc"):
            raise ParameterError(f"unknown decoding algorithm {algorithm!r} in {text!r}")
        return cls(kernel, algorithm)

    @property
    def label(self) -> str:
        return self.kernel if self.algorithm == "ssc" else f"{self.kernel}/{self.algorithm}"


@dataclass(frozen=True)
class Decoder:
    """A ready decoder: its spec and constructed kernel."""

    spec: DecoderSpec
    kernel: Kernel

    @property
    def label(self) -> str:
        return self.spec.label


@dataclass(frozen=True)
class PointResult:
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    k: int

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.k) if self.frames and self.k else 0.0


@dataclass
class SweepResult:
    """Points per decoder label, in the order the Eb/N0 list was given."""

    code: PolarCode
    seed: int
    points: Dict[str, List[PointResult]] = field(default_factory=dict)

    @property
    def decoders(self) -> List[str]:
        return list(self.points)

    def curve(self, label: str) -> List[PointResult]:
        return sorted(self.points[label], key=lambda p: p.ebn0_db)


def resolve_code(config: SweepConfigModel, base_dir: Optional[Path] = None) -> PolarCode:
    if config.code is None:
        raise ParameterError("sweep config names no code")
    if isinstance(config.code, PolarCodeModel):
        return code_from_model(config.code)
    path = Path(config.code)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return load_code(path)


def build_decoders(code: PolarCode, config: SweepConfigModel) -> List[Decoder]:
    """Construct every decoder in the config; LUT sets are designed once per variant."""
    decoders = []
    designed = {}
    for text in config.decoders:
        spec = DecoderSpec.parse(text, config.algorithm)
        try:
            kernel = make_kernel(
                spec.kernel,
                code,
                design_ebn0_db=config.design_ebn0_db,
                levels=config.lut_levels,
                grid_size=config.grid_size,
                channel_scale=config.channel_scale,
                lut_set=designed.get(spec.kernel),
            )
        except ParameterError as e:
            raise DesignError(f"cannot build decoder {text!r}: {e}") from e
        if isinstance(kernel, LutKernel):
            designed[spec.kernel] = kernel.lut_set
        decoders.append(Decoder(spec, kernel))
    return decoders


@dataclass(frozen=True)
class _ChunkTask:
    code: PolarCode
    decoders: Tuple[Decoder, ...]
    seed: int
    ebn0_index: int
    sigma: float
    start: int
    stop: int
    noiseless: bool


def draw_frames(code: PolarCode, seed: int, ebn0_index: int, start: int, stop: int,
                sigma: float, noiseless: bool = False) -> Tuple[np.ndarray, np.ndarray]:
    """Messages and channel LLRs of frames [start, stop) at one Eb/N0 point."""
    messages = np.empty((stop - start, code.k), dtype=np.uint8)
    streams = []
    for row, frame in enumerate(range(start, stop)):
        rng = frame_stream(seed, ebn0_index, frame)
        messages[row] = rng.integers(0, 2, size=code.k, dtype=np.uint8)
        streams.append(rng)
    codewords = encode_systematic(code, messages)
    if noiseless:
        llr = noiseless_channel(codewords)
    else:
        llr = np.stack([awgn_channel(cw, sigma, rng) for cw, rng in zip(codewords, streams)])
    return messages, llr


def simulate_chunk(task: _ChunkTask) -> List[Tuple[int, int]]:
    """(frame_errors, bit_errors) per decoder over one chunk of frames."""
    code = task.code
    tree = build_tree(code)
    messages, llr = draw_frames(code, task.seed, task.ebn0_index, task.start, task.stop,
                                task.sigma, task.noiseless)
    counts = []
    for decoder in task.decoders:
        decode = decoder_for(decoder.spec.algorithm)
        out = decode(code, tree, decoder.kernel, decoder.kernel.map_channel(llr))
        wrong = out.message != messages
        counts.append((int(np.any(wrong, axis=1).sum()), int(wrong.sum())))
    return counts


def _chunk_bounds(max_frames: int, chunk_size: int):
    start = 0
    while start < max_frames:
        stop = min(start + chunk_size, max_frames)
        yield start, stop
        start = stop


def run_sweep(
    config: SweepConfigModel,
    code: Optional[PolarCode] = None,
    decoders: Optional[Sequence[Decoder]] = None,
) -> SweepResult:
    """Simulate every decoder at every Eb/N0 point on paired noise.

    Frames go in fixed chunks; after each chunk, in chunk order, the point
    stops once every decoder has ``min_frame_errors`` frame errors or
    ``max_frames`` frames are done. Worker count only changes how many
    chunks run at once, never the result.
    """
    code = code if code is not None else resolve_code(config)
    if code.k == 0:
        raise ParameterError("cannot sweep a code without information bits")
    decoders = tuple(decoders) if decoders is not None else tuple(build_decoders(code, config))
    result = SweepResult(code=code, seed=config.seed,
                         points={d.label: [] for d in decoders})

    executor = ProcessPoolExecutor(max_workers=config.workers) if config.workers > 1 else None
    try:
        for index, ebn0 in enumerate(config.ebn0_db):
            sigma = sigma_from_ebn0(ebn0, code.rate)
            frames = 0
            frame_errors = np.zeros(len(decoders), dtype=np.int64)
            bit_errors = np.zeros(len(decoders), dtype=np.int64)
            bounds = list(_chunk_bounds(config.max_frames, config.chunk_size))
            wave = config.workers
            done = False
            for first in range(0, len(bounds), wave):
                tasks = [_ChunkTask(code, decoders, config.seed, index, sigma, start, stop, config.noiseless)
                         for start, stop in bounds[first:first + wave]]
                if executor is None:
                    outcomes = map(simulate_chunk, tasks)
                else:
                    outcomes = executor.map(simulate_chunk, tasks)
                for task, counts in zip(tasks, outcomes):
                    frames += task.stop - task.start
                    frame_errors += [c[0] for c in counts]
                    bit_errors += [c[1] for c in counts]
                    if np.all(frame_errors >= config.min_frame_errors):
                        logger.info("Eb/N0 %.2f dB: every decoder reached %d frame errors after %d frames",
                                    ebn0, config.min_frame_errors, frames)
                        done = True
                        break
                if done:
                    break
            for i, decoder in enumerate(decoders):
                point = PointResult(float(ebn0), frames, int(frame_errors[i]), int(bit_errors[i]), code.k)
                result.points[decoder.label].append(point)
                logger.info("%s @ %.2f dB: %d frames, %d frame errors, FER=%.3e BER=%.3e",
                            decoder.label, ebn0, frames, point.frame_errors, point.fer, point.ber)
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    return result
