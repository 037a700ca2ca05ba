#!/usr/bin/env python3
"""
Fast-Polar Decoder Benchmarking Script

Times batched SSC decoding for every kernel, and the cycle-accurate
pipeline simulator, on the (128, 64) code.
"""

import os
import statistics
import sys
import time
import tracemalloc
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fast_polar.code import build_tree, construct, encode_systematic  # noqa: E402
from fast_polar.decode import decode_ssc  # noqa: E402
from fast_polar.harness.channel import awgn_channel, sigma_from_ebn0  # noqa: E402
from fast_polar.kernels import KERNEL_SPEC_HELP, make_kernel  # noqa: E402
from fast_polar.pipeline import PipelineMode, PipelineSimulator, schedule, unroll  # noqa: E402

KERNELS = ["float", "fixed:5.4", "ib", "ms-ib", "re-ms-ib"]


@dataclass
class BenchmarkResult:
    """Results from one kernel's benchmark run."""
    kernel: str
    frames: int
    decode_times: List[float] = field(default_factory=list)  # seconds per repetition
    peak_memory_mb: float = 0.0
    frame_errors: int = 0

    @property
    def frames_per_second(self) -> float:
        return self.frames / statistics.median(self.decode_times)


class DecoderBenchmark:
    """SSC decoder benchmarking utility."""

    def __init__(self, n_bits: int = 128, k: int = 64, ebn0_db: float = 3.0, seed: int = 0):
        self.code = construct(n_bits, k, ebn0_db)
        self.tree = build_tree(self.code)
        self.ebn0_db = ebn0_db
        self.rng = np.random.default_rng(seed)
        self.results: Dict[str, BenchmarkResult] = {}

    def generate_frames(self, frames: int):
        messages = self.rng.integers(0, 2, size=(frames, self.code.k), dtype=np.uint8)
        llr = awgn_channel(encode_systematic(self.code, messages),
                           sigma_from_ebn0(self.ebn0_db, self.code.rate), self.rng)
        return messages, llr

    def benchmark_kernel(self, spec: str, frames: int, repeats: int = 3) -> BenchmarkResult:
        kernel = make_kernel(spec, self.code)
        messages, llr = self.generate_frames(frames)
        msgs = kernel.map_channel(llr)
        result = BenchmarkResult(spec, frames)
        tracemalloc.start()
        for _ in range(repeats):
            start = time.perf_counter()
            out = decode_ssc(self.code, self.tree, kernel, msgs)
            result.decode_times.append(time.perf_counter() - start)
        result.peak_memory_mb = tracemalloc.get_traced_memory()[1] / 1024 / 1024
        tracemalloc.stop()
        result.frame_errors = int(np.any(out.message != messages, axis=1).sum())
        self.results[spec] = result
        return result

    def benchmark_pipeline(self, frames: int, ii: int = 10) -> float:
        """Seconds to stream ``frames`` through the partial(ii) pipeline model."""
        kernel = make_kernel("fixed:5.4", self.code)
        sched = schedule(unroll(self.tree), PipelineMode.partial(ii))
        _, llr = self.generate_frames(frames)
        start = time.perf_counter()
        PipelineSimulator(sched, kernel).run(kernel.map_channel(llr))
        return time.perf_counter() - start

    def run_benchmark_suite(self, frames: int = 10000) -> Dict[str, BenchmarkResult]:
        print("🚀 Fast-Polar Decoder Benchmark Suite")
        print("=" * 50)
        print(f"📦 Code: ({self.code.N}, {self.code.k}) at {self.ebn0_db} dB")
        print(f"📦 Kernels: {KERNEL_SPEC_HELP}")
        print()
        for spec in KERNELS:
            result = self.benchmark_kernel(spec, frames)
            print(f"  {spec:10s} {result.frames_per_second:12.0f} frames/s  "
                  f"{result.peak_memory_mb:7.2f}MB  FER={result.frame_errors / frames:.2e}")
        return self.results

    def print_summary(self):
        print()
        print("📊 Benchmark Summary")
        print("=" * 50)
        print("| Kernel     | Frames/s     | Info Mbps |")
        print("|------------|--------------|-----------|")
        for spec, result in self.results.items():
            mbps = result.frames_per_second * self.code.k / 1e6
            print(f"| {spec:10s} | {result.frames_per_second:12.0f} | {mbps:9.2f} |")


def main():
    benchmark = DecoderBenchmark()
    benchmark.run_benchmark_suite()
    benchmark.print_summary()
    seconds = benchmark.benchmark_pipeline(100)
    print(f"\n⏱️  Pipeline simulation: 100 frames in {seconds:.2f}s")


if __name__ == "__main__":
    main()
