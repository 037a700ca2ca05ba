"""
Fast-Polar Benchmarking Module

Decoder throughput and pipeline simulation timing for Fast-Polar.
"""

from .decoder_benchmark import BenchmarkResult, DecoderBenchmark

__all__ = [
    'BenchmarkResult',
    'DecoderBenchmark',
]
