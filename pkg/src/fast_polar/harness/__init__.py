"""Monte-Carlo harness: channel, sweeps, decoder comparison and result files."""

from .analysis import coding_loss, ebn0_at_error_rate
from .channel import awgn_channel, frame_stream, gaussian, noiseless_channel, sigma_from_ebn0
from .compare import DivergenceReport, compare_decoders
from .results import CSV_HEADER, result_to_dict, write_results_csv, write_results_json
from .sweep import (
    Decoder,
    DecoderSpec,
    PointResult,
    SweepResult,
    build_decoders,
    draw_frames,
    resolve_code,
    run_sweep,
    simulate_chunk,
)

__all__ = [
    "CSV_HEADER",
    "Decoder",
    "DecoderSpec",
    "DivergenceReport",
    "PointResult",
    "SweepResult",
    "awgn_channel",
    "build_decoders",
    "coding_loss",
    "compare_decoders",
    "draw_frames",
    "ebn0_at_error_rate",
    "frame_stream",
    "gaussian",
    "noiseless_channel",
    "resolve_code",
    "result_to_dict",
    "run_sweep",
    "sigma_from_ebn0",
    "simulate_chunk",
    "write_results_csv",
    "write_results_json",
]
