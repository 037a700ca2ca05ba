#!/usr/bin/env python3
"""
Fast-Polar Coding Loss Script

Sweeps the (128, 64) code for the floating-point reference and every
quantized decoder, then prints each one's Eb/N0 gap to the reference at a
target frame and bit error rate.

Usage:
    python3 scripts/coding_loss.py --workers 8 --out-dir results/
"""

import argparse
import os
import sys

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from fast_polar.cli import configure_logging, parse_ebn0_list  # noqa: E402
from fast_polar.code import construct  # noqa: E402
from fast_polar.harness.analysis import coding_loss, ebn0_at_error_rate  # noqa: E402
from fast_polar.harness.results import write_results_csv, write_results_json  # noqa: E402
from fast_polar.harness.sweep import run_sweep  # noqa: E402
from fast_polar.serializers import SweepConfigModel, code_to_dict  # noqa: E402

DECODERS = ["float", "fixed:5.4", "ib", "ms-ib", "re-ms-ib"]


def main() -> int:
    parser = argparse.ArgumentParser(description="Coding loss of quantized decoders against float SSC")
    parser.add_argument("--ebn0", default="2.5:5:0.25", help="Eb/N0 list (default: 2.5:5:0.25)")
    parser.add_argument("--target", type=float, default=1e-3, help="target FER (default: 1e-3)")
    parser.add_argument("--ber-target", type=float, default=1e-4, help="target BER (default: 1e-4)")
    parser.add_argument("--min-frame-errors", type=int, default=400)
    parser.add_argument("--max-frames", type=int, default=10_000_000)
    parser.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out-dir", default=None, help="also write CSV / JSON results here")
    parser.add_argument("-v", "--verbose", action="count", default=1)
    args = parser.parse_args()
    configure_logging(args.verbose, False)

    code = construct(128, 64, 3.0)
    config = SweepConfigModel(
        code=code_to_dict(code),
        decoders=DECODERS,
        ebn0_db=parse_ebn0_list(args.ebn0),
        min_frame_errors=args.min_frame_errors,
        max_frames=args.max_frames,
        workers=args.workers,
        seed=args.seed,
    )
    result = run_sweep(config, code)
    if args.out_dir:
        write_results_csv(result, args.out_dir)
        write_results_json(result, os.path.join(args.out_dir, "sweep.json"))

    reference = result.curve("float")
    for metric, target in (("FER", args.target), ("BER", args.ber_target)):
        print(f"\n{metric} {target:g}")
        print("=" * 40)
        for label in DECODERS:
            at = ebn0_at_error_rate(result.curve(label), target, metric)
            loss = coding_loss(reference, result.curve(label), target, metric)
            at_text = "not reached" if at is None else f"{at:.3f} dB"
            loss_text = "" if loss is None or label == "float" else f"  loss {loss:+.3f} dB"
            print(f"{label:10s} {at_text}{loss_text}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
