"""Fast-Polar command line: construct, design-luts, simulate, schedule, compare, status."""

import argparse
import json
import logging
import platform
import sys
from logging import getLogger
from pathlib import Path
from typing import List, Optional

from . import __version__
from .code import DEFAULT_FIDELITY, build_tree, construct
from .errors import FastPolarError, ParameterError
from .harness.compare import compare_decoders
from .harness.results import write_results_csv, write_results_json
from .harness.sweep import resolve_code, run_sweep
from .kernels import KERNEL_SPEC_HELP
from .pipeline import (
    REFERENCE_OPERATING_POINTS,
    PipelineMode,
    check_latency_target,
    export_schedule,
    schedule,
    throughput_report,
    unroll,
)
from .quantdesign.channel import design_channel_quantizer, sigma_from_ebn0
from .quantdesign.luts import design_luts
from .serializers import (
    SweepConfigModel,
    code_to_dict,
    load_code,
    load_sweep_config,
    lut_set_to_dict,
    save_code,
    save_lut_set,
    save_schedule_export,
)

logger = getLogger(__name__)


def parse_ebn0_list(text: str) -> List[float]:
    """``0:5:0.5`` (inclusive range) or ``1,2.5,3``."""
    text = text.strip()
    try:
        if ":" in text:
            start, stop, step = (float(v) for v in text.split(":"))
            if step <= 0:
                raise ParameterError(f"Eb/N0 step must be positive, got {step}")
            count = int(round((stop - start) / step)) + 1
            return [round(start + i * step, 10) for i in range(count)]
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as e:
        if isinstance(e, ParameterError):
            raise
        raise ParameterError(f"cannot parse Eb/N0 list {text!r}") from e


def _emit(data: dict, out: Optional[str]) -> None:
    if out:
        return
    print(json.dumps(data, indent=2))


def show_status() -> int:
    """Show versions of the package and its numeric stack."""
    import networkx
    import numpy
    import pydantic
    import scipy

    print("Fast-Polar Status")
    print("=" * 40)
    print(f"fast-polar: {__version__}")
    print(f"Python: {platform.python_version()}")
    print(f"numpy: {numpy.__version__}")
    print(f"scipy: {scipy.__version__}")
    print(f"networkx: {networkx.__version__}")
    print(f"pydantic: {pydantic.VERSION}")
    print(f"Decoder kernels: {KERNEL_SPEC_HELP}")
    return 0


def cmd_construct(args) -> int:
    code = construct(args.n, args.k, args.ebn0, fidelity=args.fidelity, design_sigma=args.sigma)
    if args.out:
        save_code(code, args.out)
    _emit(code_to_dict(code), args.out)
    return 0


def cmd_design_luts(args) -> int:
    code = load_code(args.code)
    ebn0 = code.design_ebn0_db if args.design_ebn0 is None else args.design_ebn0
    sigma = sigma_from_ebn0(ebn0, code.rate)
    channel_q = design_channel_quantizer(sigma, args.levels, grid_size=args.grid_size)
    lut_set = design_luts(code, channel_q, args.variant)
    if args.out:
        save_lut_set(lut_set, args.out)
    else:
        _emit(lut_set_to_dict(lut_set), None)
    logger.info("%d tables, %d distinct f tables", lut_set.table_count, lut_set.distinct_f_tables())
    return 0


def _sweep_config(args) -> SweepConfigModel:
    base = {}
    base_dir = None
    if args.config:
        base = load_sweep_config(args.config).dict()
        base_dir = Path(args.config).resolve().parent
    overrides = {
        "code": args.code,
        "decoders": args.decoder,
        "ebn0_db": parse_ebn0_list(args.ebn0) if args.ebn0 else None,
        "seed": args.seed,
        "out_dir": args.out_dir,
        "max_frames": args.max_frames,
        "min_frame_errors": args.min_frame_errors,
        "workers": args.workers,
        "algorithm": args.algorithm,
    }
    if args.noiseless:
        overrides["noiseless"] = True
    merged = {**base, **{key: value for key, value in overrides.items() if value is not None}}
    config = SweepConfigModel.parse_obj(merged)
    if isinstance(config.code, str) and base_dir is not None and args.code is None:
        config.code = str(base_dir / config.code) if not Path(config.code).is_absolute() else config.code
    return config


def cmd_simulate(args) -> int:
    from pydantic import ValidationError

    try:
        config = _sweep_config(args)
    except ValidationError as e:
        raise ParameterError(f"invalid sweep configuration: {e}") from e
    code = resolve_code(config)
    result = run_sweep(config, code)
    out_dir = Path(config.out_dir or ".")
    paths = write_results_csv(result, out_dir)
    paths.append(write_results_json(result, out_dir / "sweep.json"))
    for path in paths:
        print(path)
    return 0


def cmd_schedule(args) -> int:
    code = load_code(args.code)
    mode = PipelineMode(args.mode, args.ii)
    sched = schedule(unroll(build_tree(code)), mode)
    export = export_schedule(sched, message_bits=args.quant, channel_bits=args.channel_quant)
    if args.out:
        save_schedule_export(export, args.out)
    else:
        _emit(export, None)
    area = args.area_mm2
    if args.operating_point:
        point = REFERENCE_OPERATING_POINTS[args.operating_point]
        clock_hz, area = point.clock_hz, point.area_mm2
    else:
        clock_hz = args.clock_ghz * 1e9
    report = throughput_report(sched, clock_hz, code, args.quant, args.channel_quant, area_mm2=area)
    print(report.summary(), file=sys.stderr)
    if args.check_target:
        check = check_latency_target(sched, args.target_latency, args.target_ii)
        print(check.describe(), file=sys.stderr)
    return 0


def cmd_compare(args) -> int:
    code = load_code(args.code)
    report = compare_decoders(code, args.a, args.b, args.frames, seed=args.seed,
                              ebn0_db=args.ebn0, levels=args.levels)
    print(report.describe())
    return 0 if report.equivalent else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fast-polar",
        description="Fast-Polar - LUT and fixed-point unrolled polar decoders",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  fast-polar construct --n 128 --k 64 --ebn0 3.0 --out code.json
  fast-polar design-luts --code code.json --variant re-ms-ib --out luts.json
  fast-polar simulate --config sweep.json --decoder float --decoder fixed:5.4
  fast-polar schedule --code code.json --mode partial --ii 10 --clock-ghz 1.47
  fast-polar compare --code code.json --a ms-ib --b re-ms-ib --frames 100000
        """,
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress (repeat for debug output)")
    parser.add_argument("-q", "--quiet", action="store_true", help="only log warnings and errors")
    sub = parser.add_subparsers(dest="command")

    sub.add_parser("status", help="show package and dependency versions")

    p = sub.add_parser("construct", help="construct a polar code by density evolution")
    p.add_argument("--n", "-N", type=int, required=True, help="block length (power of two)")
    p.add_argument("--k", type=int, required=True, help="number of information bits")
    p.add_argument("--ebn0", type=float, default=3.0, help="design Eb/N0 in dB (default: 3.0)")
    p.add_argument("--sigma", type=float, default=None, help="explicit design noise sigma")
    p.add_argument("--fidelity", type=int, default=DEFAULT_FIDELITY,
                   help=f"density evolution alphabet size (default: {DEFAULT_FIDELITY})")
    p.add_argument("--out", help="write the code JSON here instead of stdout")

    p = sub.add_parser("design-luts", help="design IB / MS-IB / re-MS-IB decoding tables")
    p.add_argument("--code", required=True, help="PolarCode JSON")
    p.add_argument("--variant", choices=["ib", "ms-ib", "re-ms-ib"], default="ib")
    p.add_argument("--levels", type=int, default=16, help="message alphabet size (default: 16)")
    p.add_argument("--design-ebn0", type=float, default=None,
                   help="design Eb/N0 in dB (default: the code's design point)")
    p.add_argument("--grid-size", type=int, default=2048)
    p.add_argument("--out", help="write the LUT set JSON here instead of stdout")

    p = sub.add_parser("simulate", help="Monte-Carlo FER/BER sweep")
    p.add_argument("--config", help="SweepConfig JSON; flags override its fields")
    p.add_argument("--code", help="PolarCode JSON")
    p.add_argument("--decoder", action="append", help=f"repeatable: {KERNEL_SPEC_HELP}[/sc|/ssc]")
    p.add_argument("--ebn0", help="Eb/N0 list: start:stop:step or comma separated")
    p.add_argument("--seed", type=int)
    p.add_argument("--out-dir")
    p.add_argument("--max-frames", type=int)
    p.add_argument("--min-frame-errors", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--algorithm", choices=["sc", "ssc"])
    p.add_argument("--noiseless", action="store_true", help="replace the channel by strong noiseless LLRs")

    p = sub.add_parser("schedule", help="unroll, pipeline and report latency / throughput")
    p.add_argument("--code", required=True, help="PolarCode JSON")
    p.add_argument("--mode", choices=["deep", "partial"], default="deep")
    p.add_argument("--ii", type=int, default=1,
                   help="initiation interval for partial mode; deep mode requires 1")
    p.add_argument("--clock-ghz", type=float, default=1.0)
    p.add_argument("--operating-point", choices=sorted(REFERENCE_OPERATING_POINTS),
                   help="take clock and area from a reference implementation")
    p.add_argument("--area-mm2", type=float, default=None)
    p.add_argument("--quant", type=int, default=5, help="internal message bits")
    p.add_argument("--channel-quant", type=int, default=None, help="channel LLR bits")
    p.add_argument("--check-target", action="store_true", help="compare against a latency / II target")
    p.add_argument("--target-latency", type=int, default=86)
    p.add_argument("--target-ii", type=int, default=10)
    p.add_argument("--out", help="write the schedule export here instead of stdout")

    p = sub.add_parser("compare", help="frame-by-frame comparison of two decoders")
    p.add_argument("--code", required=True, help="PolarCode JSON")
    p.add_argument("--a", required=True, help="first decoder spec")
    p.add_argument("--b", required=True, help="second decoder spec")
    p.add_argument("--frames", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ebn0", type=float, default=None, help="Eb/N0 in dB (default: design point)")
    p.add_argument("--levels", type=int, default=16)
    return parser


COMMANDS = {
    "status": lambda args: show_status(),
    "construct": cmd_construct,
    "design-luts": cmd_design_luts,
    "simulate": cmd_simulate,
    "schedule": cmd_schedule,
    "compare": cmd_compare,
}


def configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.WARNING
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the fast-polar command line"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    if args.command is None:
        show_status()
        print("\nFor more options, run: fast-polar --help")
        return 0
    try:
        return COMMANDS[args.command](args)
    except (FastPolarError, OSError) as e:
        logger.error("%s", e)
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
