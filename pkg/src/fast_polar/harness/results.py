"""CSV and JSON result files of a sweep."""

import csv
import re
from logging import getLogger
from pathlib import Path
from typing import List, Union

from ..errors import ParameterError, ResultsIOError
from ..serializers.serializers import save_sweep_result
from .sweep import SweepResult

logger = getLogger(__name__)

CSV_HEADER = ["ebn0_db", "frames", "frame_errors", "bit_errors", "FER", "BER"]


def result_filename(label: str) -> str:
    """File stem for a decoder label, e.g. ``fixed:5.4`` -> ``fixed_5.4``."""
    return re.sub(r"[^A-Za-z0-9.\-]+", "_", label)


def write_results_csv(result: SweepResult, out_dir: Union[str, Path]) -> List[Path]:
    """One CSV per decoder, rows ascending in Eb/N0, floats at full precision.

    Raises:
        ParameterError: a decoder has no points.
        ResultsIOError: a file cannot be written.
    """
    if not result.points or any(not points for points in result.points.values()):
        raise ParameterError("cannot write an empty sweep result")
    out_dir = Path(out_dir)
    paths = []
    for label in result.decoders:
        path = out_dir / f"{result_filename(label)}.csv"
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            with path.open("w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(CSV_HEADER)
                for point in result.curve(label):
                    writer.writerow([repr(point.ebn0_db), point.frames, point.frame_errors,
                                     point.bit_errors, repr(point.fer), repr(point.ber)])
        except OSError as e:
            raise ResultsIOError(f"cannot write {path}: {e}") from e
        logger.info("wrote %s", path)
        paths.append(path)
    return paths


def result_to_dict(result: SweepResult) -> dict:
    return {
        "n_bits": int(result.code.N),
        "k": int(result.code.k),
        "seed": int(result.seed),
        "decoders": {
            label: [
                {"ebn0_db": float(p.ebn0_db), "frames": int(p.frames),
                 "frame_errors": int(p.frame_errors), "bit_errors": int(p.bit_errors),
                 "FER": float(p.fer), "BER": float(p.ber)}
                for p in result.curve(label)
            ]
            for label in result.decoders
        },
    }


def write_results_json(result: SweepResult, path: Union[str, Path]) -> Path:
    """Validate the whole sweep as a ``SweepResultModel`` document and write it.

    Raises:
        ParameterError: the result has no decoders.
        PolarSerializationError: the counts are inconsistent.
        ResultsIOError: the file cannot be written.
    """
    if not result.points:
        raise ParameterError("cannot write an empty sweep result")
    return save_sweep_result(result_to_dict(result), path)
