"""
JSON load/dump for codes, LUT sets, sweep configs and schedule exports
Validates with the pydantic models and converts to the library's domain objects
"""

import json
from logging import getLogger
from pathlib import Path
from typing import Any, Dict, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, ValidationError

from ..code import PolarCode
from ..errors import DesignError, ParameterError, PolarSerializationError, ResultsIOError
from ..quantdesign.channel import ChannelQuantizer
from ..quantdesign.ib import EdgeDistribution
from ..quantdesign.luts import LutSet, lut_set_from_tables, table_rows
from .pydantic_models import (
    LutSetModel,
    PolarCodeModel,
    ScheduleExportModel,
    SweepConfigModel,
    SweepResultModel,
)

logger = getLogger(__name__)

M = TypeVar("M", bound=BaseModel)
PathLike = Union[str, Path]


def parse_document(model: Type[M], json_data: Union[str, Dict[str, Any]]) -> M:
    """Validate a JSON string or already-parsed dict against ``model``.

    Raises:
        PolarSerializationError: invalid JSON or a failed validation.
    """
    try:
        data = json.loads(json_data) if isinstance(json_data, str) else json_data
        return model.parse_obj(data)
    except json.JSONDecodeError as e:
        raise PolarSerializationError(f"Invalid JSON: {e}") from e
    except ValidationError as e:
        raise PolarSerializationError(f"Invalid {model.__name__}: {e}") from e


def read_document(model: Type[M], path: PathLike) -> M:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        return parse_document(model, text)
    except PolarSerializationError as e:
        raise PolarSerializationError(f"{path}: {e}") from e


def write_json(data: Dict[str, Any], path: PathLike) -> Path:
    """Write a JSON document, creating parent directories."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise ResultsIOError(f"cannot write {path}: {e}") from e
    logger.info("wrote %s", path)
    return path


# ---------------------------------------------------------------------------
# PolarCode
# ---------------------------------------------------------------------------

def code_to_dict(code: PolarCode) -> Dict[str, Any]:
    return {
        "n_bits": int(code.N),
        "k": int(code.k),
        "design_ebn0_db": float(code.design_ebn0_db),
        "frozen": [int(i) for i in code.frozen_indices],
    }


def code_from_model(model: PolarCodeModel) -> PolarCode:
    return PolarCode(N=model.n_bits, k=model.k, frozen=frozenset(model.frozen),
                     design_ebn0_db=float(model.design_ebn0_db))


def code_from_json(json_data: Union[str, Dict[str, Any]]) -> PolarCode:
    return code_from_model(parse_document(PolarCodeModel, json_data))


def load_code(path: PathLike) -> PolarCode:
    return code_from_model(read_document(PolarCodeModel, path))


def save_code(code: PolarCode, path: PathLike) -> Path:
    return write_json(code_to_dict(code), path)


# ---------------------------------------------------------------------------
# LutSet
# ---------------------------------------------------------------------------

def lut_set_to_dict(lut_set: LutSet) -> Dict[str, Any]:
    channel = lut_set.channel
    return {
        "variant": lut_set.variant.value,
        "alphabet_size": lut_set.size,
        "labeling": lut_set.alphabet.labeling.value,
        "llr_values": [float(v) for v in lut_set.alphabet.llr_values],
        "n_bits": lut_set.N,
        "channel": {
            "sigma": float(channel.sigma),
            "thresholds": [float(v) for v in channel.thresholds],
            "distribution": channel.distribution.joint.tolist(),
        },
        "f_tables": {str(node): list(table_rows(t)) for node, t in sorted(lut_set.f_tables.items())},
        "g_tables": {str(node): list(table_rows(t)) for node, t in sorted(lut_set.g_tables.items())},
        "leaf_error_probabilities": [float(v) for v in lut_set.leaf_error_probabilities],
        "node_llr": {
            str(node): [float(v) for v in llr] for node, llr in sorted(lut_set.node_llr.items())
        },
    }


def lut_set_from_model(model: LutSetModel) -> LutSet:
    try:
        channel = ChannelQuantizer(
            thresholds=np.asarray(model.channel.thresholds, dtype=float),
            distribution=EdgeDistribution(np.asarray(model.channel.distribution, dtype=float)),
            sigma=model.channel.sigma,
        )
        lut_set = lut_set_from_tables(
            model.variant,
            channel,
            model.n_bits,
            {int(node): np.asarray(t) for node, t in model.f_tables.items()},
            {int(node): np.asarray(t) for node, t in model.g_tables.items()},
            np.asarray(model.leaf_error_probabilities) if model.leaf_error_probabilities else None,
            {int(node): np.asarray(llr, dtype=float) for node, llr in model.node_llr.items()},
        )
    except (ParameterError, DesignError) as e:
        raise PolarSerializationError(f"Inconsistent LUT set: {e}") from e
    if lut_set.alphabet.labeling.value != model.labeling:
        raise PolarSerializationError(
            f"labeling {model.labeling!r} does not match variant {model.variant!r}"
        )
    if not np.allclose(lut_set.alphabet.llr_values, model.llr_values, rtol=1e-9, atol=1e-12):
        raise PolarSerializationError("llr_values do not match the channel quantizer distribution")
    return lut_set


def lut_set_from_json(json_data: Union[str, Dict[str, Any]]) -> LutSet:
    return lut_set_from_model(parse_document(LutSetModel, json_data))


def load_lut_set(path: PathLike) -> LutSet:
    return lut_set_from_model(read_document(LutSetModel, path))


def save_lut_set(lut_set: LutSet, path: PathLike) -> Path:
    return write_json(lut_set_to_dict(lut_set), path)


# ---------------------------------------------------------------------------
# Sweep config, sweep results and schedule export
# ---------------------------------------------------------------------------

def load_sweep_config(path: PathLike) -> SweepConfigModel:
    return read_document(SweepConfigModel, path)


def save_schedule_export(export: Dict[str, Any], path: PathLike) -> Path:
    """Validate a schedule export against its model before writing it."""
    parse_document(ScheduleExportModel, export)
    return write_json(export, path)


def load_sweep_result(path: PathLike) -> SweepResultModel:
    return read_document(SweepResultModel, path)


def save_sweep_result(document: Dict[str, Any], path: PathLike) -> Path:
    """Validate a sweep result document before writing it."""
    parse_document(SweepResultModel, document)
    return write_json(document, path)
