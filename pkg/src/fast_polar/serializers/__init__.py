"""JSON documents: pydantic models and load/dump helpers."""

from .pydantic_models import (
    ChannelQuantizerModel,
    LutSetModel,
    PolarCodeModel,
    ScheduleExportModel,
    SweepConfigModel,
    SweepPointModel,
    SweepResultModel,
)
from .serializers import (
    code_from_json,
    code_from_model,
    code_to_dict,
    load_code,
    load_lut_set,
    load_sweep_config,
    load_sweep_result,
    lut_set_from_json,
    lut_set_to_dict,
    parse_document,
    read_document,
    save_code,
    save_lut_set,
    save_schedule_export,
    save_sweep_result,
    write_json,
)

__all__ = [
    "ChannelQuantizerModel",
    "LutSetModel",
    "PolarCodeModel",
    "ScheduleExportModel",
    "SweepConfigModel",
    "SweepPointModel",
    "SweepResultModel",
    "code_from_json",
    "code_from_model",
    "code_to_dict",
    "load_code",
    "load_lut_set",
    "load_sweep_config",
    "load_sweep_result",
    "lut_set_from_json",
    "lut_set_to_dict",
    "parse_document",
    "read_document",
    "save_code",
    "save_lut_set",
    "save_schedule_export",
    "save_sweep_result",
    "write_json",
]
