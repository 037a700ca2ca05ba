"""
Pydantic models for every document fast-polar reads or writes
Provides JSON validation of codes, LUT sets, sweep configs and schedule exports
"""

import re
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, root_validator, validator
from pydantic.types import StrictBool, StrictFloat, StrictInt, StrictStr

DECODER_SPEC = re.compile(r"^(float|fixed:\d+\.\d+|ib|ms-ib|re-ms-ib)(/(sc|ssc))?$")


def _is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


class StrictModel(BaseModel):
    class Config:
        extra = "forbid"
        validate_assignment = True


class PolarCodeModel(StrictModel):
    """A polar code: block length, dimension, frozen indices and design point"""
    n_bits: StrictInt
    k: StrictInt
    design_ebn0_db: Union[StrictFloat, StrictInt] = 3.0
    frozen: List[StrictInt]

    @validator("n_bits")
    def n_bits_power_of_two(cls, v):
        if v < 2 or not _is_power_of_two(v):
            raise ValueError(f"n_bits must be a power of two >= 2, got {v}")
        return v

    @validator("frozen")
    def frozen_sorted_unique(cls, v):
        if v != sorted(set(v)):
            raise ValueError("frozen indices must be sorted and unique")
        return v

    @root_validator(skip_on_failure=True)
    def frozen_matches_dimension(cls, values):
        n_bits, k, frozen = values["n_bits"], values["k"], values["frozen"]
        if not 0 <= k <= n_bits:
            raise ValueError(f"k must lie in [0, {n_bits}], got {k}")
        if len(frozen) != n_bits - k:
            raise ValueError(f"expected {n_bits - k} frozen indices, got {len(frozen)}")
        if frozen and (frozen[0] < 0 or frozen[-1] >= n_bits):
            raise ValueError(f"frozen indices must lie in [0, {n_bits})")
        return values


class ChannelQuantizerModel(StrictModel):
    """Channel thresholds with the quantized channel distribution p(x, t)"""
    sigma: float
    thresholds: List[float]
    distribution: List[List[float]]

    @validator("sigma")
    def sigma_positive(cls, v):
        if v <= 0:
            raise ValueError(f"sigma must be positive, got {v}")
        return v

    @validator("thresholds")
    def thresholds_ascending(cls, v):
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("thresholds must be strictly ascending")
        return v

    @root_validator(skip_on_failure=True)
    def distribution_matches_thresholds(cls, values):
        rows = values["distribution"]
        size = len(values["thresholds"]) + 1
        if len(rows) != 2 or any(len(row) != size for row in rows):
            raise ValueError(f"distribution must be 2 rows of {size} probabilities")
        return values


class LutSetModel(StrictModel):
    """Per-node f and g tables, row-major, keyed by heap node id"""
    variant: StrictStr
    alphabet_size: StrictInt
    labeling: StrictStr
    llr_values: List[float]
    n_bits: StrictInt
    channel: ChannelQuantizerModel
    f_tables: Dict[str, List[StrictInt]]
    g_tables: Dict[str, List[StrictInt]]
    leaf_error_probabilities: List[float] = Field(default_factory=list)
    node_llr: Dict[str, List[float]] = Field(default_factory=dict)

    @validator("variant")
    def known_variant(cls, v):
        if v not in ("ib", "ms-ib", "re-ms-ib"):
            raise ValueError(f"unknown LUT variant {v!r}")
        return v

    @validator("labeling")
    def known_labeling(cls, v):
        if v not in ("natural", "relabeled"):
            raise ValueError(f"unknown labeling {v!r}")
        return v

    @validator("alphabet_size", "n_bits")
    def power_of_two(cls, v):
        if v < 2 or not _is_power_of_two(v):
            raise ValueError(f"must be a power of two >= 2, got {v}")
        return v

    @root_validator(skip_on_failure=True)
    def tables_complete(cls, values):
        size, n_bits = values["alphabet_size"], values["n_bits"]
        expected = {str(node) for node in range(1, n_bits)}
        for name, rows, length in (("f", values["f_tables"], size * size),
                                   ("g", values["g_tables"], size * size * 2)):
            if set(rows) != expected:
                raise ValueError(f"{name}_tables must hold nodes 1..{n_bits - 1}")
            for node, table in rows.items():
                if len(table) != length:
                    raise ValueError(f"{name} table of node {node} has {len(table)} entries, expected {length}")
                if min(table) < 0 or max(table) >= size:
                    raise ValueError(f"{name} table of node {node} has labels outside [0, {size})")
        if len(values["llr_values"]) != size:
            raise ValueError(f"expected {size} LLR values")
        for node, llr in values["node_llr"].items():
            if not node.isdigit() or not 1 <= int(node) < 2 * n_bits:
                raise ValueError(f"node_llr key {node!r} is not a node of the tree")
            if len(llr) != size:
                raise ValueError(f"node_llr of node {node} has {len(llr)} values, expected {size}")
        if len(values["channel"].thresholds) != size - 1:
            raise ValueError("channel quantizer does not match the alphabet size")
        return values


class SweepConfigModel(StrictModel):
    """Monte-Carlo sweep configuration; every CLI flag overrides its field"""
    code: Optional[Union[PolarCodeModel, StrictStr]] = None
    decoders: List[StrictStr] = Field(default_factory=lambda: ["float"])
    ebn0_db: List[float] = Field(default_factory=lambda: [0.5 * i for i in range(11)])
    max_frames: StrictInt = 1_000_000
    min_frame_errors: StrictInt = 400
    seed: StrictInt = 0
    workers: StrictInt = 1
    chunk_size: StrictInt = 1000
    algorithm: StrictStr = "ssc"
    design_ebn0_db: Optional[float] = None
    lut_levels: StrictInt = 16
    grid_size: StrictInt = 2048
    channel_scale: Optional[float] = None
    noiseless: StrictBool = False
    out_dir: Optional[StrictStr] = None

    @validator("decoders", each_item=True)
    def decoder_spec(cls, v):
        if not DECODER_SPEC.match(v.strip().lower()):
            raise ValueError(f"bad decoder spec {v!r}; expected float|fixed:Qi.Qc|ib|ms-ib|re-ms-ib[/sc|/ssc]")
        return v.strip().lower()

    @validator("decoders")
    def decoders_unique(cls, v):
        if not v:
            raise ValueError("at least one decoder is required")
        if len(set(v)) != len(v):
            raise ValueError("decoder specs must be unique")
        return v

    @validator("ebn0_db")
    def ebn0_non_empty(cls, v):
        if not v:
            raise ValueError("ebn0_db list must not be empty")
        return v

    @validator("min_frame_errors", "workers", "chunk_size")
    def at_least_one(cls, v):
        if v < 1:
            raise ValueError(f"must be >= 1, got {v}")
        return v

    @validator("seed")
    def seed_non_negative(cls, v):
        if v < 0:
            raise ValueError(f"seed must be non-negative, got {v}")
        return v

    @validator("algorithm")
    def known_algorithm(cls, v):
        if v not in ("sc", "ssc"):
            raise ValueError(f"algorithm must be 'sc' or 'ssc', got {v!r}")
        return v

    @root_validator(skip_on_failure=True)
    def frames_cover_errors(cls, values):
        if values["max_frames"] < values["min_frame_errors"]:
            raise ValueError("max_frames must be >= min_frame_errors")
        return values


class SweepPointModel(StrictModel):
    ebn0_db: float
    frames: StrictInt
    frame_errors: StrictInt
    bit_errors: StrictInt
    FER: float
    BER: float

    @validator("frames", "frame_errors", "bit_errors")
    def non_negative(cls, v):
        if v < 0:
            raise ValueError(f"counts must be >= 0, got {v}")
        return v

    @root_validator(skip_on_failure=True)
    def errors_within_frames(cls, values):
        if values["frame_errors"] > values["frames"]:
            raise ValueError(f"{values['frame_errors']} frame errors in {values['frames']} frames")
        if values["bit_errors"] and not values["frame_errors"]:
            raise ValueError("bit errors without a frame error")
        return values


class SweepResultModel(StrictModel):
    """Sweep output: per decoder, points ascending in Eb/N0"""
    n_bits: StrictInt
    k: StrictInt
    seed: StrictInt
    decoders: Dict[str, List[SweepPointModel]]

    @root_validator(skip_on_failure=True)
    def consistent_points(cls, values):
        n_bits, k = values["n_bits"], values["k"]
        if not 0 <= k <= n_bits:
            raise ValueError(f"k must lie in [0, {n_bits}], got {k}")
        for label, points in values["decoders"].items():
            ebn0 = [p.ebn0_db for p in points]
            if ebn0 != sorted(ebn0):
                raise ValueError(f"points of {label!r} are not ascending in Eb/N0")
            for p in points:
                if p.bit_errors > p.frames * k:
                    raise ValueError(f"{label!r} at {p.ebn0_db} dB has more bit errors than message bits")
        return values


class BlockEntryModel(StrictModel):
    id: StrictInt
    kind: StrictStr
    width: StrictInt
    node: StrictInt
    inputs: List[StrictInt]


class CycleEntryModel(StrictModel):
    cycle: StrictInt
    blocks: List[BlockEntryModel]


class RegisterEntryModel(StrictModel):
    value: StrictInt
    source: StrictStr
    payload: StrictStr
    boundary: StrictInt
    width: StrictInt
    bits: StrictInt


class ScheduleTotalsModel(StrictModel):
    registers: StrictInt
    register_bits: StrictInt
    alpha_bits: StrictInt
    beta_bits: StrictInt


class ScheduleExportModel(StrictModel):
    """Blocks per cycle, pipeline registers and register totals of a schedule"""
    mode: StrictStr
    latency_cc: StrictInt
    initiation_interval: StrictInt
    message_bits: StrictInt
    channel_bits: StrictInt
    cycles: List[CycleEntryModel]
    registers: List[RegisterEntryModel]
    removed_registers: List[RegisterEntryModel]
    totals: ScheduleTotalsModel
