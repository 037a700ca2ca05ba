"""Tests for the JSON documents: codes, LUT sets, sweep configs and schedule exports."""

import json

import numpy as np
import pytest

from fast_polar.code import build_tree, code_from_frozen
from fast_polar.errors import PolarSerializationError, ResultsIOError
from fast_polar.pipeline import PipelineMode, export_schedule, schedule, unroll
from fast_polar.quantdesign import design_channel_quantizer, design_luts
from fast_polar.quantdesign.channel import sigma_from_ebn0
from fast_polar.serializers import (
    PolarCodeModel,
    SweepConfigModel,
    code_from_json,
    code_to_dict,
    load_code,
    load_lut_set,
    load_sweep_config,
    lut_set_from_json,
    lut_set_to_dict,
    parse_document,
    save_code,
    save_lut_set,
    save_schedule_export,
)


@pytest.fixture(scope="module")
def lut_set_8():
    channel = design_channel_quantizer(sigma_from_ebn0(3.0, 0.625), 8, grid_size=512)
    return design_luts(8, channel, "re-ms-ib")


class TestCodeDocuments:
    """PolarCode JSON."""

    def test_dict_form(self, code_8_5):
        assert code_to_dict(code_8_5) == {"n_bits": 8, "k": 5, "design_ebn0_db": 3.0, "frozen": [0, 1, 2]}

    def test_file_round_trip(self, code_128_64, tmp_path):
        path = save_code(code_128_64, tmp_path / "codes" / "code.json")
        loaded = load_code(path)
        assert loaded.frozen == code_128_64.frozen
        assert loaded.k == 64

    def test_invalid_documents(self):
        with pytest.raises(PolarSerializationError):
            code_from_json("{not json")
        with pytest.raises(PolarSerializationError):
            code_from_json({"n_bits": 6, "k": 3, "frozen": [0, 1, 2]})
        with pytest.raises(PolarSerializationError):
            code_from_json({"n_bits": 8, "k": 5, "frozen": [2, 1, 0]})
        with pytest.raises(PolarSerializationError):
            code_from_json({"n_bits": 8, "k": 5, "frozen": [0, 1]})
        with pytest.raises(PolarSerializationError):
            code_from_json({"n_bits": 8, "k": 5, "frozen": [0, 1, 2], "rate": 0.625})

    def test_strict_types(self):
        with pytest.raises(PolarSerializationError):
            parse_document(PolarCodeModel, {"n_bits": "8", "k": 5, "frozen": [0, 1, 2]})

    def test_all_frozen_code(self):
        code = code_from_json({"n_bits": 4, "k": 0, "frozen": [0, 1, 2, 3]})
        assert code.k == 0


class TestLutSetDocuments:
    """LUT set JSON."""

    def test_round_trip_keeps_tables(self, lut_set_8, tmp_path):
        loaded = load_lut_set(save_lut_set(lut_set_8, tmp_path / "luts.json"))
        assert loaded.variant is lut_set_8.variant
        assert loaded.alphabet.labeling is lut_set_8.alphabet.labeling
        for node in range(1, 8):
            assert np.array_equal(loaded.f_tables[node], lut_set_8.f_tables[node])
            assert np.array_equal(loaded.g_tables[node], lut_set_8.g_tables[node])
        llr = np.linspace(-10, 10, 41)
        assert np.array_equal(loaded.channel.quantize(llr), lut_set_8.channel.quantize(llr))

    def test_round_trip_keeps_node_llr(self, lut_set_8, tmp_path):
        loaded = load_lut_set(save_lut_set(lut_set_8, tmp_path / "luts.json"))
        assert sorted(loaded.node_llr) == list(range(1, 16))
        for node, llr in lut_set_8.node_llr.items():
            assert np.allclose(loaded.node_llr[node], llr)
        assert np.allclose(loaded.alphabet.llr_values, lut_set_8.alphabet.llr_values)

    def test_node_llr_outside_tree(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        data["node_llr"]["16"] = data["node_llr"]["1"]
        with pytest.raises(PolarSerializationError):
            lut_set_from_json(data)

    def test_llr_values_must_match_channel(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        data["llr_values"] = [2.0 * v for v in data["llr_values"]]
        with pytest.raises(PolarSerializationError):
            lut_set_from_json(data)

    def test_document_layout(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        assert data["labeling"] == "relabeled"
        assert sorted(data["f_tables"], key=int) == [str(n) for n in range(1, 8)]
        assert len(data["f_tables"]["1"]) == 64
        assert len(data["g_tables"]["1"]) == 128
        assert len(data["channel"]["thresholds"]) == 7

    def test_missing_table(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        del data["g_tables"]["7"]
        with pytest.raises(PolarSerializationError):
            lut_set_from_json(data)

    def test_label_out_of_range(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        data["f_tables"]["3"][0] = 8
        with pytest.raises(PolarSerializationError):
            lut_set_from_json(json.dumps(data))

    def test_labeling_must_match_variant(self, lut_set_8):
        data = lut_set_to_dict(lut_set_8)
        data["labeling"] = "natural"
        with pytest.raises(PolarSerializationError):
            lut_set_from_json(data)


class TestSweepConfigDocuments:
    """Sweep config files."""

    def test_defaults(self):
        config = SweepConfigModel()
        assert config.decoders == ["float"]
        assert config.ebn0_db == [0.5 * i for i in range(11)]
        assert config.algorithm == "ssc"

    def test_load(self, tmp_path):
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps({"code": "code.json", "decoders": ["Fixed:5.4/SC", "re-ms-ib"],
                                    "ebn0_db": [1.0, 2.0], "workers": 2}))
        config = load_sweep_config(path)
        assert config.code == "code.json"
        assert config.decoders == ["fixed:5.4/sc", "re-ms-ib"]
        assert config.workers == 2

    def test_unknown_field(self, tmp_path):
        path = tmp_path / "sweep.json"
        path.write_text(json.dumps({"decoders": ["float"], "frames": 10}))
        with pytest.raises(PolarSerializationError):
            load_sweep_config(path)


class TestScheduleExportDocuments:
    """Schedule exports are validated before they are written."""

    def test_save(self, code_8_5, tmp_path):
        sched = schedule(unroll(build_tree(code_8_5)), PipelineMode.partial(2))
        path = save_schedule_export(export_schedule(sched), tmp_path / "schedule.json")
        with open(path) as fp:
            data = json.load(fp)
        assert data["initiation_interval"] == 2
        assert len(data["removed_registers"]) == 2

    def test_rejects_malformed_export(self, code_8_5, tmp_path):
        export = export_schedule(schedule(unroll(build_tree(code_8_5))))
        del export["totals"]
        with pytest.raises(PolarSerializationError):
            save_schedule_export(export, tmp_path / "schedule.json")

    def test_empty_schedule_exports(self, tmp_path):
        sched = schedule(unroll(build_tree(code_from_frozen(4, range(4)))))
        path = save_schedule_export(export_schedule(sched), tmp_path / "empty.json")
        assert json.loads(path.read_text())["cycles"] == []

    def test_unwritable_path(self, code_8_5, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        with pytest.raises(ResultsIOError):
            save_code(code_8_5, blocker / "code.json")
