"""Tests for settings, run config files and flag parsing."""

from __future__ import annotations

import json
import logging
import os
from datetime import date, timedelta, timezone

import pytest

import hwyimpact.config
from conftest import SAMPLE_CORPUS
from hwyimpact.config import (
    AppSettings,
    build_run_config,
    load_hwyimpact_config,
    parse_bbox,
    parse_phases,
    parse_window,
    read_run_config,
)
from hwyimpact.errors import ConfigError
from hwyimpact.models import HARVEY_PHASES, HOUSTON_BBOX, parse_utc_offset

CORPUS = SAMPLE_CORPUS


class TestTextForms:
    def test_bbox(self):
        assert parse_bbox("29.427926,30.157266,-95.902705,-94.997805") == HOUSTON_BBOX

    @pytest.mark.parametrize("text", ["1,2,3", "a,b,c,d", "30,29,-95,-94"])
    def test_bad_bbox(self, text):
        with pytest.raises(ConfigError, match="bbox"):
            parse_bbox(text)

    def test_window(self):
        window = parse_window("2017-08-23:2017-09-05", "-06:00")
        assert (window.start_date, window.end_date) == (date(2017, 8, 23), date(2017, 9, 5))
        assert window.tz == timezone(timedelta(hours=-6))

    @pytest.mark.parametrize("text", ["2017-08-23", "2017-08-23:soon", "2017-09-05:2017-08-23"])
    def test_bad_window(self, text):
        with pytest.raises(ConfigError, match="window"):
            parse_window(text)

    def test_phases_first_is_baseline(self):
        phases = parse_phases("calm=2017-08-23:2017-08-25,storm=2017-08-26:2017-09-05")
        assert phases.names == ["calm", "storm"]
        assert phases.baseline_phase == "calm"

    def test_harvey_phases_text_round_trip(self):
        assert parse_phases(HARVEY_PHASES.as_text()) == HARVEY_PHASES

    @pytest.mark.parametrize(
        "text",
        [
            "peak",
            "=2017-08-23:2017-08-25",
            "a=2017-08-23:2017-08-26,b=2017-08-26:2017-08-30",
            "a=2017-08-23:2017-08-25,a=2017-08-26:2017-08-30",
            "a=2017-08-25:2017-08-23",
        ],
    )
    def test_bad_phases(self, text):
        with pytest.raises(ConfigError, match="phase"):
            parse_phases(text)

    @pytest.mark.parametrize(("text", "hours"), [("-05:00", -5), ("+09:30", 9.5), ("+00:00", 0)])
    def test_utc_offset(self, text, hours):
        assert parse_utc_offset(text) == timezone(timedelta(hours=hours))

    @pytest.mark.parametrize("text", ["-5", "UTC-5", "+15:00", "-05:75"])
    def test_bad_utc_offset(self, text):
        with pytest.raises(ValueError):
            parse_utc_offset(text)


class TestBuildRunConfig:
    def test_defaults(self, isolated_env):
        config = build_run_config({"input_path": CORPUS})
        assert config.bbox == HOUSTON_BBOX
        assert config.phases == HARVEY_PHASES
        assert config.top_k == 5
        assert config.adjacency_window == 1
        assert str(config.output_dir) == "hwyimpact-output"

    def test_none_flags_ignored(self, isolated_env):
        config = build_run_config({"input_path": CORPUS, "top_k": None}, {"top_k": 7})
        assert config.top_k == 7

    def test_precedence(self, isolated_env, monkeypatch):
        monkeypatch.setenv("HWYIMPACT_TOP_K", "4")
        monkeypatch.setenv("HWYIMPACT_ADJACENCY_WINDOW", "2")
        config = build_run_config(
            {"input_path": CORPUS, "top_k": 9}, {"top_k": 6, "adjacency_window": 3}
        )
        assert config.top_k == 9
        assert config.adjacency_window == 3
        config = build_run_config({"input_path": CORPUS})
        assert (config.top_k, config.adjacency_window) == (4, 2)

    def test_offset_propagates_to_default_window_and_phases(self, isolated_env):
        config = build_run_config({"input_path": CORPUS, "utc_offset": "-06:00"})
        assert config.window.utc_offset == "-06:00"
        assert config.phases.utc_offset == "-06:00"

    def test_text_forms_parsed(self, isolated_env):
        config = build_run_config(
            {
                "input_path": CORPUS,
                "bbox": "29,30,-96,-95",
                "window": "2017-08-20:2017-09-10",
                "phases": "a=2017-08-20:2017-08-31,b=2017-09-01:2017-09-10",
            }
        )
        assert config.bbox.lat_min == 29
        assert config.window.end_date == date(2017, 9, 10)
        assert config.phases.names == ["a", "b"]

    def test_file_window_and_phases_as_objects(self, isolated_env):
        file_values = {
            "window": {"start_date": "2017-08-23", "end_date": "2017-09-05"},
            "phases": {
                "phases": [
                    {"name": "pre-peak", "start_date": "2017-08-23", "end_date": "2017-08-25"},
                    {"name": "rest", "start_date": "2017-08-26", "end_date": "2017-09-05"},
                ]
            },
        }
        config = build_run_config({"input_path": CORPUS}, file_values)
        assert config.phases.names == ["pre-peak", "rest"]

    def test_phase_outside_window(self, isolated_env):
        with pytest.raises(ConfigError, match="outside the time window"):
            build_run_config({"input_path": CORPUS, "window": "2017-08-23:2017-08-31"})

    @pytest.mark.parametrize(
        ("key", "value"), [("top_k", 0), ("adjacency_window", 0), ("corridor_threshold_m", -1)]
    )
    def test_invalid_numbers(self, isolated_env, key, value):
        with pytest.raises(ConfigError, match=key):
            build_run_config({"input_path": CORPUS, key: value})

    def test_missing_file(self, isolated_env):
        with pytest.raises(ConfigError, match="file not found: .*absent.csv"):
            build_run_config({"input_path": CORPUS, "rainfall_path": isolated_env / "absent.csv"})

    def test_skip_path_check(self, isolated_env):
        config = build_run_config({"input_path": "nowhere.jsonl"}, check_paths=False)
        assert config.input_path.name == "nowhere.jsonl"


class TestReadRunConfig:
    def test_relative_paths(self, tmp_path):
        path = tmp_path / "cfg" / "run.json"
        path.parent.mkdir()
        path.write_text(json.dumps({"input_path": "data/c.jsonl", "rainfall_path": "/abs/r.csv",
                                    "top_k": 3}))
        values = read_run_config(path)
        assert values["input_path"] == str(tmp_path / "cfg" / "data" / "c.jsonl")
        assert values["rainfall_path"] == "/abs/r.csv"
        assert values["top_k"] == 3

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("{\n  top_k: 3\n}")
        with pytest.raises(ConfigError, match=r"run\.json:2: invalid JSON"):
            read_run_config(path)

    def test_not_an_object(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text("[]")
        with pytest.raises(ConfigError, match="must be a JSON object"):
            read_run_config(path)

    def test_missing(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read run config"):
            read_run_config(tmp_path / "absent.json")


class TestAppSettings:
    def test_defaults(self, isolated_env):
        settings = AppSettings()
        assert settings.log_level == "WARNING"
        assert settings.run_defaults()["utc_offset"] == "-05:00"

    def test_environment(self, isolated_env, monkeypatch):
        monkeypatch.setenv("HWYIMPACT_CORRIDOR_THRESHOLD_M", "250")
        assert AppSettings().corridor_threshold_m == 250.0


class TestDotenvSources:
    def test_global_config_fills_unset(self, isolated_env, monkeypatch):
        config_file = hwyimpact.config.HWYIMPACT_CONFIG_FILE
        config_file.parent.mkdir(parents=True)
        config_file.write_text("HWYIMPACT_TOP_K=8\nHWYIMPACT_ADJACENCY_WINDOW=2\n")
        monkeypatch.setenv("HWYIMPACT_ADJACENCY_WINDOW", "3")
        load_hwyimpact_config()
        try:
            settings = AppSettings()
            assert settings.top_k == 8
            assert settings.adjacency_window == 3
        finally:
            os.environ.pop("HWYIMPACT_TOP_K", None)

    def test_world_readable_config_loads_quietly(self, isolated_env, caplog):
        config_file = hwyimpact.config.HWYIMPACT_CONFIG_FILE
        config_file.parent.mkdir(parents=True)
        config_file.write_text("HWYIMPACT_LOG_LEVEL=INFO\n")
        os.chmod(config_file, 0o644)
        try:
            with caplog.at_level(logging.DEBUG, logger="hwyimpact"):
                load_hwyimpact_config()
            assert caplog.records == []
            assert AppSettings().log_level == "INFO"
        finally:
            os.environ.pop("HWYIMPACT_LOG_LEVEL", None)
