import logging
from fractions import Fraction

import numpy as np
import pytest

from witnesspy.errors import (
    DegenerateRatioError,
    GuessDominatedError,
    MatrixOverflowError,
    NoViolationError,
    SizeCapError,
    VectorNormalizationError,
    WitnessError,
)
from witnesspy.utils import EnvManager, SerializationUtils, ValueKind

from .conftest import read_csv_rows

ENV_NAMES = [
    "WITNESSPY_THREADS",
    "WITNESSPY_DEPTH",
    "WITNESSPY_SKIP_FRAC",
    "WITNESSPY_SEED",
    "WITNESSPY_LOG_LEVEL",
    "WITNESSPY_LOG_FILE",
]


@pytest.fixture
def clean_env(monkeypatch, tmp_path):
    for name in ENV_NAMES:
        # recorded first so values loaded from .env files are removed on undo
        monkeypatch.setenv(name, "")
        monkeypatch.delenv(name)
    monkeypatch.chdir(tmp_path)
    return monkeypatch


class TestEnvManager:
    def test_defaults(self, clean_env):
        config = EnvManager().get_config_dict()
        assert config["depth"] == 3
        assert config["skip_fraction"] == 0.75
        assert config["seed"] == 0
        assert config["log_level"] == "INFO"
        assert config["log_file"] is None
        assert config["threads"] >= 1

    def test_environment_values(self, clean_env):
        clean_env.setenv("WITNESSPY_THREADS", "6")
        clean_env.setenv("WITNESSPY_SKIP_FRAC", "0.5")
        clean_env.setenv("WITNESSPY_LOG_LEVEL", "debug")
        env = EnvManager()
        assert env.get_threads() == 6
        assert env.get_skip_fraction() == 0.5
        assert env.get_log_level() == "DEBUG"

    def test_invalid_values_fall_back(self, clean_env, caplog):
        clean_env.setenv("WITNESSPY_DEPTH", "-2")
        clean_env.setenv("WITNESSPY_SKIP_FRAC", "2")
        clean_env.setenv("WITNESSPY_LOG_LEVEL", "LOUD")
        env = EnvManager()
        with caplog.at_level(logging.WARNING, logger="witnesspy.utils.env_utils"):
            assert env.get_depth() == 3
            assert env.get_skip_fraction() == 0.75
            assert env.get_log_level() == "INFO"
        assert "WITNESSPY_DEPTH" in caplog.text

    def test_env_file_does_not_override(self, clean_env, tmp_path):
        env_file = tmp_path / "run.env"
        env_file.write_text("WITNESSPY_SEED=17\nWITNESSPY_DEPTH=5\n", encoding="utf-8")
        clean_env.setenv("WITNESSPY_DEPTH", "2")
        env = EnvManager(env_file)
        assert env.get_seed() == 17
        assert env.get_depth() == 2
        assert "WITNESSPY_DEPTH" not in env.loaded_vars


class TestSerializationUtils:
    def test_format_real(self):
        assert SerializationUtils.format_real(2 ** 0.5) == "1.41421356237"
        assert SerializationUtils.format_real(536722.3512345678) == "536722.351235"

    def test_fractions(self):
        assert SerializationUtils.format_fraction(Fraction(342353, 218298)) == "342353/218298"
        assert SerializationUtils.parse_fraction("342353/218298") == Fraction(342353, 218298)

    @pytest.mark.parametrize(
        "value, kind",
        [
            (None, ValueKind.NULL),
            (True, ValueKind.BOOLEAN),
            (np.int64(3), ValueKind.INTEGER),
            (0.5, ValueKind.REAL),
            (Fraction(1, 3), ValueKind.FRACTION),
            ("text", ValueKind.TEXT),
        ],
    )
    def test_serialize_kinds(self, value, kind):
        assert SerializationUtils.serialize_value(value).kind == kind

    def test_serialize_unknown(self):
        with pytest.raises(TypeError):
            SerializationUtils.serialize_value(object())

    def test_key_values_round_trip(self, tmp_path):
        path = tmp_path / "report.yaml"
        SerializationUtils.write_key_values({"b": 1, "a": 0.1 + 0.2, "ok": False, "r": Fraction(2, 3)}, path)
        data = SerializationUtils.read_key_values(path)
        assert list(data) == ["b", "a", "ok", "r"]
        assert data["a"] == 0.3
        assert data["r"] == "2/3"

    def test_read_key_values_requires_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n", encoding="utf-8")
        with pytest.raises(ValueError):
            SerializationUtils.read_key_values(path)

    def test_format_key_values(self):
        text = SerializationUtils.format_key_values({"l2": 4, "ratio": 2 ** 0.5})
        assert text.splitlines() == ["l2    : 4", "ratio : 1.41421356237"]

    def test_csv(self, tmp_path):
        path = tmp_path / "grid.csv"
        assert SerializationUtils.write_csv(["i", "x"], [(0, 1 / 3), (1, 2.0)], path) == 2
        rows = read_csv_rows(path)
        assert rows == [{"i": "0", "x": "0.333333333333"}, {"i": "1", "x": "2"}]


class TestErrors:
    @pytest.mark.parametrize(
        "error", [MatrixOverflowError, SizeCapError, VectorNormalizationError, DegenerateRatioError]
    )
    def test_value_errors(self, error):
        assert issubclass(error, WitnessError)
        assert issubclass(error, ValueError)

    @pytest.mark.parametrize("error", [GuessDominatedError, NoViolationError])
    def test_certification_errors(self, error):
        assert issubclass(error, WitnessError)
        assert not issubclass(error, ValueError)
