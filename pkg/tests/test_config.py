import json
import logging

import pytest

from witnesspy.config import SECTION_SCHEMAS, ConfigParser, ConfigValidator, TemplateManager


class TestConfigValidator:
    def test_positive_int(self):
        assert ConfigValidator.is_positive_int(8)
        assert not ConfigValidator.is_positive_int(0)
        assert not ConfigValidator.is_positive_int(True)
        assert not ConfigValidator.is_positive_int(2.0)

    def test_non_negative_int(self):
        assert ConfigValidator.is_non_negative_int(0)
        assert not ConfigValidator.is_non_negative_int(-1)

    def test_fraction_and_eta(self):
        assert ConfigValidator.is_fraction(0.75)
        assert ConfigValidator.is_fraction(1)
        assert not ConfigValidator.is_fraction(1.2)
        assert ConfigValidator.is_eta(0.3)
        assert not ConfigValidator.is_eta(-0.1)

    def test_positive_real(self):
        assert ConfigValidator.is_positive_real(1e-6)
        assert not ConfigValidator.is_positive_real(0.0)
        assert not ConfigValidator.is_positive_real(False)


class TestConfigParser:
    def test_yaml(self, write_text):
        path = write_text("run.yaml", "lnorm:\n  k: 3\n  method: bruteforce\n")
        config = ConfigParser.parse_file(path)
        assert ConfigParser.section(config, "lnorm") == {"k": 3, "method": "bruteforce"}

    def test_logs_loaded_sections(self, write_text, caplog):
        path = write_text("run.yaml", "lnorm:\n  k: 2\ncertify:\n  bisect: true\n")
        with caplog.at_level(logging.DEBUG, logger="witnesspy.config.config_parser"):
            ConfigParser.parse_file(path)
        assert "['lnorm', 'certify']" in caplog.text

    def test_json(self, write_text):
        path = write_text("run.json", json.dumps({"gilbert": {"eta": 0.8, "imax": 100}}))
        section = ConfigParser.section(ConfigParser.parse_file(path), "gilbert")
        ConfigParser.validate_gilbert_section(section)
        assert section["imax"] == 100

    def test_missing_section_is_empty(self, write_text):
        path = write_text("run.yaml", "lnorm:\n  k: 2\n")
        assert ConfigParser.section(ConfigParser.parse_file(path), "certify") == {}

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            ConfigParser.parse_file(tmp_path / "absent.yaml")

    def test_unsupported_suffix(self, write_text):
        with pytest.raises(ValueError):
            ConfigParser.parse_file(write_text("run.toml", "k = 2\n"))

    def test_malformed_yaml(self, write_text):
        with pytest.raises(ValueError):
            ConfigParser.parse_file(write_text("run.yaml", "lnorm: [unclosed\n"))

    def test_top_level_must_be_mapping(self, write_text):
        with pytest.raises(ValueError):
            ConfigParser.parse_file(write_text("run.yaml", "- 1\n- 2\n"))

    def test_unknown_section(self):
        with pytest.raises(ValueError):
            ConfigParser.section({}, "deploy")

    def test_unknown_key_is_named(self):
        with pytest.raises(ValueError, match="threadz"):
            ConfigParser.validate_solver_section({"threadz": 4})

    def test_invalid_value_is_named(self):
        with pytest.raises(ValueError, match="skip_frac"):
            ConfigParser.validate_solver_section({"skip_frac": 1.5})

    def test_invalid_method(self):
        with pytest.raises(ValueError):
            ConfigParser.validate_solver_section({"method": "annealing"})
        ConfigParser.validate_solver_section({"method": "local"})

    def test_gisin_and_certify_sections(self):
        ConfigParser.validate_gisin_section({"samples": 1000, "pairs": "random:5"})
        ConfigParser.validate_certify_section({"bisect": True, "tol": 1e-9})
        with pytest.raises(ValueError):
            ConfigParser.validate_certify_section({"bisect": "yes"})

    @pytest.mark.parametrize("suffix", [".yaml", ".json"])
    def test_save_round_trip(self, tmp_path, suffix):
        config = {"lnorm": {"k": 2, "threads": 4}, "gisin": {"samples": 10}}
        path = tmp_path / f"saved{suffix}"
        ConfigParser.save_config(config, path)
        assert ConfigParser.parse_file(path) == config


class TestTemplateManager:
    def test_list(self):
        assert TemplateManager.list_templates() == ["certify", "gilbert", "gisin", "lnorm"]

    @pytest.mark.parametrize("name", ["certify", "gilbert", "gisin", "lnorm"])
    def test_templates_validate(self, name):
        template = TemplateManager.get_template(name)
        for section, values in template.items():
            assert section in SECTION_SCHEMAS
            ConfigParser.validate_section(section, values)

    def test_get_returns_copy(self):
        TemplateManager.get_template("lnorm")["lnorm"]["k"] = 99
        assert TemplateManager.get_template("lnorm")["lnorm"]["k"] == 2

    def test_unknown_template(self):
        with pytest.raises(ValueError):
            TemplateManager.get_template("w70")

    def test_write(self, tmp_path):
        path = tmp_path / "gilbert.yaml"
        written = TemplateManager.write_template("gilbert", path)
        assert ConfigParser.parse_file(path) == written

    def test_write_logs_destination(self, tmp_path, caplog):
        path = tmp_path / "lnorm.json"
        with caplog.at_level(logging.INFO, logger="witnesspy.config.templates"):
            TemplateManager.write_template("lnorm", path)
        assert f"Wrote 'lnorm' template to {path}" in caplog.text
