import logging

import pytest

from app import create_app, current_settings
from app.config import DevelopmentConfig, ProductionConfig, TestingConfig, environment_overrides, get_config
from app.exceptions import (
    BodySpecError,
    CapCoverError,
    ConfigurationError,
    ConstantsInfeasible,
    DimensionError,
    EpsilonTooLarge,
    GeometryInvalid,
    HausdorffExceeded,
    InvariantViolated,
)
from app.models.settings import ApproximationSettings


# === Nastavení výpočtu ===

def test_settings_defaults():
    settings = ApproximationSettings()
    assert settings.b2 == 2.0
    assert settings.polar_c == 8.0
    assert settings.constants()["c"] == 8.0


def test_settings_from_mapping():
    settings = ApproximationSettings.from_mapping({"CAPCOVER_BETA": "3", "CAPCOVER_THREADS": "4",
                                                   "CAPCOVER_SIGMA": None})
    assert settings.beta == 3.0
    assert settings.threads == 4
    assert settings.sigma == ApproximationSettings().sigma


def test_settings_overrides_take_precedence():
    settings = ApproximationSettings.from_mapping({"CAPCOVER_POLAR_C": "4"}, polar_c=16)
    assert settings.polar_c == 16.0


@pytest.mark.parametrize("mapping", [
    {"CAPCOVER_THREADS": "abc"},
    {"CAPCOVER_THREADS": "0"},
    {"CAPCOVER_B1": "3"},
    {"CAPCOVER_BETA": "0.5"},
    {"CAPCOVER_REPAIR_ROUNDS": "-1"},
])
def test_settings_reject_invalid_values(mapping):
    with pytest.raises(ConfigurationError):
        ApproximationSettings.from_mapping(mapping)


@pytest.mark.parametrize("raw, expected", [("true", True), ("1", True), ("Off", False), (False, False)])
def test_settings_strict_flag(raw, expected):
    assert ApproximationSettings.from_mapping({"CAPCOVER_STRICT": raw}).strict is expected


def test_settings_reject_unknown_flag():
    with pytest.raises(ConfigurationError):
        ApproximationSettings.from_mapping({"CAPCOVER_STRICT": "maybe"})


def test_strict_mode_by_environment():
    assert DevelopmentConfig.CAPCOVER_STRICT is True
    assert ApproximationSettings.from_mapping({"CAPCOVER_STRICT": TestingConfig.CAPCOVER_STRICT}).strict is False
    assert ApproximationSettings.from_mapping({"CAPCOVER_STRICT": ProductionConfig.CAPCOVER_STRICT}).strict is False


def test_environment_overrides():
    environ = {"CAPCOVER_THREADS": "4", "CAPCOVER_BETA": "", "PATH": "/usr/bin"}
    assert environment_overrides(environ) == {"CAPCOVER_THREADS": "4"}


# === Konfigurace aplikace ===

def test_get_config():
    assert get_config("testing") is TestingConfig
    assert get_config("production") is ProductionConfig
    assert get_config("neznama") is DevelopmentConfig
    assert get_config(TestingConfig) is TestingConfig


def test_environment_sets_thread_count(tmp_path, monkeypatch):
    monkeypatch.setenv("CAPCOVER_LOG_DIR", str(tmp_path))
    monkeypatch.setenv("CAPCOVER_THREADS", "3")
    app = create_app("testing")
    with app.app_context():
        assert current_settings().threads == 3


def test_invalid_environment_value(tmp_path, monkeypatch):
    monkeypatch.setenv("CAPCOVER_LOG_DIR", str(tmp_path))
    monkeypatch.setenv("CAPCOVER_SIGMA", "many")
    app = create_app("testing")
    with app.app_context():
        with pytest.raises(ConfigurationError):
            current_settings()


def test_log_files_are_created(app, tmp_path):
    app.logger.error("zkušební chyba")
    for handler in app.logger.handlers:
        handler.flush()
    logs = tmp_path / "logs"
    assert (logs / "capcover.log").exists()
    assert "zkušební chyba" in (logs / "errors.log").read_text(encoding="utf-8")


def test_service_loggers_propagate_to_app_logger(app, caplog):
    with caplog.at_level(logging.INFO, logger="app"):
        logging.getLogger("app.services.geom").info("zpráva služby")
    assert "zpráva služby" in caplog.text


# === Výjimky ===

def test_exception_hierarchy():
    for exc in (BodySpecError, DimensionError, EpsilonTooLarge, ConstantsInfeasible):
        assert issubclass(exc, ConfigurationError)
    for exc in (InvariantViolated, HausdorffExceeded):
        assert issubclass(exc, CapCoverError)
        assert not issubclass(exc, ConfigurationError)
    assert not issubclass(DimensionError, BodySpecError)
    assert not issubclass(GeometryInvalid, ConfigurationError)
    assert issubclass(CapCoverError, ValueError)
