"""配置加载：YAML 文件、默认搜索路径与环境变量覆盖."""

from __future__ import annotations

from pathlib import Path

import pytest

from src.config.settings import AppConfig, ConfigError, load_config

EXAMPLE = Path(__file__).resolve().parents[1] / "config" / "config.example.yaml"


@pytest.fixture(autouse=True)
def isolated(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def _write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_without_file():
    config = load_config()
    assert config.numerics.default_order == 8
    assert config.experiment.ns == [1, 2, 4, 8, 16, 32, 64, 128, 256]
    assert config.output.format == "csv"
    assert config.logging.level == "WARNING"


def test_example_file_loads():
    config = load_config(EXAMPLE)
    assert config == AppConfig()


def test_explicit_file(isolated):
    path = _write(
        isolated / "custom.yaml",
        "experiment:\n  ns: [1, 3, 9]\n  order: 3\noutput:\n  format: JSON\n",
    )
    config = load_config(path)
    assert config.experiment.ns == [1, 3, 9]
    assert config.experiment.order == 3
    assert config.experiment.max_workers == 1
    assert config.output.format == "json"


def test_search_path(isolated):
    _write(isolated / "config" / "config.yaml", "density:\n  grid: 17\n")
    assert load_config().density.grid == 17


def test_missing_explicit_file():
    with pytest.raises(ConfigError, match="找不到配置文件"):
        load_config("nope.yaml")


@pytest.mark.parametrize(
    "text",
    [
        "experiment:\n  ns: [4, 2]\n",
        "experiment:\n  ns: []\n",
        "numerics:\n  default_order: 30\n",
        "numerics:\n  endpoint_guard: 0\n",
        "output:\n  format: xml\n",
        "logging:\n  level: LOUD\n",
        "density:\n  grid: 0\n",
        "bogus: 1\n",
        "- 1\n- 2\n",
        "experiment: [1, 2\n",
    ],
)
def test_invalid_files(isolated, text):
    path = _write(isolated / "bad.yaml", text)
    with pytest.raises(ConfigError):
        load_config(path)


def test_environment_overrides_file(isolated, monkeypatch):
    path = _write(isolated / "c.yaml", "experiment:\n  ns: [2, 5]\n  order: 3\n")
    monkeypatch.setenv("FREECALC_EXPERIMENT__ORDER", "6")
    monkeypatch.setenv("FREECALC_LOGGING__LEVEL", "debug")
    config = load_config(path)
    assert config.experiment.order == 6
    assert config.experiment.ns == [2, 5]
    assert config.logging.level == "DEBUG"


def test_invalid_environment_value(monkeypatch):
    monkeypatch.setenv("FREECALC_NUMERICS__DEFAULT_ORDER", "0")
    with pytest.raises(ConfigError):
        load_config()
