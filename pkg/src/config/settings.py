"""配置管理：加载 YAML 配置文件并叠加环境变量.

使用 pydantic-settings 进行配置校验，
确保阶数、容差、实验参数的类型与取值范围正确。

支持两种配置方式（可叠加）：
1. YAML 文件（默认值之上的项目配置）
2. 环境变量 FREECALC_*（嵌套字段用 __ 分隔，如 FREECALC_EXPERIMENT__ORDER=6），
   优先级高于文件

库函数本身不读取配置；CLI 把配置值作为关键字参数注入。
"""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ValidationError, field_validator
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict

from src.series.scalar import DEFAULT_ORDER, MAX_ORDER

_SEARCH_PATHS = (Path("config/config.yaml"), Path("config.yaml"))


class ConfigError(ValueError):
    """配置文件缺失、格式错误或校验失败."""


class NumericsConfig(BaseModel):
    """数值计算配置."""

    default_order: int = DEFAULT_ORDER
    hankel_tolerance: float = 1e-9
    endpoint_guard: float = 1e-3

    @field_validator("default_order")
    @classmethod
    def order_in_range(cls, v: int) -> int:
        if not 1 <= v <= MAX_ORDER:
            raise ValueError(f"default_order 必须在 [1, {MAX_ORDER}] 内")
        return v

    @field_validator("hankel_tolerance", "endpoint_guard")
    @classmethod
    def positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("容差必须为正数")
        return v


class ExperimentConfig(BaseModel):
    """极限实验配置."""

    ns: list[int] = [1, 2, 4, 8, 16, 32, 64, 128, 256]
    order: int = 4
    max_workers: int = 1
    cache_max_size: int = 256

    @field_validator("ns")
    @classmethod
    def strictly_increasing(cls, v: list[int]) -> list[int]:
        if not v or any(n < 1 for n in v):
            raise ValueError("ns 必须是非空的正整数列表")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("ns 必须严格递增")
        return v

    @field_validator("order")
    @classmethod
    def order_in_range(cls, v: int) -> int:
        if not 1 <= v <= MAX_ORDER:
            raise ValueError(f"order 必须在 [1, {MAX_ORDER}] 内")
        return v

    @field_validator("max_workers", "cache_max_size")
    @classmethod
    def at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("必须 >= 1")
        return v


class DensityConfig(BaseModel):
    """密度取样配置."""

    grid: int = 200

    @field_validator("grid")
    @classmethod
    def at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("grid 必须 >= 1")
        return v


class VerifyConfig(BaseModel):
    """verify 子命令配置."""

    seed: int = 0
    samples: int = 20
    oracle_samples: int = 50


class OutputConfig(BaseModel):
    """输出格式配置."""

    format: str = "csv"

    @field_validator("format")
    @classmethod
    def known_format(cls, v: str) -> str:
        v = v.strip().lower()
        if v not in {"csv", "json"}:
            raise ValueError("format 只能是 csv 或 json")
        return v


class LoggingConfig(BaseModel):
    """日志配置."""

    level: str = "WARNING"

    @field_validator("level")
    @classmethod
    def known_level(cls, v: str) -> str:
        v = v.strip().upper()
        if not isinstance(logging.getLevelName(v), int):
            raise ValueError(f"未知的日志级别: {v}")
        return v


class AppConfig(BaseSettings):
    """应用总配置."""

    model_config = SettingsConfigDict(
        env_prefix="FREECALC_",
        env_nested_delimiter="__",
        extra="forbid",
    )

    numerics: NumericsConfig = NumericsConfig()
    experiment: ExperimentConfig = ExperimentConfig()
    density: DensityConfig = DensityConfig()
    verify: VerifyConfig = VerifyConfig()
    output: OutputConfig = OutputConfig()
    logging: LoggingConfig = LoggingConfig()

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # 环境变量优先于 YAML 文件内容
        return env_settings, init_settings


def load_config(config_path: str | Path | None = None) -> AppConfig:
    """加载配置文件并叠加环境变量.

    优先级：
    1. 环境变量 FREECALC_*
    2. 指定路径的配置文件
    3. config/config.yaml
    4. config.yaml
    5. 内置默认值（找不到文件时）

    Args:
        config_path: 配置文件路径（可选）；指定但不存在时报错。

    Returns:
        AppConfig 对象。

    Raises:
        ConfigError: 文件不存在、YAML 格式错误或校验失败。
    """
    if config_path:
        path: Path | None = Path(config_path)
        if not path.exists():
            raise ConfigError(f"找不到配置文件: {path}")
    else:
        path = next((sp for sp in _SEARCH_PATHS if sp.exists()), None)

    raw: dict[str, Any] = {}
    if path is not None:
        try:
            with open(path, encoding="utf-8") as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise ConfigError(f"配置文件 {path} 不是合法的 YAML: {e}") from e
        if not isinstance(raw, dict):
            raise ConfigError(f"配置文件 {path} 顶层必须是映射")

    try:
        return AppConfig(**raw)
    except ValidationError as e:
        raise ConfigError(f"配置校验失败: {e}") from e
