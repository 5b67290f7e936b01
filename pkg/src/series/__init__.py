"""截断形式幂级数：精确有理数 / 浮点两种标量后端."""

from src.series.scalar import MAX_ORDER, Backend, SeriesError, check_order
from src.series.truncated import (
    TruncSeries,
    add,
    compose,
    exp_series,
    lagrange_revert,
    log_series,
    mul,
    pow_series,
    recip,
    revert,
)

__all__ = [
    "MAX_ORDER",
    "Backend",
    "SeriesError",
    "TruncSeries",
    "add",
    "check_order",
    "compose",
    "exp_series",
    "lagrange_revert",
    "log_series",
    "mul",
    "pow_series",
    "recip",
    "revert",
]
