"""极限定理的有限 n 实验、极限律的矩与无穷可分性证据."""

from src.limits.laws import (
    Dirac,
    FreePoisson,
    LawSpec,
    LimitError,
    RawMoments,
    SLimit,
    YLimit,
)

__all__ = [
    "Dirac",
    "FreePoisson",
    "LawSpec",
    "LimitError",
    "RawMoments",
    "SLimit",
    "YLimit",
]
