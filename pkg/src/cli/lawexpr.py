"""测度表达式的解析与打印.

语法：
    free-poisson:t=<rat> | dirac:c=<rat> | moments:<rat>,<rat>,…
    | y-limit:alpha=<rat> | s-limit:alpha=<rat>
    <rat> = int | int/int

parse(format(law)) == law 对所有合法测度成立。
"""

from __future__ import annotations

import re
from fractions import Fraction

from src.limits.laws import (
    Dirac,
    FreePoisson,
    LawSpec,
    LimitError,
    RawMoments,
    SLimit,
    YLimit,
)

_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")

# kind -> (参数名, 构造器)
_KEYED = {
    FreePoisson.kind: ("t", FreePoisson),
    Dirac.kind: ("c", Dirac),
    YLimit.kind: ("alpha", YLimit),
    SLimit.kind: ("alpha", SLimit),
}


class LawExprError(ValueError):
    """测度表达式无法解析或参数违反约束."""


def parse_rational(text: str) -> Fraction:
    """解析 int 或 int/int."""
    match = _RATIONAL.match(text.strip())
    if match is None:
        raise LawExprError(f"不是合法的有理数: {text!r}（应为 int 或 int/int）")
    num, den = match.groups()
    if den is not None and int(den) == 0:
        raise LawExprError(f"分母不能为 0: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def parse_law(text: str) -> LawSpec:
    """把测度表达式解析为 LawSpec.

    Raises:
        LawExprError: 语法错误、未知种类或参数越界（如 t <= 0）。
    """
    if not isinstance(text, str) or ":" not in text:
        raise LawExprError(f"测度表达式缺少 ':' 分隔符: {text!r}")
    kind, _, body = text.strip().partition(":")
    kind = kind.strip()
    try:
        if kind == RawMoments.kind:
            items = body.split(",")
            if not body.strip() or any(not item.strip() for item in items):
                raise LawExprError(f"moments 列表含空项: {text!r}")
            return RawMoments(tuple(parse_rational(item) for item in items))
        if kind not in _KEYED:
            known = ", ".join(sorted([*_KEYED, RawMoments.kind]))
            raise LawExprError(f"未知的测度种类 {kind!r}（可选: {known}）")
        name, factory = _KEYED[kind]
        key, sep, value = body.partition("=")
        if not sep or key.strip() != name:
            raise LawExprError(f"{kind} 需要参数 {name}=<rat>: {text!r}")
        return factory(parse_rational(value))
    except LimitError as e:
        raise LawExprError(f"{text!r}: {e}") from e


def format_law(law: LawSpec) -> str:
    return law.to_expr()
