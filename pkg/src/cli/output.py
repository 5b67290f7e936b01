"""输出表格：CSV / JSON 渲染.

精确有理数渲染为 p/q 字符串，浮点数保留 17 位有效数字，浮点列名以 _f64 结尾。
数据体中不含时间戳或与区域设置相关的内容，相同输入得到逐字节相同的输出。
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

FORMATS = ("csv", "json")


def render_cell(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@dataclass(slots=True)
class OutputTable:
    """表头 + 数据行 + 元数据."""

    columns: list[str]
    rows: list[list[object]] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)

    def add_row(self, *values: object) -> None:
        if len(values) != len(self.columns):
            raise ValueError(
                f"行宽 {len(values)} 与表头 {len(self.columns)} 不一致"
            )
        self.rows.append(list(values))

    def rendered_rows(self) -> list[list[str]]:
        return [[render_cell(v) for v in row] for row in self.rows]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        writer.writerows(self.rendered_rows())
        return buffer.getvalue()

    def to_json(self) -> str:
        payload = {
            "meta": self.meta,
            "rows": [dict(zip(self.columns, row)) for row in self.rendered_rows()],
        }
        return json.dumps(payload, ensure_ascii=False, indent=2, default=render_cell) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"未知的输出格式: {fmt!r}")
