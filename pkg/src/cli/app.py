"""命令行入口：子命令 transform / convolve / limit / density / lambertw / verify.

流程：
1. 解析参数
2. 加载配置（--config 或默认搜索路径），命令行参数覆盖配置
3. 配置日志（stderr）
4. 分派到子命令，把配置值以关键字参数注入库函数
5. 表格写到 stdout

退出码：0 成功；1 内部错误或 verify 未全部通过；2 用法或定义域错误。
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction

from src.cli.lawexpr import LawExprError, parse_law, parse_rational
from src.cli.output import FORMATS, OutputTable
from src.cli.verify import VerifyOptions, run_checks
from src.config.settings import AppConfig, load_config
from src.free.convolution import ConvOp, convolve
from src.free.models import MomentSeq
from src.free.transforms import (
    boolean_cumulants,
    boolean_eta,
    free_cumulants,
    psi_from_moments,
    psi_inverse,
    r_transform,
    s_from_moments,
    sigma_from_moments,
)
from src.limits.cache import MomentCache
from src.limits.experiments import ExperimentMode, run_experiment
from src.series import TruncSeries
from src.special.densities import (
    count_local_maxima,
    free_poisson_atom,
    free_poisson_samples,
    levy_samples,
    s_density_samples,
)
from src.special.lambert import (
    lambert_residual,
    lambert_w0,
    lambert_w0_complex,
    w0_integral_repr,
)

logger = logging.getLogger("freecalc")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

TRANSFORMS = ("psi", "psi-inv", "S", "Sigma", "R", "eta", "cumulants", "boolean-cumulants")


def _setup_logging(level: str) -> None:
    """配置日志（stderr，保持 stdout 上的表格逐字节稳定）."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format="%(asctime)s | %(levelname)-7s | %(name)-25s | %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True,
    )


# ── 参数解析 ──────────────────────────────────────────────────────


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是整数列表: {text!r}") from e


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except LawExprError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是合法的复数: {text!r}") from e


def _add_common(parser: argparse.ArgumentParser, default: object) -> None:
    parser.add_argument("--format", choices=FORMATS, default=default, help="输出格式")
    parser.add_argument("--order", type=int, default=default, help="截断阶")
    parser.add_argument("--seed", type=int, default=default, help="随机种子")
    parser.add_argument("--config", default=default, help="配置文件路径")
    parser.add_argument("--log-level", dest="log_level", default=default, help="日志级别")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freecalc",
        description="自由概率变换演算：变换、卷积、极限实验、特殊函数与自检",
    )
    _add_common(parser, None)
    # 子命令上的同名参数不覆盖写在子命令之前的值
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, argparse.SUPPRESS)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common], help="测度的各类变换系数")
    p.add_argument("--law", required=True)
    p.add_argument("--which", required=True, choices=TRANSFORMS)

    p = sub.add_parser("convolve", parents=[common], help="两个测度的卷积")
    p.add_argument("--op", required=True, choices=[op.value for op in ConvOp])
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)

    p = sub.add_parser("limit", parents=[common], help="有限 n 收敛实验")
    p.add_argument("--mode", required=True, choices=[m.value for m in ExperimentMode])
    p.add_argument("--law", required=True)
    p.add_argument(
        "--n", dest="ns", type=_int_list, action="extend", default=None,
        help="n 列表，可重复或逗号分隔",
    )
    p.add_argument("--workers", type=int, default=None, help="并行进程数")

    p = sub.add_parser("density", parents=[common], help="参数等距取样的密度表")
    p.add_argument("--which", required=True, choices=["s-limit", "y-levy", "free-poisson"])
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--t", type=_rational, default=Fraction(1))
    p.add_argument("--grid", type=int, default=None)

    p = sub.add_parser("lambertw", parents=[common], help="Lambert W₀ 求值")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--x", type=float)
    target.add_argument("--z", type=_complex)
    p.add_argument("--check-integral", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="运行全部不变量检查")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    return parser


# ── 子命令 ────────────────────────────────────────────────────────


def _order(args: argparse.Namespace, fallback: int) -> int:
    return args.order if args.order is not None else fallback


def _series_rows(table: OutputTable, series: TruncSeries, start: int) -> None:
    for k in range(start, series.order + 1):
        table.add_row(k, series[k], float(series[k]))


def cmd_transform(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    p = _order(args, config.numerics.default_order)
    law = parse_law(args.law)
    m = law.moments(p)
    table = OutputTable(
        ["index", "value", "value_f64"],
        meta={"command": "transform", "law": law.to_expr(), "which": args.which, "order": p},
    )
    which = args.which
    if which == "psi":
        _series_rows(table, psi_from_moments(m), 1)
    elif which == "psi-inv":
        _series_rows(table, psi_inverse(m), 1)
    elif which == "S":
        _series_rows(table, s_from_moments(m), 0)
    elif which == "Sigma":
        _series_rows(table, sigma_from_moments(m), 0)
    elif which == "R":
        _series_rows(table, r_transform(m), 1)
    elif which == "eta":
        _series_rows(table, boolean_eta(m), 1)
    else:
        cumulants = free_cumulants(m) if which == "cumulants" else boolean_cumulants(m)
        for n in range(1, cumulants.order + 1):
            table.add_row(n, cumulants[n], float(cumulants[n]))
    return table


def _moment_table(m: MomentSeq, meta: dict[str, object]) -> OutputTable:
    table = OutputTable(["k", "moment", "moment_f64"], meta=meta)
    for k, mk in enumerate(m.m):
        table.add_row(k, mk, float(mk))
    return table


def cmd_convolve(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    p = _order(args, config.numerics.default_order)
    a, b = parse_law(args.a), parse_law(args.b)
    result = convolve(ConvOp(args.op), a.moments(p), b.moments(p))
    meta = {"command": "convolve", "op": args.op, "a": a.to_expr(), "b": b.to_expr(), "order": p}
    return _moment_table(result, meta)


def cmd_limit(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    exp_config = config.experiment
    p = _order(args, exp_config.order)
    ns = args.ns if args.ns else exp_config.ns
    workers = args.workers if args.workers is not None else exp_config.max_workers
    report = run_experiment(
        ExperimentMode(args.mode),
        parse_law(args.law),
        ns,
        p,
        max_workers=workers,
        cache=MomentCache(exp_config.cache_max_size),
    )
    table = OutputTable(
        ["n", "k", "moment", "limit", "abs_error_f64", "rel_error_f64"],
        meta={"command": "limit", **report.metadata},
    )
    for row in report.rows:
        table.add_row(row.n, row.k, row.moment, row.limit, row.abs_error, row.rel_error)
    return table


def _positive_float(name: str, value: Fraction) -> float:
    """有理参数转为浮点；非正、上溢或下溢为 0 都是用法错误，报告原始有理数."""
    if value <= 0:
        raise LawExprError(f"{name} 必须 > 0，实际 {name} = {value}")
    try:
        result = float(value)
    except OverflowError as e:
        raise LawExprError(f"{name} = {value} 超出双精度范围") from e
    if result == 0.0 or not math.isfinite(result):
        raise LawExprError(f"{name} = {value} 超出双精度范围")
    return result


def cmd_density(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    grid = args.grid if args.grid is not None else config.density.grid
    which = args.which
    meta: dict[str, object] = {"command": "density", "which": which, "grid": grid}
    if which == "s-limit":
        if args.alpha != 1:
            raise LawExprError("s-limit 只有 α = 1 的参数化密度")
        rows = s_density_samples(grid)
        meta["sampling"] = "v uniform midpoints in (0, pi); x = 1/f(v)"
        meta["local_maxima"] = count_local_maxima([phi for _, phi in rows])
    elif which == "y-levy":
        rows = levy_samples(_positive_float("alpha", args.alpha), grid)
        meta["alpha"] = str(args.alpha)
        meta["sampling"] = "u uniform in [0, pi); s = alpha/f(u)"
    else:
        t = _positive_float("t", args.t)
        rows = free_poisson_samples(t, grid)
        meta["t"] = str(args.t)
        meta["atom_at_zero"] = free_poisson_atom(t)
        meta["sampling"] = "theta uniform midpoints in (0, pi); x = 1 + t + 2 sqrt(t) cos(theta)"
    table = OutputTable(["x_f64", "density_f64"], meta=meta)
    for x, value in rows:
        table.add_row(float(x), float(value))
    return table


def cmd_lambertw(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    if args.x is not None:
        z = complex(args.x, 0.0)
        w = complex(lambert_w0(args.x), 0.0)
    else:
        z = complex(args.z)
        w = lambert_w0_complex(z)
    columns = ["z_re_f64", "z_im_f64", "w_re_f64", "w_im_f64", "residual_f64"]
    values: list[object] = [z.real, z.imag, w.real, w.imag, lambert_residual(w, z)]
    if args.check_integral:
        integral = w0_integral_repr(z) * z if z != 0 else complex(0.0, 0.0)
        columns += ["integral_re_f64", "integral_im_f64", "discrepancy_f64"]
        values += [integral.real, integral.imag, abs(integral - w)]
    table = OutputTable(columns, meta={"command": "lambertw", "branch": "W0"})
    table.add_row(*values)
    return table


def cmd_verify(args: argparse.Namespace, config: AppConfig) -> OutputTable:
    verify_config = config.verify
    opts = VerifyOptions(
        order=_order(args, config.numerics.default_order),
        seed=args.seed if args.seed is not None else verify_config.seed,
        samples=verify_config.samples,
        oracle_samples=verify_config.oracle_samples,
        endpoint_guard=config.numerics.endpoint_guard,
        hankel_tolerance=config.numerics.hankel_tolerance,
        inject_fault=args.inject_fault,
    )
    results = run_checks(opts)
    table = OutputTable(
        ["check", "status", "detail"],
        meta={"command": "verify", "order": opts.order, "seed": opts.seed},
    )
    for name, passed, detail in results:
        table.add_row(name, "pass" if passed else "fail", detail)
    table.meta["passed"] = all(passed for _, passed, _ in results)
    return table


COMMANDS: dict[str, Callable[[argparse.Namespace, AppConfig], OutputTable]] = {
    "transform": cmd_transform,
    "convolve": cmd_convolve,
    "limit": cmd_limit,
    "density": cmd_density,
    "lambertw": cmd_lambertw,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    """解析参数并执行子命令，返回退出码."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        config = load_config(args.config)
        _setup_logging(args.log_level or config.logging.level)
        fmt = args.format or config.output.format
        logger.info("命令 %s 开始", args.command)
        table = COMMANDS[args.command](args, config)
    except ValueError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        logger.exception("内部错误")
        return EXIT_FAILURE

    sys.stdout.write(table.render(fmt))
    if args.command == "verify" and not table.meta.get("passed", False):
        return EXIT_FAILURE
    logger.info("命令 %s 完成，%d 行", args.command, len(table.rows))
    return EXIT_OK
