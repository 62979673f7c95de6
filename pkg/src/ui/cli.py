"""
命令行界面 - 度量查询、决策区域扫描、基数扫描与验证

标准输出只写数据 (CSV / JSON / 数值), 日志与错误信息写到标准错误。
退出码: 0 成功, 1 用法/输入/领域错误, 2 验证失败。
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from loguru import logger

from ..models.estimate import EstimatorKind, MetricKind
from ..models.metric_config import BaseDistance, MetricConfig
from ..services.sweep_service import SweepService
from ..storage.file_storage import FileStorage, format_number
from ..utils.config import Config
from ..utils.exceptions import MetricsToolkitError, ValidationError
from ..utils.log import setup_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VALIDATION_FAILED = 2

DEFAULT_REGION_ESTIMATORS = ["gospa", "uospa", "ospa", "mam", "jom"]


class CliArgumentParser(argparse.ArgumentParser):
    """用法错误时以退出码 1 结束 (argparse 默认为 2, 与验证失败冲突)"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: 错误: {message}\n")


def _common_options() -> argparse.ArgumentParser:
    """各子命令共享的参数; 默认值为 None, 表示取配置文件或内置默认值"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--p", type=float, default=None, help="度量阶数 p (默认 2)")
    parent.add_argument("--c", type=float, default=None, help="截断距离 c (默认 1)")
    parent.add_argument("--alpha", type=float, default=None, help="GOSPA 的 alpha (默认 2)")
    parent.add_argument(
        "--base-distance",
        choices=[b.value for b in BaseDistance],
        default=None,
        help="单目标基础距离",
    )
    parent.add_argument("--config", default=None, help="JSON 配置文件路径")
    parent.add_argument(
        "--metric-config", type=Path, default=None,
        help="度量参数 JSON 文件 {p, c, alpha, base_distance}, 优先于 --config",
    )
    parent.add_argument("--verbose", "-v", action="store_true", help="输出调试日志")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    common = _common_options()
    parser = CliArgumentParser(
        prog="setmetrics",
        description="OSPA/UOSPA/GOSPA 集合度量与多伯努利最优估计工具",
    )
    sub = parser.add_subparsers(dest="command", parser_class=CliArgumentParser)
    sub.required = True

    p_metric = sub.add_parser("metric", parents=[common], help="计算两个目标集合之间的距离")
    p_metric.add_argument("x", type=Path, help="集合 X 的 JSON 文件")
    p_metric.add_argument("y", type=Path, help="集合 Y 的 JSON 文件")
    p_metric.add_argument("--metric", choices=["ospa", "uospa", "gospa"], default="gospa")
    p_metric.add_argument(
        "--decompose", action="store_true",
        help="输出 alpha=2 GOSPA 的定位/漏检/虚警分解 (JSON)",
    )

    p_mse = sub.add_parser("mse", parents=[common], help="检测向量的闭式均方误差")
    p_mse.add_argument("mb", type=Path, help="多伯努利密度的 JSON 文件")
    p_mse.add_argument("--metric", choices=["ospa", "uospa", "gospa"], default="gospa")
    p_mse.add_argument("--e-hat", required=True, help="检测向量, 如 1,0,1")

    p_est = sub.add_parser("estimate", parents=[common], help="运行估计器")
    p_est.add_argument("mb", type=Path, help="多伯努利密度的 JSON 文件")
    p_est.add_argument(
        "--estimator", choices=[k.value for k in EstimatorKind], default="gospa",
    )

    p_regions = sub.add_parser("sweep-regions", parents=[common], help="两个分量的决策区域扫描")
    p_regions.add_argument(
        "--estimator", action="append", default=None,
        help="估计器, 可重复或用逗号分隔 (默认 gospa,uospa,ospa,mam,jom)",
    )
    p_regions.add_argument("--grid-step", type=float, default=None)
    p_regions.add_argument("--out", type=Path, default=None, help="CSV 输出文件, 默认写到标准输出")
    p_regions.add_argument("--gnuplot", type=Path, default=None, help="同时写出 gnuplot 绘图脚本")

    p_card = sub.add_parser("sweep-cardinality", parents=[common], help="相同存在概率时的基数扫描")
    p_card.add_argument("--r", type=float, required=True, help="共同的存在概率")
    p_card.add_argument("--n-max", type=int, default=None)
    p_card.add_argument("--out", type=Path, default=None)

    p_val = sub.add_parser("validate", parents=[common], help="闭式误差与枚举预言机的一致性验证")
    p_val.add_argument("--seed", type=int, default=None)
    p_val.add_argument("--instances", type=int, default=None)
    p_val.add_argument("--samples", type=int, default=None, help="每个实例的蒙特卡洛样本数")
    p_val.add_argument("--tolerance", type=float, default=None)
    p_val.add_argument("--max-components", type=int, default=None)
    p_val.add_argument("--out", type=Path, default=None)

    return parser


def _pick(flag_value, config_value):
    """命令行参数优先, 其次配置文件, 最后内置默认值"""
    return flag_value if flag_value is not None else config_value


def _metric_config(args: argparse.Namespace, config: Config) -> MetricConfig:
    """合并命令行、度量参数文件与配置得到度量参数"""
    settings = config.get_metric_settings()
    if args.metric_config is not None:
        base = MetricConfig.from_dict(settings)
        settings = FileStorage.read_metric_config(args.metric_config, base).to_dict()
    for name in ("p", "c", "alpha", "base_distance"):
        value = getattr(args, name, None)
        if value is not None:
            settings[name] = value
    return MetricConfig.from_dict(settings)


def _mse_kind(metric: str, alpha: float) -> MetricKind:
    """命令行度量名转为 MetricKind; gospa 在 alpha != 2 时使用一般 alpha 公式"""
    if metric == "gospa":
        return MetricKind.GOSPA2 if alpha == 2 else MetricKind.GOSPA_GENERAL_ALPHA
    return MetricKind(metric)


def _parse_vector(text: str) -> List[int]:
    try:
        return [int(item) for item in text.replace(" ", "").split(",") if item != ""]
    except ValueError as e:
        raise ValidationError(f"检测向量格式错误: {text}") from e


def _parse_estimators(values: Optional[Sequence[str]]) -> List[EstimatorKind]:
    names = []
    for value in values or DEFAULT_REGION_ESTIMATORS:
        names.extend(name.strip() for name in value.split(",") if name.strip())
    try:
        return [EstimatorKind(name) for name in names]
    except ValueError as e:
        raise ValidationError(f"未知的估计器: {e}") from e


def _emit(text: str, out: Optional[Path]):
    """写到文件或标准输出"""
    if out is None:
        sys.stdout.write(text)
    else:
        FileStorage.write_text(out, text)
        logger.info(f"✓ 已写入: {out}")


def cmd_metric(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    cfg = _metric_config(args, config)
    x = FileStorage.read_target_set(args.x)
    y = FileStorage.read_target_set(args.y)
    if args.decompose:
        decomposition = service.decompose(x, y, cfg)
        _emit(FileStorage.to_json(decomposition.to_dict()), None)
    else:
        _emit(format_number(service.compute_metric(x, y, cfg, args.metric)) + "\n", None)
    return EXIT_OK


def cmd_mse(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    cfg = _metric_config(args, config)
    mb = FileStorage.read_multi_bernoulli(args.mb)
    kind = _mse_kind(args.metric, cfg.alpha)
    report = service.compute_mse(
        mb, _parse_vector(args.e_hat), kind, cfg.c, cfg.alpha, p=cfg.p, metric_cfg=cfg
    )
    _emit(FileStorage.to_json(report.to_dict()), None)
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    cfg = _metric_config(args, config)
    mb = FileStorage.read_multi_bernoulli(args.mb)
    outcome = service.run_estimator(
        EstimatorKind(args.estimator), mb, cfg.c, cfg.alpha, p=cfg.p, metric_cfg=cfg
    )
    data = outcome.to_dict()
    data["estimator"] = args.estimator
    _emit(FileStorage.to_json(data), None)
    return EXIT_OK


def cmd_sweep_regions(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    cfg = _metric_config(args, config)
    if args.gnuplot is not None and args.out is None:
        raise ValidationError("--gnuplot 需要同时指定 --out")
    kinds = _parse_estimators(args.estimator)
    grids = service.sweep_regions(
        kinds,
        grid_step=_pick(args.grid_step, config.get_grid_step()),
        c=cfg.c,
        locations=config.get_locations(),
        alpha=cfg.alpha,
        p=cfg.p,
        metric_cfg=cfg,
    )
    _emit(FileStorage.regions_to_csv(grids), args.out)
    if args.gnuplot is not None:
        script = FileStorage.gnuplot_regions_script(args.out, [k.value for k in kinds])
        FileStorage.write_text(args.gnuplot, script)
        logger.info(f"✓ gnuplot 脚本: {args.gnuplot}")
    return EXIT_OK


def cmd_sweep_cardinality(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    cfg = _metric_config(args, config)
    table = service.sweep_cardinality(
        args.r, n_max=_pick(args.n_max, config.get_n_max()), c=cfg.c, p=cfg.p
    )
    _emit(FileStorage.cardinality_to_csv(table), args.out)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, config: Config, service: SweepService) -> int:
    settings = config.get_validation_settings()
    report = service.validate(
        seed=_pick(args.seed, settings["seed"]),
        n_instances=_pick(args.instances, settings["n_instances"]),
        n_samples=_pick(args.samples, settings["n_samples"]),
        tolerance=_pick(args.tolerance, settings["tolerance"]),
        max_components=_pick(args.max_components, settings["max_components"]),
    )
    _emit(FileStorage.to_json(report.to_dict()), args.out)
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


COMMANDS = {
    "metric": cmd_metric,
    "mse": cmd_mse,
    "estimate": cmd_estimate,
    "sweep-regions": cmd_sweep_regions,
    "sweep-cardinality": cmd_sweep_cardinality,
    "validate": cmd_validate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    命令行入口

    Args:
        argv: 参数列表, 默认取 sys.argv[1:]

    Returns:
        int: 退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    setup_logging(args.verbose)
    try:
        config = Config(args.config)
        return COMMANDS[args.command](args, config, SweepService())
    except MetricsToolkitError as e:
        logger.error(f"✗ {e}")
        return EXIT_ERROR
