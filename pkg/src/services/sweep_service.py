"""
扫描与验证服务 - 协调各模块的业务流程
"""
import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from loguru import logger

from ..logic import estimators
from ..logic.bernoulli import event_probability, iter_events, realize, validate_separation
from ..logic.enumeration_oracle import exact_mse, monte_carlo_mse
from ..logic.mse_closed_form import ClosedFormMse, mse, square_error_given_event
from ..logic.set_metrics import gospa, gospa_alpha2_decomposed, ospa, uospa
from ..models.assignment import GospaDecomposition
from ..models.estimate import EstimateOutcome, EstimatorKind, MetricKind, MseReport
from ..models.metric_config import MetricConfig
from ..models.multi_bernoulli import MultiBernoulli
from ..models.reports import CardinalityTable, RegionGrid, ValidationReport
from ..models.target_set import TargetSet
from ..utils.exceptions import MetricsToolkitError, SeparationError, ValidationError

MAX_SWEEP_COMPONENTS = 30
VALIDATION_SPACING = 10.0


def grid_values(grid_step: float) -> np.ndarray:
    """
    [0, 1] 上的网格点, 包含两个端点

    Args:
        grid_step: 步长, 0 < grid_step <= 0.5

    Returns:
        np.ndarray: 0, grid_step, 2 * grid_step, ... 以及 1; 步长不整除 1 时最后一段短于步长
    """
    if not (0 < grid_step <= 0.5):
        raise ValidationError(f"网格步长必须在 (0, 0.5] 内, 当前为 {grid_step}")
    count = int(math.floor(1.0 / grid_step + 1e-9))
    values = np.round(np.arange(count + 1) * grid_step, 12)
    if values[-1] < 1.0:
        values = np.append(values, 1.0)
    return values


class SweepService:
    """度量计算、估计、扫描与验证 - 统一协调业务流程"""

    def compute_metric(
        self,
        x: TargetSet,
        y: TargetSet,
        cfg: MetricConfig,
        metric: str = "gospa"
    ) -> float:
        """
        计算两个集合之间的距离

        Args:
            x: 集合 X
            y: 集合 Y
            cfg: 度量参数
            metric: ospa | uospa | gospa

        Returns:
            float: 距离
        """
        functions = {"ospa": ospa, "uospa": uospa, "gospa": gospa}
        if metric not in functions:
            raise ValidationError(f"未知的度量: {metric}")
        return functions[metric](x, y, cfg)

    def decompose(self, x: TargetSet, y: TargetSet, cfg: MetricConfig) -> GospaDecomposition:
        """alpha=2 GOSPA 的分解"""
        return gospa_alpha2_decomposed(x, y, cfg)

    def compute_mse(
        self,
        mb: MultiBernoulli,
        e_hat: Sequence[int],
        metric_kind: MetricKind,
        c: float,
        alpha: Optional[float] = None,
        *,
        p: float = 2.0,
        metric_cfg: Optional[MetricConfig] = None
    ) -> MseReport:
        """检测向量的闭式均方误差; p != 2 时报错"""
        return mse(metric_kind, mb, e_hat, c, alpha, p=p, metric_cfg=metric_cfg)

    def run_estimator(
        self,
        kind: EstimatorKind,
        mb: MultiBernoulli,
        c: float,
        alpha: Optional[float] = None,
        *,
        p: float = 2.0,
        metric_cfg: Optional[MetricConfig] = None
    ) -> EstimateOutcome:
        """运行指定估计器"""
        return estimators.estimate(kind, mb, c, alpha, p=p, metric_cfg=metric_cfg)

    def sweep_regions(
        self,
        estimator_kinds: Sequence[EstimatorKind],
        grid_step: float = 0.01,
        c: float = 1.0,
        locations: Sequence[Sequence[float]] = ((0.0,), (10.0,)),
        alpha: Optional[float] = None,
        *,
        p: float = 2.0,
        metric_cfg: Optional[MetricConfig] = None
    ) -> List[RegionGrid]:
        """
        两个分量的决策区域扫描

        Args:
            estimator_kinds: 估计器类型列表
            grid_step: 网格步长
            c: 截断距离
            locations: 两个分量的位置
            alpha: 仅 OPT_GOSPA_ALPHA 使用
            p: 阶数, 度量估计器只接受 2
            metric_cfg: 分离检查所用的基础距离类型, 默认欧氏距离

        Returns:
            List[RegionGrid]: 每个估计器一个栅格

        Raises:
            SeparationError: 两个位置的距离不大于 c
            MetricsToolkitError: 扫描失败
        """
        if len(locations) != 2:
            raise ValidationError(f"决策区域扫描需要恰好两个分量位置, 当前为 {len(locations)}")
        report = validate_separation(MultiBernoulli.from_arrays([0.0, 0.0], locations), c, metric_cfg)
        if not report.separated:
            raise SeparationError(f"分量位置间距不大于 c={c}")

        r_values = grid_values(grid_step)
        grids = []
        try:
            for kind in estimator_kinds:
                kind = EstimatorKind(kind)
                cells = np.zeros((len(r_values), len(r_values)), dtype=np.int8)
                for i, r1 in enumerate(r_values):
                    for j, r2 in enumerate(r_values):
                        mb = MultiBernoulli.from_arrays([r1, r2], locations)
                        e_hat = estimators.estimate(kind, mb, c, alpha, p=p, metric_cfg=metric_cfg).e_hat
                        cells[i, j] = e_hat[0] + 2 * e_hat[1]
                grids.append(RegionGrid(kind.value, grid_step, r_values, cells))
                logger.info(f"✓ 决策区域扫描完成: {kind.value} ({cells.size} 个网格点)")
        except MetricsToolkitError:
            raise
        except Exception as e:
            raise MetricsToolkitError(f"决策区域扫描失败: {e}") from e
        return grids

    def sweep_cardinality(
        self,
        r: float,
        n_max: int = 30,
        c: float = 1.0,
        *,
        p: float = 2.0
    ) -> CardinalityTable:
        """
        存在概率相同时最优检测数随分量数 N = 1..n_max 的变化

        Args:
            r: 共同的存在概率
            n_max: 最大分量数, 不超过 30
            c: 截断距离
            p: 阶数, 只接受 2

        Returns:
            CardinalityTable: 每行为 (N, GOSPA, UOSPA, OSPA 的最优检测数)
        """
        if not 1 <= n_max <= MAX_SWEEP_COMPONENTS:
            raise ValidationError(f"n_max 必须在 [1, {MAX_SWEEP_COMPONENTS}] 内, 当前为 {n_max}")
        if not 0.0 <= r <= 1.0:
            raise ValidationError(f"存在概率必须在 [0, 1] 内, 当前为 {r}")
        if p != 2:
            raise ValidationError(f"基数扫描只支持 p=2, 当前 p={p}")

        table = CardinalityTable(r=r)
        for n in range(1, n_max + 1):
            table.rows.append((
                n,
                estimators.optimal_gospa_identical_r(n, r, c).n_hat,
                estimators.optimal_uospa_identical_r(n, r, c).n_hat,
                estimators.optimal_ospa_identical_r(n, r, c).n_hat,
            ))
        logger.info(f"✓ 基数扫描完成: r={r}, N=1..{n_max}")
        return table

    def validate(
        self,
        seed: int = 0,
        n_instances: int = 200,
        n_samples: int = 0,
        tolerance: float = 1e-9,
        max_components: int = 6
    ) -> ValidationReport:
        """
        用枚举预言机验证全部闭式均方误差

        每个随机实例: N 在 [1, max_components] 内均匀抽取, r 在 [0, 1] 内均匀抽取,
        一维位置间隔 10, c=1, 一般 alpha 在 (0, 2] 内抽取; 对全部 2^N 个检测向量比较
        闭式误差、逐事件平方误差求和以及 exact_mse 三者。
        n_samples > 0 时另对每个实例的 GOSPA 最优估计做蒙特卡洛一致性检查。

        Args:
            seed: 随机种子
            n_instances: 实例数
            n_samples: 每个实例的蒙特卡洛样本数, 0 表示跳过
            tolerance: 允许的最大绝对偏差 (严格小于)
            max_components: 最大分量数

        Returns:
            ValidationReport: 验证报告
        """
        if not 1 <= max_components <= estimators.MAX_ENUMERATION_COMPONENTS:
            raise ValidationError(f"max_components 超出范围: {max_components}")
        if n_instances < 1:
            raise ValidationError(f"n_instances 必须为正整数, 当前为 {n_instances}")
        if n_samples < 0:
            raise ValidationError(f"n_samples 不能为负数, 当前为 {n_samples}")
        rng = np.random.default_rng(seed)
        report = ValidationReport(seed=seed, tolerance=tolerance, n_instances=n_instances)
        deviations: Dict[str, Dict[str, float]] = {
            kind.value: {"cases": 0, "max_abs_deviation_events": 0.0, "max_abs_deviation_oracle": 0.0}
            for kind in MetricKind
        }
        mc_total = 0
        mc_within = 0
        mc_max_z = 0.0

        try:
            for instance in range(n_instances):
                n = int(rng.integers(1, max_components + 1))
                mb = MultiBernoulli.on_line(rng.uniform(size=n).tolist(), VALIDATION_SPACING)
                alpha = float(rng.uniform(0.1, 2.0))
                cfg = MetricConfig(p=2.0, c=1.0, alpha=alpha)
                calc = ClosedFormMse(mb, cfg.c)
                events = list(iter_events(n))
                probabilities = [event_probability(mb, e) for e in events]

                for e_hat in estimators.iter_detection_vectors(n):
                    estimate = realize(mb, e_hat)
                    for kind in MetricKind:
                        closed = calc.value(kind, e_hat, alpha)
                        by_events = math.fsum(
                            p * square_error_given_event(kind, e, e_hat, cfg.c, alpha)
                            for p, e in zip(probabilities, events)
                        )
                        oracle = exact_mse(mb, estimate, kind, cfg).mean
                        entry = deviations[kind.value]
                        entry["cases"] += 1
                        entry["max_abs_deviation_events"] = max(
                            entry["max_abs_deviation_events"], abs(closed - by_events)
                        )
                        entry["max_abs_deviation_oracle"] = max(
                            entry["max_abs_deviation_oracle"], abs(closed - oracle)
                        )
                        if not (abs(closed - oracle) < tolerance and abs(closed - by_events) < tolerance):
                            report.failures.append(
                                f"instance={instance} metric={kind.value} e_hat={list(e_hat)} "
                                f"closed={closed!r} events={by_events!r} oracle={oracle!r}"
                            )

                if n_samples > 0:
                    e_hat = estimators.optimal_gospa2(mb, cfg.c).e_hat
                    estimate = realize(mb, e_hat)
                    exact = exact_mse(mb, estimate, MetricKind.GOSPA2, cfg).mean
                    sampled = monte_carlo_mse(mb, estimate, MetricKind.GOSPA2, cfg, n_samples, rng)
                    mc_total += 1
                    deviation = abs(sampled.mean - exact)
                    if sampled.std_err > 0:
                        mc_max_z = max(mc_max_z, deviation / sampled.std_err)
                    if deviation <= 4.0 * sampled.std_err or deviation == 0.0:
                        mc_within += 1
        except MetricsToolkitError:
            raise
        except Exception as e:
            raise MetricsToolkitError(f"验证运行失败: {e}") from e

        report.checks = deviations
        if mc_total:
            report.monte_carlo = {
                "instances": mc_total,
                "within_4_std_err": mc_within,
                "max_abs_z": mc_max_z,
                "n_samples": n_samples,
            }
            if mc_within < 0.95 * mc_total:
                report.failures.append(
                    f"monte_carlo: only {mc_within}/{mc_total} within 4 std_err"
                )

        if report.passed:
            logger.info(f"✓ 验证通过: {n_instances} 个实例")
        else:
            logger.warning(f"✗ 验证失败: {len(report.failures)} 处超出容差")
        return report
