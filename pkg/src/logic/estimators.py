"""
最优度量估计器与对比估计器

检测向量之间并列时统一取检测数最少者, 再取字典序最小者。
"""
import itertools
import math
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np

from .bernoulli import cardinality_distribution, event_probability, validate_separation
from .mse_closed_form import (
    ClosedFormMse,
    msospa_all_or_nothing,
    msuospa_identical_r,
)
from ..models.estimate import CardinalityOptimum, EstimateOutcome, EstimatorKind, MetricKind
from ..models.metric_config import MetricConfig
from ..models.multi_bernoulli import BinaryVector, MultiBernoulli
from ..utils.exceptions import EnumerationLimitError, SeparationError, ValidationError

MAX_ENUMERATION_COMPONENTS = 20
TIE_TOLERANCE = 1e-12


def iter_detection_vectors(n_components: int) -> Iterator[BinaryVector]:
    """
    按 (检测数升序, 字典序升序) 遍历所有 2^N 个检测向量

    下标组合按字典序生成时对应的 0/1 向量是字典序降序, 因此反向遍历。
    """
    for n_hat in range(n_components + 1):
        for chosen in reversed(list(itertools.combinations(range(n_components), n_hat))):
            vector = [0] * n_components
            for i in chosen:
                vector[i] = 1
            yield tuple(vector)


def _check_enumeration_size(n_components: int, hint: str):
    if n_components > MAX_ENUMERATION_COMPONENTS:
        raise EnumerationLimitError(
            f"分量数 {n_components} 超过穷举上限 {MAX_ENUMERATION_COMPONENTS}; {hint}"
        )


def _select(
    n_components: int,
    score: Callable[[BinaryVector], float],
    minimise: bool
) -> EstimateOutcome:
    """
    在全部检测向量上取最优, 并记录所有并列最优解

    Args:
        n_components: 分量数
        score: 目标函数
        minimise: True 取最小, False 取最大

    Returns:
        EstimateOutcome: 第一个最优向量即按并列规则选出的估计
    """
    sign = 1.0 if minimise else -1.0
    best_value = math.inf
    ties: List[Tuple[BinaryVector, float]] = []
    for vector in iter_detection_vectors(n_components):
        value = sign * score(vector)
        if value < best_value - TIE_TOLERANCE:
            best_value = value
            ties = [(vector, value)]
        elif value <= best_value + TIE_TOLERANCE:
            ties.append((vector, value))
    chosen, chosen_value = ties[0]
    return EstimateOutcome(
        e_hat=chosen,
        objective_value=sign * chosen_value,
        ties=tuple(v for v, _ in ties),
    )


def optimal_gospa2(mb: MultiBernoulli, c: float, *, p: float = 2) -> EstimateOutcome:
    """
    alpha=2 GOSPA 的最优估计: 当且仅当 r_i > 0.5 时报告分量 i

    每个分量的决策只依赖自身存在概率。

    Args:
        mb: 多伯努利密度
        c: 截断距离
        p: 阶数, 只接受 2

    Returns:
        EstimateOutcome: 估计结果及其均方 GOSPA 误差
    """
    # 决策本身不依赖分量间距, 这里不做检查
    calc = ClosedFormMse(mb, c, p=p, check_separation=False)
    e_hat = tuple(1 if r > 0.5 else 0 for r in calc.r)
    # r_i = 0.5 的分量报告与否误差相同
    options = [(0, 1) if r == 0.5 else (e_i,) for r, e_i in zip(calc.r, e_hat)]
    ties = tuple(sorted(itertools.product(*options), key=lambda v: (sum(v), v)))
    return EstimateOutcome(e_hat=e_hat, objective_value=calc.gospa2(e_hat), ties=ties)


def optimal_by_enumeration(
    mb: MultiBernoulli,
    metric_kind: MetricKind,
    c: float,
    alpha: Optional[float] = None,
    *,
    p: float = 2,
    metric_cfg: Optional[MetricConfig] = None
) -> EstimateOutcome:
    """
    穷举全部 2^N 个检测向量, 取闭式均方误差最小者

    Args:
        mb: 多伯努利密度, N <= 20
        metric_kind: 度量类型
        c: 截断距离
        alpha: 仅 GOSPA_GENERAL_ALPHA 使用
        p: 阶数, 只接受 2
        metric_cfg: 分离检查所用的基础距离类型

    Returns:
        EstimateOutcome: 最优估计与全部并列最优解

    Raises:
        EnumerationLimitError: N 超过上限
    """
    _check_enumeration_size(
        len(mb), "存在概率全部相同时请使用 optimal_ospa_identical_r / optimal_uospa_identical_r"
    )
    kind = MetricKind(metric_kind)
    calc = ClosedFormMse(mb, c, p=p, metric_cfg=metric_cfg)
    return _select(len(mb), lambda v: calc.value(kind, v, alpha), minimise=True)


def optimal_gospa_alpha(
    mb: MultiBernoulli,
    c: float,
    alpha: float,
    *,
    p: float = 2,
    metric_cfg: Optional[MetricConfig] = None
) -> EstimateOutcome:
    """任意 alpha 的 GOSPA 最优估计 (穷举)"""
    return optimal_by_enumeration(
        mb, MetricKind.GOSPA_GENERAL_ALPHA, c, alpha, p=p, metric_cfg=metric_cfg
    )


def _check_identical_inputs(n_components: int, r: float):
    if n_components < 1:
        raise ValidationError(f"分量数必须至少为 1, 当前为 {n_components}")
    if not 0.0 <= r <= 1.0:
        raise ValidationError(f"存在概率必须在 [0, 1] 内, 当前为 {r}")


def optimal_ospa_identical_r(n_components: int, r: float, c: float) -> CardinalityOptimum:
    """
    相同存在概率时的 OSPA 最优检测数

    (1 - r)^N < r 时检测全部 N 个目标, 否则一个也不检测。

    Args:
        n_components: 分量数 N >= 1
        r: 共同的存在概率
        c: 截断距离

    Returns:
        CardinalityOptimum: 最优检测数与对应均方误差
    """
    _check_identical_inputs(n_components, r)
    mse_none, mse_all = msospa_all_or_nothing(n_components, r, c)
    if (1.0 - r) ** n_components < r:
        return CardinalityOptimum(n_components, mse_all)
    return CardinalityOptimum(0, mse_none)


def optimal_uospa_identical_r(n_components: int, r: float, c: float) -> CardinalityOptimum:
    """
    相同存在概率时的 UOSPA 最优检测数 (并列时取较小的 n̂)

    Args:
        n_components: 分量数 N >= 1
        r: 共同的存在概率
        c: 截断距离

    Returns:
        CardinalityOptimum: 最优检测数与对应均方误差
    """
    _check_identical_inputs(n_components, r)
    best = CardinalityOptimum(0, msuospa_identical_r(n_components, r, 0, c))
    for n_hat in range(1, n_components + 1):
        value = msuospa_identical_r(n_components, r, n_hat, c)
        if value < best.mse - TIE_TOLERANCE:
            best = CardinalityOptimum(n_hat, value)
    return best


def optimal_gospa_identical_r(n_components: int, r: float, c: float) -> CardinalityOptimum:
    """相同存在概率时的 GOSPA 最优检测数: r > 0.5 时全部检测"""
    _check_identical_inputs(n_components, r)
    n_hat = n_components if r > 0.5 else 0
    mse = c ** 2 / 2.0 * (n_components - n_hat) * r + c ** 2 / 2.0 * n_hat * (1.0 - r)
    return CardinalityOptimum(n_hat, mse)


def max_cardinality_estimator(mb: MultiBernoulli) -> EstimateOutcome:
    """
    先取基数分布的众数 n*, 再报告存在概率最大的 n* 个分量

    众数并列取较小的 n; 存在概率并列取下标较小的分量。

    Args:
        mb: 多伯努利密度

    Returns:
        EstimateOutcome: objective_value 为 rho(n*)
    """
    rho = cardinality_distribution(mb)
    n_star = int(np.argmax(rho))
    order = sorted(range(len(mb)), key=lambda i: (-mb.components[i].r, i))
    e_hat = [0] * len(mb)
    for i in order[:n_star]:
        e_hat[i] = 1
    vector = tuple(e_hat)
    return EstimateOutcome(e_hat=vector, objective_value=float(rho[n_star]), ties=(vector,))


def marginal_multitarget_estimator(mb: MultiBernoulli) -> EstimateOutcome:
    """
    边缘多目标估计器 (MaM)

    位置已知且相互远离时, 其决策与 max_cardinality_estimator 相同, 直接复用。
    """
    return max_cardinality_estimator(mb)


def jom_score(mb: MultiBernoulli, e_hat: BinaryVector) -> float:
    """联合多目标估计器在分离极限下的得分 p(ê) / n̂!"""
    return event_probability(mb, e_hat) / math.factorial(sum(e_hat))


def jom_estimator(mb: MultiBernoulli) -> EstimateOutcome:
    """
    联合多目标估计器 (JoM)

    JoM 参数取为单目标高斯峰值的倒数后, 得分与方差无关, 化为 p(ê) / n̂!。

    Args:
        mb: 多伯努利密度, N <= 20

    Returns:
        EstimateOutcome: objective_value 为最大得分

    Raises:
        EnumerationLimitError: N 超过上限
    """
    _check_enumeration_size(len(mb), "JoM 需要穷举全部检测向量")
    return _select(len(mb), lambda v: jom_score(mb, v), minimise=False)


def estimate(
    kind: EstimatorKind,
    mb: MultiBernoulli,
    c: float = 1.0,
    alpha: Optional[float] = None,
    *,
    p: float = 2,
    metric_cfg: Optional[MetricConfig] = None
) -> EstimateOutcome:
    """
    按估计器类型分派

    Args:
        kind: 估计器类型
        mb: 多伯努利密度
        c: 截断距离 (度量估计器使用)
        alpha: 仅 OPT_GOSPA_ALPHA 使用
        p: 阶数, 度量估计器只接受 2
        metric_cfg: 分离检查所用的基础距离类型

    Returns:
        EstimateOutcome: 估计结果
    """
    kind = EstimatorKind(kind)
    if kind is EstimatorKind.OPT_GOSPA2:
        return optimal_gospa2(mb, c, p=p)
    if kind is EstimatorKind.OPT_GOSPA_ALPHA:
        if alpha is None:
            raise ValidationError("OPT_GOSPA_ALPHA 需要指定 alpha")
        return optimal_gospa_alpha(mb, c, alpha, p=p, metric_cfg=metric_cfg)
    if kind.metric_kind is not None:
        return optimal_by_enumeration(mb, kind.metric_kind, c, p=p, metric_cfg=metric_cfg)
    # 非度量估计器同样只在分量相互远离时有意义
    report = validate_separation(mb, c, metric_cfg)
    if not report.separated:
        raise SeparationError(f"分量间距不大于 c={c}: {list(report.violations)}")
    if kind is EstimatorKind.JOM:
        return jom_estimator(mb)
    if kind is EstimatorKind.MARGINAL_MULTITARGET:
        return marginal_multitarget_estimator(mb)
    return max_cardinality_estimator(mb)
