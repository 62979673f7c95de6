"""
OSPA / UOSPA / GOSPA 集合距离
"""
import math
from typing import Tuple

import numpy as np
from scipy.spatial.distance import cdist

from .assignment import solve_full_assignment, solve_partial_assignment
from ..models.assignment import GospaDecomposition
from ..models.metric_config import MetricConfig
from ..models.target_set import LabeledPoint, TargetSet, check_same_dimension
from ..utils.exceptions import DimensionMismatchError, ValidationError


def base_distance(x: LabeledPoint, y: LabeledPoint, cfg: MetricConfig) -> float:
    """
    单目标空间中的基础距离

    Args:
        x: 第一个点
        y: 第二个点
        cfg: 度量参数 (决定欧氏/曼哈顿/切比雪夫)

    Returns:
        float: 距离

    Raises:
        DimensionMismatchError: 维度不一致
    """
    if x.dim != y.dim:
        raise DimensionMismatchError(f"点的维度不一致: {x.dim} != {y.dim}")
    return float(cdist([x.coords], [y.coords], metric=cfg.base_distance.cdist_name)[0, 0])


def cutoff_distance(x: LabeledPoint, y: LabeledPoint, cfg: MetricConfig) -> float:
    """截断距离 min(d(x, y), c)"""
    return min(base_distance(x, y, cfg), cfg.c)


def distance_matrix(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> np.ndarray:
    """
    两个集合之间的基础距离矩阵

    Args:
        x: |X| 个点
        y: |Y| 个点
        cfg: 度量参数

    Returns:
        np.ndarray: |X|×|Y| 距离矩阵
    """
    check_same_dimension(x, y)
    if len(x) == 0 or len(y) == 0:
        return np.zeros((len(x), len(y)))
    return cdist(x.as_array(), y.as_array(), metric=cfg.base_distance.cdist_name)


def _ordered(x: TargetSet, y: TargetSet) -> Tuple[TargetSet, TargetSet]:
    """交换参数使第一个集合较小"""
    return (y, x) if len(x) > len(y) else (x, y)


def _min_cutoff_cost(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> float:
    """min_pi sum_i d^(c)(x_i, y_pi(i))^p, 要求 |X| <= |Y|"""
    if len(x) == 0:
        return 0.0
    costs = np.minimum(distance_matrix(x, y, cfg), cfg.c) ** cfg.p
    return solve_full_assignment(costs).total_cost


def ospa(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> float:
    """
    OSPA 距离

    两个空集距离为 0; 只有一个为空时距离为 c。

    Args:
        x: 集合 X
        y: 集合 Y
        cfg: 度量参数 (alpha 不参与)

    Returns:
        float: [0, c] 内的距离
    """
    check_same_dimension(x, y)
    x, y = _ordered(x, y)
    n = len(y)
    if n == 0:
        return 0.0
    localisation = _min_cutoff_cost(x, y, cfg)
    value = (math.fsum([localisation, cfg.c ** cfg.p * (n - len(x))]) / n) ** (1.0 / cfg.p)
    return min(value, cfg.c)


def ospa_components(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> Tuple[float, float, float]:
    """
    OSPA 及其定位、基数两部分 (各自按 max(|X|,|Y|) 归一化后开根)

    Returns:
        Tuple[float, float, float]: (total, localisation, cardinality)
    """
    check_same_dimension(x, y)
    x, y = _ordered(x, y)
    n = len(y)
    if n == 0:
        return 0.0, 0.0, 0.0
    localisation = _min_cutoff_cost(x, y, cfg)
    cardinality = cfg.c ** cfg.p * (n - len(x))
    inv_p = 1.0 / cfg.p
    return (
        ((localisation + cardinality) / n) ** inv_p,
        (localisation / n) ** inv_p,
        (cardinality / n) ** inv_p,
    )


def gospa(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> float:
    """
    GOSPA 距离 (排列形式)

    alpha=1 时即为 UOSPA。

    Args:
        x: 集合 X
        y: 集合 Y
        cfg: 度量参数

    Returns:
        float: 非负距离
    """
    check_same_dimension(x, y)
    x, y = _ordered(x, y)
    localisation = _min_cutoff_cost(x, y, cfg)
    cardinality = cfg.c ** cfg.p / cfg.alpha * (len(y) - len(x))
    return math.fsum([localisation, cardinality]) ** (1.0 / cfg.p)


def uospa(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> float:
    """未归一化 OSPA, 等于 alpha=1 的 GOSPA"""
    return gospa(x, y, cfg.with_alpha(1.0))


def gospa_alpha2_decomposed(x: TargetSet, y: TargetSet, cfg: MetricConfig) -> GospaDecomposition:
    """
    alpha=2 时 GOSPA 的分配形式及其分解

    只有 d^p < c^p 的对会被分配; 代价恰为 c^p 的对保持未分配。

    Args:
        x: 集合 X (未分配的点计为漏检)
        y: 集合 Y (未分配的点计为虚警)
        cfg: 度量参数, alpha 必须为 2

    Returns:
        GospaDecomposition: 总距离与各部分代价

    Raises:
        ValidationError: alpha 不等于 2
    """
    if cfg.alpha != 2:
        raise ValidationError(f"只有 alpha=2 时 GOSPA 才能分解, 当前 alpha={cfg.alpha}")
    check_same_dimension(x, y)

    costs = distance_matrix(x, y, cfg) ** cfg.p
    half_cp = cfg.c ** cfg.p / 2.0
    result = solve_partial_assignment(costs, half_cp)

    localisation = math.fsum(costs[i, j] for i, j in result.pairs)
    num_missed = len(x) - len(result.pairs)
    num_false = len(y) - len(result.pairs)
    missed = half_cp * num_missed
    false = half_cp * num_false
    total = math.fsum([localisation, missed, false]) ** (1.0 / cfg.p)
    return GospaDecomposition(
        total=total,
        localisation_cost=localisation,
        missed_cost=missed,
        false_cost=false,
        assignment=list(result.pairs),
        num_missed=num_missed,
        num_false=num_false,
    )
