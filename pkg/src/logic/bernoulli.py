"""
多伯努利后验的事件空间、基数分布与采样
"""
import itertools
import math
from typing import Iterable, Iterator, Optional, Union

import numpy as np

from .set_metrics import base_distance
from ..models.metric_config import MetricConfig
from ..models.multi_bernoulli import (
    BinaryVector,
    MultiBernoulli,
    SeparationReport,
    to_binary_vector,
)
from ..models.target_set import TargetSet
from ..utils.exceptions import ValidationError

RandomState = Union[int, np.random.Generator, None]


def event_probability(mb: MultiBernoulli, e: Iterable[int]) -> float:
    """
    存在事件的概率 prod_i [(1 - r_i)(1 - e_i) + r_i e_i]

    Args:
        mb: 多伯努利密度
        e: 存在事件, 长度为 N 的 0/1 向量

    Returns:
        float: 事件概率
    """
    event = to_binary_vector(e, len(mb))
    return math.prod(
        comp.r if e_i else 1.0 - comp.r
        for comp, e_i in zip(mb.components, event)
    )


def iter_events(n: int) -> Iterator[BinaryVector]:
    """按二进制计数顺序遍历所有 2^n 个 0/1 向量"""
    return itertools.product((0, 1), repeat=n)


def realize(mb: MultiBernoulli, e: Iterable[int]) -> TargetSet:
    """
    事件对应的目标集合 {x̄_i : e_i = 1}

    Args:
        mb: 多伯努利密度
        e: 存在事件或检测向量

    Returns:
        TargetSet: 目标集合, 保持分量顺序
    """
    event = to_binary_vector(e, len(mb))
    return TargetSet(tuple(
        comp.x_bar for comp, e_i in zip(mb.components, event) if e_i
    ))


def _poisson_binomial(probabilities: Iterable[float]) -> np.ndarray:
    """逐分量卷积 (1 - r_i, r_i) 得到基数分布"""
    pmf = np.ones(1)
    for r in probabilities:
        pmf = np.convolve(pmf, [1.0 - r, r])
    return pmf


def cardinality_distribution(mb: MultiBernoulli) -> np.ndarray:
    """
    多伯努利密度的基数分布 rho(n), n = 0..N

    Args:
        mb: 多伯努利密度

    Returns:
        np.ndarray: 长度为 N + 1 的概率向量
    """
    return _poisson_binomial(mb.existence_probabilities)


def leave_one_out_cardinality(mb: MultiBernoulli, i: int) -> np.ndarray:
    """
    去掉第 i 个分量后的基数分布 rho_{-i}

    重新卷积计算, 不对 rho 做反卷积。

    Args:
        mb: 多伯努利密度
        i: 分量下标, 0 <= i < N

    Returns:
        np.ndarray: 长度为 N 的概率向量

    Raises:
        ValidationError: 下标越界
    """
    if not 0 <= i < len(mb):
        raise ValidationError(f"分量下标 {i} 越界 (N={len(mb)})")
    probabilities = mb.existence_probabilities
    return _poisson_binomial(probabilities[:i] + probabilities[i + 1:])


def make_rng(seed: RandomState) -> np.random.Generator:
    """由种子或已有生成器得到 numpy 生成器"""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_events(mb: MultiBernoulli, n_samples: int, seed: RandomState = None) -> np.ndarray:
    """
    独立采样存在事件

    Args:
        mb: 多伯努利密度
        n_samples: 样本数
        seed: 随机种子或调用方持有的生成器

    Returns:
        np.ndarray: (n_samples, N) 的 0/1 矩阵
    """
    rng = make_rng(seed)
    r = np.asarray(mb.existence_probabilities, dtype=float)
    draws = rng.random((n_samples, len(mb)))
    return (draws < r).astype(np.int8)


def sample(mb: MultiBernoulli, seed: RandomState = None) -> TargetSet:
    """
    采样一个目标集合

    Args:
        mb: 多伯努利密度
        seed: 随机种子或调用方持有的生成器; 相同种子得到相同结果

    Returns:
        TargetSet: 采样得到的集合
    """
    event = sample_events(mb, 1, seed)[0]
    return realize(mb, event)


def validate_separation(mb: MultiBernoulli, c: float, cfg: Optional[MetricConfig] = None) -> SeparationReport:
    """
    检查所有分量位置两两之间的距离是否严格大于 c

    Args:
        mb: 多伯努利密度
        c: 截断距离
        cfg: 提供基础距离类型, 默认欧氏距离

    Returns:
        SeparationReport: 是否分离以及违规的分量对
    """
    metric_cfg = cfg or MetricConfig(c=c)
    locations = mb.locations
    violations = tuple(
        (i, j)
        for i, j in itertools.combinations(range(len(locations)), 2)
        if base_distance(locations[i], locations[j], metric_cfg) <= c
    )
    return SeparationReport(separated=not violations, violations=violations)
