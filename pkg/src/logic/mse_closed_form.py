"""
多伯努利后验下各度量的闭式均方误差 (p = 2)

所有公式都假设分量位置两两距离大于 c, 因此估计点只可能与同一分量的目标匹配。
"""
import math
from functools import cached_property
from typing import Iterable, List, Optional, Tuple

import numpy as np
from scipy.stats import binom

from .bernoulli import (
    cardinality_distribution,
    leave_one_out_cardinality,
    validate_separation,
)
from ..models.estimate import MetricKind, MseReport
from ..models.metric_config import MetricConfig
from ..models.multi_bernoulli import BinaryVector, MultiBernoulli, to_binary_vector
from ..utils.exceptions import SeparationError, ValidationError


def _check_order(p: float):
    if p != 2:
        raise ValidationError(f"闭式均方误差只支持 p=2, 当前 p={p}")


def _check_alpha(alpha: float):
    if not (0 < alpha <= 2):
        raise ValidationError(f"alpha 必须在 (0, 2] 内, 当前为 {alpha}")


def _check_cutoff(c: float):
    if not (math.isfinite(c) and c > 0):
        raise ValidationError(f"截断距离 c 必须为正数, 当前为 {c}")


class ClosedFormMse:
    """
    预先计算基数分布等中间量, 对同一后验反复求不同检测向量的均方误差

    rho、rho_{-i} 以及只依赖 n̂ 的求和项在首次使用时计算并缓存,
    穷举 2^N 个检测向量时每个向量只需 O(n̂) 次运算。
    """

    def __init__(
        self,
        mb: MultiBernoulli,
        c: float,
        *,
        p: float = 2,
        check_separation: bool = True,
        metric_cfg: Optional[MetricConfig] = None
    ):
        """
        初始化闭式误差计算器

        Args:
            mb: 多伯努利密度
            c: 截断距离
            p: 阶数, 只接受 2
            check_separation: 是否检查分量间距;
                关闭后公式不再保证等于真实均方误差, 仅用于试验
            metric_cfg: 提供分离检查所用的基础距离类型, 默认欧氏距离

        Raises:
            ValidationError: p != 2 或 c <= 0
            SeparationError: 分量间距不大于 c
        """
        _check_order(p)
        _check_cutoff(c)
        if check_separation:
            report = validate_separation(mb, c, metric_cfg)
            if not report.separated:
                raise SeparationError(
                    f"分量间距不大于 c={c}, 闭式误差不成立: {list(report.violations)}"
                )
        self.mb = mb
        self.c = c
        self.r = mb.existence_probabilities

    @property
    def n_components(self) -> int:
        """分量数 N"""
        return len(self.r)

    @cached_property
    def rho(self) -> np.ndarray:
        """基数分布"""
        return cardinality_distribution(self.mb)

    @cached_property
    def _expected_max(self) -> List[float]:
        """E[max(n, n̂)], 按 n̂ = 0..N 列出"""
        n = range(len(self.rho))
        return [
            math.fsum(self.rho[k] * max(k, n_hat) for k in n)
            for n_hat in range(self.n_components + 1)
        ]

    @cached_property
    def _ospa_inner(self) -> List[List[float]]:
        """sum_n rho_{-i}(n) / max(n + 1, n̂), 按 [i][n̂] 列出"""
        table = []
        for i in range(self.n_components):
            rho_minus = leave_one_out_cardinality(self.mb, i)
            table.append([
                math.fsum(rho_minus[k] / max(k + 1, n_hat) for k in range(len(rho_minus)))
                for n_hat in range(self.n_components + 1)
            ])
        return table

    def vector(self, e_hat: Iterable[int]) -> BinaryVector:
        """校验检测向量长度与取值"""
        return to_binary_vector(e_hat, self.n_components)

    def gospa2(self, e_hat: BinaryVector) -> float:
        """(c^2 / 2) * sum_i [r_i (1 - ê_i) + (1 - r_i) ê_i]"""
        return self.c ** 2 / 2.0 * math.fsum(
            (1.0 - r) if e_i else r for r, e_i in zip(self.r, e_hat)
        )

    def uospa(self, e_hat: BinaryVector) -> float:
        """c^2 * [sum_n rho(n) max(n, n̂) - sum_i ê_i r_i]"""
        n_hat = sum(e_hat)
        detected = math.fsum(r for r, e_i in zip(self.r, e_hat) if e_i)
        return self.c ** 2 * max(self._expected_max[n_hat] - detected, 0.0)

    def ospa(self, e_hat: BinaryVector) -> float:
        """n̂ = 0 时 c^2 (1 - rho(0)), 否则 c^2 (1 - sum_i ê_i r_i sum_n rho_{-i}(n) / max(n + 1, n̂))"""
        n_hat = sum(e_hat)
        if n_hat == 0:
            return self.c ** 2 * (1.0 - self.rho[0])
        covered = math.fsum(
            r * self._ospa_inner[i][n_hat]
            for i, (r, e_i) in enumerate(zip(self.r, e_hat)) if e_i
        )
        return self.c ** 2 * min(max(1.0 - covered, 0.0), 1.0)

    def gospa_alpha(self, e_hat: BinaryVector, alpha: float) -> float:
        """sum_n [(c^2 / alpha) |n - n̂| + c^2 min(n, n̂)] rho(n) - c^2 sum_i ê_i r_i"""
        _check_alpha(alpha)
        n_hat = sum(e_hat)
        expected = math.fsum(
            (abs(k - n_hat) / alpha + min(k, n_hat)) * self.rho[k]
            for k in range(len(self.rho))
        )
        detected = math.fsum(r for r, e_i in zip(self.r, e_hat) if e_i)
        return self.c ** 2 * max(expected - detected, 0.0)

    def value(self, metric_kind: MetricKind, e_hat: BinaryVector, alpha: Optional[float] = None) -> float:
        """
        按度量类型求均方误差

        Args:
            metric_kind: 度量类型
            e_hat: 已校验的检测向量
            alpha: 仅 GOSPA_GENERAL_ALPHA 使用

        Returns:
            float: 均方误差
        """
        kind = MetricKind(metric_kind)
        if kind is MetricKind.GOSPA2:
            return self.gospa2(e_hat)
        if kind is MetricKind.UOSPA:
            return self.uospa(e_hat)
        if kind is MetricKind.OSPA:
            return self.ospa(e_hat)
        if alpha is None:
            raise ValidationError("GOSPA_GENERAL_ALPHA 需要指定 alpha")
        return self.gospa_alpha(e_hat, alpha)


def msgospa(
    mb: MultiBernoulli,
    e_hat: Iterable[int],
    c: float,
    *,
    p: float = 2,
    check_separation: bool = True
) -> float:
    """
    alpha=2 的均方 GOSPA 误差, 对分量可分

    Args:
        mb: 多伯努利密度
        e_hat: 检测向量
        c: 截断距离
        p: 阶数, 只接受 2
        check_separation: 是否检查分量间距

    Returns:
        float: 均方误差
    """
    calc = ClosedFormMse(mb, c, p=p, check_separation=check_separation)
    return calc.gospa2(calc.vector(e_hat))


def msuospa(
    mb: MultiBernoulli,
    e_hat: Iterable[int],
    c: float,
    *,
    p: float = 2,
    check_separation: bool = True
) -> float:
    """均方 UOSPA 误差"""
    calc = ClosedFormMse(mb, c, p=p, check_separation=check_separation)
    return calc.uospa(calc.vector(e_hat))


def msospa(
    mb: MultiBernoulli,
    e_hat: Iterable[int],
    c: float,
    *,
    p: float = 2,
    check_separation: bool = True
) -> float:
    """均方 OSPA 误差, 不超过 c^2"""
    calc = ClosedFormMse(mb, c, p=p, check_separation=check_separation)
    return calc.ospa(calc.vector(e_hat))


def msgospa_general_alpha(
    mb: MultiBernoulli,
    e_hat: Iterable[int],
    c: float,
    alpha: float,
    *,
    p: float = 2,
    check_separation: bool = True
) -> float:
    """任意 alpha 的均方 GOSPA 误差; alpha=1 时等于均方 UOSPA 误差"""
    _check_alpha(alpha)
    calc = ClosedFormMse(mb, c, p=p, check_separation=check_separation)
    return calc.gospa_alpha(calc.vector(e_hat), alpha)


def mse(
    metric_kind: MetricKind,
    mb: MultiBernoulli,
    e_hat: Iterable[int],
    c: float,
    alpha: Optional[float] = None,
    *,
    p: float = 2,
    metric_cfg: Optional[MetricConfig] = None,
    check_separation: bool = True
) -> MseReport:
    """
    按度量类型分派到对应的闭式均方误差

    Args:
        metric_kind: 度量类型
        mb: 多伯努利密度
        e_hat: 检测向量
        c: 截断距离
        alpha: 仅 GOSPA_GENERAL_ALPHA 使用
        p: 阶数, 只接受 2
        metric_cfg: 分离检查所用的基础距离类型

    Returns:
        MseReport: 均方误差报告
    """
    kind = MetricKind(metric_kind)
    calc = ClosedFormMse(mb, c, p=p, check_separation=check_separation, metric_cfg=metric_cfg)
    value = calc.value(kind, calc.vector(e_hat), alpha)
    report_alpha = {MetricKind.GOSPA2: 2.0, MetricKind.UOSPA: 1.0, MetricKind.OSPA: None}.get(kind, alpha)
    return MseReport(value, kind, c, report_alpha)


def square_error_given_event(
    metric_kind: MetricKind,
    e: Iterable[int],
    e_hat: Iterable[int],
    c: float,
    alpha: Optional[float] = None
) -> float:
    """
    给定存在事件与检测向量时的平方误差

    Args:
        metric_kind: 度量类型
        e: 存在事件
        e_hat: 检测向量 (长度与 e 相同)
        c: 截断距离
        alpha: 仅 GOSPA_GENERAL_ALPHA 使用

    Returns:
        float: 平方误差

    Raises:
        ValidationError: 未知度量类型或 alpha 缺失
    """
    try:
        kind = MetricKind(metric_kind)
    except ValueError as err:
        raise ValidationError(f"未知的度量类型: {metric_kind}") from err
    event = to_binary_vector(e)
    vector = to_binary_vector(e_hat, len(event))

    n = sum(event)
    n_hat = sum(vector)
    matched = sum(a & b for a, b in zip(event, vector))  # 正确检测的目标数

    if kind is MetricKind.GOSPA2:
        return c ** 2 / 2.0 * sum(a ^ b for a, b in zip(event, vector))
    if kind is MetricKind.UOSPA:
        return c ** 2 * (max(n, n_hat) - matched)
    if kind is MetricKind.OSPA:
        if n == 0 and n_hat == 0:
            return 0.0
        return c ** 2 * (1.0 - matched / max(n, n_hat))
    if alpha is None:
        raise ValidationError("GOSPA_GENERAL_ALPHA 需要指定 alpha")
    _check_alpha(alpha)
    return c ** 2 / alpha * abs(n - n_hat) + c ** 2 * (min(n, n_hat) - matched)


def _check_identical(n_components: int, r: float, n_hat: int):
    if n_components < 0:
        raise ValidationError(f"分量数不能为负: {n_components}")
    if not 0.0 <= r <= 1.0:
        raise ValidationError(f"存在概率必须在 [0, 1] 内, 当前为 {r}")
    if not 0 <= n_hat <= n_components:
        raise ValidationError(f"检测数 {n_hat} 不在 [0, {n_components}] 内")


def msuospa_identical_r(n_components: int, r: float, n_hat: int, c: float) -> float:
    """
    所有存在概率相同时的均方 UOSPA 误差, 只依赖 n̂

    Args:
        n_components: 分量数 N
        r: 共同的存在概率
        n_hat: 检测数
        c: 截断距离

    Returns:
        float: 均方误差
    """
    _check_identical(n_components, r, n_hat)
    n = np.arange(n_components + 1)
    rho = binom.pmf(n, n_components, r)
    expected_max = math.fsum(rho * np.maximum(n, n_hat))
    return c ** 2 * max(expected_max - n_hat * r, 0.0)


def msospa_identical_r(n_components: int, r: float, n_hat: int, c: float) -> float:
    """
    所有存在概率相同时的均方 OSPA 误差, 只依赖 n̂

    rho_{-i} 对所有 i 相同, 为 N - 1 次二项分布。
    """
    _check_identical(n_components, r, n_hat)
    if n_hat == 0:
        return c ** 2 * (1.0 - (1.0 - r) ** n_components)
    n = np.arange(n_components)
    rho_minus = binom.pmf(n, n_components - 1, r)
    inner = math.fsum(rho_minus / np.maximum(n + 1, n_hat))
    return c ** 2 * min(max(1.0 - n_hat * r * inner, 0.0), 1.0)


def msospa_all_or_nothing(n_components: int, r: float, c: float) -> Tuple[float, float]:
    """
    相同存在概率时只检测 0 个或全部 N 个目标的均方 OSPA 误差

    Returns:
        Tuple[float, float]: (n̂ = 0 时 c^2 (1 - (1 - r)^N), n̂ = N 时 c^2 (1 - r))
    """
    _check_identical(n_components, r, 0)
    return c ** 2 * (1.0 - (1.0 - r) ** n_components), c ** 2 * (1.0 - r)
