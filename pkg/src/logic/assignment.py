"""
矩形最小代价分配问题
"""
import itertools
import math
from typing import Sequence, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..models.assignment import AssignmentResult
from ..utils.exceptions import AssignmentError, EnumerationLimitError, ValidationError

CostLike = Union[np.ndarray, Sequence[Sequence[float]]]

BRUTE_FORCE_MAX_SIZE = 8


def as_cost_matrix(costs: CostLike) -> np.ndarray:
    """
    校验并转换代价矩阵

    Args:
        costs: m×n 代价, 允许 0 行或 0 列

    Returns:
        np.ndarray: 二维 float 数组

    Raises:
        AssignmentError: 不是二维矩阵, 或含有负数/非有限值
    """
    matrix = np.asarray(costs, dtype=float)
    if matrix.ndim == 1 and matrix.size == 0:
        matrix = matrix.reshape(0, 0)
    if matrix.ndim != 2:
        raise AssignmentError(f"代价矩阵必须是二维的, 当前形状 {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise AssignmentError("代价矩阵包含非有限值")
    if np.any(matrix < 0):
        raise AssignmentError("代价矩阵包含负数")
    return matrix


def _check_penalty(unassigned_penalty: float):
    if not (math.isfinite(unassigned_penalty) and unassigned_penalty >= 0):
        raise ValidationError(f"未分配惩罚必须为非负有限数, 当前为 {unassigned_penalty}")


def solve_full_assignment(costs: CostLike) -> AssignmentResult:
    """
    求解每一行都必须分配的矩形分配问题 (m <= n)

    Args:
        costs: m×n 代价矩阵

    Returns:
        AssignmentResult: 全局最优分配, 按行号升序

    Raises:
        AssignmentError: m > n
    """
    matrix = as_cost_matrix(costs)
    m, n = matrix.shape
    if m > n:
        raise AssignmentError(f"行数 {m} 大于列数 {n}, 无法为每一行分配")
    if m == 0:
        return AssignmentResult((), 0.0)

    rows, cols = linear_sum_assignment(matrix)
    pairs = tuple((int(i), int(j)) for i, j in zip(rows, cols))
    total = math.fsum(matrix[i, j] for i, j in pairs)
    return AssignmentResult(pairs, total)


def solve_partial_assignment(costs: CostLike, unassigned_penalty: float) -> AssignmentResult:
    """
    求解允许不分配的分配问题

    目标为 已选代价之和 + penalty * (m + n - 2 * |pairs|)。
    通过为每一行、每一列各加一个代价为 penalty 的虚拟对象, 化为方阵分配。

    Args:
        costs: m×n 代价矩阵
        unassigned_penalty: 每个未分配元素的惩罚

    Returns:
        AssignmentResult: 全局最优解; 代价不小于 2 * penalty 的对不会出现

    Raises:
        ValidationError: 惩罚为负
    """
    _check_penalty(unassigned_penalty)
    matrix = as_cost_matrix(costs)
    m, n = matrix.shape
    if m == 0 or n == 0:
        return AssignmentResult((), unassigned_penalty * (m + n))

    size = m + n
    augmented = np.full((size, size), np.inf)
    augmented[:m, :n] = matrix
    # 行 i 选择虚拟列 n + i 表示行 i 未分配
    augmented[np.arange(m), n + np.arange(m)] = unassigned_penalty
    # 虚拟行 m + j 选择列 j 表示列 j 未分配
    augmented[m + np.arange(n), np.arange(n)] = unassigned_penalty
    augmented[m:, n:] = 0.0

    rows, cols = linear_sum_assignment(augmented)
    threshold = 2.0 * unassigned_penalty
    pairs = tuple(
        (int(i), int(j)) for i, j in zip(rows, cols)
        if i < m and j < n and matrix[i, j] < threshold
    )
    total = math.fsum(
        [matrix[i, j] for i, j in pairs]
        + [unassigned_penalty * (m + n - 2 * len(pairs))]
    )
    return AssignmentResult(pairs, total)


def brute_force_assignment(costs: CostLike, unassigned_penalty: float) -> AssignmentResult:
    """
    穷举所有部分分配 (测试用预言机)

    枚举顺序为: 对数由少到多, 行组合按字典序, 列排列按字典序;
    只有严格更优才替换当前最优, 因此并列时取对数最少、下标最小的解。

    Args:
        costs: m×n 代价矩阵, m, n <= 8
        unassigned_penalty: 每个未分配元素的惩罚

    Returns:
        AssignmentResult: 最优解

    Raises:
        EnumerationLimitError: 矩阵超过 8×8
    """
    _check_penalty(unassigned_penalty)
    matrix = as_cost_matrix(costs)
    m, n = matrix.shape
    if m > BRUTE_FORCE_MAX_SIZE or n > BRUTE_FORCE_MAX_SIZE:
        raise EnumerationLimitError(
            f"穷举分配最多支持 {BRUTE_FORCE_MAX_SIZE}×{BRUTE_FORCE_MAX_SIZE}, 当前为 {m}×{n}"
        )

    best_pairs: tuple = ()
    best_total = unassigned_penalty * (m + n)
    for k in range(1, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.permutations(range(n), k):
                pairs = tuple(zip(rows, cols))
                total = math.fsum(
                    [matrix[i, j] for i, j in pairs]
                    + [unassigned_penalty * (m + n - 2 * k)]
                )
                if total < best_total - 1e-12:
                    best_total = total
                    best_pairs = pairs
    return AssignmentResult(best_pairs, best_total)
