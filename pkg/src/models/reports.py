"""
预言机、扫描与验证结果的数据模型
"""
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np


@dataclass(frozen=True)
class MseEstimate:
    """均方误差估计 (精确枚举时 std_err 与 n_samples 为 0)"""

    mean: float
    std_err: float = 0.0
    n_samples: int = 0

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"mean": self.mean, "std_err": self.std_err, "n_samples": self.n_samples}


@dataclass(frozen=True)
class ProbeCase:
    """一次扰动探测"""

    kind: str  # shift: 平移已报告的点; insert: 在未报告分量附近插入点
    component: int
    epsilon: float
    base_mse: float
    perturbed_mse: float

    @property
    def margin(self) -> float:
        """扰动后均方误差的增量"""
        return self.perturbed_mse - self.base_mse

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "kind": self.kind,
            "component": self.component,
            "epsilon": self.epsilon,
            "base_mse": self.base_mse,
            "perturbed_mse": self.perturbed_mse,
            "margin": self.margin,
        }


@dataclass
class ProbeReport:
    """子集最优性探测报告"""

    e_hat: Tuple[int, ...]
    cases: List[ProbeCase] = field(default_factory=list)
    tolerance: float = 1e-12

    @property
    def failures(self) -> List[ProbeCase]:
        """epsilon > 0 时增量不严格为正, 或 epsilon = 0 时增量为负的情况"""
        bad = []
        for case in self.cases:
            if case.epsilon > 0 and case.margin <= 0:
                bad.append(case)
            elif case.epsilon == 0 and case.margin < -self.tolerance:
                bad.append(case)
        return bad

    @property
    def passed(self) -> bool:
        """所有探测是否都符合子集最优性"""
        return not self.failures

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "e_hat": list(self.e_hat),
            "passed": self.passed,
            "cases": [case.to_dict() for case in self.cases],
        }


@dataclass
class RegionGrid:
    """两个分量的决策区域栅格, cells[i, j] 对应 (r1_i, r2_j)"""

    estimator: str
    grid_step: float
    r_values: np.ndarray
    cells: np.ndarray  # 0: 都不报告, 1: 只报告 1, 2: 只报告 2, 3: 都报告

    def rows(self) -> List[Tuple[float, float, int]]:
        """按 r1 升序、r2 升序展开为 (r1, r2, code)"""
        return [
            (float(r1), float(r2), int(self.cells[i, j]))
            for i, r1 in enumerate(self.r_values)
            for j, r2 in enumerate(self.r_values)
        ]


@dataclass
class CardinalityTable:
    """相同存在概率时最优检测数随分量数的变化"""

    r: float
    rows: List[Tuple[int, int, int, int]] = field(default_factory=list)  # (N, gospa, uospa, ospa)

    def column(self, name: str) -> List[int]:
        """取出某一列"""
        index = {"N": 0, "gospa": 1, "uospa": 2, "ospa": 3}[name]
        return [row[index] for row in self.rows]


@dataclass
class ValidationReport:
    """闭式误差与枚举预言机一致性验证报告"""

    seed: int
    tolerance: float
    n_instances: int
    checks: Dict[str, Dict[str, float]] = field(default_factory=dict)
    monte_carlo: Dict[str, float] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        """是否全部通过"""
        return not self.failures

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "seed": self.seed,
            "tolerance": self.tolerance,
            "n_instances": self.n_instances,
            "passed": self.passed,
            "checks": self.checks,
            "monte_carlo": self.monte_carlo,
            "failures": self.failures,
        }
