"""
估计与均方误差数据模型
"""
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from .multi_bernoulli import BinaryVector


class MetricKind(str, Enum):
    """闭式均方误差对应的度量"""

    GOSPA2 = "gospa2"
    UOSPA = "uospa"
    OSPA = "ospa"
    GOSPA_GENERAL_ALPHA = "gospa_alpha"


class EstimatorKind(str, Enum):
    """估计器类型"""

    OPT_GOSPA2 = "gospa"
    OPT_UOSPA = "uospa"
    OPT_OSPA = "ospa"
    OPT_GOSPA_ALPHA = "gospa_alpha"
    MARGINAL_MULTITARGET = "mam"
    JOM = "jom"
    MAX_CARDINALITY = "maxcard"

    @property
    def metric_kind(self) -> Optional[MetricKind]:
        """最优度量估计器所最小化的度量, 非度量估计器返回 None"""
        return {
            EstimatorKind.OPT_GOSPA2: MetricKind.GOSPA2,
            EstimatorKind.OPT_UOSPA: MetricKind.UOSPA,
            EstimatorKind.OPT_OSPA: MetricKind.OSPA,
            EstimatorKind.OPT_GOSPA_ALPHA: MetricKind.GOSPA_GENERAL_ALPHA,
        }.get(self)


@dataclass(frozen=True)
class MseReport:
    """闭式均方误差"""

    value: float
    metric_kind: MetricKind
    c: float
    alpha: Optional[float] = None

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "value": self.value,
            "metric_kind": self.metric_kind.value,
            "c": self.c,
            "alpha": self.alpha,
        }


@dataclass(frozen=True)
class EstimateOutcome:
    """估计器的输出"""

    e_hat: BinaryVector
    objective_value: float  # 度量估计器为最小均方误差, 其余为最大化的得分
    ties: Tuple[BinaryVector, ...] = ()

    @property
    def n_hat(self) -> int:
        """检测到的目标数"""
        return sum(self.e_hat)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "e_hat": list(self.e_hat),
            "n_hat": self.n_hat,
            "objective_value": self.objective_value,
            "ties": [list(t) for t in self.ties],
        }


@dataclass(frozen=True)
class CardinalityOptimum:
    """相同存在概率场景下的最优检测数"""

    n_hat: int
    mse: float

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"n_hat": self.n_hat, "mse": self.mse}
