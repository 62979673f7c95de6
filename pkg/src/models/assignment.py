"""
分配结果数据模型
"""
from dataclasses import dataclass, field
from typing import List, Tuple


@dataclass(frozen=True)
class AssignmentResult:
    """分配问题的解"""

    pairs: Tuple[Tuple[int, int], ...] = ()  # (行, 列)
    total_cost: float = 0.0

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "pairs": [list(pair) for pair in self.pairs],
            "total_cost": self.total_cost,
        }


@dataclass(frozen=True)
class GospaDecomposition:
    """alpha=2 时 GOSPA 的分解: 定位误差、漏检、虚警"""

    total: float
    localisation_cost: float  # 已分配对的 d^p 之和, 未开根
    missed_cost: float
    false_cost: float
    assignment: List[Tuple[int, int]] = field(default_factory=list)
    num_missed: int = 0
    num_false: int = 0

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "total": self.total,
            "localisation_cost": self.localisation_cost,
            "missed_cost": self.missed_cost,
            "false_cost": self.false_cost,
            "num_missed": self.num_missed,
            "num_false": self.num_false,
            "assignment": [list(pair) for pair in self.assignment],
        }
