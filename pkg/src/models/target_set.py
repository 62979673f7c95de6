"""
目标集合数据模型
"""
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from ..utils.exceptions import DimensionMismatchError, ValidationError


@dataclass(frozen=True)
class LabeledPoint:
    """单目标状态 (实数向量)"""

    coords: Tuple[float, ...]

    def __post_init__(self):
        """初始化后校验坐标"""
        coords = tuple(float(v) for v in self.coords)
        if len(coords) == 0:
            raise ValidationError("目标状态维度必须至少为 1")
        if not all(math.isfinite(v) for v in coords):
            raise ValidationError(f"目标状态包含非有限坐标: {coords}")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        """状态维度"""
        return len(self.coords)

    def shifted(self, offset: float, axis: int = 0) -> "LabeledPoint":
        """沿某一坐标轴平移后的新点"""
        coords = list(self.coords)
        coords[axis] += offset
        return LabeledPoint(tuple(coords))

    def to_list(self) -> List[float]:
        """转换为坐标列表"""
        return list(self.coords)


@dataclass(frozen=True)
class TargetSet:
    """有限目标集合 (按多重集处理, 允许重复点)"""

    points: Tuple[LabeledPoint, ...] = ()

    def __post_init__(self):
        """初始化后校验所有点维度一致"""
        points = tuple(self.points)
        dims = {p.dim for p in points}
        if len(dims) > 1:
            raise DimensionMismatchError(f"集合中的点维度不一致: {sorted(dims)}")
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[LabeledPoint]:
        return iter(self.points)

    @property
    def dim(self) -> int:
        """点的维度, 空集返回 0"""
        return self.points[0].dim if self.points else 0

    def as_array(self) -> np.ndarray:
        """转换为 (|X|, n_x) 的数组"""
        if not self.points:
            return np.zeros((0, 0))
        return np.array([p.coords for p in self.points], dtype=float)

    def to_list(self) -> List[List[float]]:
        """转换为 JSON 友好的嵌套列表"""
        return [p.to_list() for p in self.points]

    @classmethod
    def from_list(cls, data: Iterable[Sequence[float]]) -> "TargetSet":
        """从坐标数组列表创建"""
        return cls(tuple(LabeledPoint(tuple(row)) for row in data))

    @classmethod
    def empty(cls) -> "TargetSet":
        """空集合"""
        return cls(())


def check_same_dimension(x: TargetSet, y: TargetSet):
    """
    检查两个集合的维度是否一致 (空集与任何维度兼容)

    Raises:
        DimensionMismatchError: 两个非空集合维度不同
    """
    if len(x) and len(y) and x.dim != y.dim:
        raise DimensionMismatchError(f"集合维度不一致: {x.dim} != {y.dim}")
