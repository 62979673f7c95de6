"""
多伯努利后验数据模型
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from .target_set import LabeledPoint
from ..utils.exceptions import DimensionMismatchError, ValidationError

# 存在事件 e 与检测向量 ê 都用 0/1 元组表示
BinaryVector = Tuple[int, ...]


def to_binary_vector(
    values: Iterable[int],
    expected_length: Optional[int] = None
) -> BinaryVector:
    """
    校验并规范化 0/1 向量

    Args:
        values: 输入序列
        expected_length: 期望长度, None 表示不检查

    Returns:
        BinaryVector: 规范化后的元组

    Raises:
        ValidationError: 含有 0/1 以外的值
        DimensionMismatchError: 长度不符
    """
    vector = tuple(int(v) for v in values)
    if any(v not in (0, 1) for v in vector):
        raise ValidationError(f"向量只能包含 0 或 1: {vector}")
    if expected_length is not None and len(vector) != expected_length:
        raise DimensionMismatchError(
            f"向量长度 {len(vector)} 与分量数 {expected_length} 不一致"
        )
    return vector


@dataclass(frozen=True)
class BernoulliComponent:
    """位置已知的伯努利分量"""

    r: float  # 存在概率
    x_bar: LabeledPoint  # 目标位置

    def __post_init__(self):
        """初始化后校验存在概率"""
        r = float(self.r)
        if not (math.isfinite(r) and 0.0 <= r <= 1.0):
            raise ValidationError(f"存在概率必须在 [0, 1] 内, 当前为 {self.r}")
        object.__setattr__(self, "r", r)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"r": self.r, "x": self.x_bar.to_list()}


@dataclass(frozen=True)
class MultiBernoulli:
    """多伯努利密度 (分量有序, 构造后不可变)"""

    components: Tuple[BernoulliComponent, ...] = ()

    def __post_init__(self):
        """初始化后校验位置维度"""
        components = tuple(self.components)
        dims = {comp.x_bar.dim for comp in components}
        if len(dims) > 1:
            raise DimensionMismatchError(f"分量位置维度不一致: {sorted(dims)}")
        object.__setattr__(self, "components", components)

    def __len__(self) -> int:
        return len(self.components)

    @property
    def existence_probabilities(self) -> List[float]:
        """所有分量的存在概率"""
        return [comp.r for comp in self.components]

    @property
    def locations(self) -> List[LabeledPoint]:
        """所有分量的位置"""
        return [comp.x_bar for comp in self.components]

    def without(self, index: int) -> "MultiBernoulli":
        """去掉第 index 个分量后的多伯努利密度"""
        return MultiBernoulli(self.components[:index] + self.components[index + 1:])

    def with_probability(self, index: int, r: float) -> "MultiBernoulli":
        """只替换第 index 个分量存在概率的新密度"""
        components = list(self.components)
        components[index] = BernoulliComponent(r, components[index].x_bar)
        return MultiBernoulli(tuple(components))

    def to_dict(self) -> dict:
        """转换为字典"""
        return {"components": [comp.to_dict() for comp in self.components]}

    @classmethod
    def from_dict(cls, data: dict) -> "MultiBernoulli":
        """从字典创建"""
        return cls(tuple(
            BernoulliComponent(item["r"], LabeledPoint(tuple(item["x"])))
            for item in data.get("components", [])
        ))

    @classmethod
    def from_arrays(
        cls,
        probabilities: Sequence[float],
        locations: Sequence[Sequence[float]]
    ) -> "MultiBernoulli":
        """
        由存在概率和位置列表创建

        Args:
            probabilities: 存在概率 r_1..r_N
            locations: 位置 x̄_1..x̄_N

        Returns:
            MultiBernoulli: 多伯努利密度
        """
        if len(probabilities) != len(locations):
            raise DimensionMismatchError(
                f"存在概率个数 {len(probabilities)} 与位置个数 {len(locations)} 不一致"
            )
        return cls(tuple(
            BernoulliComponent(r, LabeledPoint(tuple(loc)))
            for r, loc in zip(probabilities, locations)
        ))

    @classmethod
    def on_line(cls, probabilities: Sequence[float], spacing: float = 10.0) -> "MultiBernoulli":
        """一维等间距位置 (0, spacing, 2*spacing, ...) 的多伯努利密度"""
        return cls.from_arrays(
            probabilities, [[i * spacing] for i in range(len(probabilities))]
        )


@dataclass(frozen=True)
class SeparationReport:
    """分量间距检查结果"""

    separated: bool
    violations: Tuple[Tuple[int, int], ...] = ()

    def __bool__(self) -> bool:
        return self.separated

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "separated": self.separated,
            "violations": [list(pair) for pair in self.violations],
        }
