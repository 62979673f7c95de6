"""
度量参数数据模型
"""
import math
from dataclasses import dataclass
from enum import Enum

from ..utils.exceptions import ValidationError


class BaseDistance(str, Enum):
    """单目标空间中的基础距离"""

    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    CHEBYSHEV = "chebyshev"

    @property
    def cdist_name(self) -> str:
        """对应 scipy.spatial.distance.cdist 的 metric 名称"""
        return {
            BaseDistance.EUCLIDEAN: "euclidean",
            BaseDistance.MANHATTAN: "cityblock",
            BaseDistance.CHEBYSHEV: "chebyshev",
        }[self]


@dataclass(frozen=True)
class MetricConfig:
    """OSPA/UOSPA/GOSPA 的参数"""

    p: float = 2.0  # 阶数
    c: float = 1.0  # 截断距离
    alpha: float = 2.0  # 基数惩罚 (仅 GOSPA)
    base_distance: BaseDistance = BaseDistance.EUCLIDEAN

    def __post_init__(self):
        """初始化后校验参数范围"""
        object.__setattr__(self, "base_distance", BaseDistance(self.base_distance))
        if not (math.isfinite(self.p) and self.p >= 1):
            raise ValidationError(f"阶数 p 必须满足 1 <= p < inf, 当前为 {self.p}")
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValidationError(f"截断距离 c 必须为正数, 当前为 {self.c}")
        if not (0 < self.alpha <= 2):
            raise ValidationError(f"alpha 必须在 (0, 2] 内, 当前为 {self.alpha}")

    def with_alpha(self, alpha: float) -> "MetricConfig":
        """返回只替换 alpha 的新配置"""
        return MetricConfig(self.p, self.c, alpha, self.base_distance)

    def to_dict(self) -> dict:
        """转换为字典"""
        return {
            "p": self.p,
            "c": self.c,
            "alpha": self.alpha,
            "base_distance": self.base_distance.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MetricConfig":
        """从字典创建"""
        try:
            return cls(
                p=float(data.get("p", 2.0)),
                c=float(data.get("c", 1.0)),
                alpha=float(data.get("alpha", 2.0)),
                base_distance=BaseDistance(data.get("base_distance", "euclidean")),
            )
        except (TypeError, ValueError) as e:
            raise ValidationError(f"度量参数无效: {e}") from e
