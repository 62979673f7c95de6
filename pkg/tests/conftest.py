"""
测试公共夹具
"""
import numpy as np
import pytest

from src.models.metric_config import MetricConfig
from src.models.multi_bernoulli import MultiBernoulli
from src.models.target_set import TargetSet


@pytest.fixture
def cfg() -> MetricConfig:
    """p=2, c=1, alpha=2"""
    return MetricConfig(p=2.0, c=1.0, alpha=2.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


def points(*coords) -> TargetSet:
    """一维坐标快速构造目标集合, 如 points(0, 10)"""
    return TargetSet.from_list([[float(v)] for v in coords])


def random_set(rng: np.random.Generator, max_size: int = 5, dim: int = 2, scale: float = 3.0) -> TargetSet:
    size = int(rng.integers(0, max_size + 1))
    return TargetSet.from_list(rng.uniform(-scale, scale, size=(size, dim)).tolist())


def random_mb(rng: np.random.Generator, max_components: int = 6) -> MultiBernoulli:
    n = int(rng.integers(1, max_components + 1))
    return MultiBernoulli.on_line(rng.uniform(size=n).tolist(), 10.0)
