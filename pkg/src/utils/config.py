"""
配置管理模块
"""
import copy
import json
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional
from ..utils.exceptions import ConfigurationError


DEFAULT_CONFIG: Dict[str, Any] = {
    "metric": {
        "p": 2.0,
        "c": 1.0,
        "alpha": 2.0,
        "base_distance": "euclidean",
    },
    "sweep": {
        "grid_step": 0.01,
        "locations": [[0.0], [10.0]],
        "n_max": 30,
    },
    "validation": {
        "seed": 0,
        "n_instances": 200,
        "n_samples": 0,
        "tolerance": 1e-9,
        "max_components": 6,
    },
}


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并配置字典, override 中的值优先"""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class Config:
    """配置管理器"""

    def __init__(self, config_path: Optional[str] = None):
        """
        初始化配置管理器

        Args:
            config_path: 配置文件路径, 为 None 时只使用内置默认值
        """
        self.config_path = Path(config_path) if config_path else None
        self._config: Dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)
        if self.config_path is not None:
            self._load_config()

    def _load_config(self):
        """加载配置文件并与默认值合并"""
        if not self.config_path.exists():
            raise ConfigurationError(f"配置文件不存在: {self.config_path}")

        try:
            with open(self.config_path, 'r', encoding='utf-8') as f:
                loaded = json.load(f)
        except UnicodeDecodeError as e:
            raise ConfigurationError(f"配置文件不是 UTF-8 编码: {self.config_path}") from e
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"配置文件格式错误: {e}") from e
        except OSError as e:
            raise ConfigurationError(f"配置文件读取失败: {self.config_path}, 错误: {e}") from e

        if not isinstance(loaded, dict):
            raise ConfigurationError(f"配置文件顶层必须是对象: {self.config_path}")
        self._config = _deep_merge(DEFAULT_CONFIG, loaded)

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置项

        Args:
            key: 配置键 (支持点号分隔的嵌套键,如 "metric.c")
            default: 默认值

        Returns:
            Any: 配置值
        """
        keys = key.split('.')
        value = self._config

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default

        return value if value is not None else default

    def get_metric_settings(self) -> Dict[str, Any]:
        """
        获取度量参数 (p, c, alpha, base_distance)

        Returns:
            Dict[str, Any]: 度量参数字典, 可直接传给 MetricConfig.from_dict
        """
        return dict(self.get('metric', {}))

    def _typed(self, key: str, cast: Callable[[Any], Any]) -> Any:
        """按类型读取配置项, 类型不符时报配置错误"""
        value = self.get(key)
        try:
            return cast(value)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"配置项 {key} 的值无效: {value!r}") from e

    def get_grid_step(self) -> float:
        """获取决策区域扫描的网格步长"""
        return self._typed('sweep.grid_step', float)

    def get_locations(self) -> List[List[float]]:
        """
        获取区域扫描中两个 Bernoulli 分量的位置

        Returns:
            List[List[float]]: 位置坐标列表
        """
        return self._typed('sweep.locations', lambda locs: [list(map(float, loc)) for loc in locs])

    def get_n_max(self) -> int:
        """获取基数扫描的最大分量数"""
        return self._typed('sweep.n_max', int)

    def get_validation_settings(self) -> Dict[str, Any]:
        """
        获取验证运行参数

        Returns:
            Dict[str, Any]: seed, n_instances, n_samples, tolerance, max_components
        """
        return {
            "seed": self._typed('validation.seed', int),
            "n_instances": self._typed('validation.n_instances', int),
            "n_samples": self._typed('validation.n_samples', int),
            "tolerance": self._typed('validation.tolerance', float),
            "max_components": self._typed('validation.max_components', int),
        }
