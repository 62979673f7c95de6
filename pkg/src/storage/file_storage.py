"""
文件存储模块
"""
import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Optional

from ..models.metric_config import MetricConfig
from ..models.multi_bernoulli import MultiBernoulli
from ..models.reports import CardinalityTable, RegionGrid
from ..models.target_set import TargetSet
from ..utils.exceptions import FilePermissionError, InputFormatError, MetricsToolkitError


def format_number(value: float) -> str:
    """CSV 中数值的统一格式 ('.' 作小数点, 最多 10 位有效数字)"""
    return f"{value:.10g}"


class FileStorage:
    """文件系统存储管理"""

    @staticmethod
    def read_json(file_path: Path) -> Any:
        """
        读取 JSON 文件

        Args:
            file_path: JSON 文件路径

        Returns:
            Any: 解析后的对象

        Raises:
            InputFormatError: 文件不存在、不可读、不是 UTF-8 或 JSON 解析失败
            FilePermissionError: 文件权限不足
        """
        try:
            with open(file_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except FileNotFoundError as e:
            raise InputFormatError(f"文件不存在: {file_path}") from e
        except PermissionError as e:
            raise FilePermissionError(f"文件权限不足: {file_path}") from e
        except IsADirectoryError as e:
            raise InputFormatError(f"路径是目录而不是文件: {file_path}") from e
        except OSError as e:
            raise InputFormatError(f"文件读取失败: {file_path}, 错误: {e}") from e
        except UnicodeDecodeError as e:
            raise InputFormatError(f"文件不是 UTF-8 编码: {file_path}") from e
        except json.JSONDecodeError as e:
            raise InputFormatError(f"JSON 解析失败: {file_path}, 错误: {e}") from e

    @classmethod
    def read_target_set(cls, file_path: Path) -> TargetSet:
        """
        读取目标集合, 格式为坐标数组的数组, 如 [[0.0], [10.0]]

        Raises:
            InputFormatError: 格式不符
        """
        data = cls.read_json(file_path)
        if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
            raise InputFormatError(f"目标集合必须是坐标数组的数组: {file_path}")
        try:
            return TargetSet.from_list(data)
        except (TypeError, ValueError, MetricsToolkitError) as e:
            raise InputFormatError(f"目标集合无效: {file_path}, 错误: {e}") from e

    @classmethod
    def read_multi_bernoulli(cls, file_path: Path) -> MultiBernoulli:
        """
        读取多伯努利密度, 格式为 {"components": [{"r": .., "x": [..]}, ...]}

        Raises:
            InputFormatError: 格式不符
        """
        data = cls.read_json(file_path)
        if not isinstance(data, dict) or not isinstance(data.get("components"), list):
            raise InputFormatError(f"多伯努利文件缺少 components 列表: {file_path}")
        try:
            return MultiBernoulli.from_dict(data)
        except (KeyError, TypeError, ValueError, MetricsToolkitError) as e:
            raise InputFormatError(f"多伯努利密度无效: {file_path}, 错误: {e}") from e

    @classmethod
    def read_metric_config(cls, file_path: Path, base: Optional[MetricConfig] = None) -> MetricConfig:
        """
        读取度量参数, 格式为 {"p": .., "c": .., "alpha": .., "base_distance": ..}

        Args:
            file_path: JSON 文件路径
            base: 文件中缺少的键取自这里, 默认为内置默认值

        Raises:
            InputFormatError: 不是 JSON 对象或含未知键
            ValidationError: 参数超出范围
        """
        data = cls.read_json(file_path)
        if not isinstance(data, dict):
            raise InputFormatError(f"度量参数必须是 JSON 对象: {file_path}")
        settings = (base or MetricConfig()).to_dict()
        unknown = set(data) - set(settings)
        if unknown:
            raise InputFormatError(f"度量参数含未知键 {sorted(unknown)}: {file_path}")
        settings.update(data)
        return MetricConfig.from_dict(settings)

    @staticmethod
    def write_text(file_path: Path, content: str):
        """
        写入文本文件 (UTF-8, LF 换行)

        先写临时文件再重命名, 避免留下写了一半的文件。

        Args:
            file_path: 目标文件路径
            content: 文本内容

        Raises:
            FilePermissionError: 文件权限不足
        """
        try:
            file_path.parent.mkdir(parents=True, exist_ok=True)
            temp_file = file_path.with_suffix(file_path.suffix + '.tmp')
            with open(temp_file, 'w', encoding='utf-8', newline='\n') as f:
                f.write(content)
            temp_file.replace(file_path)
        except PermissionError as e:
            raise FilePermissionError(f"文件写入权限不足: {file_path}") from e
        except OSError as e:
            raise MetricsToolkitError(f"文件写入失败: {file_path}, 错误: {e}") from e

    @staticmethod
    def regions_to_csv(grids: Iterable[RegionGrid]) -> str:
        """
        决策区域栅格转为 CSV

        每个估计器内按 r1 升序、再按 r2 升序排列。

        Returns:
            str: 表头为 estimator,r1,r2,code 的 CSV 文本
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(["estimator", "r1", "r2", "code"])
        for grid in grids:
            for r1, r2, code in grid.rows():
                writer.writerow([grid.estimator, format_number(r1), format_number(r2), code])
        return buffer.getvalue()

    @staticmethod
    def cardinality_to_csv(table: CardinalityTable) -> str:
        """
        基数表转为 CSV

        Returns:
            str: 表头为 N,n_hat_gospa,n_hat_uospa,n_hat_ospa 的 CSV 文本
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(["N", "n_hat_gospa", "n_hat_uospa", "n_hat_ospa"])
        for row in table.rows:
            writer.writerow(row)
        return buffer.getvalue()

    @staticmethod
    def to_json(data: Any) -> str:
        """键排序的 JSON 文本, 相同输入得到相同字节"""
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @staticmethod
    def gnuplot_regions_script(csv_path: Path, estimators: Iterable[str], output: Optional[str] = None) -> str:
        """
        生成绘制决策区域的 gnuplot 脚本

        Args:
            csv_path: 区域 CSV 文件路径
            estimators: 估计器名称, 每个估计器一幅图
            output: 输出图片前缀, 默认使用 CSV 文件名

        Returns:
            str: gnuplot 脚本文本
        """
        prefix = output or Path(csv_path).stem
        lines = [
            "set datafile separator ','",
            "set xlabel 'r_1'",
            "set ylabel 'r_2'",
            "set xrange [0:1]",
            "set yrange [0:1]",
            "set cbrange [0:3]",
            "set palette maxcolors 4",
            "set cbtics ('none' 0, 'only 1' 1, 'only 2' 2, 'both' 3)",
            "set terminal pngcairo size 600,500",
        ]
        for name in estimators:
            lines.append(f"set output '{prefix}_{name}.png'")
            lines.append(f"set title '{name}'")
            lines.append(
                f"plot '{csv_path}' every ::1 using "
                f"(strcol(1) eq '{name}' ? $2 : 1/0):3:4 with points pt 5 ps 0.4 palette notitle"
            )
        return "\n".join(lines) + "\n"
