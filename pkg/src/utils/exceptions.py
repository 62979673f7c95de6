"""
自定义异常类
"""


class MetricsToolkitError(Exception):
    """基础异常类"""
    pass


class ValidationError(MetricsToolkitError):
    """参数或数据验证失败 (p, c, alpha, 存在概率等)"""
    pass


class DimensionMismatchError(MetricsToolkitError):
    """点或向量的维度不一致"""
    pass


class SeparationError(MetricsToolkitError):
    """Bernoulli 分量之间的距离不大于截断距离 c"""
    pass


class EnumerationLimitError(MetricsToolkitError):
    """穷举规模超过上限"""
    pass


class AssignmentError(MetricsToolkitError):
    """分配问题无法求解"""
    pass


class InputFormatError(MetricsToolkitError):
    """输入文件格式错误"""
    pass


class FilePermissionError(MetricsToolkitError):
    """文件权限不足"""
    pass


class ConfigurationError(MetricsToolkitError):
    """配置错误"""
    pass
