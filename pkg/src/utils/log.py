"""
日志配置
"""
import sys
from loguru import logger


def setup_logging(verbose: bool = False):
    """
    配置全局日志输出, 只写到 stderr

    Args:
        verbose: 是否输出 DEBUG 级别日志
    """
    logger.remove()
    logger.add(
        sys.stderr,
        level="DEBUG" if verbose else "INFO",
        format="<level>{level: <7}</level> | {message}",
    )
