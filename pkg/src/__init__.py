"""
多目标集合度量工具

OSPA / UOSPA / GOSPA 集合度量, 以及多伯努利后验下最小均方度量误差的最优估计。
"""

__version__ = "1.0.0"
