"""Logic 层 - 度量、分配与估计算法"""
