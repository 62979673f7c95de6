"""Storage 层 - 输入读取与结果输出"""
