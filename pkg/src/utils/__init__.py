"""工具函数和辅助模块"""
