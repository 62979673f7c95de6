"""Service 层 - 扫描与验证流程"""
