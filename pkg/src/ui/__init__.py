"""UI 层 - 命令行界面"""
