"""
测试工具模块
"""

from .logger import get_current_test_logger, get_test_logger

__all__ = ["get_test_logger", "get_current_test_logger"]
