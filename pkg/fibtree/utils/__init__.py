"""
工具函数包

导出日志相关的实用工具。
"""

from ._logger import logger, setup_logging

__all__ = ["logger", "setup_logging"]
