"""
环境变量配置管理模块
负责读取项目根目录下的 .env 文件，并提供各类计算上限的默认值
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# 各类上限与容差的默认值；可被 .env 或同名环境变量覆盖
DEFAULTS = {
    "FIBTREE_DEPTH_CAP": 30,
    "FIBTREE_WORK_CAP": 2**24,
    "FIBTREE_MAX_SUBSYSTEMS": 1_000_000,
    "FIBTREE_SPECTRAL_TOL": 1e-12,
    "FIBTREE_SPECTRAL_MAX_ITER": 100_000,
    "FIBTREE_BOUNDARY_TOL": 1e-9,
}


class EnvConfig:
    """环境变量配置管理类"""

    def __init__(self, env_file: Optional[str] = None):
        """
        初始化环境配置

        Args:
            env_file: .env文件路径，如果为None则使用项目根目录的.env文件
        """
        if env_file:
            self.env_file = Path(env_file)
        else:
            self.env_file = Path(__file__).parent.parent.parent / ".env"

        self.load_environment()

    def load_environment(self) -> None:
        """加载环境变量；作为库使用时 .env 可以不存在"""
        if self.env_file.exists():
            # 已经在进程环境里设置的变量优先
            load_dotenv(dotenv_path=self.env_file, override=False)

    def get(self, key: str, default: Optional[str] = None) -> Optional[str]:
        """
        获取环境变量值

        Args:
            key: 环境变量键名
            default: 默认值

        Returns:
            环境变量值，如果不存在则返回默认值
        """
        return os.getenv(key, default)

    def get_int(self, key: str, default: Optional[int] = None) -> Optional[int]:
        """获取整数类型的环境变量值，解析失败时回退到默认值"""
        if default is None:
            default = DEFAULTS.get(key)
        value = self.get(key)
        if value is not None:
            try:
                return int(float(value))
            except ValueError:
                pass
        return default

    def get_float(self, key: str, default: Optional[float] = None) -> Optional[float]:
        """获取浮点类型的环境变量值，解析失败时回退到默认值"""
        if default is None:
            default = DEFAULTS.get(key)
        value = self.get(key)
        if value is not None:
            try:
                return float(value)
            except ValueError:
                pass
        return default

    # ------------------------------------------------------------------
    # 常用上限的快捷读取：每次调用时读取，便于测试中 monkeypatch 环境变量
    # ------------------------------------------------------------------

    @property
    def depth_cap(self) -> int:
        return self.get_int("FIBTREE_DEPTH_CAP")

    @property
    def work_cap(self) -> int:
        return self.get_int("FIBTREE_WORK_CAP")

    @property
    def max_subsystems(self) -> int:
        return self.get_int("FIBTREE_MAX_SUBSYSTEMS")

    @property
    def spectral_tol(self) -> float:
        return self.get_float("FIBTREE_SPECTRAL_TOL")

    @property
    def spectral_max_iter(self) -> int:
        return self.get_int("FIBTREE_SPECTRAL_MAX_ITER")

    @property
    def boundary_tol(self) -> float:
        return self.get_float("FIBTREE_BOUNDARY_TOL")


# 创建全局配置实例
env_config = EnvConfig()
