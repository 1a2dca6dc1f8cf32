from ._env import env_config

__all__ = ["env_config"]
