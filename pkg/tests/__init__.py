"""
测试模块

统一测试入口和配置。
"""
