"""
配置管理包
包含运行期设置、审计网格配置与应用常量
"""

from .settings import AppSettings, AuditGridConfig, AppConstants

__all__ = [
    'AppSettings',
    'AuditGridConfig',
    'AppConstants'
]
