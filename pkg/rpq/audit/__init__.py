"""
恒等式审计包
包含审计报告、各套件的恒等式检查与审计运行器
"""

from .report import AuditEntry, AuditReport, AuditStatus, residual
from .identities import SUITE_CHECKS, TOLERANCES, SuiteContext
from .runner import AuditRunner, point_deformation, run_audit

__all__ = [
    'AuditEntry',
    'AuditReport',
    'AuditStatus',
    'residual',
    'SUITE_CHECKS',
    'TOLERANCES',
    'SuiteContext',
    'AuditRunner',
    'point_deformation',
    'run_audit'
]
