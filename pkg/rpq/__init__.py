"""
rpq: R(p,q) 形变数与形变离散分布
形变数与组合恒等式、形变指数函数、二项/Euler/Pólya/逆 Pólya 分布，以及内置的恒等式审计
"""

__version__ = "1.0.0"
__author__ = "rpq Team"
__description__ = "R(p,q) 形变数、形变组合与形变离散分布"

# 导入主要组件
from .config.settings import AppSettings, AuditGridConfig, AppConstants
from .core.errors import RpqError, DomainError, ConvergenceError
from .core.deformation import (DeformationKind, DeformationSpec, number, factorial, falling_factorial,
                               binomial_coefficient, deformation_from_options)
from .core.combinatorics import StirlingKind, stirling_table
from .core.special_functions import exp_big_E, exp_small_e
from .distributions.tables import (Family, Method, PmfTable, MomentReport, BinomialParams, EulerParams,
                                   PolyaParams, InversePolyaParams)
from .distributions.binomial import binomial_pmf
from .distributions.euler import euler_pmf
from .distributions.polya import polya_pmf, hypergeometric_pmf, inverse_polya_pmf
from .distributions.sampling import sample
from .audit.report import AuditReport, AuditStatus
from .audit.runner import AuditRunner

__all__ = [
    'AppSettings',
    'AuditGridConfig',
    'AppConstants',
    'RpqError',
    'DomainError',
    'ConvergenceError',
    'DeformationKind',
    'DeformationSpec',
    'number',
    'factorial',
    'falling_factorial',
    'binomial_coefficient',
    'deformation_from_options',
    'StirlingKind',
    'stirling_table',
    'exp_big_E',
    'exp_small_e',
    'Family',
    'Method',
    'PmfTable',
    'MomentReport',
    'BinomialParams',
    'EulerParams',
    'PolyaParams',
    'InversePolyaParams',
    'binomial_pmf',
    'euler_pmf',
    'polya_pmf',
    'hypergeometric_pmf',
    'inverse_polya_pmf',
    'sample',
    'AuditReport',
    'AuditStatus',
    'AuditRunner'
]
