"""
形变指数函数模块
E(z) = sum eps2^C(n,2) z^n/[n]!，e(z) = sum eps1^C(n,2) z^n/[n]!
"""

from ..config.settings import AppConstants
from .deformation import DeformationSpec, power
from .series import sum_ratio_series


def _exponential(d: DeformationSpec, z, epsilon, tol, max_terms, label) -> float:
    z = float(z)
    if z == 0.0:
        return 1.0

    # t_{n+1}/t_n = eps^n z/[n+1]
    def ratio(n):
        return power(epsilon, n) * z / d.number(n + 1)

    return sum_ratio_series(1.0, ratio, tol, max_terms, f"{label}({d.label}, z={z:g})")


def exp_big_E(d: DeformationSpec, z, tol=AppConstants.DEFAULT_SERIES_TOL,
              max_terms=AppConstants.DEFAULT_MAX_TERMS) -> float:
    """E(z)，系数含 eps2"""
    return _exponential(d, z, d.epsilon2, tol, max_terms, "E")


def exp_small_e(d: DeformationSpec, z, tol=AppConstants.DEFAULT_SERIES_TOL,
                max_terms=AppConstants.DEFAULT_MAX_TERMS) -> float:
    """e(z)，系数含 eps1"""
    return _exponential(d, z, d.epsilon1, tol, max_terms, "e")
