"""
形变 Euler 分布模块
P_x = E(-θ) eps1^C(x,2) θ^x / [x]!，x = 0, 1, 2, ...，按尾部界截断
"""

import logging

from ..config.settings import AppConstants
from ..core.combinatorics import classical_factorial_moment_series
from ..core.deformation import DeformationKind, DeformationSpec, choose2, factorial, falling_factorial, power
from ..core.errors import DomainError
from ..core.series import tail_length
from ..core.special_functions import exp_big_E, exp_small_e
from .tables import EulerParams, Family, Method, MomentReport, PmfTable, as_method

logger = logging.getLogger(__name__)


def _check_theta(d: DeformationSpec, theta):
    if d.kind == DeformationKind.ARIK_COON and not theta < 1.0 / (1.0 - d.q):
        raise DomainError(f"{d.label}: 要求 0<θ<1/(1-q)={1.0 / (1.0 - d.q):g}，收到 θ={theta}")


def euler_ratio(d: DeformationSpec, theta, x) -> float:
    """P_{x+1}/P_x = θ eps1^x / [x+1]"""
    return theta * power(d.epsilon1, x) / d.number(x + 1)


def euler_pmf(d: DeformationSpec, params: EulerParams, method=Method.DIRECT,
              tol=AppConstants.DEFAULT_SERIES_TOL, max_terms=AppConstants.DEFAULT_MAX_TERMS) -> PmfTable:
    """Euler 分布概率表；direct 与 recursive 使用同一截断点"""
    method = as_method(method)
    _check_theta(d, params.theta)
    theta = params.theta
    first = exp_big_E(d, -theta, tol, max_terms)
    size, truncated = tail_length(first, lambda x: euler_ratio(d, theta, x), params.tail_tol, max_terms,
                                  f"euler({d.label}, θ={theta:g})")

    if method == Method.DIRECT:
        probs = [first * power(d.epsilon1, choose2(x)) * theta ** x / factorial(d, x) for x in range(size)]
    else:
        probs = [first]
        for x in range(size - 1):
            probs.append(probs[-1] * euler_ratio(d, theta, x))
    table = PmfTable.build(Family.EULER, d, params, probs, method, truncated)
    logger.debug(f"{d.label}: Euler 分布 θ={theta}, 支撑 0..{size - 1}, "
                 f"归一化残差 {table.normalization_residual:.3e}")
    return table


def euler_factorial_moment(d: DeformationSpec, params: EulerParams, j,
                           tol=AppConstants.DEFAULT_SERIES_TOL,
                           max_terms=AppConstants.DEFAULT_MAX_TERMS) -> float:
    """θ^j eps1^C(j,2) E(-θ) e(eps1^j θ)"""
    theta = params.theta
    _check_theta(d, theta)
    return (theta ** j * power(d.epsilon1, choose2(j)) * exp_big_E(d, -theta, tol, max_terms)
            * exp_small_e(d, power(d.epsilon1, j) * theta, tol, max_terms))


def euler_classical_factorial_moment(d: DeformationSpec, params: EulerParams, i, tau=0,
                                     max_terms=AppConstants.DEFAULT_MAX_TERMS,
                                     tol=AppConstants.DEFAULT_SERIES_TOL) -> float:
    """E[(X)_i]，对 m >= i 的形变阶乘矩做截断换算"""
    def moment_of(m):
        return euler_factorial_moment(d, params, m, tol, max_terms)

    return classical_factorial_moment_series(d, moment_of, i, tau, tol)


def euler_moment_reports(d: DeformationSpec, params: EulerParams, orders, pmf: PmfTable = None,
                         tol=AppConstants.DEFAULT_SERIES_TOL, max_terms=AppConstants.DEFAULT_MAX_TERMS):
    if pmf is None:
        pmf = euler_pmf(d, params, tol=tol, max_terms=max_terms)
    return [
        MomentReport.compare(j, euler_factorial_moment(d, params, j, tol, max_terms),
                             pmf.expectation(lambda x, j=j: falling_factorial(d, x, j)))
        for j in orders
    ]
