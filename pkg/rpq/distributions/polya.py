"""
形变 Pólya 分布模块
Pólya、超几何与逆 Pólya 分布；所有括号在基变换后的形变 (p^-x, q^-x) 下计算
"""

import logging
from dataclasses import replace

from ..config.settings import AppConstants
from ..core.combinatorics import StirlingTable, classical_factorial_moment, classical_factorial_moment_series
from ..core.deformation import DeformationSpec, binomial_coefficient, falling_factorial, power
from ..core.errors import SingularParameterError, SingularRecursionError
from ..core.series import tail_length
from .tables import Family, InversePolyaParams, Method, MomentReport, PmfTable, PolyaParams, as_method

logger = logging.getLogger(__name__)


def _nonzero_parameter(value, message) -> float:
    if value == 0.0:
        raise SingularParameterError(message)
    return value


def _nonzero_recursion(value, message) -> float:
    if value == 0.0:
        raise SingularRecursionError(message)
    return value


# ----------------------------------------------------------------------
# Pólya 与超几何
# ----------------------------------------------------------------------

def polya_pmf(d: DeformationSpec, params: PolyaParams, method=Method.DIRECT) -> PmfTable:
    """
    Pólya 分布概率表，支撑 0..n

    P_k = eps1'^(k(u-n+k)) eps2'^((n-k)(m-k)) [n k]' [m]'_k [u]'_(n-k) / [m+u]'_n

    Raises:
        SingularParameterError: [m+u]'_n 为零
        SingularRecursionError: 递推分母为零
    """
    method = as_method(method)
    n, m, u = params.n, params.m, params.u
    base = d.base_changed(params.x_step)
    e1, e2 = base.epsilon1, base.epsilon2
    total = _nonzero_parameter(falling_factorial(base, m + u, n),
                               f"{d.label}: [m+u]_n 为零 (m={m}, u={u}, n={n})")

    if method == Method.DIRECT:
        probs = [power(e1, k * (u - n + k)) * power(e2, (n - k) * (m - k))
                 * binomial_coefficient(base, n, k) * falling_factorial(base, m, k)
                 * falling_factorial(base, u, n - k) / total
                 for k in range(n + 1)]
    else:
        probs = [power(e2, m * n) * falling_factorial(base, u, n) / total]
        for k in range(n):
            denominator = _nonzero_recursion(
                base.number(u - n + k + 1) * base.number(k + 1),
                f"{d.label}: Pólya 递推在 k={k} 处分母为零")
            probs.append(probs[-1] * power(e1, u - n + 2 * k + 1) * power(e2, -(n + m - 2 * k - 1))
                         * base.number(n - k) * base.number(m - k) / denominator)
    table = PmfTable.build(Family.POLYA, d, params, probs, method)
    logger.debug(f"{d.label}: Pólya 分布 {params}, 归一化残差 {table.normalization_residual:.3e}")
    return table


def hypergeometric_pmf(d: DeformationSpec, n, m, u, method=Method.DIRECT) -> PmfTable:
    """x = -1 的 Pólya 分布"""
    table = polya_pmf(d, PolyaParams(n=n, m=m, u=u, x_step=-1), method)
    return replace(table, family=Family.HYPERGEOMETRIC)


def polya_factorial_moment(d: DeformationSpec, params: PolyaParams, j) -> float:
    """[n]'_j [m]'_j / [m+u]'_j"""
    base = d.base_changed(params.x_step)
    denominator = _nonzero_parameter(falling_factorial(base, params.m + params.u, j),
                                     f"{d.label}: [m+u]_j 为零 (j={j})")
    return falling_factorial(base, params.n, j) * falling_factorial(base, params.m, j) / denominator


def polya_classical_factorial_moment(d: DeformationSpec, params: PolyaParams, i, tau=0,
                                     stirling: StirlingTable = None) -> float:
    """E[(T)_i]，在基变换后的形变上做换算"""
    if i > params.n:
        return 0.0
    base = d.base_changed(params.x_step)
    moments = [polya_factorial_moment(d, params, m) for m in range(params.n + 1)]
    return classical_factorial_moment(base, moments, i, tau, stirling)


def polya_moment_reports(d: DeformationSpec, params: PolyaParams, orders, pmf: PmfTable = None):
    if pmf is None:
        pmf = polya_pmf(d, params)
    base = d.base_changed(params.x_step)
    return [
        MomentReport.compare(j, polya_factorial_moment(d, params, j),
                             pmf.expectation(lambda k, j=j: falling_factorial(base, k, j)))
        for j in orders
    ]


# ----------------------------------------------------------------------
# 逆 Pólya
# ----------------------------------------------------------------------

def inverse_polya_ratio(d: DeformationSpec, params: InversePolyaParams, y) -> float:
    """P_{y+1}/P_y = eps2^(-x(m-n+1)) [n+y]' [u-y]' / ([y+1]' [m+u-n-y]')"""
    n, m, u, x = params.n, params.m, params.u, params.x_step
    base = d.base_changed(x)
    numerator = base.number(n + y) * base.number(u - y)
    # [u-y]' = 0 时支撑在 y 处结束
    if numerator == 0.0:
        return 0.0
    denominator = _nonzero_recursion(base.number(y + 1) * base.number(m + u - n - y),
                                     f"{d.label}: 逆 Pólya 递推在 y={y} 处分母为零")
    return power(d.epsilon2, -x * (m - n + 1)) * numerator / denominator


def _inverse_polya_direct(d: DeformationSpec, base: DeformationSpec, params: InversePolyaParams, y) -> float:
    n, m, u, x = params.n, params.m, params.u, params.x_step
    total = _nonzero_parameter(falling_factorial(base, m + u, n + y),
                               f"{d.label}: [m+u]_(n+y) 为零 (y={y})")
    return (power(d.epsilon1, n * (u - x)) * power(d.epsilon2, -y * x * (m - n + 1))
            * binomial_coefficient(base, n + y - 1, y) * falling_factorial(base, m, n)
            * falling_factorial(base, u, y) / total)


def inverse_polya_pmf(d: DeformationSpec, params: InversePolyaParams, method=Method.DIRECT,
                      max_terms=AppConstants.DEFAULT_MAX_TERMS) -> PmfTable:
    """
    逆 Pólya 分布概率表，支撑 y = 0, 1, 2, ...，按尾部界截断

    P_y = eps1^(n(u-x)) eps2^(-yx(m-n+1)) [n+y-1 y]' [m]'_n [u]'_y / [m+u]'_(n+y)
    """
    method = as_method(method)
    base = d.base_changed(params.x_step)
    first = _inverse_polya_direct(d, base, params, 0)
    size, truncated = tail_length(first, lambda y: inverse_polya_ratio(d, params, y), params.tail_tol,
                                  max_terms, f"inverse_polya({d.label})")
    if method == Method.DIRECT:
        probs = [_inverse_polya_direct(d, base, params, y) for y in range(size)]
    else:
        probs = [first]
        for y in range(size - 1):
            probs.append(probs[-1] * inverse_polya_ratio(d, params, y))
    table = PmfTable.build(Family.INVERSE_POLYA, d, params, probs, method, truncated)
    logger.debug(f"{d.label}: 逆 Pólya 分布 {params}, 支撑 0..{size - 1}, "
                 f"归一化残差 {table.normalization_residual:.3e}")
    return table


def inverse_polya_factorial_moment(d: DeformationSpec, params: InversePolyaParams, j) -> float:
    """[n+j-1]'_j [u]'_j / (eps2^(jx(m-n+1)) [m+j]'_j)"""
    n, m, u, x = params.n, params.m, params.u, params.x_step
    base = d.base_changed(x)
    denominator = _nonzero_parameter(falling_factorial(base, m + j, j),
                                     f"{d.label}: [m+j]_j 为零 (m={m}, j={j})")
    return (falling_factorial(base, n + j - 1, j) * falling_factorial(base, u, j)
            / (power(d.epsilon2, j * x * (m - n + 1)) * denominator))


def inverse_polya_classical_factorial_moment(d: DeformationSpec, params: InversePolyaParams, i, tau=0,
                                             tol=AppConstants.DEFAULT_SERIES_TOL) -> float:
    """E[(Y)_i]，基变换后的形变上做截断换算"""
    base = d.base_changed(params.x_step)

    def moment_of(m):
        return inverse_polya_factorial_moment(d, params, m)

    return classical_factorial_moment_series(base, moment_of, i, tau, tol)


def inverse_polya_moment_reports(d: DeformationSpec, params: InversePolyaParams, orders,
                                 pmf: PmfTable = None):
    if pmf is None:
        pmf = inverse_polya_pmf(d, params)
    base = d.base_changed(params.x_step)
    return [
        MomentReport.compare(j, inverse_polya_factorial_moment(d, params, j),
                             pmf.expectation(lambda y, j=j: falling_factorial(base, y, j)))
        for j in orders
    ]


# ----------------------------------------------------------------------
# 罐子模型
# ----------------------------------------------------------------------

def urn_draw_probability(d: DeformationSpec, i, j, m, u, x) -> float:
    """第 i 次抽取时第 j 个白球出现的概率 [m-j+1]' / [m+u-i+1]'"""
    base = d.base_changed(x)
    denominator = _nonzero_parameter(base.number(m + u - i + 1),
                                     f"{d.label}: [m+u-i+1] 为零 (i={i})")
    return base.number(m - j + 1) / denominator


def urn_draw_probability_counts(d: DeformationSpec, i, j, r, s, x) -> float:
    """同一概率的计数写法 [r+x(j-1)] / [r+s+x(i-1)]"""
    denominator = _nonzero_parameter(d.number(r + s + x * (i - 1)),
                                     f"{d.label}: [r+s+x(i-1)] 为零 (i={i})")
    return d.number(r + x * (j - 1)) / denominator
