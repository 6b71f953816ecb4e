"""
形变二项分布模块
P_k = [n k] p0^k (1 ⊖ p0)^(n-k)，k = 0..n
"""

import logging

from ..core.combinatorics import StirlingTable, classical_binomial_moment, classical_factorial_moment
from ..core.deformation import (DeformationSpec, binomial_coefficient, falling_factorial, power,
                                shifted_factorial_minus)
from ..core.errors import SingularRecursionError
from .tables import BinomialParams, Family, Method, MomentReport, PmfTable, as_method

logger = logging.getLogger(__name__)


def binomial_pmf(d: DeformationSpec, params: BinomialParams, method=Method.DIRECT) -> PmfTable:
    """
    二项分布概率表

    Args:
        method: direct 逐项求值；recursive 从 P_0 = (1 ⊖ p0)^n 出发按比值递推

    Raises:
        SingularRecursionError: 递推分母 eps1^(n-k-1) - eps2^(n-k-1) p0 为零
    """
    method = as_method(method)
    n, p0 = params.n, params.p0
    if method == Method.DIRECT:
        probs = [binomial_coefficient(d, n, k) * p0 ** k * shifted_factorial_minus(d, 1.0, p0, n - k)
                 for k in range(n + 1)]
    else:
        probs = [shifted_factorial_minus(d, 1.0, p0, n)]
        for k in range(n):
            denominator = power(d.epsilon1, n - k - 1) - power(d.epsilon2, n - k - 1) * p0
            if denominator == 0.0:
                raise SingularRecursionError(
                    f"{d.label}: 二项递推在 k={k} 处分母为零 (n={n}, p0={p0})")
            probs.append(probs[-1] * d.number(n - k) / d.number(k + 1) * p0 / denominator)
    table = PmfTable.build(Family.BINOMIAL, d, params, probs, method)
    logger.debug(f"{d.label}: 二项分布 n={n}, p0={p0}, 归一化残差 {table.normalization_residual:.3e}")
    return table


def binomial_factorial_moment(d: DeformationSpec, params: BinomialParams, j) -> float:
    """E[[S]_j] = [n]_j p0^j；j>n 时为 0"""
    return falling_factorial(d, params.n, j) * params.p0 ** j


def binomial_classical_factorial_moment(d: DeformationSpec, params: BinomialParams, i, tau=0,
                                        stirling: StirlingTable = None) -> float:
    """E[(S)_i]，由 [n]_m p0^m (m = i..n) 换算"""
    if i > params.n:
        return 0.0
    moments = [binomial_factorial_moment(d, params, m) for m in range(params.n + 1)]
    return classical_factorial_moment(d, moments, i, tau, stirling)


def binomial_classical_binomial_moment(d: DeformationSpec, params: BinomialParams, j, tau=0,
                                       stirling: StirlingTable = None) -> float:
    """E[C(S, j)]，由 E[[S m]] = [n m] p0^m 换算"""
    if j > params.n:
        return 0.0
    moments = [binomial_coefficient(d, params.n, m) * params.p0 ** m for m in range(params.n + 1)]
    return classical_binomial_moment(d, moments, j, tau, stirling)


def binomial_mean(d: DeformationSpec, params: BinomialParams) -> float:
    """p0 [n]"""
    return params.p0 * d.number(params.n)


def variance_factor(d: DeformationSpec) -> float:
    """X = ([2] - [1]) / [1]"""
    c = d.structure_constant
    return (d.number(2) - c) / c


def binomial_variance(d: DeformationSpec, params: BinomialParams) -> float:
    """p0 [n] ([1] + X p0 [n-1] - p0 [n])"""
    n, p0 = params.n, params.p0
    return p0 * d.number(n) * (d.structure_constant + variance_factor(d) * p0 * d.number(n - 1)
                               - p0 * d.number(n))


def binomial_variance_condition(d: DeformationSpec, params: BinomialParams) -> bool:
    """X p0 [n-1] > p0 [n] - [1]，只记录不强制"""
    n, p0 = params.n, params.p0
    return variance_factor(d) * p0 * d.number(n - 1) > p0 * d.number(n) - d.structure_constant


def binomial_product_moment(d: DeformationSpec, params: BinomialParams, r,
                            pmf: PmfTable = None) -> MomentReport:
    """
    乘积矩

    闭式 p0^r prod_{i<r} [n-i]；暴力侧对概率表求 E[prod_{i<r} eps2^-i ([S] - eps1^(r-i) [i])]
    """
    if pmf is None:
        pmf = binomial_pmf(d, params)
    closed = params.p0 ** r * falling_factorial(d, params.n, r)

    def bracket(k):
        value = 1.0
        for i in range(r):
            value *= power(d.epsilon2, -i) * (d.number(k) - power(d.epsilon1, r - i) * d.number(i))
        return value

    return MomentReport.compare(r, closed, pmf.expectation(bracket), name='product_moment')


def binomial_moment_reports(d: DeformationSpec, params: BinomialParams, orders,
                            pmf: PmfTable = None):
    """各阶形变阶乘矩与均值、方差的闭式/暴力比较"""
    if pmf is None:
        pmf = binomial_pmf(d, params)
    reports = [
        MomentReport.compare(j, binomial_factorial_moment(d, params, j),
                             pmf.expectation(lambda k, j=j: falling_factorial(d, k, j)))
        for j in orders
    ]
    mean = pmf.expectation(d.number)
    second = pmf.expectation(lambda k: d.number(k) ** 2)
    reports.append(MomentReport.compare(1, binomial_mean(d, params), mean, name='mean'))
    reports.append(MomentReport.compare(2, binomial_variance(d, params), second - mean ** 2,
                                        name='variance'))
    return reports


__all__ = [
    'binomial_pmf',
    'binomial_factorial_moment',
    'binomial_classical_factorial_moment',
    'binomial_classical_binomial_moment',
    'binomial_mean',
    'binomial_variance',
    'binomial_variance_condition',
    'binomial_product_moment',
    'binomial_moment_reports',
    'variance_factor',
]
