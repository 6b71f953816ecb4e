"""
广义 Quesne 形变的专门公式
直接用 p、q 与 Quesne 数 [n]^Q = (p^n - q^-n)/(q - p^-1) 写出各分布的概率、递推比与矩，
与通用引擎在桥接形变 [n]_{p,1/q} = (q/p)[n]^Q 上的结果一致
"""

import logging
import math
from typing import Callable, List

from ..core.combinatorics import StirlingKind, stirling_table
from ..core.deformation import DeformationKind, DeformationSpec, choose2, power
from ..core.errors import DomainError
from ..core.special_functions import exp_big_E, exp_small_e
from .tables import BinomialParams, EulerParams, InversePolyaParams, PolyaParams


def quesne_number(p, q, t) -> float:
    """(p^t - q^-t) / (q - p^-1)"""
    return (power(p, t) - power(q, -t)) / (q - 1.0 / p)


def _falling(number: Callable[[float], float], x, j) -> float:
    value = 1.0
    for v in range(j):
        value *= number(x - v)
    return value


def _binomial(number: Callable[[float], float], x, k) -> float:
    return _falling(number, x, k) / _falling(number, k, k)


class QuesneRemarks:
    """
    广义 Quesne 形变下各分布的显式公式
    """

    def __init__(self, d: DeformationSpec):
        if d.kind != DeformationKind.GENERALIZED_QUESNE:
            raise DomainError(f"只对 generalized-quesne 定义，收到 {d.kind.value}")
        self.deformation = d
        self.p = d.p
        self.q = d.q
        self.logger = logging.getLogger(__name__)

    def number(self, t) -> float:
        return quesne_number(self.p, self.q, t)

    @property
    def ratio(self) -> float:
        """q/p"""
        return self.q / self.p

    def _polya_number(self, x_step) -> Callable[[float], float]:
        """基变换参数 (p^-x, q^-x) 下的 Quesne 数"""
        pp, qq = power(self.p, -x_step), power(self.q, -x_step)
        return lambda t: quesne_number(pp, qq, t)

    def _polya_scale(self, x_step) -> float:
        """(q/p)^-x"""
        return power(self.ratio, -x_step)

    # ------------------------------------------------------------------
    # 二项分布
    # ------------------------------------------------------------------

    def binomial_pmf(self, params: BinomialParams) -> List[float]:
        p, q = self.p, self.q
        n, p0 = params.n, params.p0
        probs = []
        for k in range(n + 1):
            failure = 1.0
            for i in range(n - k):
                failure *= power(p, i) - p0 * power(q, -i)
            probs.append(_binomial(self.number, n, k) * p0 ** k * failure)
        return probs

    def binomial_factorial_moment(self, params: BinomialParams, j) -> float:
        return self.ratio ** j * _falling(self.number, params.n, j) * params.p0 ** j

    def binomial_mean(self, params: BinomialParams) -> float:
        """p0 (q/p) (p^n - q^-n)/(q - p^-1)"""
        return params.p0 * self.ratio * self.number(params.n)

    def variance_factor(self) -> float:
        """p + 1/q - 1"""
        return self.p + 1.0 / self.q - 1.0

    def binomial_variance(self, params: BinomialParams) -> float:
        n, p0 = params.n, params.p0
        current = self.ratio * self.number(n)
        previous = self.ratio * self.number(n - 1)
        return p0 * current * (1.0 + self.variance_factor() * p0 * previous - p0 * current)

    def binomial_product_moment(self, params: BinomialParams, r) -> float:
        return params.p0 ** r * self.ratio ** r * _falling(self.number, params.n, r)

    def binomial_classical_factorial_moment(self, params: BinomialParams, i, tau=0) -> float:
        """Stirling 数取自同一 (p,q) 的广义 Quesne 表"""
        n, p0 = params.n, params.p0
        if i > n:
            return 0.0
        p, q = self.p, self.q
        table = stirling_table(self.deformation, StirlingKind.FIRST, 0, n)
        total = 0.0
        for m in range(i, n + 1):
            total += ((-1) ** (m - i) * (p - 1.0 / q) ** (m - i) * power(p, choose2(m) - tau * (m - i))
                      * self.ratio ** (m - i) * table.entry(m, i)
                      * _binomial(self.number, n, m) * p0 ** m)
        return math.factorial(i) * total

    # ------------------------------------------------------------------
    # Euler 分布
    # ------------------------------------------------------------------

    def _big_e(self, z) -> float:
        return exp_big_E(self.deformation, z)

    def _small_e(self, z) -> float:
        return exp_small_e(self.deformation, z)

    def euler_pmf(self, params: EulerParams, size) -> List[float]:
        """E^Q(-pθ/q) θ^x p^C(x,2) (p/q)^x / [x]^Q!"""
        p, theta = self.p, params.theta
        head = self._big_e(-theta / self.ratio)
        return [head * theta ** x * power(p, choose2(x)) * self.ratio ** (-x) / _falling(self.number, x, x)
                for x in range(size)]

    def euler_ratio(self, params: EulerParams, x) -> float:
        """θ p^(x+1) / (q [x+1]^Q)"""
        return params.theta * power(self.p, x + 1) / (self.q * self.number(x + 1))

    def euler_factorial_moment(self, params: EulerParams, j) -> float:
        p, theta = self.p, params.theta
        return (theta ** j * power(p, choose2(j)) * self._big_e(-theta / self.ratio)
                * self._small_e(power(p, j) * theta / self.ratio))

    # ------------------------------------------------------------------
    # Pólya 分布
    # ------------------------------------------------------------------

    def polya_pmf(self, params: PolyaParams) -> List[float]:
        n, m, u, x = params.n, params.m, params.u, params.x_step
        number = self._polya_number(x)
        total = _falling(number, m + u, n)
        return [power(self.p, -x * k * (u - n + k)) * power(self.q, x * (n - k) * (m - k))
                * _binomial(number, n, k) * _falling(number, m, k) * _falling(number, u, n - k) / total
                for k in range(n + 1)]

    def polya_ratio(self, params: PolyaParams, k) -> float:
        n, m, u, x = params.n, params.m, params.u, params.x_step
        number = self._polya_number(x)
        return (power(self.p, -x * (u - n + 2 * k + 1)) * power(self.q, -x * (n + m - 2 * k - 1))
                * number(n - k) * number(m - k) / (number(u - n + k + 1) * number(k + 1)))

    def polya_factorial_moment(self, params: PolyaParams, j) -> float:
        number = self._polya_number(params.x_step)
        return (self._polya_scale(params.x_step) ** j * _falling(number, params.n, j)
                * _falling(number, params.m, j) / _falling(number, params.m + params.u, j))

    # ------------------------------------------------------------------
    # 逆 Pólya 分布
    # ------------------------------------------------------------------

    def inverse_polya_pmf(self, params: InversePolyaParams, size) -> List[float]:
        n, m, u, x = params.n, params.m, params.u, params.x_step
        number = self._polya_number(x)
        return [power(self.p, n * (u - x)) * power(self.q, x * y * (m - n + 1))
                * _binomial(number, n + y - 1, y) * _falling(number, m, n) * _falling(number, u, y)
                / _falling(number, m + u, n + y)
                for y in range(size)]

    def inverse_polya_ratio(self, params: InversePolyaParams, y) -> float:
        n, m, u, x = params.n, params.m, params.u, params.x_step
        number = self._polya_number(x)
        return (power(self.q, x * (m - n + 1)) * number(n + y) * number(u - y)
                / (number(y + 1) * number(m + u - n - y)))

    def inverse_polya_factorial_moment(self, params: InversePolyaParams, j) -> float:
        n, m, u, x = params.n, params.m, params.u, params.x_step
        number = self._polya_number(x)
        return (power(self.q, j * x * (m - n + 1)) * self._polya_scale(x) ** j
                * _falling(number, n + j - 1, j) * _falling(number, u, j) / _falling(number, m + j, j))
