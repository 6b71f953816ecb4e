"""
组合恒等式模块
Euler 展开、Vandermonde 公式及其负阶形式、倒数阶乘级数、非中心 Stirling 数，
以及形变矩到经典矩的换算
"""

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial as NumpyPolynomial

from ..config.settings import AppConstants
from .deformation import (DeformationSpec, binomial_coefficient, choose2, factorial,
                          falling_factorial, power, shifted_factorial_minus)
from .errors import (ConditioningError, ConvergenceError, DegenerateBasisError,
                     DependencyError, DomainError, SingularInputError)
from .series import accumulate, sum_ratio_series

logger = logging.getLogger(__name__)


class Variant(str, Enum):
    """两种等价写法"""

    A = 'A'
    B = 'B'


def _variant(variant) -> Variant:
    try:
        return Variant(variant)
    except ValueError:
        raise DomainError(f"variant 必须是 A 或 B，收到 {variant!r}")


def euler_expansion(d: DeformationSpec, x, y, n) -> float:
    """sum_k [n k] eps1^C(n-k,2) eps2^C(k,2) x^(n-k) y^k"""
    if n < 0:
        raise DomainError(f"n 必须非负，收到 {n}")
    total = 0.0
    for k in range(n + 1):
        total += (binomial_coefficient(d, n, k)
                  * power(d.epsilon1, choose2(n - k)) * power(d.epsilon2, choose2(k))
                  * x ** (n - k) * y ** k)
    return total


def vandermonde_terms(d: DeformationSpec, u, v, n, variant=Variant.A) -> List[float]:
    """[u+v]_n 有限展开的各项，variant A/B 对应两种指数分配"""
    variant = _variant(variant)
    if n < 1:
        raise DomainError(f"n 必须为正整数，收到 {n}")
    e1, e2 = d.epsilon1, d.epsilon2
    terms = []
    for k in range(n + 1):
        if variant == Variant.A:
            weight = power(e1, k * (v - n + k)) * power(e2, (n - k) * (u - k))
        else:
            weight = power(e1, (n - k) * (u - k)) * power(e2, k * (v - n + k))
        terms.append(binomial_coefficient(d, n, k) * weight
                     * falling_factorial(d, u, k) * falling_factorial(d, v, n - k))
    return terms


def vandermonde(d: DeformationSpec, u, v, n, variant=Variant.A) -> float:
    """[u+v]_n 的有限展开"""
    return math.fsum(vandermonde_terms(d, u, v, n, variant))


def _nonzero(value, message):
    if value == 0.0:
        raise SingularInputError(message)
    return value


def _terminates(u) -> bool:
    """u 为非负整数时 [u-k] 在 k=u 处为零，级数有限"""
    return u >= 0 and float(u).is_integer()


def _require_orientation(d: DeformationSpec, u, variant: Variant, label):
    """
    非终止级数的每种写法只在一侧收敛到所求值：
    eps2/eps1 < 1 用 B 式，eps2/eps1 > 1 用 A 式；另一侧的和是别的数
    """
    if _terminates(u) or not d.is_matched:
        return
    valid = Variant.B if d.epsilon2 < d.epsilon1 else Variant.A
    if variant != valid:
        raise ConvergenceError(
            f"{label}: u={u} 时级数不终止，eps2/eps1={d.epsilon2 / d.epsilon1:g} 下只有 {valid.value} 式收敛到所求值",
            0, None)


def negative_vandermonde(d: DeformationSpec, u, v, n, max_terms=AppConstants.DEFAULT_MAX_TERMS,
                         tol=AppConstants.DEFAULT_SERIES_TOL, variant=Variant.A) -> float:
    """
    [u+v]_{-n} 的无穷级数展开

    项按比值递推；[u-k] 为零时级数在该处截止

    Raises:
        ConvergenceError: 未在 max_terms 项内收敛，或非终止级数选了不成立的一侧写法
    """
    variant = _variant(variant)
    if n < 1:
        raise DomainError(f"n 必须为正整数，收到 {n}")
    label = f"negative_vandermonde[{variant.value}]({d.label}, u={u}, v={v}, n={n})"
    _require_orientation(d, u, variant, label)
    e1, e2 = d.epsilon1, d.epsilon2
    head = falling_factorial(d, v, -n)
    if variant == Variant.A:
        first = power(e2, -n * u) * head
    else:
        first = power(e1, -n * u) * head

    def ratio(k):
        factor = d.number(u - k)
        if factor == 0.0:
            return 0.0
        shift = n + 2 * k + 1
        if variant == Variant.A:
            weight = power(e1, v + shift) * power(e2, shift - u)
        else:
            weight = power(e1, shift - u) * power(e2, v + shift)
        tail = _nonzero(d.number(v + n + k + 1), f"{d.label}: [v+n+k+1] 为零 (k={k})")
        return d.number(-n - k) / d.number(k + 1) * weight * factor / tail

    return sum_ratio_series(first, ratio, tol, max_terms, label)


def reciprocal_factorial_series(d: DeformationSpec, u, v, n, max_terms=AppConstants.DEFAULT_MAX_TERMS,
                                tol=AppConstants.DEFAULT_SERIES_TOL, variant=Variant.A) -> float:
    """1/[v]_n 的无穷级数展开，收敛与写法的限制同 negative_vandermonde"""
    variant = _variant(variant)
    if n < 1:
        raise DomainError(f"n 必须为正整数，收到 {n}")
    label = f"reciprocal_factorial_series[{variant.value}]({d.label}, u={u}, v={v}, n={n})"
    _require_orientation(d, u, variant, label)
    e1, e2 = d.epsilon1, d.epsilon2
    head = _nonzero(falling_factorial(d, u + v, n), f"{d.label}: [u+v]_n 为零")
    if variant == Variant.A:
        first = power(e1, n * u) / head
    else:
        first = power(e2, n * u) / head

    def ratio(k):
        factor = d.number(u - k)
        if factor == 0.0:
            return 0.0
        if variant == Variant.A:
            weight = power(e1, -n) * power(e2, v - n + 1)
        else:
            weight = power(e1, v - n + 1) * power(e2, -n)
        tail = _nonzero(d.number(u + v - n - k), f"{d.label}: [u+v-n-k] 为零 (k={k})")
        return d.number(n + k) / d.number(k + 1) * weight * factor / tail

    return sum_ratio_series(first, ratio, tol, max_terms, label)


def negative_binomial_coefficient(d: DeformationSpec, n, k) -> float:
    """[-n k] 的闭式 (-1)^k (eps1 eps2)^(-nk-C(k,2)) [n+k-1 k]，匹配形变成立"""
    return ((-1) ** k * power(d.epsilon1 * d.epsilon2, -n * k - choose2(k))
            * binomial_coefficient(d, n + k - 1, k))


def binomial_lemma_sides(d: DeformationSpec, x, y, v, n) -> Tuple[float, float]:
    """
    对称恒等式的两侧
    sum [n k] x^k (y ⊖ v)^(n-k) 与 sum [n k] y^k (x ⊖ v)^(n-k)
    """
    left = sum(binomial_coefficient(d, n, k) * x ** k * shifted_factorial_minus(d, y, v, n - k)
               for k in range(n + 1))
    right = sum(binomial_coefficient(d, n, k) * y ** k * shifted_factorial_minus(d, x, v, n - k)
                for k in range(n + 1))
    return left, right


# ----------------------------------------------------------------------
# 非中心 Stirling 数
# ----------------------------------------------------------------------

class StirlingKind(str, Enum):
    FIRST = 'first'
    SECOND = 'second'


@dataclass(frozen=True)
class StirlingTable:
    """
    非中心 Stirling 数三角表
    entries[n][k] 对 k>n 为 0
    """

    kind: StirlingKind
    j_offset: int
    n_max: int
    entries: Tuple[Tuple[float, ...], ...]
    deformation: DeformationSpec
    condition: float = 1.0

    def entry(self, n, k) -> float:
        if not 0 <= n <= self.n_max:
            raise DependencyError(f"Stirling 表只到 n={self.n_max}，请求 n={n}")
        if k < 0 or k > n:
            return 0.0
        return self.entries[n][k]

    def row(self, n) -> Tuple[float, ...]:
        return tuple(self.entry(n, k) for k in range(n + 1))

    def scale(self, n) -> float:
        """first: eps2^(C(n,2)+jn)；second 按列 eps2^(C(k,2)+jk)"""
        return power(self.deformation.epsilon2, choose2(n) + self.j_offset * n)

    def reconstruct(self, x, n) -> Tuple[float, float]:
        """
        代入定义式

        Returns:
            (左侧值, 右侧值)，first 为 ([x-j]_n, 展开)，second 为 ([x]^n, 展开)
        """
        d = self.deformation
        t = d.number(x)
        if self.kind == StirlingKind.FIRST:
            expansion = sum(self.entry(n, k) * t ** k for k in range(n + 1)) / self.scale(n)
            return falling_factorial(d, x - self.j_offset, n), expansion
        expansion = sum(self.scale(k) * self.entry(n, k) * falling_factorial(d, x - self.j_offset, k)
                        for k in range(n + 1))
        return t ** n, expansion

    def to_dict(self) -> Dict:
        return {
            'kind': self.kind.value,
            'j': self.j_offset,
            'n_max': self.n_max,
            'deformation': self.deformation.descriptor(),
            'entries': [list(self.row(n)) for n in range(self.n_max + 1)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def _check_nodes(d: DeformationSpec, nodes: np.ndarray, j):
    for a in range(len(nodes)):
        for b in range(a):
            gap = abs(nodes[a] - nodes[b])
            if gap <= 1e-14 * max(1.0, abs(nodes[a]), abs(nodes[b])):
                raise DegenerateBasisError(
                    f"{d.label}: 采样点 x={j + b} 与 x={j + a} 的形变数重合 ({nodes[a]})")


def _condition_of(matrix: np.ndarray) -> float:
    """单位对角化后的条件数"""
    diagonal = np.diag(matrix).copy()
    if np.any(diagonal == 0.0):
        return np.inf
    return float(np.linalg.cond(matrix / diagonal[np.newaxis, :]))


def _forward_substitution(lower: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    size = len(rhs)
    solution = np.zeros(size)
    for i in range(size):
        solution[i] = (rhs[i] - lower[i, :i] @ solution[:i]) / lower[i, i]
    return solution


def _newton_to_power(nodes: np.ndarray, values: np.ndarray) -> np.ndarray:
    """差商得到 Newton 系数，再展开为幂基系数"""
    size = len(values)
    coefficients = values.astype(float).copy()
    for level in range(1, size):
        for i in range(size - 1, level - 1, -1):
            coefficients[i] = (coefficients[i] - coefficients[i - 1]) / (nodes[i] - nodes[i - level])
    expanded = NumpyPolynomial([coefficients[-1]])
    for k in range(size - 2, -1, -1):
        expanded = expanded * NumpyPolynomial([-nodes[k], 1.0]) + coefficients[k]
    result = np.zeros(size)
    result[:len(expanded.coef)] = expanded.coef[:size]
    return result


def stirling_table(d: DeformationSpec, kind, j, n_max) -> StirlingTable:
    """
    在采样点 x = j, j+1, ..., j+n 处建立三角方程组求非中心 Stirling 数

    first: 以 [x] 的幂为基的插值（Newton 形式后展开）
    second: 以 [x-j]_k 为基的下三角方程组，前代求解
    """
    try:
        kind = StirlingKind(kind)
    except ValueError:
        raise DomainError(f"Stirling 种类必须是 first 或 second，收到 {kind!r}")
    if not 0 <= n_max <= AppConstants.STIRLING_N_MAX:
        raise DomainError(f"n_max 必须在 0..{AppConstants.STIRLING_N_MAX} 之间，收到 {n_max}")

    nodes = np.array([d.number(j + i) for i in range(n_max + 1)])
    _check_nodes(d, nodes, j)

    basis = np.array([[falling_factorial(d, i, k) for k in range(n_max + 1)]
                      for i in range(n_max + 1)])
    if kind == StirlingKind.FIRST:
        newton = np.array([[np.prod(nodes[i] - nodes[:k]) if k <= i else 0.0
                            for k in range(n_max + 1)] for i in range(n_max + 1)])
        condition = _condition_of(newton)
    else:
        condition = _condition_of(basis)
    logger.debug(f"{d.label}: {kind.value} 类 Stirling 方程组条件数 {condition:.3e}")
    if not condition <= AppConstants.CONDITION_LIMIT:
        raise ConditioningError(
            f"{d.label}: {kind.value} 类 Stirling 方程组条件数 {condition:.3e} 超过 "
            f"{AppConstants.CONDITION_LIMIT:.0e}", condition)

    e2 = d.epsilon2
    rows: List[Tuple[float, ...]] = []
    for n in range(n_max + 1):
        if kind == StirlingKind.FIRST:
            values = basis[:n + 1, n]
            coefficients = _newton_to_power(nodes[:n + 1], values)
            row = coefficients * power(e2, choose2(n) + j * n)
        else:
            solution = _forward_substitution(basis[:n + 1, :n + 1], nodes[:n + 1] ** n)
            row = np.array([solution[k] / power(e2, choose2(k) + j * k) for k in range(n + 1)])
        rows.append(tuple(float(value) for value in row) + (0.0,) * (n_max - n))

    return StirlingTable(kind, j, n_max, tuple(rows), d, condition)


def conditioned_stirling_table(d: DeformationSpec, kind, j, n_max) -> StirlingTable:
    """
    不超过 n_max、条件数在上限内的最大 Stirling 表
    形变数随 x 指数增长时（如 q 较小的 Quesne 形变）高阶方程组条件数过大，逐阶降低
    """
    for size in range(n_max, 0, -1):
        try:
            table = stirling_table(d, kind, j, size)
        except ConditioningError as e:
            logger.debug(f"{d.label}: n_max={size} 时 {e}")
            continue
        if size < n_max:
            logger.info(f"{d.label}: {StirlingKind(kind).value} 类 Stirling 表 n_max 由 {n_max} 降为 {size}")
        return table
    return stirling_table(d, kind, j, 0)


def fresh_points(kind, j, n, count=20) -> List[float]:
    """
    检验用的新采样点
    first 取 x<j 使 [x] 与节点异号，second 取 x>j+n
    """
    if StirlingKind(kind) == StirlingKind.FIRST:
        return [j - 0.25 - 0.35 * k for k in range(count)]
    return [j + n + 0.5 + 0.3 * k for k in range(count)]


def stirling_residual(table: StirlingTable, n, xs: Sequence[float]) -> float:
    """定义式在各点的最大相对残差"""
    worst = 0.0
    for x in xs:
        lhs, rhs = table.reconstruct(x, n)
        worst = max(worst, abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs))))
    return worst


def exact_arik_coon_stirling_first(q: Fraction, n_max) -> List[List[Fraction]]:
    """
    Arik-Coon 第一类 Stirling 数的精确有理值
    [x]_n = q^-C(n,2) prod_{v<n} ([x] - [v])，系数即 s(n,k)
    """
    q = Fraction(q)
    row = [Fraction(1)]
    rows = [list(row)]
    for n in range(n_max):
        bracket = (1 - q ** n) / (1 - q)
        shifted = [Fraction(0)] + row
        scaled = [bracket * c for c in row] + [Fraction(0)]
        row = [a - b for a, b in zip(shifted, scaled)]
        rows.append(list(row))
    return rows


# ----------------------------------------------------------------------
# 形变矩到经典矩的换算
# ----------------------------------------------------------------------

MomentSource = Union[Sequence[Optional[float]], Mapping[int, float], Callable[[int], float]]


def _resolve_table(d: DeformationSpec, last, stirling: Optional[StirlingTable]) -> StirlingTable:
    if stirling is None:
        if last > AppConstants.STIRLING_N_MAX:
            raise DependencyError(f"需要 n={last} 的 Stirling 数，超过上限 {AppConstants.STIRLING_N_MAX}")
        return stirling_table(d, StirlingKind.FIRST, 0, last)
    if stirling.kind != StirlingKind.FIRST or stirling.j_offset != 0:
        raise DependencyError("换算需要 j=0 的第一类 Stirling 表")
    if stirling.n_max < last:
        raise DependencyError(f"Stirling 表只到 n={stirling.n_max}，需要 n={last}")
    if stirling.deformation != d:
        raise DependencyError("Stirling 表的形变与给定形变不一致")
    return stirling


def _moment_lookup(moments: MomentSource, j) -> Tuple[Callable[[int], float], Optional[int]]:
    if callable(moments):
        return moments, None
    if isinstance(moments, Mapping):
        present = {int(m): value for m, value in moments.items() if value is not None}
    else:
        present = {m: value for m, value in enumerate(moments) if value is not None}
    if not present:
        raise DependencyError("没有给出任何形变矩")
    last = max(present)
    for m in range(j, last + 1):
        if m not in present:
            raise DependencyError(f"缺少 m={m} 阶形变矩")
    return present.__getitem__, last


def _conversion_term(d: DeformationSpec, moment_of, j, tau, table: StirlingTable, m, weighted) -> float:
    e1, e2 = d.epsilon1, d.epsilon2
    term = ((-1) ** (m - j) * (e1 - e2) ** (m - j)
            * power(e1, choose2(m) - tau * (m - j))
            * table.entry(m, j) * moment_of(m))
    if weighted:
        term /= factorial(d, m)
    return term


def _conversion_terms(d: DeformationSpec, moment_of, j, tau, table: StirlingTable, last,
                      weighted) -> Iterator[float]:
    for m in range(j, last + 1):
        yield _conversion_term(d, moment_of, j, tau, table, m, weighted)


def classical_binomial_moment(d: DeformationSpec, deformed_binomial_moments: MomentSource, j,
                              tau=0, stirling: Optional[StirlingTable] = None) -> float:
    """E[C(X, j)]，由形变二项式矩 E[[X m]] 换算"""
    moment_of, last = _moment_lookup(deformed_binomial_moments, j)
    if last is None:
        raise DependencyError("有限换算需要给出矩的列表")
    if last < j:
        return 0.0
    table = _resolve_table(d, last, stirling)
    return float(sum(_conversion_terms(d, moment_of, j, tau, table, last, weighted=False)))


def classical_factorial_moment(d: DeformationSpec, deformed_factorial_moments: MomentSource, j,
                               tau=0, stirling: Optional[StirlingTable] = None) -> float:
    """E[(X)_j]，由形变阶乘矩 E[[X]_m] 换算"""
    moment_of, last = _moment_lookup(deformed_factorial_moments, j)
    if last is None:
        raise DependencyError("有限换算需要给出矩的列表")
    if last < j:
        return 0.0
    table = _resolve_table(d, last, stirling)
    terms = _conversion_terms(d, moment_of, j, tau, table, last, weighted=True)
    return math.factorial(j) * float(sum(terms))


def classical_factorial_moment_series(d: DeformationSpec, moment_of: Callable[[int], float], j,
                                      tau=0, tol=AppConstants.DEFAULT_SERIES_TOL,
                                      n_max=AppConstants.STIRLING_N_MAX) -> float:
    """
    无限支撑分布的换算
    逐阶累加直到停止准则成立；超过 Stirling 表上限仍未收敛则报错
    """
    def terms():
        table = None
        for m in range(j, n_max + 1):
            if table is None or m > table.n_max:
                # 按需扩表，小表的条件数更好
                table = _resolve_table(d, min(n_max, max(8, m + 4)), None)
            yield _conversion_term(d, moment_of, j, tau, table, m, weighted=True)
        raise ConvergenceError(f"{d.label}: 换算级数到 m={n_max} 仍未收敛")

    return math.factorial(j) * accumulate(terms(), tol, n_max + 1, f"classical_moment({d.label}, j={j})")
