"""
恒等式检查模块
每个审计套件一个检查函数，对单个参数点给出若干审计条目
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

import numpy as np

from ..config.settings import AppSettings
from ..core.combinatorics import (StirlingKind, Variant, binomial_lemma_sides, classical_binomial_moment,
                                  conditioned_stirling_table, euler_expansion, exact_arik_coon_stirling_first,
                                  fresh_points, negative_binomial_coefficient, negative_vandermonde,
                                  reciprocal_factorial_series, stirling_residual, stirling_table,
                                  vandermonde_terms)
from ..core.deformation import (DeformationKind, DeformationSpec, Polynomial, binomial_coefficient,
                                falling_factorial, multi_parameter_rescaled, polynomial_derivative, power,
                                quesne_bridge, shifted_factorial_plus)
from ..core.errors import RpqError
from ..core.special_functions import exp_big_E, exp_small_e
from ..distributions.binomial import (binomial_classical_binomial_moment, binomial_classical_factorial_moment,
                                      binomial_factorial_moment, binomial_mean, binomial_pmf,
                                      binomial_product_moment, binomial_variance, binomial_variance_condition)
from ..distributions.euler import (euler_classical_factorial_moment, euler_factorial_moment, euler_pmf,
                                   euler_ratio)
from ..distributions.polya import (hypergeometric_pmf, inverse_polya_classical_factorial_moment,
                                   inverse_polya_factorial_moment, inverse_polya_pmf, inverse_polya_ratio,
                                   polya_classical_factorial_moment, polya_factorial_moment, polya_pmf,
                                   urn_draw_probability, urn_draw_probability_counts)
from ..distributions.quesne import QuesneRemarks
from ..distributions.sampling import empirical_mean, sample
from ..distributions.tables import (BinomialParams, EulerParams, InversePolyaParams, Method, PmfTable,
                                    PolyaParams)
from .report import AuditEntry, AuditStatus, residual

logger = logging.getLogger(__name__)

# 各类恒等式的容差
TOLERANCES = {
    'vandermonde': 1e-8,
    'series': 1e-8,
    'stirling': 1e-7,
    'stirling_exact': 1e-9,
    'exponential': 1e-8,
    'normalization_exact': 1e-9,
    'normalization_truncated': 1e-6,
    'recursion': 1e-10,
    'moment': 1e-7,
    'moment_truncated': 1e-5,
    'mean_variance': 1e-8,
    'conversion': 1e-7,
    'quesne': 1e-9,
    'bridge': 1e-10,
    'classical_limit': 1e-3,
    'classical_number': 1e-4,
}

HALF_STEP_GRID = tuple(-2.0 + 0.5 * k for k in range(13))
VANDERMONDE_GRID = tuple(-1.0 + 0.5 * k for k in range(11))

POLYA_CASES = (
    PolyaParams(n=2, m=2.0, u=2.0, x_step=-1),
    PolyaParams(n=3, m=2.5, u=3.5, x_step=-1),
    PolyaParams.from_urn(n=3, r=2, s=3, x=1),
)
# u 为非负整数时支撑有限；非整数 u 的无穷尾部依赖非终止级数，不作断言
INVERSE_POLYA_CASES = (
    InversePolyaParams(n=1, m=1.0, u=1.0, x_step=-1),
    InversePolyaParams(n=2, m=2.3, u=2.0, x_step=-1),
)
BINOMIAL_CASES = (
    BinomialParams(n=1, p0=0.4),
    BinomialParams(n=2, p0=0.5),
    BinomialParams(n=5, p0=0.3),
)
EULER_CASE = EulerParams(theta=0.5)
EULER_CONVERSION_CASE = EulerParams(theta=0.1)


@dataclass(frozen=True)
class PointFailure:
    """单个参数点求值失败；同一检查的其他点照常计入"""

    point: Tuple
    error: Exception

    def describe(self) -> str:
        return f"{self.point}: {type(self.error).__name__}: {self.error}"


def each_point(points: Iterable[Tuple], evaluate: Callable):
    """
    逐点求值

    Yields:
        evaluate(*point) 的结果；该点抛出 rpq 异常时产生 PointFailure
    """
    for point in points:
        try:
            pair = evaluate(*point)
        except (RpqError, ArithmeticError) as e:
            yield PointFailure(tuple(point), e)
            continue
        yield pair


class SuiteContext:
    """
    单个套件在单个参数点上的检查上下文
    收集审计条目；求值时出现的 rpq 异常转为 reported 条目
    """

    def __init__(self, suite, point_name, deformation: DeformationSpec, settings: AppSettings = None):
        self.suite = suite
        self.point = point_name
        self.deformation = deformation
        self.settings = settings or AppSettings()
        self.entries: List[AuditEntry] = []
        self.logger = logging.getLogger(__name__)

    @property
    def series(self) -> Dict:
        return self.settings.get_series_settings()

    def _entry(self, identity_id, max_residual, tolerance, status, samples=0, message='', parameters=None):
        entry = AuditEntry(
            identity_id=identity_id,
            suite=self.suite,
            point=self.point,
            kind=self.deformation.kind.value,
            max_residual=None if max_residual is None else float(max_residual),
            tolerance=float(tolerance),
            status=status,
            samples=samples,
            message=message,
            parameters=dict(parameters or {}),
        )
        self.entries.append(entry)
        return entry

    def check(self, identity_id, evaluate: Callable[[], Iterable], tolerance=None, applies=True,
              note='', parameters=None) -> AuditEntry:
        """
        计算最大残差并判定

        Args:
            evaluate: 无参函数，产生 (lhs, rhs)、(lhs, rhs, scale) 或 PointFailure
            applies: 恒等式对该形变是否成立；不成立时只报告

        单点失败只记入消息，判定依据其余点的残差；求值中途抛出异常时
        保留已得残差，条目为 reported
        """
        if tolerance is None:
            tolerance = self.settings.get('tolerance')
        worst = 0.0
        count = 0
        failures: List[PointFailure] = []
        try:
            for pair in evaluate():
                if isinstance(pair, PointFailure):
                    failures.append(pair)
                    continue
                value = residual(*pair)
                count += 1
                if not np.isfinite(value):
                    worst = float('inf')
                elif value > worst:
                    worst = value
        except (RpqError, ArithmeticError) as e:
            self.logger.debug(f"{self.point} {identity_id}: {type(e).__name__}: {e}")
            return self._entry(identity_id, worst if count else None, tolerance, AuditStatus.REPORTED, count,
                               f"{type(e).__name__}: {e}", parameters)

        skipped = '; '.join(failure.describe() for failure in failures)
        if failures:
            self.logger.debug(f"{self.point} {identity_id}: {len(failures)} 个参数点求值失败: {skipped}")
        if count == 0 and failures:
            return self._entry(identity_id, None, tolerance, AuditStatus.REPORTED, 0, skipped, parameters)
        if not applies:
            message = note or 'not asserted for this deformation'
            return self._entry(identity_id, worst, tolerance, AuditStatus.REPORTED, count,
                               f"{message}; {skipped}" if skipped else message, parameters)
        status = AuditStatus.PASS if worst <= tolerance else AuditStatus.FAIL
        if status == AuditStatus.FAIL:
            self.logger.warning(f"{self.point} {identity_id}: 残差 {worst:.3e} 超过 {tolerance:.0e}")
        return self._entry(identity_id, worst, tolerance, status, count, skipped, parameters)

    def check_bound(self, identity_id, evaluate: Callable[[], float], bound, parameters=None) -> AuditEntry:
        """统计量不超过界即通过，如以标准误为单位的偏差"""
        try:
            value = float(evaluate())
        except (RpqError, ArithmeticError) as e:
            return self._entry(identity_id, None, bound, AuditStatus.REPORTED, 0,
                               f"{type(e).__name__}: {e}", parameters)
        status = AuditStatus.PASS if value <= bound else AuditStatus.FAIL
        return self._entry(identity_id, value, bound, status, 1, '', parameters)

    def report(self, identity_id, message, value=None, tolerance=0.0, parameters=None) -> AuditEntry:
        """只记录、不判定的条件项"""
        return self._entry(identity_id, value, tolerance, AuditStatus.REPORTED, 1, message, parameters)

    def out_of_range(self, table: PmfTable, label):
        if table.out_of_range:
            self.report(f"{label}.out_of_range",
                        f"probabilities outside [-1e-9, 1+1e-9] at k={list(table.out_of_range)}",
                        parameters=table.params.to_dict())


# ----------------------------------------------------------------------
# structural
# ----------------------------------------------------------------------

def check_structural(ctx: SuiteContext):
    d = ctx.deformation
    e1, e2 = d.epsilon1, d.epsilon2
    matched = d.is_matched
    note = 'closed form is not c(eps1^x - eps2^x)/(eps1 - eps2)'

    def subtraction_law():
        for x in HALF_STEP_GRID:
            for y in HALF_STEP_GRID:
                first = power(e1, -y) * d.number(x)
                second = power(e1, -y) * power(e2, x - y) * d.number(y)
                yield d.number(x - y), first - second, max(abs(first), abs(second))

    def addition_law(swapped):
        for a in HALF_STEP_GRID:
            for b in HALF_STEP_GRID:
                if swapped:
                    first, second = power(e1, a) * d.number(b), power(e2, b) * d.number(a)
                else:
                    first, second = power(e1, b) * d.number(a), power(e2, a) * d.number(b)
                yield d.number(a + b), first + second, max(abs(first), abs(second))

    def reflection():
        for y in HALF_STEP_GRID:
            yield d.number(-y), -power(e1 * e2, -y) * d.number(y)

    def pascal():
        for x in range(1, 13):
            for k in range(x + 1):
                lower = binomial_coefficient(d, x - 1, k - 1) if k >= 1 else 0.0
                yield (binomial_coefficient(d, x, k),
                       power(e1, k) * binomial_coefficient(d, x - 1, k) + power(e2, x - k) * lower)

    def symmetry():
        for m in range(13):
            for k in range(m + 1):
                yield binomial_coefficient(d, m, k), binomial_coefficient(d, m, m - k)

    def negative_upper():
        for n in range(1, 6):
            for k in range(6):
                yield binomial_coefficient(d, -n, k), negative_binomial_coefficient(d, n, k)

    def euler_vs_shifted():
        for x in (0.5, 1.0, 2.0):
            for y in (0.5, 1.0, 2.0):
                for n in range(9):
                    yield euler_expansion(d, x, y, n), shifted_factorial_plus(d, x, y, n)

    def lemma_symmetry():
        for x, y, v in ((0.5, 1.5, 0.5), (1.0, 2.0, 0.5), (1.5, 0.5, 1.0)):
            for n in range(7):
                yield binomial_lemma_sides(d, x, y, v, n)

    def algebra_action():
        for n in range(11):
            raised = polynomial_derivative(d, Polynomial.monomial(n).times_z())
            lowered = polynomial_derivative(d, Polynomial.monomial(n)).times_z()
            yield raised.coefficient(n), d.number(n + 1)
            yield lowered.coefficient(n), d.number(n)

    ctx.check('deformation.subtraction_law', subtraction_law, applies=matched, note=note)
    ctx.check('deformation.addition_law', lambda: addition_law(False), applies=matched, note=note)
    ctx.check('deformation.addition_law_swapped', lambda: addition_law(True), applies=matched, note=note)
    ctx.check('deformation.reflection', reflection, applies=matched, note=note)
    ctx.check('deformation.pascal_recursion', pascal, applies=matched, note=note)
    ctx.check('deformation.binomial_symmetry', symmetry, tolerance=1e-12)
    ctx.check('deformation.negative_upper_binomial', negative_upper, applies=matched, note=note)
    ctx.check('combinatorics.euler_expansion', euler_vs_shifted, applies=matched, note=note)
    ctx.check('combinatorics.lemma_symmetry', lemma_symmetry,
              applies=matched and d.has_unit_epsilon1, note='requires eps1 = 1')
    ctx.check('deformation.algebra_action', algebra_action, tolerance=1e-12)


# ----------------------------------------------------------------------
# vandermonde
# ----------------------------------------------------------------------

# u 为非负整数，级数有限，对所有匹配形变成立
NEGATIVE_VANDERMONDE_POINTS = ((1.0, 1.0, 1), (0.0, 2.0, 1), (2.0, 1.0, 1), (1.0, 0.5, 2), (3.0, -0.5, 2))
RECIPROCAL_POINTS = ((0.0, 3.0, 2), (1.0, 2.0, 1), (2.0, 2.5, 1), (1.0, 3.0, 2))
# 非终止级数：一般形变下的收敛域未确立，只报告
NONTERMINATING_NEGATIVE_POINTS = ((0.5, 1.5, 2),)
NONTERMINATING_RECIPROCAL_POINTS = ((1.6, -0.7, 1),)


def check_vandermonde(ctx: SuiteContext):
    d = ctx.deformation
    matched = d.is_matched
    note = 'closed form is not c(eps1^x - eps2^x)/(eps1 - eps2)'
    series = ctx.series

    def finite(variant):
        for n in range(1, 7):
            for u in VANDERMONDE_GRID:
                for v in VANDERMONDE_GRID:
                    terms = vandermonde_terms(d, u, v, n, variant)
                    yield math.fsum(terms), falling_factorial(d, u + v, n), math.fsum(abs(t) for t in terms)

    def negative(variant, points):
        def one(u, v, n):
            value = negative_vandermonde(d, u, v, n, series['max_terms'], series['tol'], variant)
            return value, falling_factorial(d, u + v, -n)

        return each_point(points, one)

    def reciprocal(variant, points):
        def one(u, v, n):
            value = reciprocal_factorial_series(d, u, v, n, series['max_terms'], series['tol'], variant)
            return value * falling_factorial(d, v, n), 1.0

        return each_point(points, one)

    for variant in Variant:
        ctx.check(f"combinatorics.vandermonde_{variant.value}", lambda: finite(variant),
                  tolerance=TOLERANCES['vandermonde'], applies=matched, note=note)
        ctx.check(f"combinatorics.negative_vandermonde_{variant.value}",
                  lambda: negative(variant, NEGATIVE_VANDERMONDE_POINTS),
                  tolerance=TOLERANCES['series'], applies=matched, note=note)
        ctx.check(f"combinatorics.reciprocal_series_{variant.value}",
                  lambda: reciprocal(variant, RECIPROCAL_POINTS),
                  tolerance=TOLERANCES['series'], applies=matched, note=note)
        ctx.check(f"combinatorics.negative_vandermonde_{variant.value}.nonterminating",
                  lambda: negative(variant, NONTERMINATING_NEGATIVE_POINTS),
                  tolerance=TOLERANCES['series'], applies=False, note='convergence domain not established')
        ctx.check(f"combinatorics.reciprocal_series_{variant.value}.nonterminating",
                  lambda: reciprocal(variant, NONTERMINATING_RECIPROCAL_POINTS),
                  tolerance=TOLERANCES['series'], applies=False, note='convergence domain not established')


# ----------------------------------------------------------------------
# stirling
# ----------------------------------------------------------------------

def check_stirling(ctx: SuiteContext):
    d = ctx.deformation
    n_max = ctx.settings.get('stirling_n_max')

    def defining_identity(kind, j, parameters):
        table = conditioned_stirling_table(d, kind, j, n_max)
        parameters['n_max'] = table.n_max
        for n in range(table.n_max + 1):
            value = stirling_residual(table, n, fresh_points(kind, j, n))
            yield value, 0.0

    for kind in StirlingKind:
        for j in (0, 1, 2):
            parameters = {'n_max_requested': n_max}
            ctx.check(f"combinatorics.stirling_{kind.value}_j{j}",
                      lambda: defining_identity(kind, j, parameters),
                      tolerance=TOLERANCES['stirling'], applies=d.has_unit_epsilon1,
                      note='[x-j]_n is not a polynomial in [x] when eps1 != 1', parameters=parameters)

    if d.kind == DeformationKind.ARIK_COON:
        exact_n = min(n_max, 6)

        def exact_oracle():
            table = stirling_table(d, StirlingKind.FIRST, 0, exact_n)
            exact = exact_arik_coon_stirling_first(Fraction(str(d.q)), exact_n)
            for n in range(exact_n + 1):
                for k in range(n + 1):
                    yield table.entry(n, k), float(exact[n][k])

        def q_binomial_identity():
            for x in range(9):
                moments = [binomial_coefficient(d, x, m) for m in range(x + 1)]
                for j in range(x + 1):
                    yield classical_binomial_moment(d, moments, j), float(math.comb(x, j))

        ctx.check('combinatorics.stirling_exact_oracle', exact_oracle, tolerance=TOLERANCES['stirling_exact'])
        ctx.check('combinatorics.q_binomial_identity', q_binomial_identity, tolerance=TOLERANCES['conversion'])


# ----------------------------------------------------------------------
# exponential
# ----------------------------------------------------------------------

def check_exponential(ctx: SuiteContext):
    d = ctx.deformation
    series = ctx.series

    def reciprocity():
        for z in (0.1, 0.3, 0.7):
            yield exp_big_E(d, -z, **series) * exp_small_e(d, z, **series), 1.0

    ctx.check('special_functions.reciprocity', reciprocity, tolerance=TOLERANCES['exponential'],
              applies=d.is_matched, note='closed form is not c(eps1^x - eps2^x)/(eps1 - eps2)')


# ----------------------------------------------------------------------
# normalization
# ----------------------------------------------------------------------

def _normalization(table: PmfTable):
    yield table.total, 1.0


def check_normalization(ctx: SuiteContext):
    d = ctx.deformation
    series = ctx.series

    for params in BINOMIAL_CASES:
        def binomial(params=params):
            table = binomial_pmf(d, params)
            ctx.out_of_range(table, 'distributions.binomial')
            return _normalization(table)

        ctx.check('distributions.binomial_normalization', binomial,
                  tolerance=TOLERANCES['normalization_exact'], applies=d.has_unit_epsilon1,
                  note='normalization is proved for eps1 = 1', parameters=params.to_dict())

    for params in POLYA_CASES:
        def polya(params=params):
            table = polya_pmf(d, params)
            ctx.out_of_range(table, 'distributions.polya')
            return _normalization(table)

        ctx.check('distributions.polya_normalization', polya, tolerance=TOLERANCES['normalization_exact'],
                  applies=d.is_matched, note='normalization relies on the Vandermonde identity',
                  parameters=params.to_dict())

    def hypergeometric():
        table = hypergeometric_pmf(d, 3, 4.0, 5.0)
        ctx.out_of_range(table, 'distributions.hypergeometric')
        return _normalization(table)

    ctx.check('distributions.hypergeometric_normalization', hypergeometric,
              tolerance=TOLERANCES['normalization_exact'], applies=d.is_matched,
              note='normalization relies on the Vandermonde identity', parameters={'n': 3, 'm': 4.0, 'u': 5.0})

    def euler():
        table = euler_pmf(d, EULER_CASE, **series)
        ctx.out_of_range(table, 'distributions.euler')
        return _normalization(table)

    ctx.check('distributions.euler_normalization', euler, tolerance=TOLERANCES['normalization_truncated'],
              applies=d.is_matched, note='reciprocity E(-z)e(z)=1 is not available',
              parameters=EULER_CASE.to_dict())

    for params in INVERSE_POLYA_CASES:
        def inverse(params=params):
            table = inverse_polya_pmf(d, params, max_terms=series['max_terms'])
            ctx.out_of_range(table, 'distributions.inverse_polya')
            return _normalization(table)

        ctx.check('distributions.inverse_polya_normalization', inverse,
                  tolerance=TOLERANCES['normalization_truncated'], applies=d.has_unit_epsilon1,
                  note='prefactor eps1^(n(u-x)) with eps1 != 1: normalization reported, not assumed',
                  parameters=params.to_dict())


# ----------------------------------------------------------------------
# recursion
# ----------------------------------------------------------------------

def _elementwise(direct: PmfTable, recursive: PmfTable):
    if len(direct.probs) != len(recursive.probs):
        yield float(len(direct.probs)), float(len(recursive.probs))
        return
    for a, b in zip(direct.probs, recursive.probs):
        yield a, b


def check_recursion(ctx: SuiteContext):
    d = ctx.deformation
    series = ctx.series
    tolerance = TOLERANCES['recursion']

    for params in BINOMIAL_CASES:
        ctx.check('distributions.binomial_recursion',
                  lambda params=params: _elementwise(binomial_pmf(d, params, Method.DIRECT),
                                                     binomial_pmf(d, params, Method.RECURSIVE)),
                  tolerance=tolerance, parameters=params.to_dict())

    def euler():
        direct = euler_pmf(d, EULER_CASE, Method.DIRECT, **series)
        recursive = euler_pmf(d, EULER_CASE, Method.RECURSIVE, **series)
        yield from _elementwise(direct, recursive)
        for x in range(len(direct.probs) - 1):
            if direct.probs[x] != 0.0:
                yield direct.probs[x + 1] / direct.probs[x], euler_ratio(d, EULER_CASE.theta, x)

    ctx.check('distributions.euler_recursion', euler, tolerance=tolerance, parameters=EULER_CASE.to_dict())

    for params in POLYA_CASES:
        ctx.check('distributions.polya_recursion',
                  lambda params=params: _elementwise(polya_pmf(d, params, Method.DIRECT),
                                                     polya_pmf(d, params, Method.RECURSIVE)),
                  tolerance=tolerance, parameters=params.to_dict())

    for params in INVERSE_POLYA_CASES:
        ctx.check('distributions.inverse_polya_recursion',
                  lambda params=params: _elementwise(
                      inverse_polya_pmf(d, params, Method.DIRECT, series['max_terms']),
                      inverse_polya_pmf(d, params, Method.RECURSIVE, series['max_terms'])),
                  tolerance=tolerance, parameters=params.to_dict())


# ----------------------------------------------------------------------
# moments
# ----------------------------------------------------------------------

def check_moments(ctx: SuiteContext):
    d = ctx.deformation
    series = ctx.series
    unit = d.has_unit_epsilon1
    note = 'closed form is proved for eps1 = 1'

    params = BinomialParams(n=5, p0=0.3)

    def binomial_moments():
        table = binomial_pmf(d, params)
        for j in (1, 2):
            yield (binomial_factorial_moment(d, params, j),
                   table.expectation(lambda k, j=j: falling_factorial(d, k, j)))

    def mean_variance():
        table = binomial_pmf(d, params)
        mean = table.expectation(d.number)
        second = table.expectation(lambda k: d.number(k) ** 2)
        yield binomial_mean(d, params), mean
        yield binomial_variance(d, params), second - mean ** 2

    def product_moment():
        table = binomial_pmf(d, params)
        for r in (1, 2):
            report = binomial_product_moment(d, params, r, table)
            yield report.closed_form, report.brute_force

    ctx.check('distributions.binomial_factorial_moment', binomial_moments, tolerance=TOLERANCES['moment'],
              applies=unit, note=note, parameters=params.to_dict())
    ctx.check('distributions.binomial_mean_variance', mean_variance, tolerance=TOLERANCES['mean_variance'],
              applies=unit, note=note, parameters=params.to_dict())
    ctx.check('distributions.binomial_product_moment', product_moment, tolerance=TOLERANCES['moment'],
              applies=unit, note=note, parameters=params.to_dict())
    try:
        holds = binomial_variance_condition(d, params)
        ctx.report('distributions.binomial_variance_condition',
                   f"X p0 [n-1] > p0 [n] - [1] is {str(holds).lower()}", parameters=params.to_dict())
    except (RpqError, ArithmeticError) as e:
        ctx.report('distributions.binomial_variance_condition', f"{type(e).__name__}: {e}")

    def euler_moments():
        table = euler_pmf(d, EULER_CASE, **series)
        for j in (1, 2):
            yield (euler_factorial_moment(d, EULER_CASE, j, **series),
                   table.expectation(lambda x, j=j: falling_factorial(d, x, j)))

    ctx.check('distributions.euler_factorial_moment', euler_moments, tolerance=TOLERANCES['moment_truncated'],
              parameters=EULER_CASE.to_dict())

    for polya_params in POLYA_CASES:
        def polya_moments(polya_params=polya_params):
            base = d.base_changed(polya_params.x_step)
            table = polya_pmf(d, polya_params)
            for j in (1, 2):
                yield (polya_factorial_moment(d, polya_params, j),
                       table.expectation(lambda k, j=j: falling_factorial(base, k, j)))

        ctx.check('distributions.polya_factorial_moment', polya_moments, tolerance=TOLERANCES['moment'],
                  applies=unit, note=note, parameters=polya_params.to_dict())

    for inverse_params in INVERSE_POLYA_CASES:
        def inverse_moments(inverse_params=inverse_params):
            base = d.base_changed(inverse_params.x_step)
            table = inverse_polya_pmf(d, inverse_params, max_terms=series['max_terms'])
            for j in (1, 2):
                yield (inverse_polya_factorial_moment(d, inverse_params, j),
                       table.expectation(lambda y, j=j: falling_factorial(base, y, j)))

        ctx.check('distributions.inverse_polya_factorial_moment', inverse_moments,
                  tolerance=TOLERANCES['moment_truncated'], applies=unit, note=note,
                  parameters=inverse_params.to_dict())


# ----------------------------------------------------------------------
# conversions
# ----------------------------------------------------------------------

def _falling_classical(k, i) -> float:
    return float(math.perm(k, i)) if k >= i else 0.0


def check_conversions(ctx: SuiteContext):
    d = ctx.deformation
    series = ctx.series
    standard = d.is_standard
    note = 'classical conversion requires eps1 = 1 and [1] = 1; value depends on tau otherwise'

    params = BinomialParams(n=3, p0=0.5)

    def binomial_factorial():
        table = binomial_pmf(d, params)
        for i in (1, 2, 3):
            yield (binomial_classical_factorial_moment(d, params, i),
                   table.expectation(lambda k, i=i: _falling_classical(k, i)))

    def binomial_binomial():
        table = binomial_pmf(d, params)
        for j in (1, 2):
            yield (binomial_classical_binomial_moment(d, params, j),
                   table.expectation(lambda k, j=j: float(math.comb(k, j))))

    def tau_independence():
        for i in (1, 2):
            yield (binomial_classical_factorial_moment(d, params, i, tau=0),
                   binomial_classical_factorial_moment(d, params, i, tau=2))

    def euler():
        table = euler_pmf(d, EULER_CONVERSION_CASE, **series)
        for i in (1, 2):
            yield (euler_classical_factorial_moment(d, EULER_CONVERSION_CASE, i, tol=series['tol'],
                                                    max_terms=series['max_terms']),
                   table.expectation(lambda x, i=i: _falling_classical(x, i)))

    polya_params = POLYA_CASES[1]

    def polya():
        table = polya_pmf(d, polya_params)
        for i in (1, 2):
            yield (polya_classical_factorial_moment(d, polya_params, i),
                   table.expectation(lambda k, i=i: _falling_classical(k, i)))

    inverse_params = INVERSE_POLYA_CASES[0]

    def inverse():
        table = inverse_polya_pmf(d, inverse_params, max_terms=series['max_terms'])
        for i in (1,):
            yield (inverse_polya_classical_factorial_moment(d, inverse_params, i, tol=series['tol']),
                   table.expectation(lambda y, i=i: _falling_classical(y, i)))

    ctx.check('conversions.binomial_factorial', binomial_factorial, tolerance=TOLERANCES['conversion'],
              applies=standard, note=note, parameters=params.to_dict())
    ctx.check('conversions.binomial_binomial', binomial_binomial, tolerance=TOLERANCES['conversion'],
              applies=standard, note=note, parameters=params.to_dict())
    ctx.check('conversions.tau_independence', tau_independence, tolerance=1e-12,
              applies=d.has_unit_epsilon1, note='eps1 != 1: conversions depend on tau',
              parameters=params.to_dict())
    ctx.check('conversions.euler_factorial', euler, tolerance=TOLERANCES['conversion'],
              applies=standard, note=note, parameters=EULER_CONVERSION_CASE.to_dict())
    ctx.check('conversions.polya_factorial', polya, tolerance=TOLERANCES['conversion'],
              applies=standard, note=note, parameters=polya_params.to_dict())
    ctx.check('conversions.inverse_polya_factorial', inverse, tolerance=TOLERANCES['moment_truncated'],
              applies=standard, note=note, parameters=inverse_params.to_dict())


# ----------------------------------------------------------------------
# quesne
# ----------------------------------------------------------------------

def check_quesne(ctx: SuiteContext):
    d = ctx.deformation
    if d.kind == DeformationKind.MULTI_PARAMETER:
        ctx.check('deformation.multi_parameter_rescaling',
                  lambda: ((d.number(n), multi_parameter_rescaled(d, n)) for n in range(1, 11)),
                  tolerance=TOLERANCES['bridge'])
        return
    if d.kind != DeformationKind.GENERALIZED_QUESNE:
        return

    p, q = d.p, d.q
    bridge = quesne_bridge(d)
    remarks = QuesneRemarks(d)
    tolerance = TOLERANCES['quesne']

    ctx.check('deformation.quesne_bridge',
              lambda: ((bridge.number(n), q / p * d.number(n)) for n in range(1, 11)),
              tolerance=TOLERANCES['bridge'])

    def commutation():
        for n in range(11):
            yield d.number(n + 1) / p - d.number(n), power(q, -n - 1)
            yield q * d.number(n + 1) - d.number(n), power(p, n + 1)

    ctx.check('deformation.quesne_commutation', commutation, tolerance=TOLERANCES['bridge'])

    binomial_params = BinomialParams(n=5, p0=0.3)

    def binomial():
        yield from zip(remarks.binomial_pmf(binomial_params), binomial_pmf(bridge, binomial_params).probs)
        for j in (1, 2, 3):
            yield (remarks.binomial_factorial_moment(binomial_params, j),
                   binomial_factorial_moment(bridge, binomial_params, j))
        yield remarks.binomial_mean(binomial_params), binomial_mean(bridge, binomial_params)
        yield remarks.binomial_variance(binomial_params), binomial_variance(bridge, binomial_params)
        for r in (1, 2):
            yield (remarks.binomial_product_moment(binomial_params, r),
                   binomial_product_moment(bridge, binomial_params, r).closed_form)
        for i in (1, 2):
            yield (remarks.binomial_classical_factorial_moment(binomial_params, i),
                   binomial_classical_factorial_moment(bridge, binomial_params, i))

    def euler():
        table = euler_pmf(bridge, EULER_CASE, **ctx.series)
        yield from zip(remarks.euler_pmf(EULER_CASE, len(table.probs)), table.probs)
        for x in range(6):
            yield remarks.euler_ratio(EULER_CASE, x), euler_ratio(bridge, EULER_CASE.theta, x)
        for j in (1, 2):
            yield (remarks.euler_factorial_moment(EULER_CASE, j),
                   euler_factorial_moment(bridge, EULER_CASE, j, **ctx.series))

    polya_params = POLYA_CASES[1]

    def polya():
        table = polya_pmf(bridge, polya_params)
        yield from zip(remarks.polya_pmf(polya_params), table.probs)
        for k in range(polya_params.n):
            if table.probs[k] != 0.0:
                yield remarks.polya_ratio(polya_params, k), table.probs[k + 1] / table.probs[k]
        for j in (1, 2):
            yield remarks.polya_factorial_moment(polya_params, j), polya_factorial_moment(bridge, polya_params, j)

    inverse_params = INVERSE_POLYA_CASES[1]

    def inverse():
        table = inverse_polya_pmf(bridge, inverse_params, max_terms=ctx.series['max_terms'])
        yield from zip(remarks.inverse_polya_pmf(inverse_params, len(table.probs)), table.probs)
        for y in range(len(table.probs) - 1):
            yield remarks.inverse_polya_ratio(inverse_params, y), inverse_polya_ratio(bridge, inverse_params, y)
        for j in (1, 2):
            yield (remarks.inverse_polya_factorial_moment(inverse_params, j),
                   inverse_polya_factorial_moment(bridge, inverse_params, j))

    ctx.check('quesne.binomial', binomial, tolerance=tolerance, parameters=binomial_params.to_dict())
    ctx.check('quesne.euler', euler, tolerance=tolerance, parameters=EULER_CASE.to_dict())
    ctx.check('quesne.polya', polya, tolerance=tolerance, parameters=polya_params.to_dict())
    ctx.check('quesne.inverse_polya', inverse, tolerance=tolerance, parameters=inverse_params.to_dict())


# ----------------------------------------------------------------------
# classical
# ----------------------------------------------------------------------

def check_classical(ctx: SuiteContext):
    """q -> 1 探针上的经典极限；ctx.deformation 为探针形变"""
    d = ctx.deformation
    series = ctx.series
    limit = TOLERANCES['classical_limit']

    ctx.check('classical.numbers', lambda: ((d.number(n), float(n)) for n in range(11)),
              tolerance=TOLERANCES['classical_number'])

    def exponentials():
        for z in (-1.0, -0.5, 0.5, 1.0):
            yield exp_big_E(d, z, **series), math.exp(z)
            yield exp_small_e(d, z, **series), math.exp(z)

    ctx.check('classical.exponentials', exponentials, tolerance=TOLERANCES['classical_number'])

    params = BinomialParams(n=5, p0=0.3)

    def binomial():
        table = binomial_pmf(d, params)
        for k, prob in enumerate(table.probs):
            yield prob, math.comb(5, k) * 0.3 ** k * 0.7 ** (5 - k)

    def hypergeometric():
        table = hypergeometric_pmf(d, 3, 4.0, 5.0)
        for k, prob in enumerate(table.probs):
            yield prob, math.comb(4, k) * math.comb(5, 3 - k) / math.comb(9, 3)

    def euler():
        theta = EULER_CASE.theta
        table = euler_pmf(d, EULER_CASE, **series)
        for x, prob in enumerate(table.probs):
            yield prob, math.exp(-theta) * theta ** x / math.factorial(x)

    def urn():
        for r, s, x in ((2, 3, 1), (4, 1, 2)):
            for i in range(1, 4):
                for j in range(1, i + 1):
                    yield (urn_draw_probability(d, i, j, -r / x, -s / x, x),
                           (r + x * (j - 1)) / (r + s + x * (i - 1)))

    ctx.check('classical.binomial_pmf', binomial, tolerance=limit, parameters=params.to_dict())
    ctx.check('classical.hypergeometric_pmf', hypergeometric, tolerance=limit,
              parameters={'n': 3, 'm': 4.0, 'u': 5.0})
    ctx.check('classical.euler_poisson', euler, tolerance=limit, applies=d.kind == DeformationKind.ARIK_COON,
              note='Poisson limit probed on arik-coon only', parameters=EULER_CASE.to_dict())
    ctx.check('classical.urn_draw_probability', urn, tolerance=limit)


def check_urn_forms(ctx: SuiteContext):
    """罐子概率的两种写法在参数点上一致"""
    d = ctx.deformation

    def forms():
        for r, s, x in ((2, 3, 1), (2, 0, 1), (3, 2, -1)):
            for i in range(1, 4):
                for j in range(1, i + 1):
                    yield (urn_draw_probability(d, i, j, -r / x, -s / x, x),
                           urn_draw_probability_counts(d, i, j, r, s, x))

    ctx.check('distributions.urn_draw_forms', forms, tolerance=ctx.settings.get('tolerance'))


# ----------------------------------------------------------------------
# sampling
# ----------------------------------------------------------------------

def check_sampling(ctx: SuiteContext):
    d = ctx.deformation
    sampling = ctx.settings.get_sampling_settings()
    params = BinomialParams(n=10, p0=0.4)

    def deviation_in_standard_errors():
        table = binomial_pmf(d, params)
        draws = sample(table, seed=sampling['seed'], count=sampling['count'])
        mean, standard_error = empirical_mean(draws, d.number)
        expected = table.expectation(d.number)
        if standard_error == 0.0:
            return 0.0 if mean == expected else float('inf')
        return abs(mean - expected) / standard_error

    def reproducible():
        table = binomial_pmf(d, params)
        first = sample(table, seed=sampling['seed'], count=1000)
        second = sample(table, seed=sampling['seed'], count=1000)
        yield float(first != second), 0.0

    ctx.check_bound('distributions.sampling_mean', deviation_in_standard_errors, 3.0,
                    parameters={**params.to_dict(), **sampling})
    ctx.check('distributions.sampling_reproducible', reproducible, tolerance=0.0,
              parameters={**params.to_dict(), 'seed': sampling['seed']})


SUITE_CHECKS = {
    'structural': check_structural,
    'vandermonde': check_vandermonde,
    'stirling': check_stirling,
    'exponential': check_exponential,
    'normalization': check_normalization,
    'recursion': check_recursion,
    'moments': check_moments,
    'conversions': check_conversions,
    'quesne': check_quesne,
    'classical': check_urn_forms,
    'sampling': check_sampling,
}
