"""
rpq 命令行界面

用法:
    rpq number --kind arik-coon -q 0.5 --x 3
    rpq factorial --kind quesne -q 0.8 --n 5
    rpq binom --kind jagannathan-srinivasa -p 0.9 -q 0.5 --x 6 --k 2
    rpq pmf binomial --kind arik-coon -q 0.5 --n 2 --p0 0.5 --format csv
    rpq moments euler --kind arik-coon -q 0.5 --theta 0.5 --j 1 --j 2
    rpq stirling --kind arik-coon -q 0.5 --type first --n-max 6
    rpq exp --kind arik-coon -q 0.5 --z 0.3
    rpq sample binomial --kind arik-coon -q 0.5 --n 10 --p0 0.4 --count 20 --seed 7
    rpq verify --suite all
"""

import functools
import logging
import math
import sys

import click

from ..audit.runner import AuditRunner
from ..config.settings import AppConstants, AppSettings
from ..core.combinatorics import StirlingKind, stirling_table
from ..core.deformation import binomial_coefficient, deformation_from_options, factorial
from ..core.errors import DomainError, RpqError
from ..core.special_functions import exp_big_E, exp_small_e
from ..distributions.binomial import (binomial_classical_factorial_moment, binomial_moment_reports, binomial_pmf,
                                      binomial_product_moment)
from ..distributions.euler import euler_moment_reports, euler_pmf
from ..distributions.polya import (hypergeometric_pmf, inverse_polya_moment_reports, inverse_polya_pmf,
                                   polya_classical_factorial_moment, polya_moment_reports, polya_pmf)
from ..distributions.sampling import sample
from ..distributions.tables import (BinomialParams, EulerParams, Family, InversePolyaParams, Method,
                                    MomentReport, PolyaParams)
from .formatting import render_moments, render_pmf, render_records, render_report, render_samples, render_stirling

__all__ = [
    'cli',
    'main',
]

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

FAMILY_NAMES = tuple(family.value for family in Family)


class RpqCommandError(click.ClickException):
    """参数或定义域错误，退出码 2"""

    exit_code = 2


class RpqGroup(click.Group):
    """把 RpqError 转为单行诊断与退出码 2"""

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except RpqError as e:
            raise RpqCommandError(f"{type(e).__name__}: {e}")


def numeric_options(command):
    """容差、级数、种子与输出格式选项"""
    options = [
        click.option('--tol', type=float, default=None, help='审计容差 (默认 1e-9)'),
        click.option('--max-terms', type=int, default=None, help='级数最大项数'),
        click.option('--tau', type=int, default=None, help='经典矩换算的 tau'),
        click.option('--seed', type=int, default=None, help='随机种子'),
        click.option('--format', 'fmt', type=click.Choice(AppConstants.OUTPUT_FORMATS), default='text',
                     show_default=True, help='输出格式'),
    ]
    for option in reversed(options):
        command = option(command)

    @functools.wraps(command)
    def wrapper(tol, max_terms, tau, seed, fmt, **kwargs):
        settings = AppSettings(tolerance=tol, max_terms=max_terms, tau=tau, seed=seed, output_format=fmt)
        return command(settings=settings, **kwargs)

    return wrapper


def common_options(command):
    """形变选项加数值选项，单点子命令共用"""
    command = numeric_options(command)
    options = [
        click.option('--kind', type=click.Choice(AppConstants.KIND_NAMES), default='arik-coon',
                     show_default=True, help='形变种类'),
        click.option('-p', 'p', type=float, default=None, help='参数 p'),
        click.option('-q', 'q', type=float, default=0.5, show_default=True, help='参数 q'),
        click.option('--mu', type=float, default=None, help='multi-parameter 的 mu'),
        click.option('--nu', type=float, default=None, help='multi-parameter 的 nu'),
        click.option('--g', 'g', type=float, default=None, help='multi-parameter 的 g'),
    ]
    for option in reversed(options):
        command = option(command)

    @functools.wraps(command)
    def wrapper(kind, p, q, mu, nu, g, **kwargs):
        deformation = deformation_from_options(kind, p=p, q=q, mu=mu, nu=nu, g=g)
        return command(deformation=deformation, **kwargs)

    return wrapper


def family_options(command):
    """分布族参数"""
    options = [
        click.argument('family', type=click.Choice(FAMILY_NAMES)),
        click.option('--n', 'n', type=int, default=None, help='试验数 / 抽取数 / 成功数'),
        click.option('--p0', type=float, default=None, help='二项分布的成功参数'),
        click.option('--theta', type=float, default=None, help='Euler 分布参数'),
        click.option('--m', 'm', type=float, default=None, help='Pólya 参数 m'),
        click.option('--u', 'u', type=float, default=None, help='Pólya 参数 u'),
        click.option('--x-step', type=int, default=-1, show_default=True, help='每次加入的同色球数'),
        click.option('--r', 'r', type=float, default=None, help='白球数 (代替 --m)'),
        click.option('--s', 's', type=float, default=None, help='黑球数 (代替 --u)'),
        click.option('--method', type=click.Choice([method.value for method in Method]), default='direct',
                     show_default=True, help='direct 或 recursive'),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def _require(value, name, family):
    if value is None:
        raise DomainError(f"{family} 需要参数 --{name}")
    return value


def _urn_parameters(family, m, u, r, s, x_step):
    if r is not None:
        m = -r / x_step
    if s is not None:
        u = -s / x_step
    return _require(m, 'm', family), _require(u, 'u', family)


def build_pmf(deformation, settings: AppSettings, family, n, p0, theta, m, u, x_step, r, s, method):
    """按分布族构造概率表"""
    family = Family(family)
    series = settings.get_series_settings()
    tail = settings.get_tail_settings()
    if family == Family.BINOMIAL:
        params = BinomialParams(n=_require(n, 'n', family.value), p0=_require(p0, 'p0', family.value))
        return binomial_pmf(deformation, params, method), params
    if family == Family.EULER:
        params = EulerParams(theta=_require(theta, 'theta', family.value), tail_tol=tail['tail_tol'])
        return euler_pmf(deformation, params, method, **series), params
    if family == Family.HYPERGEOMETRIC:
        m, u = _urn_parameters(family.value, m, u, r, s, -1)
        n = _require(n, 'n', family.value)
        return hypergeometric_pmf(deformation, n, m, u, method), PolyaParams(n=n, m=m, u=u, x_step=-1)
    m, u = _urn_parameters(family.value, m, u, r, s, x_step)
    if family == Family.POLYA:
        params = PolyaParams(n=_require(n, 'n', family.value), m=m, u=u, x_step=x_step)
        return polya_pmf(deformation, params, method), params
    params = InversePolyaParams(n=_require(n, 'n', family.value), m=m, u=u, x_step=x_step,
                                tail_tol=tail['tail_tol'])
    return inverse_polya_pmf(deformation, params, method, tail['max_terms']), params


def classical_reports(deformation, settings: AppSettings, family: Family, params, orders, table):
    """经典阶乘矩：换算值与概率表上的 E[(X)_i] 比较"""
    if family == Family.BINOMIAL:
        convert = binomial_classical_factorial_moment
    elif family in (Family.POLYA, Family.HYPERGEOMETRIC):
        convert = polya_classical_factorial_moment
    else:
        raise DomainError(f"{family.value} 的经典矩换算不在命令行提供")
    tau = settings.get('tau')
    return [
        MomentReport.compare(i, convert(deformation, params, i, tau),
                             table.expectation(lambda k, i=i: float(math.perm(k, i)) if k >= i else 0.0),
                             name='classical_factorial_moment')
        for i in orders
    ]


def _emit(text):
    click.echo(text)


@click.group(cls=RpqGroup)
@click.version_option(version=AppConstants.APP_VERSION, prog_name=AppConstants.APP_NAME)
@click.option('--verbose', is_flag=True, help='输出 INFO 日志')
@click.option('--debug', is_flag=True, help='输出 DEBUG 日志')
def cli(verbose, debug):
    """
    R(p,q) 形变数、形变组合与形变离散分布工具

    示例:

        rpq number --kind arik-coon -q 0.5 --x 3

        rpq pmf binomial --n 2 --p0 0.5 --format csv

        rpq verify --suite all
    """
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger('rpq').setLevel(level)


@cli.command()
@click.option('--x', 'x', type=float, required=True, help='自变量 x')
@common_options
def number(deformation, settings, x):
    """形变数 [x]"""
    value = deformation.number(x)
    _emit(render_records([{'x': x, 'value': value}], settings.get('output_format'),
                         {'deformation': deformation.descriptor()}))


@cli.command(name='factorial')
@click.option('--n', 'n', type=int, required=True, help='阶数 n')
@common_options
def factorial_command(deformation, settings, n):
    """形变阶乘 [n]!"""
    value = factorial(deformation, n)
    _emit(render_records([{'n': n, 'value': value}], settings.get('output_format'),
                         {'deformation': deformation.descriptor()}))


@cli.command()
@click.option('--x', 'x', type=float, required=True, help='上标 x，可为任意实数')
@click.option('--k', 'k', type=int, required=True, help='下标 k')
@common_options
def binom(deformation, settings, x, k):
    """形变二项式系数 [x k]"""
    value = binomial_coefficient(deformation, x, k)
    _emit(render_records([{'x': x, 'k': k, 'value': value}], settings.get('output_format'),
                         {'deformation': deformation.descriptor()}))


@cli.command()
@family_options
@common_options
def pmf(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method):
    """分布族的概率表"""
    table, _ = build_pmf(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method)
    _emit(render_pmf(table, settings.get('output_format')))


@cli.command()
@family_options
@click.option('--j', 'orders', type=int, multiple=True, help='矩的阶，可重复 (默认 1 2)')
@click.option('--product', 'product_orders', type=int, multiple=True, help='二项分布乘积矩的阶 r')
@click.option('--classical', is_flag=True, help='附加经典阶乘矩 E[(X)_i] 的换算比较 (有限支撑族)')
@common_options
def moments(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method, orders,
            product_orders, classical):
    """形变阶乘矩的闭式与暴力求和比较"""
    orders = orders or (1, 2)
    table, params = build_pmf(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method)
    family = Family(family)
    if family == Family.BINOMIAL:
        reports = binomial_moment_reports(deformation, params, orders, table)
        reports.extend(binomial_product_moment(deformation, params, order, table) for order in product_orders)
    elif family == Family.EULER:
        reports = euler_moment_reports(deformation, params, orders, table, **settings.get_series_settings())
    elif family == Family.INVERSE_POLYA:
        reports = inverse_polya_moment_reports(deformation, params, orders, table)
    else:
        reports = polya_moment_reports(deformation, params, orders, table)
    if classical:
        reports.extend(classical_reports(deformation, settings, family, params, orders, table))
    _emit(render_moments(reports, settings.get('output_format'), table.header_lines(),
                         {'family': family.value, 'deformation': deformation.descriptor(),
                          'params': params.to_dict()}))


@cli.command()
@click.option('--type', 'table_kind', type=click.Choice([kind.value for kind in StirlingKind]),
              default='first', show_default=True, help='第一类或第二类')
@click.option('--j', 'j', type=int, default=0, show_default=True, help='非中心偏移 j')
@click.option('--n-max', type=int, default=8, show_default=True, help='最大阶数 (<=20)')
@common_options
def stirling(deformation, settings, table_kind, j, n_max):
    """非中心形变 Stirling 数表"""
    table = stirling_table(deformation, StirlingKind(table_kind), j, n_max)
    _emit(render_stirling(table, settings.get('output_format')))


@cli.command(name='exp')
@click.option('--z', 'zs', type=float, multiple=True, required=True, help='自变量 z，可重复')
@common_options
def exp_command(deformation, settings, zs):
    """形变指数函数 E(z) 与 e(z)"""
    series = settings.get_series_settings()
    records = [{'z': z, 'E': exp_big_E(deformation, z, **series), 'e': exp_small_e(deformation, z, **series)}
               for z in zs]
    _emit(render_records(records, settings.get('output_format'),
                         {'deformation': deformation.descriptor(), 'series': series}))


@cli.command(name='sample')
@family_options
@click.option('--count', type=int, default=10, show_default=True, help='样本数')
@common_options
def sample_command(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method, count):
    """从概率表逆 CDF 抽样；相同种子输出相同"""
    table, params = build_pmf(deformation, settings, family, n, p0, theta, m, u, x_step, r, s, method)
    seed = settings.get('seed')
    draws = sample(table, seed=seed, count=count)
    _emit(render_samples(draws, settings.get('output_format'),
                         {'family': table.family.value, 'deformation': deformation.descriptor(),
                          'params': params.to_dict(), 'seed': seed, 'count': count}))


@cli.command()
@click.option('--suite', 'suites', multiple=True, default=('all',), show_default=True,
              type=click.Choice(('all',) + AppConstants.AUDIT_SUITES), help='审计套件，可重复')
@click.option('--workers', type=int, default=None, help='并发参数点数')
@click.option('--output', type=click.Path(dir_okay=False), default=None, help='同时写出 JSON 报告文件')
@click.option('--stirling-n-max', type=int, default=None, help='Stirling 套件的最大阶数')
@numeric_options
@click.pass_context
def verify(ctx, settings, suites, workers, output, stirling_n_max):
    """
    在默认参数网格上审计全部恒等式
    参数点来自网格配置，不接受形变选项；有 fail 条目时退出码为 1
    """
    if stirling_n_max is not None:
        settings.set('stirling_n_max', stirling_n_max)
    selected = None if 'all' in suites else list(suites)
    report = AuditRunner(settings, suites=selected, workers=workers).run()
    _emit(render_report(report, settings.get('output_format')))
    if output and not report.save(output):
        raise RpqCommandError(f"无法写出报告: {output}")
    if report.has_failures:
        ctx.exit(1)


def main(argv=None) -> int:
    """命令行入口，返回退出码"""
    try:
        result = cli.main(args=argv, prog_name=AppConstants.APP_NAME, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        click.echo('已中止', err=True)
        return 1
    return result if isinstance(result, int) else 0
