"""
二项分布、Euler 分布、概率表与抽样
"""

import json

import pytest

from rpq.core.deformation import DeformationSpec
from rpq.core.errors import DomainError, RejectionError
from rpq.distributions.binomial import (binomial_classical_binomial_moment, binomial_classical_factorial_moment,
                                        binomial_factorial_moment, binomial_mean, binomial_moment_reports,
                                        binomial_pmf, binomial_product_moment, binomial_variance,
                                        binomial_variance_condition)
from rpq.distributions.euler import (euler_classical_factorial_moment, euler_factorial_moment, euler_pmf,
                                     euler_ratio)
from rpq.distributions.sampling import empirical_mean, sample
from rpq.distributions.tables import (BinomialParams, EulerParams, Family, Method, MomentReport, PmfTable,
                                      moment_reports_to_csv)


@pytest.fixture
def small_binomial():
    return BinomialParams(n=2, p0=0.5)


def test_binomial_example(arik_coon, small_binomial):
    table = binomial_pmf(arik_coon, small_binomial)
    assert table.probs == pytest.approx((0.375, 0.375, 0.25), abs=1e-15)
    assert table.family == Family.BINOMIAL
    assert not table.truncated


def test_binomial_moments_example(arik_coon, small_binomial):
    assert binomial_mean(arik_coon, small_binomial) == pytest.approx(0.75)
    assert binomial_variance(arik_coon, small_binomial) == pytest.approx(0.375)
    assert binomial_classical_factorial_moment(arik_coon, small_binomial, 1) == pytest.approx(0.875)


def test_binomial_recursion_matches_direct(grid_deformation):
    params = BinomialParams(n=5, p0=0.3)
    direct = binomial_pmf(grid_deformation, params, Method.DIRECT)
    recursive = binomial_pmf(grid_deformation, params, 'recursive')
    assert recursive.probs == pytest.approx(direct.probs, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
@pytest.mark.parametrize("n, p0", [(1, 0.4), (5, 0.3), (8, 0.7)])
def test_binomial_normalized_for_arik_coon(q, n, p0):
    table = binomial_pmf(DeformationSpec.arik_coon(q), BinomialParams(n=n, p0=p0))
    assert table.normalization_residual < 1e-9


def test_binomial_moments_against_table():
    d = DeformationSpec.quesne(0.8)
    params = BinomialParams(n=5, p0=0.3)
    reports = binomial_moment_reports(d, params, (1, 2, 3))
    for report in reports:
        assert report.abs_err < 1e-8
    assert [report.name for report in reports][-2:] == ['mean', 'variance']
    assert binomial_factorial_moment(d, params, 6) == 0.0


def test_binomial_product_moment(arik_coon):
    params = BinomialParams(n=5, p0=0.3)
    for r in (1, 2):
        report = binomial_product_moment(arik_coon, params, r)
        assert report.name == 'product_moment'
        assert report.closed_form == pytest.approx(report.brute_force, rel=1e-9)


def test_binomial_classical_conversions(arik_coon):
    params = BinomialParams(n=3, p0=0.5)
    table = binomial_pmf(arik_coon, params)
    second = table.expectation(lambda k: k * (k - 1))
    assert binomial_classical_factorial_moment(arik_coon, params, 2) == pytest.approx(second, abs=1e-7)
    assert binomial_classical_binomial_moment(arik_coon, params, 2) == pytest.approx(second / 2, abs=1e-7)
    assert binomial_classical_factorial_moment(arik_coon, params, 4) == 0.0


def test_variance_condition_is_boolean(arik_coon):
    assert binomial_variance_condition(arik_coon, BinomialParams(n=4, p0=0.5)) in (True, False)


def test_binomial_params_validation():
    with pytest.raises(DomainError):
        BinomialParams(n=3, p0=0.0)
    with pytest.raises(DomainError):
        BinomialParams(n=-1, p0=0.5)
    with pytest.raises(DomainError):
        BinomialParams(n=2.5, p0=0.5)


def test_euler_normalization_and_recursion(arik_coon):
    params = EulerParams(theta=0.5)
    direct = euler_pmf(arik_coon, params)
    recursive = euler_pmf(arik_coon, params, Method.RECURSIVE)
    assert direct.truncated
    assert direct.normalization_residual < 1e-9
    assert recursive.probs == pytest.approx(direct.probs, rel=1e-10, abs=1e-15)
    assert direct.probs[1] / direct.probs[0] == pytest.approx(euler_ratio(arik_coon, 0.5, 0))


def test_euler_factorial_moments(matched_deformation):
    params = EulerParams(theta=0.5)
    table = euler_pmf(matched_deformation, params)
    for j in (1, 2):
        brute = table.expectation(lambda x, j=j: _falling(matched_deformation, x, j))
        assert euler_factorial_moment(matched_deformation, params, j) == pytest.approx(brute, rel=1e-7)


def _falling(d, x, j):
    value = 1.0
    for v in range(j):
        value *= d.number(x - v)
    return value


def test_euler_classical_mean(arik_coon):
    params = EulerParams(theta=0.1)
    table = euler_pmf(arik_coon, params)
    mean = table.expectation(float)
    assert euler_classical_factorial_moment(arik_coon, params, 1) == pytest.approx(mean, abs=1e-7)


def test_euler_theta_domain(arik_coon):
    with pytest.raises(DomainError):
        euler_pmf(arik_coon, EulerParams(theta=2.0))
    with pytest.raises(DomainError):
        EulerParams(theta=-1.0)


def test_pmf_json_round_trip(arik_coon, small_binomial):
    table = binomial_pmf(arik_coon, small_binomial)
    assert PmfTable.from_json(table.to_json()) == table
    data = json.loads(table.to_json())
    assert data['family'] == 'binomial'
    assert data['deformation']['kind'] == 'arik-coon'


def test_pmf_csv_layout(arik_coon, small_binomial):
    lines = binomial_pmf(arik_coon, small_binomial).to_csv().splitlines()
    assert lines[0] == '# family=binomial'
    assert lines[1] == '# kind=arik-coon'
    assert 'k,p_k' in lines
    rows = lines[lines.index('k,p_k') + 1:]
    assert rows == ['0,0.375', '1,0.375', '2,0.25']


def test_out_of_range_is_recorded(arik_coon, small_binomial):
    table = PmfTable.build(Family.BINOMIAL, arik_coon, small_binomial, (1.5, -0.25, -0.25), Method.DIRECT)
    assert table.out_of_range == (0, 1, 2)


def test_moment_report_csv():
    report = MomentReport.compare(1, 0.5, 0.5 + 1e-12)
    text = moment_reports_to_csv([report])
    assert text.splitlines()[0] == 'name,order,closed_form,brute_force,abs_err,rel_err'
    assert report.rel_err < 1e-11


def test_sampling_is_reproducible(arik_coon):
    table = binomial_pmf(arik_coon, BinomialParams(n=10, p0=0.4))
    first = sample(table, seed=7, count=500)
    assert first == sample(table, seed=7, count=500)
    assert all(0 <= value <= 10 for value in first)


def test_sampling_mean_within_standard_errors(arik_coon):
    table = binomial_pmf(arik_coon, BinomialParams(n=10, p0=0.4))
    draws = sample(table, seed=20240601, count=100000)
    mean, standard_error = empirical_mean(draws, arik_coon.number)
    assert abs(mean - table.expectation(arik_coon.number)) <= 4 * standard_error


def test_sampling_rejects_bad_tables(arik_coon, small_binomial):
    unnormalized = PmfTable.build(Family.BINOMIAL, arik_coon, small_binomial, (0.5, 0.2, 0.1), Method.DIRECT)
    with pytest.raises(RejectionError):
        sample(unnormalized, seed=1)
    negative = PmfTable.build(Family.BINOMIAL, arik_coon, small_binomial, (0.75, 0.5, -0.25), Method.DIRECT)
    with pytest.raises(RejectionError):
        sample(negative, seed=1)
