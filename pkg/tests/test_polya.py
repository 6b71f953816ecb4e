"""
Pólya、超几何与逆 Pólya 分布
"""

import math

import pytest

from rpq.core.deformation import DeformationSpec, falling_factorial
from rpq.core.errors import DomainError, SingularParameterError
from rpq.distributions.polya import (hypergeometric_pmf, inverse_polya_classical_factorial_moment,
                                     inverse_polya_factorial_moment, inverse_polya_moment_reports,
                                     inverse_polya_pmf, polya_classical_factorial_moment, polya_factorial_moment,
                                     polya_moment_reports, polya_pmf, urn_draw_probability,
                                     urn_draw_probability_counts)
from rpq.distributions.tables import Family, InversePolyaParams, Method, PolyaParams

POLYA_CASES = [
    PolyaParams(n=2, m=2.0, u=2.0),
    PolyaParams(n=3, m=2.5, u=3.5),
    PolyaParams.from_urn(n=3, r=2, s=3, x=1),
]


@pytest.mark.parametrize("params", POLYA_CASES)
def test_polya_normalized(matched_deformation, params):
    assert polya_pmf(matched_deformation, params).normalization_residual < 1e-9


@pytest.mark.parametrize("params", POLYA_CASES)
def test_polya_recursion_matches_direct(grid_deformation, params):
    direct = polya_pmf(grid_deformation, params, Method.DIRECT)
    recursive = polya_pmf(grid_deformation, params, Method.RECURSIVE)
    assert recursive.probs == pytest.approx(direct.probs, rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("params", POLYA_CASES)
def test_polya_factorial_moments(arik_coon, params):
    for report in polya_moment_reports(arik_coon, params, (1, 2)):
        assert report.abs_err < 1e-9


def test_from_urn_parameters():
    params = PolyaParams.from_urn(n=3, r=2, s=3, x=1)
    assert (params.m, params.u, params.x_step) == (-2.0, -3.0, 1)
    with pytest.raises(DomainError):
        PolyaParams.from_urn(n=3, r=2, s=3, x=0)


def test_hypergeometric_family(arik_coon):
    table = hypergeometric_pmf(arik_coon, 3, 4.0, 5.0)
    assert table.family == Family.HYPERGEOMETRIC
    assert table.normalization_residual < 1e-9
    assert len(table.probs) == 4


def test_hypergeometric_classical_limit():
    d = DeformationSpec.arik_coon(1.0 - 1e-6)
    table = hypergeometric_pmf(d, 3, 4.0, 5.0)
    for k, prob in enumerate(table.probs):
        assert prob == pytest.approx(math.comb(4, k) * math.comb(5, 3 - k) / math.comb(9, 3), abs=1e-3)


def test_polya_singular_parameters(arik_coon):
    # [m+u]_n 含 [0]
    with pytest.raises(SingularParameterError):
        polya_pmf(arik_coon, PolyaParams(n=2, m=0.5, u=0.5))


def test_polya_classical_mean(arik_coon):
    params = PolyaParams(n=3, m=2.5, u=3.5)
    table = polya_pmf(arik_coon, params)
    assert polya_classical_factorial_moment(arik_coon, params, 1) == pytest.approx(table.expectation(float),
                                                                                   abs=1e-7)


def test_inverse_polya_example(arik_coon):
    params = InversePolyaParams(n=2, m=2.0, u=2.0)
    assert inverse_polya_factorial_moment(arik_coon, params, 2) == pytest.approx(0.3, abs=1e-12)
    table = inverse_polya_pmf(arik_coon, params)
    # [u]_y = 0 对 y >= 3，支撑有限
    assert not table.truncated
    assert table.probs == pytest.approx((16 / 35, 12 / 35, 0.2), abs=1e-12)
    assert table.expectation(lambda y: falling_factorial(arik_coon, y, 2)) == pytest.approx(0.3, abs=1e-12)


@pytest.mark.parametrize("params", [InversePolyaParams(n=1, m=1.0, u=1.0),
                                    InversePolyaParams(n=2, m=2.3, u=2.0)])
def test_inverse_polya_recursion_and_moments(arik_coon, params):
    direct = inverse_polya_pmf(arik_coon, params)
    recursive = inverse_polya_pmf(arik_coon, params, Method.RECURSIVE)
    assert direct.normalization_residual < 1e-6
    assert recursive.probs == pytest.approx(direct.probs, rel=1e-10, abs=1e-15)
    for report in inverse_polya_moment_reports(arik_coon, params, (1, 2), direct):
        assert report.abs_err < 1e-5


@pytest.mark.parametrize("q", [0.3, 0.5, 0.9])
def test_inverse_polya_integer_u_is_a_distribution(q):
    d = DeformationSpec.arik_coon(q)
    table = inverse_polya_pmf(d, InversePolyaParams(n=2, m=2.3, u=2.0))
    assert not table.truncated
    assert not table.out_of_range
    assert table.normalization_residual < 1e-9


def test_inverse_polya_classical_mean(arik_coon):
    params = InversePolyaParams(n=1, m=1.0, u=1.0)
    table = inverse_polya_pmf(arik_coon, params)
    value = inverse_polya_classical_factorial_moment(arik_coon, params, 1)
    assert value == pytest.approx(table.expectation(float), abs=1e-5)


def test_inverse_polya_requires_positive_n():
    with pytest.raises(DomainError):
        InversePolyaParams(n=0, m=1.0, u=1.0)


@pytest.mark.parametrize("r, s, x", [(2, 3, 1), (2, 0, 1), (3, 2, -1)])
def test_urn_draw_forms_agree(grid_deformation, r, s, x):
    for i in range(1, 4):
        for j in range(1, i + 1):
            assert urn_draw_probability(grid_deformation, i, j, -r / x, -s / x, x) == pytest.approx(
                urn_draw_probability_counts(grid_deformation, i, j, r, s, x), rel=1e-10)


def test_urn_classical_limit():
    d = DeformationSpec.arik_coon(1.0 - 1e-6)
    assert urn_draw_probability(d, 2, 1, -2.0, -3.0, 1) == pytest.approx(2 / 6, abs=1e-3)
