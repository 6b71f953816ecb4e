"""
Vandermonde 公式、Stirling 表与经典矩换算
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rpq.audit.report import residual
from rpq.config.settings import AppConstants
from rpq.core.combinatorics import (StirlingKind, Variant, binomial_lemma_sides, classical_binomial_moment,
                                    classical_factorial_moment, conditioned_stirling_table, euler_expansion,
                                    exact_arik_coon_stirling_first, fresh_points, negative_binomial_coefficient,
                                    negative_vandermonde, reciprocal_factorial_series, stirling_residual,
                                    stirling_table, vandermonde, vandermonde_terms)
from rpq.core.deformation import (DeformationSpec, binomial_coefficient, falling_factorial,
                                  shifted_factorial_plus)
from rpq.core.errors import ConvergenceError, DependencyError, DomainError, SingularInputError

grid_values = st.integers(min_value=-2, max_value=8).map(lambda k: k / 2)


@settings(max_examples=60)
@given(grid_values, grid_values, st.integers(min_value=1, max_value=6), st.sampled_from(list(Variant)))
def test_vandermonde_matches_falling_factorial(u, v, n, variant):
    d = DeformationSpec.jagannathan_srinivasa(0.9, 0.5)
    expected = falling_factorial(d, u + v, n)
    assert vandermonde(d, u, v, n, variant) == pytest.approx(expected, rel=1e-8, abs=1e-8)


def test_vandermonde_requires_positive_n(arik_coon):
    with pytest.raises(DomainError):
        vandermonde(arik_coon, 1.0, 1.0, 0)
    with pytest.raises(DomainError):
        vandermonde(arik_coon, 1.0, 1.0, 2, variant='C')


@pytest.mark.parametrize("variant", list(Variant))
def test_negative_vandermonde_example(arik_coon, variant):
    value = negative_vandermonde(arik_coon, 1.0, 1.0, 1, variant=variant)
    assert value == pytest.approx(1 / arik_coon.number(3), rel=1e-10)


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("u, v, n", [(0.0, 2.0, 1), (2.0, 1.0, 1), (1.0, 0.5, 2), (3.0, -0.5, 2)])
def test_negative_vandermonde_terminating_points(matched_deformation, u, v, n, variant):
    d = matched_deformation
    value = negative_vandermonde(d, u, v, n, variant=variant)
    assert value == pytest.approx(falling_factorial(d, u + v, -n), rel=1e-8)


def test_negative_vandermonde_nonterminating_orientation():
    arik_coon = DeformationSpec.arik_coon(0.5)
    # eps2/eps1 < 1：B 式收敛到 [2]_{-2}，A 式的和是另一个数
    assert negative_vandermonde(arik_coon, 0.5, 1.5, 2, variant=Variant.B) == pytest.approx(
        falling_factorial(arik_coon, 2.0, -2), rel=1e-8)
    with pytest.raises(ConvergenceError):
        negative_vandermonde(arik_coon, 0.5, 1.5, 2, variant=Variant.A)
    quesne = DeformationSpec.quesne(0.5)
    with pytest.raises(ConvergenceError):
        negative_vandermonde(quesne, 0.5, 1.5, 2, variant=Variant.B)


def test_reciprocal_series_example(arik_coon):
    value = reciprocal_factorial_series(arik_coon, 0.0, 3.0, 2)
    assert value == pytest.approx(0.380952, abs=1e-6)
    assert value == pytest.approx(1 / falling_factorial(arik_coon, 3.0, 2), rel=1e-10)


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("u, v, n", [(1.0, 2.0, 1), (2.0, 2.5, 1), (1.0, 3.0, 2), (0.5, 2.5, 1)])
def test_reciprocal_series_terminating_points(matched_deformation, u, v, n, variant):
    d = matched_deformation
    if not float(u).is_integer():
        # (0.5, 2.5, 1) 在 k=2 处 [u+v-n-k]=[0]
        with pytest.raises((SingularInputError, ConvergenceError)):
            reciprocal_factorial_series(d, u, v, n, variant=variant)
        return
    value = reciprocal_factorial_series(d, u, v, n, variant=variant)
    assert value * falling_factorial(d, v, n) == pytest.approx(1.0, rel=1e-8)


def test_reciprocal_series_rejects_nonterminating_wrong_side(arik_coon):
    with pytest.raises(ConvergenceError):
        reciprocal_factorial_series(arik_coon, 1.6, 2.3, 2, variant=Variant.A)
    # B 式的项比趋于 q^-v > 1
    with pytest.raises(ConvergenceError):
        reciprocal_factorial_series(arik_coon, 1.6, 2.3, 2, variant=Variant.B)


@pytest.mark.parametrize("variant", list(Variant))
def test_vandermonde_cancellation_is_relative_to_terms(variant):
    d = DeformationSpec.arik_coon(0.3)
    terms = vandermonde_terms(d, -1.0, 3.0, 6, variant)
    assert falling_factorial(d, 2.0, 6) == 0.0
    magnitude = math.fsum(abs(term) for term in terms)
    assert magnitude > 1e6
    assert residual(math.fsum(terms), 0.0, magnitude) < 1e-12
    assert vandermonde(d, -1.0, 3.0, 6, variant) == math.fsum(terms)


def test_negative_binomial_closed_form(matched_deformation):
    d = matched_deformation
    for n in range(1, 5):
        for k in range(5):
            assert negative_binomial_coefficient(d, n, k) == pytest.approx(binomial_coefficient(d, -n, k),
                                                                           rel=1e-9)


def test_euler_expansion_equals_shifted_factorial(matched_deformation):
    d = matched_deformation
    for n in range(7):
        assert euler_expansion(d, 0.5, 2.0, n) == pytest.approx(shifted_factorial_plus(d, 0.5, 2.0, n), rel=1e-9)


def test_lemma_sides_agree_for_unit_epsilon1(arik_coon):
    for n in range(6):
        left, right = binomial_lemma_sides(arik_coon, 0.5, 1.5, 0.5, n)
        assert left == pytest.approx(right, rel=1e-10)


def test_stirling_first_small_example(arik_coon):
    table = stirling_table(arik_coon, StirlingKind.FIRST, 0, 4)
    assert table.row(2) == pytest.approx((0.0, -1.0, 1.0), abs=1e-12)
    assert table.entry(0, 0) == pytest.approx(1.0)
    assert table.entry(2, 3) == 0.0


def test_stirling_second_small_example(arik_coon):
    table = stirling_table(arik_coon, StirlingKind.SECOND, 0, 4)
    assert table.row(2) == pytest.approx((0.0, 1.0, 1.0), abs=1e-12)


def test_stirling_matches_exact_oracle(arik_coon):
    table = stirling_table(arik_coon, StirlingKind.FIRST, 0, 6)
    exact = exact_arik_coon_stirling_first(Fraction(1, 2), 6)
    for n in range(7):
        for k in range(n + 1):
            assert table.entry(n, k) == pytest.approx(float(exact[n][k]), rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("kind", list(StirlingKind))
@pytest.mark.parametrize("j", [0, 1, 2])
def test_stirling_defining_identity(unit_epsilon1_deformation, kind, j):
    table = conditioned_stirling_table(unit_epsilon1_deformation, kind, j, 8)
    assert 1 <= table.n_max <= 8
    for n in range(table.n_max + 1):
        assert stirling_residual(table, n, fresh_points(kind, j, n)) < 1e-7


def test_stirling_not_polynomial_without_unit_epsilon1(jagannathan_srinivasa):
    # eps1 != 1 时 [x-j]_n 不是 [x] 的多项式，插值在新点上不成立
    table = stirling_table(jagannathan_srinivasa, StirlingKind.FIRST, 0, 2)
    assert stirling_residual(table, 2, fresh_points(StirlingKind.FIRST, 0, 2)) > 1e-3


def test_conditioned_table_reduces_order():
    d = DeformationSpec.quesne(0.5)
    for kind in StirlingKind:
        table = conditioned_stirling_table(d, kind, 0, 20)
        assert table.n_max < 20
        assert table.condition <= AppConstants.CONDITION_LIMIT
    assert conditioned_stirling_table(DeformationSpec.arik_coon(0.5), StirlingKind.FIRST, 0, 4).n_max == 4


def test_stirling_limits(arik_coon):
    with pytest.raises(DomainError):
        stirling_table(arik_coon, StirlingKind.FIRST, 0, 21)
    table = stirling_table(arik_coon, StirlingKind.FIRST, 0, 3)
    with pytest.raises(DependencyError):
        table.entry(4, 1)


def test_stirling_serialization(arik_coon):
    data = stirling_table(arik_coon, StirlingKind.SECOND, 1, 3).to_dict()
    assert data['kind'] == 'second'
    assert data['j'] == 1
    assert data['n_max'] == 3
    assert data['deformation']['kind'] == 'arik-coon'
    assert [len(row) for row in data['entries']] == [1, 2, 3, 4]


def test_q_binomial_to_classical_binomial(arik_coon):
    for x in range(7):
        moments = [binomial_coefficient(arik_coon, x, m) for m in range(x + 1)]
        for j in range(x + 1):
            assert classical_binomial_moment(arik_coon, moments, j) == pytest.approx(math.comb(x, j), abs=1e-7)


def test_classical_factorial_conversion_of_point_mass(arik_coon):
    # X = 4 恒定时 E[[X]_m] = [4]_m
    moments = [falling_factorial(arik_coon, 4, m) for m in range(5)]
    for j in range(5):
        assert classical_factorial_moment(arik_coon, moments, j) == pytest.approx(math.perm(4, j), abs=1e-7)


def test_conversion_requires_contiguous_moments(arik_coon):
    with pytest.raises(DependencyError):
        classical_factorial_moment(arik_coon, {1: 1.0, 3: 2.0}, 1)
