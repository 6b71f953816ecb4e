"""
形变数、阶乘与二项式系数
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rpq.core.deformation import (DeformationKind, DeformationSpec, Polynomial, binomial_coefficient,
                                  deformation_from_options, factorial, falling_factorial,
                                  multi_parameter_rescaled, polynomial_derivative, quesne_bridge,
                                  shifted_factorial_minus, shifted_factorial_plus)
from rpq.core.errors import DomainError, SingularInputError

half_steps = st.integers(min_value=-6, max_value=8).map(lambda k: k / 2)
unit_q = st.floats(min_value=0.1, max_value=0.9)


def test_arik_coon_examples(arik_coon):
    assert arik_coon.number(3) == pytest.approx(1.75, abs=1e-15)
    assert factorial(arik_coon, 3) == pytest.approx(2.625, abs=1e-15)
    assert binomial_coefficient(arik_coon, 4, 2) == pytest.approx(2.1875, abs=1e-14)


def test_number_at_zero_is_zero(grid_deformation):
    assert grid_deformation.number(0) == 0.0


def test_quesne_structure_constant():
    d = DeformationSpec.quesne(0.5)
    assert d.structure_constant == pytest.approx(2.0)
    assert (d.epsilon1, d.epsilon2) == (1.0, 2.0)


def test_structure_constants_by_kind():
    assert DeformationSpec.jagannathan_srinivasa(0.9, 0.5).epsilon1 == pytest.approx(0.9)
    assert DeformationSpec.chakrabarty_jagannathan(0.9, 0.5).epsilon1 == pytest.approx(1 / 0.9)
    gq = DeformationSpec.generalized_quesne(1.2, 0.7)
    assert (gq.epsilon1, gq.epsilon2) == pytest.approx((1.2, 1 / 0.7))


@pytest.mark.parametrize("kind, p, q", [
    ('arik-coon', None, 1.5),
    ('quesne', None, 0.0),
    ('quesne', None, -0.5),
    ('chakrabarty-jagannathan', 0.0, 0.5),
    ('generalized-quesne', 1.2, 0.0),
    ('jagannathan-srinivasa', 0.5, 0.9),
    ('chakrabarty-jagannathan', 1.2, 0.5),
    ('generalized-quesne', 0.9, 0.5),
    ('generalized-quesne', 1.5, 0.8),
])
def test_domain_violations(kind, p, q):
    with pytest.raises(DomainError):
        deformation_from_options(kind, p=p, q=q)


def test_multi_parameter_domain():
    # p^mu < q^(nu-1) 不成立
    with pytest.raises(DomainError):
        DeformationSpec.multi_parameter(1.1, 0.8, mu=1.0, nu=3.0)
    d = DeformationSpec.multi_parameter(1.1, 0.8, mu=1.0, nu=0.0)
    assert not d.is_matched


def test_options_require_q():
    with pytest.raises(DomainError):
        deformation_from_options('arik-coon')
    with pytest.raises(DomainError):
        deformation_from_options('jagannathan-srinivasa', q=0.5)


def test_negative_order_falling_factorial(arik_coon):
    assert falling_factorial(arik_coon, 2.0, -1) == pytest.approx(1 / arik_coon.number(3))
    assert falling_factorial(arik_coon, 3.0, 0) == 1.0


def test_singular_negative_order():
    d = DeformationSpec.arik_coon(0.5)
    with pytest.raises(SingularInputError):
        falling_factorial(d, -1.0, -1)


def test_binomial_coefficient_rejects_negative_k(arik_coon):
    with pytest.raises(DomainError):
        binomial_coefficient(arik_coon, 3, -1)


@given(unit_q, half_steps, half_steps)
def test_addition_law_arik_coon(q, a, b):
    d = DeformationSpec.arik_coon(q)
    expected = d.number(a) + q ** a * d.number(b)
    assert d.number(a + b) == pytest.approx(expected, rel=1e-9, abs=1e-9)


@given(unit_q, half_steps)
def test_reflection_arik_coon(q, y):
    d = DeformationSpec.arik_coon(q)
    assert d.number(-y) == pytest.approx(-q ** (-y) * d.number(y), rel=1e-9, abs=1e-12)


@given(st.integers(min_value=0, max_value=12), st.data())
def test_binomial_symmetry(m, data):
    k = data.draw(st.integers(min_value=0, max_value=m))
    d = DeformationSpec.jagannathan_srinivasa(0.9, 0.5)
    assert binomial_coefficient(d, m, k) == pytest.approx(binomial_coefficient(d, m, m - k), rel=1e-12)


def test_pascal_recursion(matched_deformation):
    d = matched_deformation
    for x in range(1, 9):
        for k in range(1, x + 1):
            expected = (d.epsilon1 ** k * binomial_coefficient(d, x - 1, k)
                        + d.epsilon2 ** (x - k) * binomial_coefficient(d, x - 1, k - 1))
            assert binomial_coefficient(d, x, k) == pytest.approx(expected, rel=1e-10)


def test_shifted_factorials(arik_coon):
    assert shifted_factorial_plus(arik_coon, 1.0, 1.0, 2) == pytest.approx(2.0 * 1.5)
    assert shifted_factorial_minus(arik_coon, 1.0, 0.5, 2) == pytest.approx(0.5 * 0.75)
    assert shifted_factorial_minus(arik_coon, 1.0, 0.5, 0) == 1.0


def test_polynomial_derivative(arik_coon):
    f = Polynomial((1.0, 2.0, 3.0))
    derivative = polynomial_derivative(arik_coon, f)
    assert derivative.coefficients == pytest.approx((2.0, 3.0 * 1.5))
    assert polynomial_derivative(arik_coon, Polynomial.monomial(0)).is_zero
    assert Polynomial.monomial(2).times_z().degree == 3
    assert f(2.0) == pytest.approx(17.0)


def test_base_change_is_derived(arik_coon):
    base = arik_coon.base_changed(-1)
    assert base.derived
    assert base.q == pytest.approx(0.5)
    flipped = arik_coon.base_changed(1)
    assert flipped.q == pytest.approx(2.0)
    with pytest.raises(DomainError):
        arik_coon.base_changed(0)


def test_descriptor_round_trip(grid_deformation):
    rebuilt = DeformationSpec.from_descriptor(grid_deformation.descriptor())
    assert rebuilt == grid_deformation


def test_custom_deformation_matches_closed_form():
    p, q = 0.9, 0.5
    d = DeformationSpec.custom(p, q, lambda u, v: (u - v) / (p - q), epsilon1=p, epsilon2=q)
    reference = DeformationSpec.jagannathan_srinivasa(p, q)
    assert d.kind == DeformationKind.CUSTOM
    for x in (0.5, 1, 2, 5):
        assert d.number(x) == pytest.approx(reference.number(x), rel=1e-12)
    assert not d.is_matched


def test_custom_requires_vanishing_origin():
    with pytest.raises(DomainError):
        DeformationSpec.custom(0.9, 0.5, lambda u, v: u + v, epsilon1=0.9, epsilon2=0.5)


def test_quesne_bridge(generalized_quesne):
    d = generalized_quesne
    bridge = quesne_bridge(d)
    for n in range(1, 8):
        assert bridge.number(n) == pytest.approx(d.q / d.p * d.number(n), rel=1e-12)
    with pytest.raises(DomainError):
        quesne_bridge(DeformationSpec.arik_coon(0.5))


def test_multi_parameter_rescaling():
    d = DeformationSpec.multi_parameter(1.1, 0.8, mu=1.0, nu=0.0, g_value=2.0)
    quesne = DeformationSpec.generalized_quesne(1.1, 0.8)
    for n in range(1, 6):
        assert multi_parameter_rescaled(d, n) == pytest.approx(2.0 * (1 / 1.1) ** n * quesne.number(n), rel=1e-12)
        assert d.number(n) == pytest.approx(multi_parameter_rescaled(d, n), rel=1e-12)
