"""
广义 Quesne 显式公式与桥接形变上的通用引擎
"""

import pytest

from rpq.audit.identities import SuiteContext, check_quesne
from rpq.audit.report import AuditStatus
from rpq.core.deformation import DeformationSpec, quesne_bridge
from rpq.core.errors import DomainError
from rpq.distributions.binomial import binomial_factorial_moment, binomial_mean, binomial_pmf, binomial_variance
from rpq.distributions.euler import euler_pmf
from rpq.distributions.polya import (inverse_polya_factorial_moment, inverse_polya_pmf, inverse_polya_ratio,
                                     polya_factorial_moment, polya_pmf)
from rpq.distributions.quesne import QuesneRemarks, quesne_number
from rpq.distributions.tables import BinomialParams, EulerParams, InversePolyaParams, PolyaParams


@pytest.fixture
def remarks(generalized_quesne):
    return QuesneRemarks(generalized_quesne)


@pytest.fixture
def bridge(generalized_quesne):
    return quesne_bridge(generalized_quesne)


def test_quesne_number_matches_deformation(generalized_quesne):
    for n in range(6):
        assert quesne_number(1.2, 0.7, n) == pytest.approx(generalized_quesne.number(n), abs=1e-12)


def test_commutation_relations(remarks):
    p, q = remarks.p, remarks.q
    for n in range(8):
        assert remarks.number(n + 1) / p - remarks.number(n) == pytest.approx(q ** (-n - 1), rel=1e-10)
        assert q * remarks.number(n + 1) - remarks.number(n) == pytest.approx(p ** (n + 1), rel=1e-10)


def test_binomial_formulas(remarks, bridge):
    params = BinomialParams(n=5, p0=0.3)
    assert remarks.binomial_pmf(params) == pytest.approx(binomial_pmf(bridge, params).probs, rel=1e-9)
    for j in (1, 2, 3):
        assert remarks.binomial_factorial_moment(params, j) == pytest.approx(
            binomial_factorial_moment(bridge, params, j), rel=1e-9)
    assert remarks.binomial_mean(params) == pytest.approx(binomial_mean(bridge, params), rel=1e-9)
    assert remarks.binomial_variance(params) == pytest.approx(binomial_variance(bridge, params), rel=1e-9)


def test_euler_formulas(remarks, bridge):
    params = EulerParams(theta=0.5)
    table = euler_pmf(bridge, params)
    assert remarks.euler_pmf(params, len(table.probs)) == pytest.approx(table.probs, rel=1e-9, abs=1e-15)


def test_polya_formulas(remarks, bridge):
    params = PolyaParams(n=3, m=2.5, u=3.5)
    assert remarks.polya_pmf(params) == pytest.approx(polya_pmf(bridge, params).probs, rel=1e-9)
    for j in (1, 2):
        assert remarks.polya_factorial_moment(params, j) == pytest.approx(
            polya_factorial_moment(bridge, params, j), rel=1e-9)


def test_inverse_polya_formulas(remarks, bridge):
    params = InversePolyaParams(n=2, m=2.3, u=2.0, x_step=-1)
    table = inverse_polya_pmf(bridge, params)
    # u=2 时支撑为 0..2
    assert not table.truncated
    assert len(table.probs) == 3
    for y in range(2):
        assert remarks.inverse_polya_ratio(params, y) == pytest.approx(inverse_polya_ratio(bridge, params, y),
                                                                       rel=1e-9)
    assert remarks.inverse_polya_pmf(params, len(table.probs)) == pytest.approx(table.probs, rel=1e-9,
                                                                                abs=1e-15)
    for j in (1, 2):
        assert remarks.inverse_polya_factorial_moment(params, j) == pytest.approx(
            inverse_polya_factorial_moment(bridge, params, j), rel=1e-9)


def test_remarks_require_generalized_quesne():
    with pytest.raises(DomainError):
        QuesneRemarks(DeformationSpec.quesne(0.5))


@pytest.mark.parametrize("p, q", [(1.2, 0.7), (1.1, 0.8)])
def test_quesne_suite_passes(p, q):
    d = DeformationSpec.generalized_quesne(p, q)
    ctx = SuiteContext('quesne', d.label, d)
    check_quesne(ctx)
    assert ctx.entries
    assert all(entry.status == AuditStatus.PASS for entry in ctx.entries), \
        [(entry.identity_id, entry.max_residual, entry.message) for entry in ctx.entries]


def test_quesne_suite_multi_parameter():
    d = DeformationSpec.multi_parameter(1.1, 0.8, mu=1.0, nu=0.0, g_value=1.0)
    ctx = SuiteContext('quesne', d.label, d)
    check_quesne(ctx)
    assert [entry.identity_id for entry in ctx.entries] == ['deformation.multi_parameter_rescaling']
    assert ctx.entries[0].status == AuditStatus.PASS


def test_quesne_suite_skips_other_kinds(arik_coon):
    ctx = SuiteContext('quesne', arik_coon.label, arik_coon)
    check_quesne(ctx)
    assert ctx.entries == []
