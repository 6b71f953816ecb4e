"""
测试公共夹具
"""

import pytest

from rpq.config.settings import AuditGridConfig
from rpq.core.deformation import DeformationSpec, deformation_from_options


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 完整审计网格，耗时较长")


@pytest.fixture
def arik_coon():
    return DeformationSpec.arik_coon(0.5)


@pytest.fixture
def jagannathan_srinivasa():
    return DeformationSpec.jagannathan_srinivasa(0.9, 0.5)


@pytest.fixture
def generalized_quesne():
    return DeformationSpec.generalized_quesne(1.2, 0.7)


def _grid():
    return [(point['name'], deformation_from_options(point['kind'], p=point.get('p'), q=point['q'],
                                                     mu=point.get('mu'), nu=point.get('nu'), g=point.get('g')))
            for point in AuditGridConfig.get_default_points()]


GRID = _grid()


@pytest.fixture(params=GRID, ids=[name for name, _ in GRID])
def grid_deformation(request):
    return request.param[1]


@pytest.fixture(params=[(name, d) for name, d in GRID if d.is_matched],
                ids=[name for name, d in GRID if d.is_matched])
def matched_deformation(request):
    return request.param[1]


@pytest.fixture(params=[(name, d) for name, d in GRID if d.is_matched and d.has_unit_epsilon1],
                ids=[name for name, d in GRID if d.is_matched and d.has_unit_epsilon1])
def unit_epsilon1_deformation(request):
    return request.param[1]
