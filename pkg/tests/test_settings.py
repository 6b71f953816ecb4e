"""
运行期设置与审计网格配置
"""

import pytest

from rpq.config.settings import AppConstants, AppSettings, AuditGridConfig


def test_defaults():
    settings = AppSettings()
    assert settings.get('tolerance') == 1e-9
    assert settings.get_series_settings() == {'tol': 1e-12, 'max_terms': 10000}
    assert settings.get_tail_settings() == {'tail_tol': 1e-12, 'max_terms': 10000}
    assert settings.get_sampling_settings() == {'seed': 20240601, 'count': 100000}


def test_overrides_skip_none():
    settings = AppSettings(tolerance=1e-6, seed=None, max_terms=50)
    assert settings.get('tolerance') == 1e-6
    assert settings.get('seed') == 20240601
    assert settings.get('max_terms') == 50
    settings.reset_to_defaults()
    assert settings.get('max_terms') == 10000


def test_defaults_are_not_shared():
    AppSettings(tau=3)
    assert AppSettings().get('tau') == 0


def test_unknown_key():
    with pytest.raises(KeyError):
        AppSettings(colour='red')
    assert AppSettings().get('colour', 'none') == 'none'


@pytest.mark.parametrize("point", AuditGridConfig.get_default_points() + AuditGridConfig.get_classical_probes(),
                         ids=lambda point: point['name'])
def test_grid_points_are_valid(point):
    assert AuditGridConfig.validate_point_config(point) == (True, "OK")
    assert point['kind'] in AppConstants.KIND_NAMES


def test_grid_covers_every_kind():
    kinds = {point['kind'] for point in AuditGridConfig.get_default_points()}
    assert kinds == set(AppConstants.KIND_NAMES)


@pytest.mark.parametrize("point, message", [
    ({"kind": "arik-coon", "q": 0.5}, "name"),
    ({"name": "x", "kind": "unknown", "q": 0.5}, "未知形变种类"),
    ({"name": "x", "kind": "multi-parameter", "p": 1.1, "q": 0.8}, "mu"),
    ({"name": "x", "kind": "arik-coon", "q": -0.5}, "q"),
])
def test_invalid_points(point, message):
    valid, reason = AuditGridConfig.validate_point_config(point)
    assert not valid
    assert message in reason


def test_domain_violation_is_reported():
    valid, _ = AuditGridConfig.validate_point_config({"name": "x", "kind": "arik-coon", "q": 1.5})
    assert not valid
