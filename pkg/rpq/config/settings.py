"""
配置设置模块
管理数值容差、级数截断、审计网格等运行期设置
不读取配置文件，所有覆盖值来自命令行参数
"""

import copy
import logging
from typing import Dict, List


class AppSettings:
    """
    应用设置管理器
    以默认值字典为基础，保存命令行传入的覆盖值
    """

    DEFAULTS = {
        'tolerance': 1e-9,
        'series_tol': 1e-12,
        'max_terms': 10000,
        'tail_tol': 1e-12,
        'tau': 0,
        'seed': 20240601,
        'sample_count': 100000,
        'audit_workers': 4,
        'stirling_n_max': 8,
        'output_format': 'text',
        'log_level': 'WARNING',
    }

    def __init__(self, **overrides):
        self.logger = logging.getLogger(__name__)
        self._init_default_settings()
        self.update(**overrides)

    def _init_default_settings(self):
        """初始化默认设置"""
        self.settings = copy.deepcopy(self.DEFAULTS)

    def get(self, key, default_value=None):
        """获取设置值"""
        return self.settings.get(key, default_value)

    def set(self, key, value):
        """设置值"""
        if key not in self.DEFAULTS:
            raise KeyError(f"未知设置项: {key}")
        self.settings[key] = value

    def update(self, **overrides):
        """批量写入覆盖值，值为 None 的项保持默认"""
        for key, value in overrides.items():
            if value is None:
                continue
            self.set(key, value)
            self.logger.debug(f"设置覆盖: {key}={value}")

    def get_series_settings(self) -> Dict:
        """获取级数截断设置"""
        return {
            'tol': self.get('series_tol'),
            'max_terms': self.get('max_terms'),
        }

    def get_tail_settings(self) -> Dict:
        """获取分布尾部截断设置"""
        return {
            'tail_tol': self.get('tail_tol'),
            'max_terms': self.get('max_terms'),
        }

    def get_sampling_settings(self) -> Dict:
        """获取抽样设置"""
        return {
            'seed': self.get('seed'),
            'count': self.get('sample_count'),
        }

    def reset_to_defaults(self):
        """重置为默认设置"""
        self._init_default_settings()


class AuditGridConfig:
    """
    审计网格配置
    定义 verify 使用的默认参数点
    """

    @staticmethod
    def get_default_points() -> List[Dict]:
        """获取默认审计参数点"""
        return [
            {"name": "arik-coon/q=0.3", "kind": "arik-coon", "q": 0.3},
            {"name": "arik-coon/q=0.5", "kind": "arik-coon", "q": 0.5},
            {"name": "arik-coon/q=0.9", "kind": "arik-coon", "q": 0.9},
            {"name": "jagannathan-srinivasa/p=0.9,q=0.5", "kind": "jagannathan-srinivasa",
             "p": 0.9, "q": 0.5},
            {"name": "jagannathan-srinivasa/p=1.0,q=0.7", "kind": "jagannathan-srinivasa",
             "p": 1.0, "q": 0.7},
            {"name": "chakrabarty-jagannathan/p=0.9,q=0.5", "kind": "chakrabarty-jagannathan",
             "p": 0.9, "q": 0.5},
            {"name": "quesne/q=0.5", "kind": "quesne", "q": 0.5},
            {"name": "quesne/q=0.8", "kind": "quesne", "q": 0.8},
            {"name": "generalized-quesne/p=1.2,q=0.7", "kind": "generalized-quesne",
             "p": 1.2, "q": 0.7},
            {"name": "generalized-quesne/p=1.1,q=0.8", "kind": "generalized-quesne",
             "p": 1.1, "q": 0.8},
            # nu=3 违反 p^mu < q^(nu-1)，改用 nu=0
            {"name": "multi-parameter/p=1.1,q=0.8,mu=1,nu=0,g=1", "kind": "multi-parameter",
             "p": 1.1, "q": 0.8, "mu": 1.0, "nu": 0.0, "g": 1.0},
        ]

    @staticmethod
    def get_classical_probes() -> List[Dict]:
        """q 接近 1 的经典极限探针，只用于 classical 套件"""
        return [
            {"name": "probe/arik-coon/q=1-1e-6", "kind": "arik-coon", "q": 1.0 - 1e-6},
            {"name": "probe/jagannathan-srinivasa/p=1-1e-7,q=1-1e-6", "kind": "jagannathan-srinivasa",
             "p": 1.0 - 1e-7, "q": 1.0 - 1e-6},
        ]

    @staticmethod
    def validate_point_config(point_config):
        """验证参数点配置的有效性"""
        required_fields = ['name', 'kind', 'q']

        for field in required_fields:
            if field not in point_config:
                return False, f"缺少必要字段: {field}"

        if point_config['kind'] not in AppConstants.KIND_NAMES:
            return False, f"未知形变种类: {point_config['kind']}"

        if point_config['kind'] == 'multi-parameter':
            for field in ('p', 'mu', 'nu'):
                if field not in point_config:
                    return False, f"multi-parameter 缺少字段: {field}"

        for field in ('p', 'q', 'g'):
            value = point_config.get(field)
            if value is not None and (not isinstance(value, (int, float)) or value <= 0):
                return False, f"{field} 必须是正实数"

        # 定义域的最终判断交给 DeformationSpec 构造
        from ..core.deformation import deformation_from_options
        from ..core.errors import DomainError
        try:
            deformation_from_options(
                point_config['kind'],
                p=point_config.get('p'),
                q=point_config['q'],
                mu=point_config.get('mu'),
                nu=point_config.get('nu'),
                g=point_config.get('g'),
            )
        except DomainError as e:
            return False, str(e)

        return True, "OK"


class AppConstants:
    """
    应用常量定义
    """

    # 应用信息
    APP_NAME = "rpq"
    APP_VERSION = "1.0.0"
    APP_DISPLAY_NAME = "R(p,q) 形变数与形变离散分布工具"

    # 形变种类（命令行名称）
    KIND_NAMES = (
        'arik-coon',
        'quesne',
        'jagannathan-srinivasa',
        'chakrabarty-jagannathan',
        'generalized-quesne',
        'multi-parameter',
    )

    # 数值设置
    DEFAULT_TOLERANCE = 1e-9
    DEFAULT_SERIES_TOL = 1e-12
    DEFAULT_MAX_TERMS = 10000
    SMALL_TERM_RUN = 3  # 连续小项个数
    STIRLING_N_MAX = 20
    CONDITION_LIMIT = 1e12
    RANGE_SLACK = 1e-9
    CUSTOM_PROBES = 64
    SAMPLING_RESIDUAL_LIMIT = 1e-6

    # 输出设置
    OUTPUT_FORMATS = ('json', 'csv', 'text')

    # 审计套件
    AUDIT_SUITES = (
        'structural',
        'vandermonde',
        'stirling',
        'exponential',
        'normalization',
        'recursion',
        'moments',
        'conversions',
        'quesne',
        'classical',
        'sampling',
    )
