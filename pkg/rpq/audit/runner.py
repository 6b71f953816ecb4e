"""
审计运行模块
按固定顺序执行各套件；同一套件内的参数点并发求值，结果按提交顺序收集
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from ..config.settings import AppConstants, AppSettings, AuditGridConfig
from ..core.deformation import DeformationSpec, deformation_from_options
from ..core.errors import DomainError
from .identities import SUITE_CHECKS, SuiteContext, check_classical
from .report import AuditEntry, AuditReport


def point_deformation(point: Dict) -> DeformationSpec:
    """由参数点配置构造形变"""
    valid, message = AuditGridConfig.validate_point_config(point)
    if not valid:
        raise DomainError(f"参数点 {point.get('name', '?')} 无效: {message}")
    return deformation_from_options(point['kind'], p=point.get('p'), q=point['q'],
                                    mu=point.get('mu'), nu=point.get('nu'), g=point.get('g'))


class AuditRunner:
    """
    恒等式审计
    套件顺序与 AppConstants.AUDIT_SUITES 一致
    """

    def __init__(self, settings: AppSettings = None, points: Optional[Sequence[Dict]] = None,
                 suites: Optional[Sequence[str]] = None, workers: Optional[int] = None):
        self.settings = settings or AppSettings()
        self.points = list(points) if points is not None else AuditGridConfig.get_default_points()
        self.probes = AuditGridConfig.get_classical_probes()
        self.suites = self._select_suites(suites)
        self.workers = workers or self.settings.get('audit_workers')
        self.logger = logging.getLogger(__name__)

        # 构造失败的参数点直接报错，不进入审计
        self.deformations = [(point['name'], point_deformation(point)) for point in self.points]

    @staticmethod
    def _select_suites(suites) -> List[str]:
        if not suites:
            return list(AppConstants.AUDIT_SUITES)
        unknown = [suite for suite in suites if suite not in AppConstants.AUDIT_SUITES]
        if unknown:
            raise DomainError(f"未知审计套件: {', '.join(unknown)}")
        # 保持标准顺序
        return [suite for suite in AppConstants.AUDIT_SUITES if suite in suites]

    def _run_point(self, suite, name, deformation, check) -> List[AuditEntry]:
        ctx = SuiteContext(suite, name, deformation, self.settings)
        check(ctx)
        return ctx.entries

    def run_suite(self, suite) -> List[AuditEntry]:
        """在全部参数点上执行一个套件"""
        check = SUITE_CHECKS[suite]
        self.logger.info(f"开始套件 {suite}: {len(self.deformations)} 个参数点")
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            futures = [executor.submit(self._run_point, suite, name, deformation, check)
                       for name, deformation in self.deformations]
            entries = [entry for future in futures for entry in future.result()]

        if suite == 'classical':
            for probe in self.probes:
                entries.extend(self._run_point(suite, probe['name'], point_deformation(probe), check_classical))

        failed = sum(1 for entry in entries if entry.status.value == 'fail')
        self.logger.info(f"完成套件 {suite}: {len(entries)} 条, 失败 {failed} 条")
        return entries

    def run(self) -> AuditReport:
        report = AuditReport()
        for suite in self.suites:
            report.extend(self.run_suite(suite))
        summary = report.summary()
        self.logger.info(f"审计完成: 共 {summary['total']} 条, 通过 {summary['pass']}, "
                         f"失败 {summary['fail']}, 仅报告 {summary['reported']}")
        return report

    def get_session_info(self) -> Dict:
        return {
            'suites': list(self.suites),
            'points': [name for name, _ in self.deformations],
            'probes': [probe['name'] for probe in self.probes],
            'workers': self.workers,
        }


def run_audit(settings: AppSettings = None, suites=None, points=None, workers=None) -> AuditReport:
    """便捷入口"""
    return AuditRunner(settings, points, suites, workers).run()
