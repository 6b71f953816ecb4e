"""
审计报告模块
审计条目、汇总统计与 JSON/CSV/文本输出，以及报告文件的写出
"""

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Dict, Iterable, List, Optional

import numpy as np


class AuditStatus(str, Enum):
    PASS = 'pass'
    FAIL = 'fail'
    REPORTED = 'reported'


def residual(lhs, rhs, scale=0.0) -> float:
    """|a-b| / (1 + max(|a|, |b|, scale))"""
    return abs(lhs - rhs) / (1.0 + max(abs(lhs), abs(rhs), abs(scale)))


@dataclass(frozen=True)
class AuditEntry:
    """单个恒等式在单个参数点上的审计结果"""

    identity_id: str
    suite: str
    point: str
    kind: str
    max_residual: Optional[float]
    tolerance: float
    status: AuditStatus
    samples: int = 0
    message: str = ''
    parameters: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return {
            'identity_id': self.identity_id,
            'suite': self.suite,
            'point': self.point,
            'kind': self.kind,
            'max_residual': self.max_residual,
            'tolerance': self.tolerance,
            'status': self.status.value,
            'samples': self.samples,
            'message': self.message,
            'parameters': self.parameters,
        }


class AuditReport:
    """
    审计报告
    条目按套件、参数点的固定顺序排列
    """

    COLUMNS = ('status', 'suite', 'identity_id', 'point', 'kind', 'max_residual', 'tolerance',
               'samples', 'message')

    def __init__(self, entries: Iterable[AuditEntry] = ()):
        self.entries: List[AuditEntry] = list(entries)
        self.logger = logging.getLogger(__name__)

    def add(self, entry: AuditEntry):
        self.entries.append(entry)

    def extend(self, entries: Iterable[AuditEntry]):
        self.entries.extend(entries)

    def summary(self) -> Dict:
        counts = {status.value: 0 for status in AuditStatus}
        for entry in self.entries:
            counts[entry.status.value] += 1
        counts['total'] = len(self.entries)
        return counts

    @property
    def has_failures(self) -> bool:
        return any(entry.status == AuditStatus.FAIL for entry in self.entries)

    def failures(self) -> List[AuditEntry]:
        return [entry for entry in self.entries if entry.status == AuditStatus.FAIL]

    # ------------------------------------------------------------------
    # 输出
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict:
        return {
            'summary': self.summary(),
            'entries': [entry.to_dict() for entry in self.entries],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.COLUMNS)
        for entry in self.entries:
            row = entry.to_dict()
            writer.writerow(['' if row[column] is None else row[column] for column in self.COLUMNS])
        return buffer.getvalue()

    def to_text(self) -> str:
        lines = []
        for entry in self.entries:
            value = '-' if entry.max_residual is None else f"{entry.max_residual:.3e}"
            line = (f"{entry.status.value:<8} {entry.suite:<13} {entry.identity_id:<40} "
                    f"{entry.point:<45} {value:>10} <= {entry.tolerance:.0e}")
            if entry.message:
                line += f"  # {entry.message}"
            lines.append(line)
        summary = self.summary()
        lines.append(f"total={summary['total']} pass={summary['pass']} fail={summary['fail']} "
                     f"reported={summary['reported']}")
        return '\n'.join(lines) + '\n'

    def save(self, path) -> bool:
        """写出 JSON 报告文件，附带生成时间"""
        try:
            folder = os.path.dirname(os.path.abspath(path))
            os.makedirs(folder, exist_ok=True)
            report = self.to_dict()
            report['created_at'] = datetime.now().isoformat()
            with open(path, 'w', encoding='utf-8') as f:
                json.dump(report, f, ensure_ascii=False, indent=2, default=_json_default)
            self.logger.info(f"审计报告已写出: {path}")
            return True
        except OSError as e:
            self.logger.error(f"写出审计报告失败: {e}")
            return False


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"无法序列化 {type(value).__name__}")
