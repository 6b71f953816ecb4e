"""
输出格式模块
把数值、概率表、矩比较、Stirling 表与审计报告渲染为 json / csv / text
"""

import csv
import io
import json
from typing import Dict, List, Sequence

from ..audit.report import AuditReport
from ..core.combinatorics import StirlingTable
from ..distributions.tables import MOMENT_COLUMNS, MomentReport, PmfTable, moment_reports_to_csv


def format_number(value) -> str:
    """浮点数的最短往返表示，如 1.75"""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def _dumps(data) -> str:
    return json.dumps(data, ensure_ascii=False, indent=2)


def _csv(rows: Sequence[Sequence], header: Sequence[str] = ()) -> str:
    buffer = io.StringIO()
    for line in header:
        buffer.write(line + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    for row in rows:
        writer.writerow([format_number(cell) if isinstance(cell, (int, float)) else cell for cell in row])
    return buffer.getvalue()


def render_records(records: List[Dict], fmt, context: Dict = None) -> str:
    """
    渲染若干条 {名称: 数值} 记录

    text 格式下单条单值记录只输出数值本身
    """
    if fmt == 'json':
        data = dict(context or {})
        data['values'] = records
        return _dumps(data)
    columns = list(records[0].keys()) if records else []
    if fmt == 'csv':
        return _csv([columns] + [[record[column] for column in columns] for record in records]).rstrip('\n')
    if len(records) == 1 and 'value' in records[0]:
        return format_number(records[0]['value'])
    return '\n'.join('  '.join(f"{column}={format_number(record[column])}" for column in columns)
                     for record in records)


def render_pmf(table: PmfTable, fmt) -> str:
    if fmt == 'json':
        return table.to_json()
    if fmt == 'csv':
        return table.to_csv().rstrip('\n')
    lines = list(table.header_lines())
    lines.extend(f"{k:>4}  {format_number(prob)}" for k, prob in zip(table.support, table.probs))
    if table.out_of_range:
        lines.append(f"# out_of_range={','.join(str(k) for k in table.out_of_range)}")
    return '\n'.join(lines)


def render_moments(reports: Sequence[MomentReport], fmt, header: Sequence[str] = (), context: Dict = None) -> str:
    if fmt == 'json':
        data = dict(context or {})
        data['moments'] = [report.to_dict() for report in reports]
        return _dumps(data)
    if fmt == 'csv':
        return moment_reports_to_csv(reports, header).rstrip('\n')
    lines = list(header)
    lines.append('  '.join(f"{column:>18}" for column in MOMENT_COLUMNS))
    for report in reports:
        row = report.to_dict()
        lines.append('  '.join(f"{format_number(row[column]):>18}" for column in MOMENT_COLUMNS))
    return '\n'.join(lines)


def render_stirling(table: StirlingTable, fmt) -> str:
    if fmt == 'json':
        return table.to_json()
    rows = [[n, k, table.entry(n, k)] for n in range(table.n_max + 1) for k in range(n + 1)]
    header = (f"# kind={table.kind.value}", f"# j={table.j_offset}", f"# deformation={table.deformation.label}",
              f"# condition={table.condition!r}")
    if fmt == 'csv':
        return _csv([['n', 'k', 'value']] + rows, header).rstrip('\n')
    lines = list(header)
    for n in range(table.n_max + 1):
        lines.append(f"{n:>3}: " + '  '.join(format_number(value) for value in table.row(n)[:n + 1]))
    return '\n'.join(lines)


def render_samples(samples: Sequence[int], fmt, context: Dict = None) -> str:
    if fmt == 'json':
        data = dict(context or {})
        data['samples'] = list(samples)
        return _dumps(data)
    if fmt == 'csv':
        return _csv([['index', 'value']] + [[i, value] for i, value in enumerate(samples)]).rstrip('\n')
    return ' '.join(str(value) for value in samples)


def render_report(report: AuditReport, fmt) -> str:
    if fmt == 'json':
        return report.to_json()
    if fmt == 'csv':
        return report.to_csv().rstrip('\n')
    return report.to_text().rstrip('\n')
