"""
命令行包
click 命令组与输出格式
"""

from .commands import cli, main
from .formatting import (format_number, render_records, render_pmf, render_moments, render_stirling,
                         render_samples, render_report)

__all__ = [
    'cli',
    'main',
    'format_number',
    'render_records',
    'render_pmf',
    'render_moments',
    'render_stirling',
    'render_samples',
    'render_report'
]
