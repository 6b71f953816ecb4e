"""
抽样模块
对概率表做逆 CDF 抽样，随机源为 numpy Generator
"""

import logging
from typing import Callable, List, Optional, Tuple

import numpy as np

from ..config.settings import AppConstants
from ..core.errors import RejectionError
from .tables import PmfTable

logger = logging.getLogger(__name__)


def sample(pmf: PmfTable, seed=None, count=1, rng: Optional[np.random.Generator] = None) -> List[int]:
    """
    逆 CDF 抽样

    Args:
        pmf: 概率表，归一化残差须小于 1e-6 且无负概率
        seed: 随机种子；rng 给定时忽略
        count: 样本数
        rng: 调用方持有的生成器

    Raises:
        RejectionError: 概率表未归一化或含负值
    """
    if not pmf.normalization_residual < AppConstants.SAMPLING_RESIDUAL_LIMIT:
        raise RejectionError(
            f"概率表归一化残差 {pmf.normalization_residual:.3e} 不小于 "
            f"{AppConstants.SAMPLING_RESIDUAL_LIMIT:g}，拒绝抽样")
    probs = np.asarray(pmf.probs, dtype=float)
    if np.any(probs < 0.0):
        raise RejectionError(f"概率表含负概率 (下标 {np.flatnonzero(probs < 0.0).tolist()})，拒绝抽样")
    if count < 0:
        raise RejectionError(f"样本数必须非负，收到 {count}")

    if rng is None:
        rng = np.random.default_rng(seed)
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    draws = np.searchsorted(cdf, rng.random(count), side='right')
    draws = np.minimum(draws, len(probs) - 1)
    logger.debug(f"{pmf.family.value}: 抽取 {count} 个样本")
    return [int(pmf.support[k]) for k in draws]


def empirical_mean(samples, transform: Callable[[int], float]) -> Tuple[float, float]:
    """
    样本变换后的均值与标准误

    Returns:
        (均值, 标准误)
    """
    lookup = {k: transform(k) for k in set(samples)}
    values = np.array([lookup[k] for k in samples], dtype=float)
    if values.size == 0:
        return 0.0, 0.0
    standard_error = float(values.std(ddof=1) / np.sqrt(values.size)) if values.size > 1 else 0.0
    return float(values.mean()), standard_error
