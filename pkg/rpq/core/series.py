"""
截断级数模块
所有无穷级数共用的停止准则：连续 3 项 |项| < tol·|部分和|
"""

import logging
from typing import Callable, Iterable

import numpy as np

from ..config.settings import AppConstants
from .errors import ConvergenceError

logger = logging.getLogger(__name__)


def accumulate(terms: Iterable[float], tol, max_terms, label="series") -> float:
    """
    对项序列求和直到满足停止准则

    Args:
        terms: 项的迭代器；迭代器耗尽视为有限和
        tol: 相对容差
        max_terms: 最多累加项数
        label: 日志与异常中的名称

    Returns:
        部分和
    """
    total = 0.0
    small_run = 0
    count = 0
    for term in terms:
        if count >= max_terms:
            raise ConvergenceError(f"{label}: {max_terms} 项内未收敛", count, total)
        if not np.isfinite(term):
            raise ConvergenceError(f"{label}: 第 {count} 项非有限 ({term})", count, total)
        total += term
        count += 1
        if abs(term) <= tol * abs(total):
            small_run += 1
            if small_run >= AppConstants.SMALL_TERM_RUN:
                logger.debug(f"{label}: {count} 项后收敛")
                return total
        else:
            small_run = 0
    logger.debug(f"{label}: 有限和，共 {count} 项")
    return total


def ratio_terms(first_term, ratio: Callable[[int], float]):
    """
    以比值递推生成级数项 t_{k+1} = t_k · ratio(k)

    某项恰为 0 时其后各项都含同一零因子，生成到此为止
    """
    term = first_term
    k = 0
    while True:
        yield term
        if term == 0.0:
            return
        term = term * ratio(k)
        k += 1


def sum_ratio_series(first_term, ratio: Callable[[int], float], tol, max_terms, label="series") -> float:
    """比值递推级数求和"""
    return accumulate(ratio_terms(first_term, ratio), tol, max_terms, label)


def tail_length(first_term, ratio: Callable[[int], float], tail_tol, max_terms, label="series"):
    """
    正项级数的截断长度

    沿比值前进，直到剩余尾部的几何界 t r/(1-r) 小于 tail_tol；
    某项恰为 0 时支撑有限

    Returns:
        (保留项数, 是否截断)
    """
    term = first_term
    for k in range(max_terms):
        step = ratio(k)
        following = term * step
        if following == 0.0:
            return k + 1, False
        if not np.isfinite(following):
            raise ConvergenceError(f"{label}: 第 {k + 1} 项非有限", k + 1, term)
        if 0.0 <= step < 1.0 and abs(term) * step / (1.0 - step) < tail_tol:
            return k + 1, True
        term = following
    raise ConvergenceError(f"{label}: 尾部在 {max_terms} 项内未收缩", max_terms, term)
