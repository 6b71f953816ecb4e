"""
异常定义模块
数值计算、参数校验与审计中使用的全部异常类型
"""


class RpqError(Exception):
    """所有 rpq 异常的基类"""


class DomainError(RpqError, ValueError):
    """参数不在形变种类允许的定义域内"""


class NumericError(RpqError, ArithmeticError):
    """计算结果出现 NaN"""


class SingularInputError(RpqError, ZeroDivisionError):
    """分母为零的奇异输入"""


class SingularRecursionError(SingularInputError):
    """递推关系中的分母为零"""


class SingularParameterError(SingularInputError):
    """分布参数使闭式表达式的分母为零"""


class ConvergenceError(RpqError):
    """级数在 max_terms 项内未满足停止准则"""

    def __init__(self, message, terms_used=None, partial_sum=None):
        super().__init__(message)
        self.terms_used = terms_used
        self.partial_sum = partial_sum


class ConditioningError(RpqError):
    """线性方程组条件数超过上限"""

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class DegenerateBasisError(RpqError):
    """采样点的形变数值重合，基底退化"""


class DependencyError(RpqError):
    """依赖的 Stirling 表缺失或不匹配"""


class RejectionError(RpqError):
    """概率表未归一化，拒绝抽样"""
