"""
核心功能包
包含形变数、组合恒等式、形变指数函数与异常定义
"""

from .errors import (RpqError, DomainError, NumericError, SingularInputError, SingularRecursionError,
                     SingularParameterError, ConvergenceError, ConditioningError, DegenerateBasisError,
                     DependencyError, RejectionError)
from .deformation import (DeformationKind, DeformationSpec, Polynomial, number, factorial,
                          falling_factorial, binomial_coefficient, shifted_factorial_plus,
                          shifted_factorial_minus, polynomial_derivative, quesne_bridge,
                          multi_parameter_rescaled, deformation_from_options)
from .combinatorics import (Variant, StirlingKind, StirlingTable, euler_expansion, vandermonde, vandermonde_terms,
                            negative_vandermonde, reciprocal_factorial_series, negative_binomial_coefficient,
                            binomial_lemma_sides, stirling_table, conditioned_stirling_table,
                            exact_arik_coon_stirling_first,
                            classical_binomial_moment, classical_factorial_moment,
                            classical_factorial_moment_series)
from .special_functions import exp_big_E, exp_small_e

__all__ = [
    'RpqError',
    'DomainError',
    'NumericError',
    'SingularInputError',
    'SingularRecursionError',
    'SingularParameterError',
    'ConvergenceError',
    'ConditioningError',
    'DegenerateBasisError',
    'DependencyError',
    'RejectionError',
    'DeformationKind',
    'DeformationSpec',
    'Polynomial',
    'number',
    'factorial',
    'falling_factorial',
    'binomial_coefficient',
    'shifted_factorial_plus',
    'shifted_factorial_minus',
    'polynomial_derivative',
    'quesne_bridge',
    'multi_parameter_rescaled',
    'deformation_from_options',
    'Variant',
    'StirlingKind',
    'StirlingTable',
    'euler_expansion',
    'vandermonde',
    'vandermonde_terms',
    'negative_vandermonde',
    'reciprocal_factorial_series',
    'negative_binomial_coefficient',
    'binomial_lemma_sides',
    'stirling_table',
    'conditioned_stirling_table',
    'exact_arik_coon_stirling_first',
    'classical_binomial_moment',
    'classical_factorial_moment',
    'classical_factorial_moment_series',
    'exp_big_E',
    'exp_small_e'
]
