"""
分布包
包含形变二项、Euler、Pólya、超几何与逆 Pólya 分布及抽样
"""

from .tables import (Family, Method, PmfTable, MomentReport, BinomialParams, EulerParams,
                     PolyaParams, InversePolyaParams)
from .binomial import (binomial_pmf, binomial_factorial_moment, binomial_classical_factorial_moment,
                       binomial_classical_binomial_moment, binomial_mean, binomial_variance,
                       binomial_product_moment)
from .euler import euler_pmf, euler_factorial_moment, euler_classical_factorial_moment
from .polya import (polya_pmf, polya_factorial_moment, polya_classical_factorial_moment, hypergeometric_pmf,
                    inverse_polya_pmf, inverse_polya_factorial_moment,
                    inverse_polya_classical_factorial_moment, urn_draw_probability,
                    urn_draw_probability_counts)
from .sampling import sample
from .quesne import QuesneRemarks

__all__ = [
    'Family',
    'Method',
    'PmfTable',
    'MomentReport',
    'BinomialParams',
    'EulerParams',
    'PolyaParams',
    'InversePolyaParams',
    'binomial_pmf',
    'binomial_factorial_moment',
    'binomial_classical_factorial_moment',
    'binomial_classical_binomial_moment',
    'binomial_mean',
    'binomial_variance',
    'binomial_product_moment',
    'euler_pmf',
    'euler_factorial_moment',
    'euler_classical_factorial_moment',
    'polya_pmf',
    'polya_factorial_moment',
    'polya_classical_factorial_moment',
    'hypergeometric_pmf',
    'inverse_polya_pmf',
    'inverse_polya_factorial_moment',
    'inverse_polya_classical_factorial_moment',
    'urn_draw_probability',
    'urn_draw_probability_counts',
    'sample',
    'QuesneRemarks'
]
