"""
形变数模块
R(p,q) 形变数、阶乘、二项式系数、移位阶乘，以及形变导数在多项式上的作用
"""

import logging
import operator
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..config.settings import AppConstants
from .errors import DomainError, NumericError, SingularInputError

logger = logging.getLogger(__name__)


class DeformationKind(str, Enum):
    """形变种类，取值即命令行名称"""

    ARIK_COON = 'arik-coon'
    QUESNE = 'quesne'
    JAGANNATHAN_SRINIVASA = 'jagannathan-srinivasa'
    CHAKRABARTY_JAGANNATHAN = 'chakrabarty-jagannathan'
    GENERALIZED_QUESNE = 'generalized-quesne'
    MULTI_PARAMETER = 'multi-parameter'
    CUSTOM = 'custom'


SINGLE_PARAMETER_KINDS = (DeformationKind.ARIK_COON, DeformationKind.QUESNE)
MATCHED_KINDS = (
    DeformationKind.ARIK_COON,
    DeformationKind.QUESNE,
    DeformationKind.JAGANNATHAN_SRINIVASA,
    DeformationKind.CHAKRABARTY_JAGANNATHAN,
    DeformationKind.GENERALIZED_QUESNE,
)


def power(base, exponent) -> float:
    """正底数的实数次幂"""
    return float(np.power(float(base), float(exponent)))


def choose2(n) -> int:
    """C(n, 2)"""
    return n * (n - 1) // 2


@dataclass(frozen=True)
class DeformationSpec:
    """
    形变描述
    构造后不可变；derived=True 表示由 base_changed 得到，跳过定义域检查
    """

    kind: DeformationKind
    p: float = 1.0
    q: float = 0.5
    mu: float = 0.0
    nu: float = 0.0
    g_value: float = 1.0
    epsilon1: Optional[float] = None
    epsilon2: Optional[float] = None
    custom_evaluator: Optional[Callable[[float, float], float]] = field(default=None, repr=False)
    derived: bool = False

    def __post_init__(self):
        try:
            kind = DeformationKind(self.kind)
        except ValueError:
            raise DomainError(f"未知形变种类: {self.kind}")
        object.__setattr__(self, 'kind', kind)

        if kind in SINGLE_PARAMETER_KINDS:
            object.__setattr__(self, 'p', 1.0)
        for name in ('p', 'q', 'mu', 'nu', 'g_value'):
            value = getattr(self, name)
            if value is None or not np.isfinite(value):
                raise DomainError(f"参数 {name} 必须是有限实数: {value}")
            object.__setattr__(self, name, float(value))

        # eps 由 1/p、1/q 得到，先排除非正参数
        if self.p <= 0 or self.q <= 0:
            raise DomainError(f"{kind.value}: 要求 p>0, q>0，收到 p={self.p}, q={self.q}")

        if kind == DeformationKind.CUSTOM:
            self._init_custom_epsilons()
        else:
            eps1, eps2 = self._kind_epsilons()
            for supplied, expected, name in ((self.epsilon1, eps1, 'epsilon1'),
                                             (self.epsilon2, eps2, 'epsilon2')):
                if supplied is not None and not np.isclose(supplied, expected, rtol=1e-12, atol=0.0):
                    raise DomainError(f"{kind.value} 的 {name} 固定为 {expected}，收到 {supplied}")
            object.__setattr__(self, 'epsilon1', eps1)
            object.__setattr__(self, 'epsilon2', eps2)

        if not self.derived:
            self._validate_domain()

    # ------------------------------------------------------------------
    # 构造
    # ------------------------------------------------------------------

    @classmethod
    def arik_coon(cls, q):
        return cls(DeformationKind.ARIK_COON, q=q)

    @classmethod
    def quesne(cls, q):
        return cls(DeformationKind.QUESNE, q=q)

    @classmethod
    def jagannathan_srinivasa(cls, p, q):
        return cls(DeformationKind.JAGANNATHAN_SRINIVASA, p=p, q=q)

    @classmethod
    def chakrabarty_jagannathan(cls, p, q):
        return cls(DeformationKind.CHAKRABARTY_JAGANNATHAN, p=p, q=q)

    @classmethod
    def generalized_quesne(cls, p, q):
        return cls(DeformationKind.GENERALIZED_QUESNE, p=p, q=q)

    @classmethod
    def multi_parameter(cls, p, q, mu, nu, g_value=1.0):
        return cls(DeformationKind.MULTI_PARAMETER, p=p, q=q, mu=mu, nu=nu, g_value=g_value)

    @classmethod
    def custom(cls, p, q, evaluator, epsilon1, epsilon2):
        """
        自定义形变

        Args:
            evaluator: 二元函数 R(u, v)，形变数 [x] = R(p^x, q^x)
            epsilon1, epsilon2: 调用方给定的结构常数
        """
        return cls(DeformationKind.CUSTOM, p=p, q=q, epsilon1=epsilon1, epsilon2=epsilon2,
                   custom_evaluator=evaluator)

    @classmethod
    def from_descriptor(cls, descriptor: Dict):
        """由 descriptor() 的输出重建"""
        if descriptor.get('kind') == DeformationKind.CUSTOM.value:
            raise DomainError("custom 形变含调用方函数，无法从描述重建")
        return cls(
            DeformationKind(descriptor['kind']),
            p=descriptor.get('p', 1.0),
            q=descriptor['q'],
            mu=descriptor.get('mu', 0.0),
            nu=descriptor.get('nu', 0.0),
            g_value=descriptor.get('g', 1.0),
            derived=descriptor.get('derived', False),
        )

    # ------------------------------------------------------------------
    # 结构
    # ------------------------------------------------------------------

    def _kind_epsilons(self) -> Tuple[float, float]:
        p, q = self.p, self.q
        if self.kind == DeformationKind.ARIK_COON:
            return 1.0, q
        if self.kind == DeformationKind.QUESNE:
            return 1.0, 1.0 / q
        if self.kind == DeformationKind.JAGANNATHAN_SRINIVASA:
            return p, q
        if self.kind == DeformationKind.CHAKRABARTY_JAGANNATHAN:
            return 1.0 / p, q
        # generalized-quesne 与 multi-parameter
        return p, 1.0 / q

    def _init_custom_epsilons(self):
        if not callable(self.custom_evaluator):
            raise DomainError("custom 形变需要可调用的 custom_evaluator")
        if self.epsilon1 is None or self.epsilon2 is None:
            raise DomainError("custom 形变需要给定 epsilon1 与 epsilon2")
        for name in ('epsilon1', 'epsilon2'):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"{name} 必须为正: {value}")
            object.__setattr__(self, name, float(value))

    def _validate_domain(self):
        """按种类检查参数定义域"""
        p, q = self.p, self.q
        kind = self.kind
        if kind in SINGLE_PARAMETER_KINDS:
            if not 0 < q < 1:
                raise DomainError(f"{kind.value}: 要求 0<q<1，收到 q={q}")
        elif kind in (DeformationKind.JAGANNATHAN_SRINIVASA, DeformationKind.CHAKRABARTY_JAGANNATHAN):
            if not 0 < q < p <= 1:
                raise DomainError(f"{kind.value}: 要求 0<q<p<=1，收到 p={p}, q={q}")
        elif kind == DeformationKind.GENERALIZED_QUESNE:
            if not (p > 1 and 0 < p * q < 1):
                raise DomainError(f"{kind.value}: 要求 p>1 且 0<pq<1，收到 p={p}, q={q}")
        elif kind == DeformationKind.MULTI_PARAMETER:
            if not (p > 1 and 0 < p * q < 1):
                raise DomainError(f"{kind.value}: 要求 p>1 且 0<pq<1，收到 p={p}, q={q}")
            if not power(p, self.mu) < power(q, self.nu - 1):
                raise DomainError(
                    f"{kind.value}: 要求 p^mu < q^(nu-1)，收到 p={p}, q={q}, mu={self.mu}, nu={self.nu}")
            if self.g_value <= 0:
                raise DomainError(f"{kind.value}: 要求 g>0，收到 g={self.g_value}")
        elif kind == DeformationKind.CUSTOM:
            self._validate_custom()

    def _validate_custom(self):
        origin = self.custom_evaluator(1.0, 1.0)
        if not np.isfinite(origin) or abs(origin) > 1e-12:
            raise DomainError(f"custom: 要求 R(1,1)=0，收到 {origin}")
        for n in range(1, AppConstants.CUSTOM_PROBES + 1):
            value = self.custom_evaluator(power(self.p, n), power(self.q, n))
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"custom: 要求 R(p^n,q^n)>0，n={n} 时为 {value}")

    @property
    def structure_constant(self) -> float:
        """[1]，即 R(p,q)"""
        return self.number(1)

    @property
    def is_matched(self) -> bool:
        """闭式是否为 c(eps1^x - eps2^x)/(eps1 - eps2)"""
        if self.kind in MATCHED_KINDS:
            return True
        if self.kind == DeformationKind.MULTI_PARAMETER:
            return abs(power(self.q, self.nu) / power(self.p, self.mu) - 1.0) <= 1e-15
        return False

    @property
    def has_unit_epsilon1(self) -> bool:
        return abs(self.epsilon1 - 1.0) <= 1e-15

    @property
    def is_standard(self) -> bool:
        """eps1=1 且 [1]=1 的匹配形变，经典矩换算在此成立"""
        return self.is_matched and self.has_unit_epsilon1 and abs(self.structure_constant - 1.0) <= 1e-12

    def base_changed(self, x):
        """(p,q) -> (p^-x, q^-x)，结构常数随之变为 eps^-x"""
        if x == 0:
            raise DomainError("基变换步长 x 不能为 0")
        changes = {'p': power(self.p, -x), 'q': power(self.q, -x), 'derived': True}
        if self.kind == DeformationKind.CUSTOM:
            changes['epsilon1'] = power(self.epsilon1, -x)
            changes['epsilon2'] = power(self.epsilon2, -x)
        else:
            changes['epsilon1'] = None
            changes['epsilon2'] = None
        return replace(self, **changes)

    def descriptor(self) -> Dict:
        """可序列化的参数描述"""
        data = {'kind': self.kind.value, 'p': self.p, 'q': self.q}
        if self.kind == DeformationKind.MULTI_PARAMETER:
            data.update({'mu': self.mu, 'nu': self.nu, 'g': self.g_value})
        data.update({'epsilon1': self.epsilon1, 'epsilon2': self.epsilon2})
        if self.derived:
            data['derived'] = True
        return data

    @property
    def label(self) -> str:
        if self.kind in SINGLE_PARAMETER_KINDS:
            return f"{self.kind.value}(q={self.q:g})"
        if self.kind == DeformationKind.MULTI_PARAMETER:
            return (f"{self.kind.value}(p={self.p:g},q={self.q:g},mu={self.mu:g},"
                    f"nu={self.nu:g},g={self.g_value:g})")
        return f"{self.kind.value}(p={self.p:g},q={self.q:g})"

    # ------------------------------------------------------------------
    # 形变数
    # ------------------------------------------------------------------

    def number(self, x) -> float:
        """[x] = R(p^x, q^x)"""
        x = float(x)
        if x == 0.0:
            return 0.0
        value = self._closed_form(x)
        if np.isnan(value):
            raise NumericError(f"{self.label}: [{x}] 为 NaN")
        return value

    def _closed_form(self, x) -> float:
        p, q = self.p, self.q
        kind = self.kind
        if kind == DeformationKind.ARIK_COON:
            return (1.0 - power(q, x)) / (1.0 - q)
        if kind == DeformationKind.QUESNE:
            return (1.0 - power(q, -x)) / (q - 1.0)
        if kind == DeformationKind.JAGANNATHAN_SRINIVASA:
            return (power(p, x) - power(q, x)) / (p - q)
        if kind == DeformationKind.CHAKRABARTY_JAGANNATHAN:
            return (power(p, -x) - power(q, x)) / (1.0 / p - q)
        if kind == DeformationKind.GENERALIZED_QUESNE:
            return (power(p, x) - power(q, -x)) / (q - 1.0 / p)
        if kind == DeformationKind.MULTI_PARAMETER:
            scale = self.g_value * power(power(q, self.nu) / power(p, self.mu), x)
            return scale * (power(p, x) - power(q, -x)) / (q - 1.0 / p)
        return float(self.custom_evaluator(power(p, x), power(q, x)))


@dataclass(frozen=True)
class Polynomial:
    """z 的多项式，coefficients[n] 为 z^n 的系数"""

    coefficients: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'coefficients', tuple(float(c) for c in self.coefficients))

    @classmethod
    def monomial(cls, n, coefficient=1.0):
        return cls((0.0,) * n + (coefficient,))

    @property
    def degree(self) -> Optional[int]:
        """最高非零次数，零多项式返回 None"""
        for n in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[n] != 0.0:
                return n
        return None

    @property
    def is_zero(self) -> bool:
        return self.degree is None

    def coefficient(self, n) -> float:
        return self.coefficients[n] if 0 <= n < len(self.coefficients) else 0.0

    def times_z(self):
        """乘以 z，即升算符的作用"""
        return Polynomial((0.0,) + self.coefficients)

    def __call__(self, z) -> float:
        if not self.coefficients:
            return 0.0
        return float(npoly.polyval(z, self.coefficients))


def _as_order(value, name) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{name} 必须是整数: {value!r}")


def number(d: DeformationSpec, x) -> float:
    """形变数 [x]"""
    return d.number(x)


def factorial(d: DeformationSpec, n) -> float:
    """形变阶乘 [n]!"""
    n = _as_order(n, 'n')
    if n < 0:
        raise DomainError(f"阶乘要求 n>=0，收到 {n}")
    value = 1.0
    for k in range(1, n + 1):
        value *= d.number(k)
    return value


def falling_factorial(d: DeformationSpec, x, j) -> float:
    """
    j 阶下降阶乘 [x]_j

    j<0 时定义为 1/[x+|j|]_{|j|}
    """
    j = _as_order(j, 'j')
    if j == 0:
        return 1.0
    if j > 0:
        value = 1.0
        for v in range(j):
            value *= d.number(x - v)
        return value
    denominator = falling_factorial(d, x - j, -j)
    if denominator == 0.0:
        raise SingularInputError(f"{d.label}: [{x}]_{j} 的分母 [{x - j}]_{-j} 为零")
    return 1.0 / denominator


def binomial_coefficient(d: DeformationSpec, x, k) -> float:
    """形变二项式系数，上标可为任意实数"""
    k = _as_order(k, 'k')
    if k < 0:
        raise DomainError(f"二项式系数要求 k>=0，收到 {k}")
    denominator = factorial(d, k)
    if denominator == 0.0:
        raise SingularInputError(f"{d.label}: [{k}]! 为零")
    return falling_factorial(d, x, k) / denominator


def shifted_factorial_plus(d: DeformationSpec, x, y, n) -> float:
    """(x ⊕ y)^n = prod (x eps1^(i-1) + y eps2^(i-1))"""
    n = _as_order(n, 'n')
    if n < 0:
        raise DomainError(f"移位阶乘要求 n>=0，收到 {n}")
    value = 1.0
    for i in range(n):
        value *= x * power(d.epsilon1, i) + y * power(d.epsilon2, i)
    return value


def shifted_factorial_minus(d: DeformationSpec, x, y, n) -> float:
    """(x ⊖ y)^n = prod (x eps1^(i-1) - y eps2^(i-1))"""
    n = _as_order(n, 'n')
    if n < 0:
        raise DomainError(f"移位阶乘要求 n>=0，收到 {n}")
    value = 1.0
    for i in range(n):
        value *= x * power(d.epsilon1, i) - y * power(d.epsilon2, i)
    return value


def polynomial_derivative(d: DeformationSpec, f: Polynomial) -> Polynomial:
    """形变导数在单项式上的作用 z^n -> [n] z^(n-1)"""
    return Polynomial(tuple(d.number(n) * c for n, c in enumerate(f.coefficients) if n >= 1))


def quesne_bridge(d: DeformationSpec) -> DeformationSpec:
    """
    广义 Quesne 形变的桥接形变
    [n]_{p,1/q} = (q/p)[n]^Q，结构常数与原形变相同
    """
    if d.kind != DeformationKind.GENERALIZED_QUESNE:
        raise DomainError(f"桥接形变只对 generalized-quesne 定义，收到 {d.kind.value}")
    return DeformationSpec(DeformationKind.JAGANNATHAN_SRINIVASA, p=d.p, q=1.0 / d.q, derived=True)


def multi_parameter_rescaled(d: DeformationSpec, n) -> float:
    """g (q^nu/p^mu)^n [n]^Q，用同一 (p,q) 的广义 Quesne 数计算"""
    if d.kind != DeformationKind.MULTI_PARAMETER:
        raise DomainError(f"只对 multi-parameter 定义，收到 {d.kind.value}")
    quesne = DeformationSpec(DeformationKind.GENERALIZED_QUESNE, p=d.p, q=d.q, derived=d.derived)
    return d.g_value * power(power(d.q, d.nu) / power(d.p, d.mu), n) * quesne.number(n)


def deformation_from_options(kind, p=None, q=None, mu=None, nu=None, g=None) -> DeformationSpec:
    """由命令行式的选项构造 DeformationSpec"""
    try:
        kind = DeformationKind(kind)
    except ValueError:
        raise DomainError(f"未知形变种类: {kind}")
    if kind == DeformationKind.CUSTOM:
        raise DomainError("custom 形变只能通过 DeformationSpec.custom 构造")
    if q is None:
        raise DomainError(f"{kind.value}: 需要参数 q")
    if kind in SINGLE_PARAMETER_KINDS:
        return DeformationSpec(kind, q=q)
    if p is None:
        raise DomainError(f"{kind.value}: 需要参数 p")
    if kind == DeformationKind.MULTI_PARAMETER:
        return DeformationSpec.multi_parameter(
            p, q,
            mu=0.0 if mu is None else mu,
            nu=0.0 if nu is None else nu,
            g_value=1.0 if g is None else g,
        )
    return DeformationSpec(kind, p=p, q=q)
