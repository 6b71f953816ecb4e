"""
分布数据结构模块
PmfTable、MomentReport 与各分布族的参数记录，以及 JSON/CSV 编解码
"""

import csv
import io
import json
import operator
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from ..config.settings import AppConstants
from ..core.deformation import DeformationSpec
from ..core.errors import DomainError


class Family(str, Enum):
    BINOMIAL = 'binomial'
    EULER = 'euler'
    POLYA = 'polya'
    INVERSE_POLYA = 'inverse-polya'
    HYPERGEOMETRIC = 'hypergeometric'


class Method(str, Enum):
    DIRECT = 'direct'
    RECURSIVE = 'recursive'


def as_method(method) -> Method:
    try:
        return Method(method)
    except ValueError:
        raise DomainError(f"method 必须是 direct 或 recursive，收到 {method!r}")


def _integer(value, name) -> int:
    try:
        return operator.index(value)
    except TypeError:
        raise DomainError(f"{name} 必须是整数: {value!r}")


def _finite(value, name) -> float:
    if value is None or not np.isfinite(value):
        raise DomainError(f"{name} 必须是有限实数: {value!r}")
    return float(value)


# ----------------------------------------------------------------------
# 参数记录
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BinomialParams:
    """n 次试验，成功参数 p0 ∈ (0, 1]"""

    n: int
    p0: float

    def __post_init__(self):
        n = _integer(self.n, 'n')
        if n < 0:
            raise DomainError(f"n 必须非负，收到 {n}")
        p0 = _finite(self.p0, 'p0')
        if not 0.0 < p0 <= 1.0:
            raise DomainError(f"p0 必须在 (0, 1] 内，收到 {p0}")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'p0', p0)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class EulerParams:
    theta: float
    tail_tol: float = 1e-12

    def __post_init__(self):
        theta = _finite(self.theta, 'theta')
        if theta <= 0:
            raise DomainError(f"theta 必须为正，收到 {theta}")
        tail_tol = _finite(self.tail_tol, 'tail_tol')
        if tail_tol <= 0:
            raise DomainError(f"tail_tol 必须为正，收到 {tail_tol}")
        object.__setattr__(self, 'theta', theta)
        object.__setattr__(self, 'tail_tol', tail_tol)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class PolyaParams:
    """
    Pólya 分布参数
    m = -r/x, u = -s/x；x_step 为每次放回后加入的同色球数
    """

    n: int
    m: float
    u: float
    x_step: int = -1

    def __post_init__(self):
        n = _integer(self.n, 'n')
        if n < 0:
            raise DomainError(f"n 必须非负，收到 {n}")
        x_step = _integer(self.x_step, 'x_step')
        if x_step == 0:
            raise DomainError("x_step 不能为 0")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'm', _finite(self.m, 'm'))
        object.__setattr__(self, 'u', _finite(self.u, 'u'))
        object.__setattr__(self, 'x_step', x_step)

    @classmethod
    def from_urn(cls, n, r, s, x):
        """由白球数 r、黑球数 s 与加入数 x 构造"""
        x = _integer(x, 'x')
        if x == 0:
            raise DomainError("x 不能为 0")
        return cls(n=n, m=-r / x, u=-s / x, x_step=x)

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass(frozen=True)
class InversePolyaParams:
    n: int
    m: float
    u: float
    x_step: int = -1
    tail_tol: float = 1e-12

    def __post_init__(self):
        n = _integer(self.n, 'n')
        if n < 1:
            raise DomainError(f"n 必须为正整数，收到 {n}")
        x_step = _integer(self.x_step, 'x_step')
        if x_step == 0:
            raise DomainError("x_step 不能为 0")
        tail_tol = _finite(self.tail_tol, 'tail_tol')
        if tail_tol <= 0:
            raise DomainError(f"tail_tol 必须为正，收到 {tail_tol}")
        object.__setattr__(self, 'n', n)
        object.__setattr__(self, 'm', _finite(self.m, 'm'))
        object.__setattr__(self, 'u', _finite(self.u, 'u'))
        object.__setattr__(self, 'x_step', x_step)
        object.__setattr__(self, 'tail_tol', tail_tol)

    def to_dict(self) -> Dict:
        return asdict(self)


FamilyParams = Union[BinomialParams, EulerParams, PolyaParams, InversePolyaParams]

PARAMS_BY_FAMILY = {
    Family.BINOMIAL: BinomialParams,
    Family.EULER: EulerParams,
    Family.POLYA: PolyaParams,
    Family.HYPERGEOMETRIC: PolyaParams,
    Family.INVERSE_POLYA: InversePolyaParams,
}


# ----------------------------------------------------------------------
# 概率表
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PmfTable:
    """
    概率质量函数表
    support 为 0..K 的连续整数；out_of_range 记录落在 [-1e-9, 1+1e-9] 之外的取值下标
    """

    family: Family
    deformation: DeformationSpec
    params: FamilyParams
    support: Tuple[int, ...]
    probs: Tuple[float, ...]
    normalization_residual: float
    truncated: bool
    method: Method
    out_of_range: Tuple[int, ...] = field(default=())

    @classmethod
    def build(cls, family, deformation, params, probs: Sequence[float], method, truncated=False):
        probs = tuple(float(value) for value in probs)
        slack = AppConstants.RANGE_SLACK
        out_of_range = tuple(k for k, value in enumerate(probs)
                             if value < -slack or value > 1.0 + slack)
        return cls(
            family=Family(family),
            deformation=deformation,
            params=params,
            support=tuple(range(len(probs))),
            probs=probs,
            normalization_residual=abs(float(np.sum(probs)) - 1.0),
            truncated=bool(truncated),
            method=Method(method),
            out_of_range=out_of_range,
        )

    @property
    def total(self) -> float:
        return float(np.sum(self.probs))

    def expectation(self, function: Callable[[int], float]) -> float:
        """sum_k f(k) P_k"""
        return float(sum(function(k) * prob for k, prob in zip(self.support, self.probs)))

    def cdf(self) -> np.ndarray:
        return np.cumsum(self.probs)

    # ------------------------------------------------------------------
    # 序列化
    # ------------------------------------------------------------------

    def to_dict(self) -> Dict:
        return {
            'family': self.family.value,
            'method': self.method.value,
            'deformation': self.deformation.descriptor(),
            'params': self.params.to_dict(),
            'support': list(self.support),
            'probs': list(self.probs),
            'normalization_residual': self.normalization_residual,
            'truncated': self.truncated,
            'out_of_range': list(self.out_of_range),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: Dict):
        family = Family(data['family'])
        params = PARAMS_BY_FAMILY[family](**data['params'])
        return cls(
            family=family,
            deformation=DeformationSpec.from_descriptor(data['deformation']),
            params=params,
            support=tuple(int(k) for k in data['support']),
            probs=tuple(float(value) for value in data['probs']),
            normalization_residual=float(data['normalization_residual']),
            truncated=bool(data['truncated']),
            method=Method(data['method']),
            out_of_range=tuple(int(k) for k in data.get('out_of_range', ())),
        )

    @classmethod
    def from_json(cls, text: str):
        return cls.from_dict(json.loads(text))

    def header_lines(self) -> Tuple[str, ...]:
        descriptor = self.deformation.descriptor()
        deformation = ','.join(f"{key}={value}" for key, value in descriptor.items() if key != 'kind')
        params = ','.join(f"{key}={value}" for key, value in self.params.to_dict().items())
        return (
            f"# family={self.family.value}",
            f"# kind={self.deformation.kind.value}",
            f"# deformation={deformation}",
            f"# params={params}",
            f"# method={self.method.value}",
            f"# normalization_residual={self.normalization_residual!r}",
            f"# truncated={str(self.truncated).lower()}",
        )

    def to_csv(self) -> str:
        """k,p_k 两列，表头以 # 开头"""
        buffer = io.StringIO()
        for line in self.header_lines():
            buffer.write(line + '\n')
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(['k', 'p_k'])
        for k, prob in zip(self.support, self.probs):
            writer.writerow([k, repr(prob)])
        return buffer.getvalue()


# ----------------------------------------------------------------------
# 矩比较
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    """闭式与暴力求和的比较结果"""

    order: int
    closed_form: float
    brute_force: float
    abs_err: float
    rel_err: float
    name: str = 'factorial_moment'

    @classmethod
    def compare(cls, order, closed_form, brute_force, name='factorial_moment'):
        closed_form = float(closed_form)
        brute_force = float(brute_force)
        abs_err = abs(closed_form - brute_force)
        scale = max(abs(closed_form), abs(brute_force))
        rel_err = abs_err / scale if scale > 0 else 0.0
        return cls(order, closed_form, brute_force, abs_err, rel_err, name)

    def to_dict(self) -> Dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


MOMENT_COLUMNS = ('name', 'order', 'closed_form', 'brute_force', 'abs_err', 'rel_err')


def moment_reports_to_csv(reports: Sequence[MomentReport], header: Optional[Sequence[str]] = None) -> str:
    buffer = io.StringIO()
    for line in header or ():
        buffer.write(line + '\n')
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(MOMENT_COLUMNS)
    for report in reports:
        row = report.to_dict()
        writer.writerow([row[column] if isinstance(row[column], (int, str)) else repr(row[column])
                         for column in MOMENT_COLUMNS])
    return buffer.getvalue()
