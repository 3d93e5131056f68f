"""
Константа C(p) = integral_0^1 (4 artanh(r) / (pi r))^p r dr и её оценка через Гамма-функцию.
"""

import math
from dataclasses import dataclass, asdict
from typing import Dict

import numpy as np
from scipy import special

import config
from utils.errors import BoundOverflowError, UnsupportedExponentError
from utils.logger import get_logger, measure_time
from utils.norms import validate_exponent
from utils.quadrature import adaptive_integrate

logger = get_logger("constants")

# Узлы разбиения по u = -ln(1 - r) на [ln 2, U]
_U_BREAKS = (1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0)


@dataclass
class ConstantReport:
    p: float
    c_value: float
    upper_bound: float
    error: float
    tail: float = 0.0
    cutoff: float = 0.0

    @property
    def margin(self) -> float:
        return self.upper_bound - self.c_value

    @property
    def holds(self) -> bool:
        return self.c_value <= self.upper_bound + self.error

    def to_dict(self) -> Dict[str, float]:
        data = asdict(self)
        data["margin"] = self.margin
        return data


def _finite_exponent(p) -> float:
    p = validate_exponent(p)
    if math.isinf(p):
        raise UnsupportedExponentError(p, supported="[1, inf)")
    return p


def c_upper_bound(p) -> float:
    """(4^{p-1} / pi^p) (2^p + (2 - 2^{-p}) Gamma(1 + p))."""
    p = _finite_exponent(p)
    try:
        value = 4.0 ** (p - 1.0) / math.pi ** p * (2.0 ** p + (2.0 - 2.0 ** (-p)) * special.gamma(1.0 + p))
    except OverflowError:
        value = math.inf
    if not math.isfinite(value):
        raise BoundOverflowError(f"upper bound for C(p) overflows double precision at p={p}")
    return float(value)


def _inner_integrand(p: float):
    def integrand(r):
        return (4.0 * np.arctanh(r) / (np.pi * r)) ** p * r
    return integrand


def _outer_integrand(p: float):
    # r = 1 - e^{-u}, dr = e^{-u} du, artanh r = (u + ln(2 - e^{-u})) / 2
    def integrand(u):
        r = -np.expm1(-u)
        artanh = 0.5 * (u + np.log(2.0 - np.exp(-u)))
        return (4.0 * artanh / (np.pi * r)) ** p * r * np.exp(-u)
    return integrand


def _tail_bound(p: float, cutoff: float) -> float:
    """
    Остаток integral_{U}^{inf} по u: при r >= r_U подынтегральное выражение
    не больше (2/(pi r_U))^p (u + ln 2)^p e^{-u}, интеграл этого равен
    2 (2/(pi r_U))^p Gamma(p+1) Q(p+1, U + ln 2).
    """
    r_cut = -math.expm1(-cutoff)
    with np.errstate(divide="ignore"):
        log_q = np.log(special.gammaincc(p + 1.0, cutoff + math.log(2.0)))
    log_tail = math.log(2.0) + p * math.log(2.0 / (math.pi * r_cut)) + special.gammaln(p + 1.0) + log_q
    return float(math.exp(log_tail)) if np.isfinite(log_tail) else 0.0


@measure_time("c_of_p", service="constants")
def c_of_p(p) -> ConstantReport:
    """
    C(p) адаптивной квадратурой.

    [0, 1/2] интегрируется напрямую (особенность artanh(r)/r в нуле устранима),
    [1/2, 1) - после замены u = -ln(1 - r), которая превращает логарифмический
    рост в полиномиальный множитель при e^{-u}; интегрирование по u идёт до
    отсечки U, где аналитическая оценка хвоста меньше десятой доли допуска.
    """
    p = _finite_exponent(p)
    atol = config.CONSTANT_ATOL

    cutoff = 40.0
    tail = _tail_bound(p, cutoff)
    while tail > 0.1 * atol and cutoff < 1e4:
        cutoff *= 1.5
        tail = _tail_bound(p, cutoff)

    inner = adaptive_integrate(_inner_integrand(p), 0.0, 0.5, breakpoints=(0.25,),
                               atol=0.25 * atol, rtol=1e-14, max_panels=config.QUADRATURE_MAX_PANELS)
    outer = adaptive_integrate(_outer_integrand(p), math.log(2.0), cutoff, breakpoints=_U_BREAKS,
                               atol=0.25 * atol, rtol=1e-14, max_panels=config.QUADRATURE_MAX_PANELS)

    value = math.fsum([inner.value.real, outer.value.real])
    return ConstantReport(
        p=p,
        c_value=value,
        upper_bound=c_upper_bound(p),
        error=inner.error + outer.error + tail,
        tail=tail,
        cutoff=cutoff,
    )
