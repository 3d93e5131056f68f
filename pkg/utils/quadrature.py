"""
Квадратурные ядра: адаптивная схема Гаусса-Кронрода (G7/K15) по панелям,
периодическая формула трапеций на равномерной сетке.

Суммирование по панелям идёт в фиксированном порядке (по левому концу,
math.fsum), поэтому результат не зависит от порядка бисекций и от того,
в каком потоке вызвана функция.
"""

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

import numpy as np

from utils.errors import ConvergenceError

# Узлы Кронрода на [0, 1] (симметрично), веса K15 и G7 (узлы Гаусса - нечётные индексы)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# 15 узлов на [-1, 1]: -x_0..-x_6, 0, x_6..x_0
NODES = np.concatenate([-_XGK[:-1], [0.0], _XGK[-2::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], [_WGK[-1]], _WGK[-2::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[1:7:2] = _WG[:3]
GAUSS_WEIGHTS[7] = _WG[3]
GAUSS_WEIGHTS[9:15:2] = _WG[2::-1]


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    panels: int


def panel_nodes(a: float, b: float) -> np.ndarray:
    """Узлы K15 на отрезке [a, b]."""
    half = 0.5 * (b - a)
    return 0.5 * (a + b) + half * NODES


def gauss_kronrod_panel(values: np.ndarray, a: float, b: float) -> Tuple[complex, float]:
    """
    Значение K15 и оценка ошибки |K15 - G7| по уже вычисленным значениям в узлах.
    values может иметь дополнительные ведущие оси (несколько подынтегральных функций).
    """
    half = 0.5 * (b - a)
    kronrod = half * (values @ KRONROD_WEIGHTS)
    gauss = half * (values @ GAUSS_WEIGHTS)
    return kronrod, np.abs(kronrod - gauss)


def _sum_ordered(values: Iterable[complex]) -> complex:
    values = list(values)
    re = math.fsum(float(np.real(v)) for v in values)
    im = math.fsum(float(np.imag(v)) for v in values)
    return complex(re, im) if im != 0.0 else complex(re, 0.0)


def adaptive_integrate(
    func: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    breakpoints: Iterable[float] = (),
    atol: float = 1e-10,
    rtol: float = 0.0,
    max_panels: int = 4000,
) -> QuadratureResult:
    """
    Адаптивное интегрирование func по [a, b].

    Начальные панели режутся в точках breakpoints (углы, скачки производной,
    пик ядра), затем бисекция панели с наибольшей оценкой ошибки, пока
    суммарная ошибка не станет <= max(atol, rtol*|I|).

    Raises:
        ConvergenceError: бюджет панелей исчерпан; несёт лучшую оценку и остаток
    """
    if not b > a:
        raise ValueError(f"empty integration interval [{a}, {b}]")

    edges = sorted({a, b, *(float(p) for p in breakpoints if a < p < b)})
    # panel: (left, right, value, error)
    panels = {}
    heap = []

    def push(left, right):
        value, error = gauss_kronrod_panel(np.asarray(func(panel_nodes(left, right))), left, right)
        panels[left] = (left, right, complex(value), float(error))
        heapq.heappush(heap, (-float(error), left))

    for left, right in zip(edges[:-1], edges[1:]):
        push(left, right)

    while True:
        ordered = [panels[key] for key in sorted(panels)]
        total = _sum_ordered(p[2] for p in ordered)
        error = math.fsum(p[3] for p in ordered)
        if error <= max(atol, rtol * abs(total)):
            return QuadratureResult(value=total, error=error, panels=len(panels))
        if len(panels) >= max_panels:
            raise ConvergenceError(
                f"quadrature budget of {max_panels} panels exhausted",
                best_estimate=total,
                residual=error,
            )

        _, left = heapq.heappop(heap)
        left, right, _, _ = panels.pop(left)
        mid = 0.5 * (left + right)
        if not left < mid < right:
            raise ConvergenceError(
                "panel cannot be bisected further",
                best_estimate=total,
                residual=error,
            )
        push(left, mid)
        push(mid, right)


def periodic_mean(values: np.ndarray) -> Tuple[float, float]:
    """
    Среднее по равномерной периодической сетке (формула трапеций) и оценка
    ошибки через сравнение с прореженной вдвое сеткой (её узлы - чётные).
    """
    values = np.asarray(values)
    mean = float(np.mean(values))
    if values.shape[-1] < 4:
        return mean, abs(mean)
    coarse = float(np.mean(values[..., ::2]))
    return mean, abs(mean - coarse)


def wrap_angles(angles: Iterable[float], period: float = 2.0 * math.pi) -> list:
    """Приводит углы к [0, period) и убирает совпадения."""
    result = set()
    for angle in angles:
        wrapped = math.fmod(float(angle), period)
        if wrapped < 0:
            wrapped += period
        result.add(wrapped)
    return sorted(result)


def richardson_limit(values, ratio: float = 0.5) -> Optional[float]:
    """
    Предел последовательности с геометрически убывающими приращениями
    (x_k = L - c*ratio^k): L = (x_K - ratio*x_{K-1}) / (1 - ratio).
    """
    if len(values) < 2:
        return None
    last, prev = float(values[-1]), float(values[-2])
    return (last - ratio * prev) / (1.0 - ratio)
