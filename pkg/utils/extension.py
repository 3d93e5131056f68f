"""
Гармоническое продолжение f = P[F] в единичный круг.

Основной путь - ряд f(re^{it}) = sum c_n r^{|n|} e^{int}, записанный как пара
голоморфных функций f = h + conj(g). Независимый путь (оракул) - адаптивная
квадратура интеграла Пуассона; он нужен только для перекрёстных проверок.
"""

import logging
import math
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

import config
import metrics
from utils.boundary import BoundarySpec, breakpoints, evaluate, fourier_coefficients, uniform_series
from utils.errors import DomainError
from utils.logger import get_logger, log_event, log_performance
from utils.quadrature import adaptive_integrate, wrap_angles

logger = get_logger("extension")

TWO_PI = 2.0 * math.pi


def _check_interior(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if np.any(~np.isfinite(z)) or np.any(np.abs(z) >= 1.0):
        raise DomainError("evaluation points must lie in the open unit disk")
    return z


def poisson_kernel(z: complex, theta) -> np.ndarray:
    """P(z, e^{i theta}) = (1/2pi) (1 - |z|^2) / |1 - z e^{-i theta}|^2."""
    z = complex(_check_interior(z))
    theta = np.asarray(theta, dtype=float)
    return (1.0 - abs(z) ** 2) / (TWO_PI * np.abs(1.0 - z * np.exp(-1j * theta)) ** 2)


@dataclass
class HolomorphicPair:
    """
    h = sum_{n>=0} a_n z^n, g = sum_{n>=1} b_n z^n, f = h + conj(g);
    a_n = c_n, b_n = conj(c_{-n}).
    """
    h: np.ndarray
    g: np.ndarray
    truncation: int
    tail_bound: float

    @classmethod
    def from_coefficients(cls, coefficients) -> "HolomorphicPair":
        N = coefficients.truncation
        values = coefficients.values
        h = values[N:].copy()
        g = np.conj(values[N::-1]).copy()
        g[0] = 0.0
        return cls(h=h, g=g, truncation=N, tail_bound=coefficients.tail_bound)

    @property
    def h_prime(self) -> np.ndarray:
        return self.h[1:] * np.arange(1, self.truncation + 1)

    @property
    def g_prime(self) -> np.ndarray:
        return self.g[1:] * np.arange(1, self.truncation + 1)

    def h_value(self, z):
        return P.polyval(z, self.h)

    def g_value(self, z):
        return P.polyval(z, self.g)

    def h_derivative(self, z):
        return P.polyval(z, self.h_prime) if self.truncation else np.zeros_like(z)

    def g_derivative(self, z):
        return P.polyval(z, self.g_prime) if self.truncation else np.zeros_like(z)


@dataclass
class CircleSample:
    """Значения ряда в r*exp(2 pi i j / M)."""
    radius: float
    nodes: int
    f: np.ndarray
    h_prime: np.ndarray
    g_prime: np.ndarray
    truncation: int
    tail_bound: float
    degraded: bool

    @property
    def theta(self) -> np.ndarray:
        return TWO_PI * np.arange(self.nodes) / self.nodes

    @property
    def f_z(self) -> np.ndarray:
        return self.h_prime

    @property
    def f_zbar(self) -> np.ndarray:
        return np.conj(self.g_prime)


@dataclass
class PointSample:
    f: np.ndarray
    f_z: np.ndarray
    f_zbar: np.ndarray
    tail_bound: np.ndarray
    degraded: bool
    truncation: int


class DiskField:
    """
    Вычислимое поле f = P[F] в круге.

    Усечение выбирается по радиусу: при |z| <= 0.99 ряд удлиняется до
    хвоста <= INTERIOR_TAIL_TOLERANCE (если N не зафиксирован), ближе к
    границе - до BOUNDARY_TAIL_TOLERANCE с потолком MAX_TRUNCATION; не
    уложившиеся точки помечаются degraded. Значения на окружностях кэшируются
    (LRU по (r, M)); кэш только читает-сквозь и не меняет результатов.
    """

    def __init__(self, spec: BoundarySpec, truncation: Optional[int] = None, *, adaptive: bool = True,
                 cache_size: Optional[int] = None):
        self.spec = spec
        self.truncation = int(truncation or config.DEFAULT_TRUNCATION)
        self.adaptive = adaptive
        self.cache_size = config.CIRCLE_CACHE_SIZE if cache_size is None else cache_size
        self._pairs: Dict[int, HolomorphicPair] = {}
        self._truncations: Dict[float, Tuple[int, float, bool]] = {}
        self._circles: "OrderedDict[Tuple[float, int], CircleSample]" = OrderedDict()
        self._lock = threading.RLock()

    @property
    def pair(self) -> HolomorphicPair:
        return self.pair_for(self._base_truncation())

    def _base_truncation(self) -> int:
        degree = self.spec.degree
        return self.truncation if degree is None else min(self.truncation, degree)

    @property
    def is_analytic(self) -> bool:
        """g == 0: поле голоморфно."""
        model = self.spec.model
        if model.degree is None:
            return False
        return not np.any(model.coefficients(model.degree)[: model.degree])

    def pair_for(self, N: int) -> HolomorphicPair:
        with self._lock:
            pair = self._pairs.get(N)
            if pair is None:
                pair = HolomorphicPair.from_coefficients(fourier_coefficients(self.spec, N))
                self._pairs[N] = pair
            return pair

    def _tails(self, N: int, radius: float) -> float:
        model = self.spec.model
        return max(model.series_tail(N, radius), model.series_tail(N, radius, derivative=True))

    def truncation_for(self, radius: float) -> Tuple[int, float, bool]:
        """(N, оценка хвоста ряда и его производной, degraded) для окружности радиуса r."""
        with self._lock:
            cached = self._truncations.get(radius)
            if cached is not None:
                return cached

            degree = self.spec.degree
            near_boundary = radius > config.NEAR_BOUNDARY_RADIUS
            tolerance = config.BOUNDARY_TAIL_TOLERANCE if near_boundary else config.INTERIOR_TAIL_TOLERANCE
            N = self._base_truncation()
            tail = self._tails(N, radius)
            refinements = 0
            if near_boundary or self.adaptive:
                while tail > tolerance and N < config.MAX_TRUNCATION:
                    N = min(max(2 * N, 1), config.MAX_TRUNCATION)
                    if degree is not None:
                        N = min(N, degree)
                    tail = self._tails(N, radius)
                    refinements += 1
            degraded = tail > tolerance

            if refinements:
                metrics.track_truncation_refinement()
                log_event(logger, "truncation_refined", level=logging.DEBUG, spec=self.spec.label,
                          radius=radius, truncation=N, tail_bound=tail)
            if degraded:
                log_event(logger, "degraded_accuracy", level=logging.WARNING, spec=self.spec.label,
                          radius=radius, truncation=N, tail_bound=tail, tolerance=tolerance)

            result = (N, tail, degraded)
            self._truncations[radius] = result
            return result

    def on_circle(self, radius: float, nodes: int) -> CircleSample:
        """f, h', g' в nodes равноотстоящих точках окружности |z| = radius."""
        if not 0.0 <= radius < 1.0:
            raise DomainError(f"radius must lie in [0, 1), got {radius}")
        key = (float(radius), int(nodes))
        with self._lock:
            sample = self._circles.get(key)
            if sample is not None:
                self._circles.move_to_end(key)
                return sample

        start = time.perf_counter()
        N, tail, degraded = self.truncation_for(radius)
        pair = self.pair_for(N)
        n = np.arange(N + 1)
        powers = radius ** n
        f = uniform_series(n, pair.h * powers, nodes) + np.conj(uniform_series(n, pair.g * powers, nodes))
        if N:
            dn = n[1:]
            dpowers = dn * radius ** (dn - 1)
            h_prime = uniform_series(dn - 1, pair.h[1:] * dpowers, nodes)
            g_prime = uniform_series(dn - 1, pair.g[1:] * dpowers, nodes)
        else:
            h_prime = np.zeros(nodes, dtype=complex)
            g_prime = np.zeros(nodes, dtype=complex)
        sample = CircleSample(radius=float(radius), nodes=int(nodes), f=f, h_prime=h_prime, g_prime=g_prime,
                              truncation=N, tail_bound=tail, degraded=degraded)
        log_performance(logger, "circle_evaluation", time.perf_counter() - start,
                        radius=radius, nodes=nodes, truncation=N)

        with self._lock:
            if self.cache_size > 0:
                self._circles[key] = sample
                self._circles.move_to_end(key)
                while len(self._circles) > self.cache_size:
                    self._circles.popitem(last=False)
        return sample

    def sample(self, z) -> PointSample:
        """f, f_z, f_z̄ в произвольных точках круга с поточечной оценкой хвоста."""
        z = _check_interior(z)
        radii = np.abs(z)
        N, _, degraded = self.truncation_for(float(np.max(radii)) if radii.size else 0.0)
        pair = self.pair_for(N)
        model = self.spec.model
        tails = np.vectorize(
            lambda r: max(model.series_tail(N, float(r)), model.series_tail(N, float(r), derivative=True)),
            otypes=[float],
        )(radii)
        return PointSample(
            f=pair.h_value(z) + np.conj(pair.g_value(z)),
            f_z=pair.h_derivative(z),
            f_zbar=np.conj(pair.g_derivative(z)),
            tail_bound=tails,
            degraded=degraded,
            truncation=N,
        )

    def evaluate(self, z):
        """f(z) по ряду."""
        values = self.sample(z).f
        return complex(values) if np.ndim(values) == 0 else values

    __call__ = evaluate


def extend(spec: BoundarySpec, N: Optional[int] = None, *, adaptive: Optional[bool] = None) -> DiskField:
    """
    Гармоническое продолжение F в круг.

    Явно переданное N фиксирует усечение внутри |z| <= 0.99; у границы
    усечение растёт всегда.
    """
    if adaptive is None:
        adaptive = N is None
    return DiskField(spec, truncation=N, adaptive=adaptive)


@dataclass
class OracleResult:
    value: complex
    error: float
    panels: int


def extend_oracle_with_error(spec: BoundarySpec, z: complex, *, tol: Optional[float] = None,
                             max_panels: Optional[int] = None) -> OracleResult:
    """
    P[F](z) прямой адаптивной квадратурой интеграла Пуассона.

    Панели режутся в изломах F и вокруг пика ядра theta = arg z
    (на расстояниях 1 - |z| и 4(1 - |z|)).

    Raises:
        ConvergenceError: бюджет панелей исчерпан, с лучшей оценкой и остатком
    """
    z = complex(_check_interior(z))
    tol = config.ORACLE_TOLERANCE if tol is None else tol
    max_panels = config.QUADRATURE_MAX_PANELS if max_panels is None else max_panels

    width = 1.0 - abs(z)
    peak = math.atan2(z.imag, z.real) if z != 0 else 0.0
    cuts = wrap_angles([
        *breakpoints(spec),
        peak, peak - width, peak + width, peak - 4.0 * width, peak + 4.0 * width,
    ])

    def integrand(theta):
        return poisson_kernel(z, theta) * evaluate(spec, theta)

    start = time.perf_counter()
    result = adaptive_integrate(integrand, 0.0, TWO_PI, breakpoints=cuts, atol=0.5 * tol,
                                max_panels=max_panels)
    log_performance(logger, "poisson_oracle", time.perf_counter() - start, panels=result.panels)
    return OracleResult(value=result.value, error=result.error, panels=result.panels)


def extend_oracle(spec: BoundarySpec, z: complex, *, tol: Optional[float] = None,
                  max_panels: Optional[int] = None) -> complex:
    return extend_oracle_with_error(spec, z, tol=tol, max_panels=max_panels).value
