"""
Нормы типа Харди и Бергмана для скалярных полей в единичном круге.

Скалярное поле - любой объект с методом on_circle(radius, nodes), который
возвращает |s| в M равномерных точках окружности (см. ScalarField).
Круговые средние M_p(r, s) считаются формулой трапеций, норма Харди - как
sup по геометрической сетке радиусов 1 - 2^{-k}, норма Бергмана - как
составная квадратура: трапеции по углу x Гаусс-Кронрод по радиусу с панелями,
сгущающимися к r = 1. Круг разбивается на D_{1/2} и D \\ D_{1/2}.
"""

import math
from dataclasses import dataclass, field, asdict
from typing import Any, Callable, Dict, List, Optional, Protocol, Tuple

import numpy as np

import config
from utils.errors import DomainError, UnsupportedExponentError
from utils.quadrature import (
    gauss_kronrod_panel,
    panel_nodes,
    periodic_mean,
    richardson_limit,
)

NORM_KINDS = ("circle-mean", "hardy", "bergman", "circle-Lp")


@dataclass
class NormReport:
    kind: str
    p: float
    value: float
    error_estimate: float
    grid: Dict[str, Any] = field(default_factory=dict)
    radius: Optional[float] = None
    divergent: bool = False
    grid_value: Optional[float] = None
    extrapolated: Optional[float] = None
    certificate: Optional[str] = None
    degraded: bool = False
    trend: List[float] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return not self.divergent and math.isfinite(self.value)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class CircleValues:
    """|s| в точках r*exp(2*pi*i*j/M), j = 0..M-1."""
    values: np.ndarray
    degraded: bool = False
    tail_bound: float = 0.0


class ScalarField(Protocol):
    name: str
    analytic_modulus: bool

    def on_circle(self, radius: float, nodes: int) -> CircleValues:
        ...


class CallableScalar:
    """Скалярное поле |func(z)| для произвольной функции комплексного аргумента."""

    def __init__(self, func: Callable[[np.ndarray], np.ndarray], name: str = "callable",
                 analytic_modulus: bool = False):
        self.func = func
        self.name = name
        self.analytic_modulus = analytic_modulus

    def on_circle(self, radius: float, nodes: int) -> CircleValues:
        theta = 2.0 * np.pi * np.arange(nodes) / nodes
        values = np.abs(np.asarray(self.func(radius * np.exp(1j * theta)), dtype=complex))
        values = np.broadcast_to(values, theta.shape).astype(float)
        return CircleValues(values=values)


def validate_exponent(p) -> float:
    """Приводит p к float; допустимы p в [1, inf]."""
    try:
        value = float(p)
    except (TypeError, ValueError):
        raise UnsupportedExponentError(p)
    if math.isnan(value) or value < 1.0:
        raise UnsupportedExponentError(p)
    return value


def radial_grid(levels: int) -> List[float]:
    """Радиусы 1 - 2^{-k}, k = 1..levels."""
    return [1.0 - 2.0 ** (-k) for k in range(1, levels + 1)]


def angular_nodes(radius: float) -> int:
    """Число узлов по углу: степень двойки, разрешающая масштаб 1 - r."""
    wanted = max(config.ANGULAR_BASE_NODES, 16.0 / max(1.0 - radius, 1e-300))
    nodes = 2 ** int(math.ceil(math.log2(wanted)))
    return int(min(nodes, config.MAX_ANGULAR_NODES))


def _check_radius(radius: float) -> None:
    if not 0.0 < radius < 1.0:
        raise DomainError(f"radius must lie in (0, 1), got {radius}")


def _circle_power_mean(scalar: ScalarField, radius: float, p: float,
                       nodes: Optional[int] = None) -> Tuple[float, float, bool, int]:
    """
    (1/2pi) * integral |s|^p по окружности радиуса r с оценкой ошибки удвоением.
    Возвращает (среднее, ошибка, degraded, число узлов).
    """
    nodes = nodes or angular_nodes(radius)
    degraded = False
    for _ in range(4):
        circle = scalar.on_circle(radius, nodes)
        degraded = degraded or circle.degraded
        mean, error = periodic_mean(np.power(circle.values, p))
        if error <= 1e-13 * max(mean, 1e-300) or nodes * 2 > config.MAX_ANGULAR_NODES:
            break
        nodes *= 2
    return mean, error, degraded, nodes


def _circle_sup(scalar: ScalarField, radius: float,
                nodes: Optional[int] = None) -> Tuple[float, float, bool, int, int]:
    """
    max |s| по вложенным сеткам с удвоением: последовательность максимумов
    не убывает (сертификат монотонного уточнения). Останов, когда соседние
    значения отличаются меньше SUP_REFINEMENT_RTOL.
    Возвращает (значение, ошибка, degraded, узлы, число уточнений).
    """
    nodes = nodes or angular_nodes(radius)
    circle = scalar.on_circle(radius, nodes)
    degraded = circle.degraded
    value = float(np.max(circle.values))
    error = value
    refinements = 0
    for _ in range(4):
        if nodes * 2 > config.MAX_ANGULAR_NODES:
            break
        nodes *= 2
        refinements += 1
        circle = scalar.on_circle(radius, nodes)
        degraded = degraded or circle.degraded
        refined = max(value, float(np.max(circle.values)))
        error = refined - value
        value = refined
        if error <= config.SUP_REFINEMENT_RTOL * max(value, 1e-300):
            break
    return value, error, degraded, nodes, refinements


def _root_with_error(mean: float, error: float, p: float) -> Tuple[float, float]:
    value = mean ** (1.0 / p) if mean > 0 else 0.0
    upper = (mean + error) ** (1.0 / p)
    lower = max(mean - error, 0.0) ** (1.0 / p)
    return value, max(upper - value, value - lower)


def magnitude_divergence(values: List[float]) -> bool:
    """
    Рост >= DIVERGENCE_GROWTH за уровень DIVERGENCE_RUN уровней подряд
    при значениях выше DIVERGENCE_THRESHOLD.
    """
    run = 0
    for prev, cur in zip(values[:-1], values[1:]):
        if prev > config.DIVERGENCE_THRESHOLD and cur >= prev * (1.0 + config.DIVERGENCE_GROWTH):
            run += 1
            if run >= config.DIVERGENCE_RUN:
                return True
        else:
            run = 0
    return False


def stalled_growth(values: List[float]) -> bool:
    """
    Строго растущая последовательность, приращения которой перестали
    сжиматься (отношение соседних приращений >= STALLED_INCREMENT_RATIO на
    последних трёх уровнях): логарифмический или более быстрый рост.
    """
    if len(values) < 5:
        return False
    tail = values[-5:]
    increments = [b - a for a, b in zip(tail[:-1], tail[1:])]
    if any(d <= 0 for d in increments):
        return False
    ratios = [b / a for a, b in zip(increments[:-1], increments[1:])]
    return all(r >= config.STALLED_INCREMENT_RATIO for r in ratios)


def contracting(values: List[float]) -> bool:
    """Приращения последних уровней убывают геометрически (есть смысл экстраполировать)."""
    if len(values) < 3:
        return False
    d1 = values[-2] - values[-3]
    d2 = values[-1] - values[-2]
    if d1 == 0.0 and d2 == 0.0:
        return True
    return abs(d2) < config.STALLED_INCREMENT_RATIO * abs(d1)


def circle_mean(scalar: ScalarField, radius: float, p, *, nodes: Optional[int] = None) -> NormReport:
    """
    M_p(r, s) = ((1/2pi) * integral |s(re^{i theta})|^p d theta)^{1/p};
    при p = inf - максимум по уточняемой сетке.
    """
    p = validate_exponent(p)
    _check_radius(radius)

    if math.isinf(p):
        value, error, degraded, used, refinements = _circle_sup(scalar, radius, nodes)
        return NormReport(
            kind="circle-mean", p=p, value=value, error_estimate=error, radius=radius,
            degraded=degraded,
            grid={"angular_nodes": used, "refinement_level": refinements},
            certificate="monotone-refinement",
        )

    mean, error, degraded, used = _circle_power_mean(scalar, radius, p, nodes)
    value, value_error = _root_with_error(mean, error, p)
    return NormReport(
        kind="circle-mean", p=p, value=value, error_estimate=value_error, radius=radius,
        degraded=degraded, grid={"angular_nodes": used},
    )


def hardy_norm(scalar: ScalarField, p, *, levels: Optional[int] = None) -> NormReport:
    """
    ||s||_p = sup_r M_p(r, s) по сетке r_k = 1 - 2^{-k}, k = 1..levels.

    Для |аналитической| функции круговые средние не убывают по r, поэтому
    последний узел доминирует (сертификат) и его экстраполяция Ричардсона
    даётся как предельное значение.
    """
    p = validate_exponent(p)
    levels = levels or config.RADIAL_LEVELS
    radii = radial_grid(levels)

    reports = [circle_mean(scalar, r, p) for r in radii]
    trend = [rep.value for rep in reports]
    best = max(range(len(reports)), key=lambda i: trend[i])
    value = trend[best]
    error = reports[best].error_estimate
    degraded = any(rep.degraded for rep in reports)

    certificate = None
    notes = []
    if scalar.analytic_modulus:
        monotone = all(
            b >= a - (ra.error_estimate + rb.error_estimate + 1e-12 * max(abs(b), 1.0))
            for (a, ra), (b, rb) in zip(zip(trend[:-1], reports[:-1]), zip(trend[1:], reports[1:]))
        )
        if monotone:
            certificate = "subharmonic-monotone"
        else:
            notes.append("circle means of an analytic modulus decreased on the grid")

    extrapolated = richardson_limit(trend) if contracting(trend) else None
    divergent = magnitude_divergence(trend) or stalled_growth(trend)

    report = NormReport(
        kind="hardy", p=p, value=value, error_estimate=error,
        grid={
            "radial_nodes": radii,
            "angular_nodes": [rep.grid.get("angular_nodes") for rep in reports],
            "refinement_level": levels,
        },
        extrapolated=extrapolated, certificate=certificate, degraded=degraded,
        trend=trend, notes=notes,
    )
    if divergent:
        report.divergent = True
        report.grid_value = value
        report.value = math.inf
        report.extrapolated = None
    return report


def _bergman_sup(scalars: Dict[str, ScalarField], levels: int) -> Dict[str, NormReport]:
    results = {}
    for name, scalar in scalars.items():
        report = hardy_norm(scalar, math.inf, levels=levels)
        report.kind = "bergman"
        results[name] = report
    return results


def bergman_norms(scalars: Dict[str, ScalarField], p, *, levels: Optional[int] = None) -> Dict[str, NormReport]:
    """
    ||s||_{b^p} = (integral_D |s|^p d sigma)^{1/p}, d sigma = dx dy / pi,
    для нескольких полей за один радиальный проход (круговые значения
    переиспользуются кэшем поля).

    integral_D |s|^p d sigma = 2 * integral_0^1 r * m_p(r) dr,
    m_p(r) = (1/2pi) * integral |s(re^{it})|^p dt.
    Панели по радиусу: [0, 1/4], [1/4, 1/2] (D_{1/2}) и [1 - 2^{-k}, 1 - 2^{-k-1}]
    (D \\ D_{1/2}); хвост [1 - 2^{-levels}, 1] оценивается по последнему узлу.
    """
    p = validate_exponent(p)
    levels = levels or config.RADIAL_LEVELS
    if math.isinf(p):
        return _bergman_sup(scalars, levels)

    names = list(scalars)
    inner_panels = [(0.0, 0.25), (0.25, 0.5)]
    outer_panels = [(1.0 - 2.0 ** (-k), 1.0 - 2.0 ** (-k - 1)) for k in range(1, levels)]

    inner = np.zeros(len(names))
    outer = np.zeros(len(names))
    errors = np.zeros(len(names))
    degraded = {name: False for name in names}
    cumulative = {name: [] for name in names}
    max_nodes = 0

    def integrate_panel(a, b):
        nonlocal max_nodes
        radii = panel_nodes(a, b)
        weights = np.zeros((len(names), radii.size))
        angular_err = np.zeros((len(names), radii.size))
        for j, r in enumerate(radii):
            for i, name in enumerate(names):
                mean, err, deg, used = _circle_power_mean(scalars[name], float(r), p)
                weights[i, j] = 2.0 * r * mean
                angular_err[i, j] = 2.0 * r * err
                degraded[name] = degraded[name] or deg
                max_nodes = max(max_nodes, used)
        value, error = gauss_kronrod_panel(weights, a, b)
        value2, error2 = gauss_kronrod_panel(angular_err, a, b)
        return np.real(value), np.abs(error) + np.abs(value2)

    for a, b in inner_panels:
        value, error = integrate_panel(a, b)
        inner += value
        errors += error
    for i, name in enumerate(names):
        cumulative[name].append(float(inner[i]))

    for a, b in outer_panels:
        value, error = integrate_panel(a, b)
        outer += value
        errors += error
        for i, name in enumerate(names):
            cumulative[name].append(float(inner[i] + outer[i]))

    # хвост [r_L, 1]: m_p(r_L) * (1 - r_L^2), ошибка того же порядка
    r_last = 1.0 - 2.0 ** (-levels)
    tail = np.zeros(len(names))
    for i, name in enumerate(names):
        mean, err, deg, _ = _circle_power_mean(scalars[name], r_last, p)
        tail[i] = mean * (1.0 - r_last ** 2)
        degraded[name] = degraded[name] or deg
    outer += tail
    errors += tail

    results = {}
    for i, name in enumerate(names):
        integral = float(inner[i] + outer[i])
        trend = cumulative[name] + [integral]
        value, value_error = _root_with_error(integral, float(errors[i]), p)
        report = NormReport(
            kind="bergman", p=p, value=value, error_estimate=value_error,
            grid={
                "radial_panels": len(inner_panels) + len(outer_panels),
                "radial_nodes": 15 * (len(inner_panels) + len(outer_panels)) + 1,
                "max_angular_nodes": max_nodes,
                "refinement_level": levels,
                "inner_integral": float(inner[i]),
                "outer_integral": float(outer[i]),
                "tail_estimate": float(tail[i]),
                "integral_error": float(errors[i]),
            },
            degraded=degraded[name], trend=trend,
        )
        if magnitude_divergence(trend):
            report.divergent = True
            report.grid_value = value
            report.value = math.inf
        results[name] = report
    return results


def bergman_norm(scalar: ScalarField, p, *, levels: Optional[int] = None) -> NormReport:
    return bergman_norms({"s": scalar}, p, levels=levels)["s"]
