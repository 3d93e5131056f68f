"""
Оценки квазирегулярности и эллиптичности поля на полярной сетке.

Сетка: радиусы r_k = 1 - 2^{-k}, k = 1..levels, на уровне k - 64 * 2^{k-1}
равноотстоящих углов. Все величины - супремумы по растущему множеству
точек, поэтому последовательности по уровням не убывают; точный sup по
кругу никогда не утверждается.
"""

import logging
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from utils.calculus import circle_derivatives, geometry_arrays
from utils.errors import InvalidInputError, SenseViolationError
from utils.extension import DiskField
from utils.logger import get_logger, log_event
from utils.norms import radial_grid
from utils.quadrature import richardson_limit

logger = get_logger("ellipticity")

QR_LIMIT_TOLERANCE = 1e-6
DERIVED_K_FLAG = "implementation-derived: K = (1 + q) / (1 - q)"


@dataclass
class EllipticityReport:
    K: Optional[float] = None
    Kprime_estimate: Optional[float] = None
    qr_constant: Optional[float] = None
    sense: str = "preserving"
    grid: Dict[str, Any] = field(default_factory=dict)
    trend: List[float] = field(default_factory=list)
    qr_trend: List[float] = field(default_factory=list)
    undefined_points: int = 0
    not_quasiregular: bool = False
    classification: Optional[str] = None
    derived_K: Optional[float] = None
    scan: List[Dict[str, float]] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class _Level:
    radius: float
    nodes: int
    op_norm_sq: np.ndarray
    jacobian: np.ndarray
    omega_abs: np.ndarray
    defined: np.ndarray


class GridSweep:
    """Одна проходка по сетке; min_kprime, qr_constant и classify читают её уровни."""

    def __init__(self, field: DiskField, levels: Optional[int] = None):
        self.field = field
        self.levels = int(levels or config.RADIAL_LEVELS)
        if self.levels < 1:
            raise InvalidInputError(f"levels must be positive, got {levels}")
        self.radii = radial_grid(self.levels)
        self._levels: List[_Level] = []
        for k, radius in enumerate(self.radii, start=1):
            nodes = config.ANGULAR_BASE_NODES * 2 ** (k - 1)
            circle = circle_derivatives(field, radius, nodes)
            op_norm, _, jacobian, omega_abs, defined = geometry_arrays(circle.f_z, circle.f_zbar)
            self._check_sense(circle, jacobian)
            self._levels.append(_Level(radius, nodes, op_norm ** 2, jacobian, omega_abs, defined))

    def _check_sense(self, circle, jacobian: np.ndarray) -> None:
        bad = np.flatnonzero(jacobian <= 0.0)
        if not bad.size:
            return
        sense = "reversing" if np.all(jacobian < 0.0) else "mixed"
        index = int(bad[0])
        point = complex(circle.z[index])
        log_event(logger, "sense_violation", level=logging.WARNING, spec=self.field.spec.label,
                  point=[point.real, point.imag], jacobian=float(jacobian[index]), sense=sense)
        raise SenseViolationError(
            f"J_f = {jacobian[index]:.6g} <= 0 at z = {point:.6g}; the map is not sense-preserving",
            point=point, jacobian=float(jacobian[index]), sense=sense,
        )

    @property
    def grid(self) -> Dict[str, Any]:
        return {
            "radial_nodes": self.radii,
            "angular_nodes": [level.nodes for level in self._levels],
            "refinement_level": self.levels,
        }

    def kprime_trend(self, K: float) -> List[float]:
        """Накопленный max(||D_f||^2 - K J_f, 0) по уровням."""
        trend, running = [], 0.0
        for level in self._levels:
            running = max(running, float(np.max(level.op_norm_sq - K * level.jacobian)))
            trend.append(running)
        return trend

    def qr_trend(self) -> Tuple[List[float], int]:
        trend, running, undefined = [], 0.0, 0
        for level in self._levels:
            undefined += int(np.count_nonzero(~level.defined))
            if np.any(level.defined):
                running = max(running, float(np.max(level.omega_abs[level.defined])))
            trend.append(running)
        return trend, undefined


def _check_K(K: float) -> float:
    K = float(K)
    if not K >= 1.0:
        raise InvalidInputError(f"K must be >= 1, got {K}")
    return K


def _trends_to_one(trend: Sequence[float]) -> bool:
    if len(trend) < 2:
        return bool(trend) and trend[-1] >= 1.0 - QR_LIMIT_TOLERANCE
    increasing = trend[-1] > trend[-2]
    limit = richardson_limit(trend)
    return trend[-1] >= 1.0 - QR_LIMIT_TOLERANCE or (increasing and limit >= 1.0 - QR_LIMIT_TOLERANCE)


def min_kprime(field: DiskField, K: float = 1.0, levels: Optional[int] = None,
               sweep: Optional[GridSweep] = None) -> EllipticityReport:
    """
    Наименьшее K' >= 0 с ||D_f||^2 <= K J_f + K' на сетке.

    Raises:
        SenseViolationError: J_f <= 0 в узле сетки
    """
    K = _check_K(K)
    sweep = sweep or GridSweep(field, levels)
    trend = sweep.kprime_trend(K)
    return EllipticityReport(K=K, Kprime_estimate=trend[-1], grid=sweep.grid, trend=trend)


def qr_constant(field: DiskField, levels: Optional[int] = None,
                sweep: Optional[GridSweep] = None) -> EllipticityReport:
    """
    sup |omega| по точкам сетки, где omega определена. Стремление
    уровней к 1 означает, что f не K-квазирегулярно ни при каком K.
    """
    sweep = sweep or GridSweep(field, levels)
    trend, undefined = sweep.qr_trend()
    report = EllipticityReport(
        qr_constant=trend[-1], grid=sweep.grid, qr_trend=trend, undefined_points=undefined,
        not_quasiregular=_trends_to_one(trend),
    )
    if report.not_quasiregular:
        report.notes.append("sup |omega| tends to 1: not K-quasiregular for any K")
    return report


def classify(field: DiskField, K_scan: Sequence[float] = (1.0,), levels: Optional[int] = None,
             sweep: Optional[GridSweep] = None) -> EllipticityReport:
    """
    Сводный отчёт: квазирегулярно с K = (1+q)/(1-q), если q = sup|omega|
    отделено от 1, иначе кандидат в (K, K')-эллиптические со сканом по K.
    """
    K_scan = [_check_K(K) for K in (K_scan or (1.0,))]
    sweep = sweep or GridSweep(field, levels)
    report = qr_constant(field, sweep=sweep)
    report.scan = [{"K": K, "Kprime": sweep.kprime_trend(K)[-1]} for K in K_scan]
    report.K = K_scan[0]
    report.trend = sweep.kprime_trend(K_scan[0])
    report.Kprime_estimate = report.trend[-1]

    q = report.qr_constant
    if not report.not_quasiregular and q < 1.0:
        report.derived_K = (1.0 + q) / (1.0 - q)
        report.classification = f"quasiregular with K ~ {report.derived_K:.6g}"
        report.notes.append(DERIVED_K_FLAG)
    else:
        pairs = ", ".join(f"({entry['K']:g}, {entry['Kprime']:.6g})" for entry in report.scan)
        report.classification = f"elliptic candidate (K, K'): {pairs}"
    log_event(logger, "classified", spec=field.spec.label, classification=report.classification)
    return report


def elliptic_constants(field: DiskField, levels: Optional[int] = None,
                       K: Optional[float] = None) -> Tuple[float, float, EllipticityReport]:
    """
    (K, K') для проверок второй теоремы: оценки сетки с запасом ELLIPTIC_INFLATION.
    K' берётся как max(значение сетки, экстраполяция тренда).
    """
    inflation = config.ELLIPTIC_INFLATION
    sweep = GridSweep(field, levels)
    report = classify(field, (1.0 if K is None else K,), sweep=sweep)
    if K is None:
        K = report.derived_K * inflation if report.derived_K is not None else 1.0
    K = _check_K(K)
    trend = sweep.kprime_trend(K)
    estimate = max(trend[-1], richardson_limit(trend) or 0.0, 0.0)
    report.notes.append(f"elliptic constants inflated by factor {inflation:g}")
    return K, estimate * inflation, report
