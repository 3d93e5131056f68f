"""
Численные проверки неравенств для гармонических продолжений и контрпримера F = |sin theta|.

Каждая проверка возвращает VerificationReport с левой и правой частью,
запасом margin = rhs - lhs и набором подпроверок. Проверка пройдена, если
margin >= -(оценка ошибки + VERIFY_SLACK * (1 + |rhs|)) и пройдены все
подпроверки с gating=True.
"""

import functools
import math
import time
from dataclasses import dataclass, field, asdict
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
import metrics
from utils.boundary import BoundarySpec, boundary_derivative, lp_circle_norm, preset_spec
from utils.calculus import DiskScalar, geometry_arrays, polar, wirtinger
from utils.constants import c_of_p
from utils.ellipticity import EllipticityReport
from utils.errors import ConfigurationError, InvalidInputError, UnsupportedExponentError
from utils.extension import DiskField, extend, extend_oracle
from utils.logger import get_logger, log_event
from utils.norms import bergman_norms, circle_mean, contracting, hardy_norm, radial_grid, validate_exponent
from utils.quadrature import richardson_limit

logger = get_logger("verify")

STATEMENTS = (
    "lemma-fr",
    "lemma-ft",
    "thm1-bergman",
    "thm1-counterexample",
    "thm2-finite",
    "thm2-infinite",
)

STATEMENT_ALIASES = {
    "thm2-finite-p": "thm2-finite",
    "thm2-infinite-p": "thm2-infinite",
}

COUNTEREXAMPLE_THRESHOLD = 2.0
COUNTEREXAMPLE_MAX_LEVEL = 14
IDENTITY_RTOL = 1e-10
MEAN_VALUE_TOL = 1e-12
FINITE_DIFFERENCE_STEP = 1e-5


@dataclass
class SubCheck:
    name: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    gating: bool = True
    error: float = 0.0


@dataclass
class VerificationReport:
    statement_id: str
    parameters: Dict[str, Any]
    lhs: float
    rhs: float
    margin: float
    passed: bool
    tolerances: Dict[str, float]
    notes: List[str] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    subchecks: List[SubCheck] = field(default_factory=list)
    degraded: bool = False

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["status"] = self.status
        return data


def judge(lhs: float, rhs: float, error: float = 0.0, slack: bool = True) -> Tuple[float, bool]:
    """(margin, passed) для неравенства lhs <= rhs с допуском ошибки и VERIFY_SLACK."""
    if math.isinf(rhs) and rhs > 0:
        return math.inf, not (math.isinf(lhs) and lhs > 0)
    margin = rhs - lhs
    if math.isnan(margin):
        return margin, False
    allowance = error + (config.VERIFY_SLACK * (1.0 + abs(rhs)) if slack else 0.0)
    return margin, margin >= -allowance


def subcheck(name: str, lhs: float, rhs: float, error: float = 0.0, gating: bool = True,
             slack: bool = True) -> SubCheck:
    margin, passed = judge(lhs, rhs, error, slack)
    return SubCheck(name=name, lhs=float(lhs), rhs=float(rhs), margin=float(margin), passed=passed,
                    gating=gating, error=float(error))


def _finalize(statement_id: str, parameters: Dict[str, Any], lhs: float, rhs: float, error: float,
              subchecks: Sequence[SubCheck] = (), notes: Sequence[str] = (),
              diagnostics: Optional[Dict[str, Any]] = None, degraded: bool = False) -> VerificationReport:
    margin, passed = judge(lhs, rhs, error)
    passed = passed and all(check.passed for check in subchecks if check.gating)
    return VerificationReport(
        statement_id=statement_id,
        parameters=parameters,
        lhs=float(lhs),
        rhs=float(rhs),
        margin=float(margin),
        passed=passed,
        tolerances={"error_estimate": float(error), "slack": config.VERIFY_SLACK},
        notes=list(notes),
        diagnostics=diagnostics or {},
        subchecks=list(subchecks),
        degraded=degraded,
    )


def instrumented(statement_id: str):
    """Логирует старт и итог проверки, пишет метрики checks_total и check_duration_seconds."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            log_event(logger, "check_started", statement=statement_id)
            start = time.perf_counter()
            report = func(*args, **kwargs)
            duration = time.perf_counter() - start
            metrics.track_check(statement_id, report.passed, duration)
            log_event(
                logger, "check_finished",
                statement=statement_id,
                preset=report.parameters.get("spec", {}).get("name"),
                p=report.parameters.get("p"),
                margin=report.margin,
                status=report.status,
                degraded=report.degraded or None,
                duration_ms=duration * 1000,
            )
            return report
        return wrapper
    return decorator


def _parameters(spec: BoundarySpec, field: DiskField, levels: int, **extra) -> Dict[str, Any]:
    params = {
        "spec": spec.describe(),
        "levels": levels,
        "truncation": field.truncation,
        "adaptive_truncation": field.adaptive,
    }
    params.update(extra)
    return params


def seeded_points(seed: int, count: int, r_max: float) -> np.ndarray:
    """Точки, равномерные по площади в круге |z| <= r_max (без нуля)."""
    rng = np.random.default_rng(seed)
    u, v = rng.random((2, count))
    radii = r_max * np.sqrt(np.maximum(u, 1e-6))
    return radii * np.exp(2j * np.pi * v)


def _field_for(spec: BoundarySpec, N: Optional[int], field: Optional[DiskField]) -> DiskField:
    if field is None:
        return extend(spec, N)
    if field.spec is not spec:
        raise ConfigurationError(f"shared field was built for '{field.spec.label}', not for '{spec.label}'")
    return field


def _finite(p) -> float:
    p = validate_exponent(p)
    if math.isinf(p):
        raise UnsupportedExponentError(p, supported="[1, inf)")
    return p


@instrumented("lemma-ft")
def check_lemma_ft(spec: BoundarySpec, p, radii: Optional[Sequence[float]] = None, *,
                   levels: Optional[int] = None, N: Optional[int] = None,
                   field: Optional[DiskField] = None) -> VerificationReport:
    """||f_t||_p <= ||F'||_{L^p}: lhs - максимум M_p(r, f_t) по радиусам."""
    p = validate_exponent(p)
    levels = levels or config.RADIAL_LEVELS
    radii = list(radii) if radii is not None else radial_grid(levels)
    field = _field_for(spec, N, field)
    scalar = DiskScalar(field, "f_t")

    means = [circle_mean(scalar, r, p) for r in radii]
    best = max(means, key=lambda report: report.value)
    rhs_report = lp_circle_norm(boundary_derivative(spec), p)

    return _finalize(
        "lemma-ft",
        _parameters(spec, field, levels, p=p, radii=radii),
        lhs=best.value,
        rhs=rhs_report.value,
        error=best.error_estimate + rhs_report.error_estimate,
        diagnostics={
            "circle_means": [report.value for report in means],
            "argmax_radius": best.radius,
            "derivative_norm": rhs_report.to_dict(),
        },
        degraded=any(report.degraded for report in means),
    )


@instrumented("lemma-fr")
def check_lemma_fr(spec: BoundarySpec, p, *, levels: Optional[int] = None,
                   N: Optional[int] = None, field: Optional[DiskField] = None) -> VerificationReport:
    """(integral_D |f_r|^p d sigma)^{1/p} <= (2 C(p))^{1/p} ||F'||_{L^p}."""
    p = _finite(p)
    levels = levels or config.RADIAL_LEVELS
    field = _field_for(spec, N, field)
    lhs_report = bergman_norms({"f_r": DiskScalar(field, "f_r")}, p, levels=levels)["f_r"]
    derivative_norm = lp_circle_norm(boundary_derivative(spec), p)
    constant = c_of_p(p)

    factor = (2.0 * constant.c_value) ** (1.0 / p)
    rhs = factor * derivative_norm.value
    factor_error = factor / (p * constant.c_value) * constant.error
    error = lhs_report.error_estimate + factor_error * derivative_norm.value + factor * derivative_norm.error_estimate

    return _finalize(
        "lemma-fr",
        _parameters(spec, field, levels, p=p),
        lhs=lhs_report.value,
        rhs=rhs,
        error=error,
        notes=[
            "||f_r|| is read as the Bergman norm over the disk with d sigma = dx dy / pi; "
            "C(p) is the radial integral of the Poisson majorant"
        ],
        diagnostics={
            "bergman_f_r": lhs_report.to_dict(),
            "derivative_norm": derivative_norm.to_dict(),
            "constant": constant.to_dict(),
        },
        degraded=lhs_report.degraded,
    )


def _point_samples(field: DiskField, points: np.ndarray):
    sample = field.sample(points)
    f_z, f_zbar = sample.f_z, sample.f_zbar
    radii = np.abs(points)
    unit = points / radii
    f_t = 1j * (points * f_z - np.conj(points) * f_zbar)
    f_r = f_z * unit + f_zbar * np.conj(unit)
    return radii, f_z, f_zbar, f_t, f_r


@instrumented("thm1-bergman")
def check_thm1_bergman(spec: BoundarySpec, p, *, levels: Optional[int] = None, N: Optional[int] = None,
                       seed: Optional[int] = None, field: Optional[DiskField] = None) -> VerificationReport:
    """
    f_z и conj(f_z̄) лежат в B^p: обе нормы Бергмана конечны и не больше
    (1/2 (integral |f_r|^p + integral |f_t/r|^p))^{1/p}. Подпроверки повторяют
    шаги доказательства: внешняя часть |f_t/r|^p, внутренняя часть и
    поточечное неравенство для f_z, f_z̄.
    """
    p = _finite(p)
    levels = levels or config.RADIAL_LEVELS
    seed = config.RANDOM_SEED if seed is None else seed
    field = _field_for(spec, N, field)
    quantities = ("f_z", "f_zbar", "f_r", "f_t_over_r", "op_norm")
    reports = bergman_norms({q: DiskScalar(field, q) for q in quantities}, p, levels=levels)

    def integral(name: str, part: str = None) -> float:
        grid = reports[name].grid
        if part is None:
            return grid["inner_integral"] + grid["outer_integral"]
        return grid[part]

    def integral_error(name: str) -> float:
        return reports[name].grid["integral_error"]

    majorant_integral = 0.5 * (integral("f_r") + integral("f_t_over_r"))
    rhs = majorant_integral ** (1.0 / p)
    rhs_error = abs((majorant_integral + 0.5 * (integral_error("f_r") + integral_error("f_t_over_r"))) ** (1.0 / p) - rhs)
    lhs_name = max(("f_z", "f_zbar"), key=lambda q: reports[q].value)
    lhs = reports[lhs_name].value

    derivative_norm = lp_circle_norm(boundary_derivative(spec), p)
    checks = [
        subcheck("f_z-finite", 0.0 if reports["f_z"].is_finite else math.inf, 0.0),
        subcheck("f_zbar-finite", 0.0 if reports["f_zbar"].is_finite else math.inf, 0.0),
        subcheck(
            "outer-tangential-bound",
            integral("f_t_over_r", "outer_integral"),
            2.0 ** (p - 1.0) * derivative_norm.value ** p,
            error=integral_error("f_t_over_r") + p * 2.0 ** (p - 1.0) * derivative_norm.value ** (p - 1.0)
            * derivative_norm.error_estimate,
        ),
        subcheck(
            "inner-tangential-bound",
            integral("f_t_over_r", "inner_integral"),
            integral("op_norm", "inner_integral"),
            error=integral_error("f_t_over_r") + integral_error("op_norm"),
        ),
    ]

    points = seeded_points(seed, config.SPOT_CHECK_POINTS, 0.99)
    radii, f_z, f_zbar, f_t, f_r = _point_samples(field, points)
    majorant = 0.5 * (np.abs(f_r) ** p + np.abs(f_t / radii) ** p)
    for name, values in (("pointwise-f_z", f_z), ("pointwise-f_zbar", f_zbar)):
        excess = np.abs(values) ** p - majorant
        checks.append(subcheck(name, float(np.max(excess)), 0.0, error=1e-12 * float(np.max(majorant) + 1.0)))

    return _finalize(
        "thm1-bergman",
        _parameters(spec, field, levels, p=p, seed=seed),
        lhs=lhs,
        rhs=rhs,
        error=reports[lhs_name].error_estimate + rhs_error,
        subchecks=checks,
        diagnostics={
            "bergman": {name: report.to_dict() for name, report in reports.items()},
            "derivative_norm": derivative_norm.to_dict(),
        },
        degraded=any(report.degraded for report in reports.values()),
    )


def abs_sine_closed_form(r: float, t: float) -> float:
    """P[|sin theta|](re^{it}) через arctan; ветви не уточнены, используется только для сверки."""
    a = (1.0 + r) / (r - 1.0)
    log_term = (1.0 - r * r) * math.cos(t) * math.log((1.0 + r * r - 2.0 * r * math.cos(t))
                                                      / (1.0 + r * r + 2.0 * r * math.cos(t)))
    arctan_term = 2.0 * (1.0 + r * r) * math.sin(t) * (
        math.atan(a / math.tan(0.5 * t)) + math.atan(a * math.tan(0.5 * t))
    )
    return (log_term + arctan_term) / (2.0 * math.pi * r * (r * r - 1.0))


def abs_sine_radial_closed_form(r: float) -> float:
    """f_r(r) = (1/(pi r^2)) log((1-r)/(1+r)) + (2/pi) / (r (1 - r^2))."""
    return math.log((1.0 - r) / (1.0 + r)) / (math.pi * r * r) + (2.0 / math.pi) / (r * (1.0 - r * r))


def _closed_form_comparison(spec: BoundarySpec, field: DiskField) -> Dict[str, Any]:
    radial = []
    for r in (0.5, 0.9):
        h = FINITE_DIFFERENCE_STEP
        difference = (extend_oracle(spec, r + h) - extend_oracle(spec, r - h)).real / (2.0 * h)
        closed = abs_sine_radial_closed_form(r)
        radial.append({
            "r": r,
            "closed_form": closed,
            "oracle_difference": difference,
            "series": polar(field, r).f_r.real,
            "discrepancy": closed - difference,
        })
    values = []
    for r, t in ((0.5, 0.3), (0.5, 2.0), (0.9, 1.0), (0.9, 4.0)):
        closed = abs_sine_closed_form(r, t)
        series = field.evaluate(r * complex(math.cos(t), math.sin(t))).real
        values.append({"r": r, "t": t, "closed_form": closed, "series": series, "discrepancy": closed - series})
    return {"radial_derivative": radial, "values": values}


@instrumented("thm1-counterexample")
def run_counterexample(levels: Optional[int] = None, *, N: Optional[int] = None) -> VerificationReport:
    """
    F = |sin theta|: |f_z(1 - 2^{-k})| и |f_z̄(1 - 2^{-k})| строго растут
    (логарифмически), нормы B^infty/H^infty получают метку +inf.
    lhs - порог COUNTEREXAMPLE_THRESHOLD, rhs - максимум |f_z| на лучах;
    проверка пройдена, когда рост его превысил.
    """
    levels = levels or config.RADIAL_LEVELS
    spec = preset_spec("abs-sin")
    field = extend(spec, N)

    top = levels
    values_z, values_zbar = [], []
    for k in range(1, COUNTEREXAMPLE_MAX_LEVEL + 1):
        if k > top:
            if max(values_z) > COUNTEREXAMPLE_THRESHOLD:
                break
            top = k
        f_z, f_zbar = wirtinger(field, 1.0 - 2.0 ** (-k))
        values_z.append(abs(f_z))
        values_zbar.append(abs(f_zbar))

    def strictly_increasing(values):
        tail = values[3:]
        return all(b > a for a, b in zip(tail[:-1], tail[1:]))

    sup_reports = {
        name: hardy_norm(DiskScalar(field, name), math.inf, levels=levels) for name in ("f_z", "f_zbar")
    }

    checks = [
        subcheck("f_z-increasing", 0.0 if strictly_increasing(values_z) else 1.0, 0.0),
        subcheck("f_zbar-increasing", 0.0 if strictly_increasing(values_zbar) else 1.0, 0.0),
        subcheck("f_z-sup-divergent", 0.0 if sup_reports["f_z"].divergent else 1.0, 0.0),
        subcheck("f_zbar-sup-divergent", 0.0 if sup_reports["f_zbar"].divergent else 1.0, 0.0),
    ]
    for r in (0.5, 0.9, 0.99):
        pack = polar(field, r)
        direct = abs(pack.f_z)
        identity = 0.5 * math.sqrt(abs(pack.f_r) ** 2 + abs(pack.f_t_over_r) ** 2)
        checks.append(subcheck(f"modulus-identity r={r:g}", abs(direct - identity), 0.0,
                               error=IDENTITY_RTOL * max(direct, 1.0), slack=False))
    mean_value = field.evaluate(0.0).real
    checks.append(subcheck("mean-value", abs(mean_value - 2.0 / math.pi), 0.0,
                           error=MEAN_VALUE_TOL, slack=False))

    rhs = max(values_z)
    return _finalize(
        "thm1-counterexample",
        _parameters(spec, field, levels, levels_evaluated=len(values_z)),
        lhs=COUNTEREXAMPLE_THRESHOLD,
        rhs=rhs,
        error=0.0,
        subchecks=checks,
        notes=[
            "lhs is the growth threshold and rhs the largest |f_z(1 - 2^-k)|; pass means the threshold was crossed",
            "closed forms are compared for information only and never gate the result",
        ],
        diagnostics={
            "f_z_abs": values_z,
            "f_zbar_abs": values_zbar,
            "sup_norms": {name: report.to_dict() for name, report in sup_reports.items()},
            "closed_forms": _closed_form_comparison(spec, field),
        },
        degraded=any(report.degraded for report in sup_reports.values()),
    )


def _elliptic_pair(K: Optional[float], Kprime: Optional[float],
                   certificate: Optional[Tuple[float, float, EllipticityReport]]) -> Tuple[float, float, List[str]]:
    notes = []
    if K is None or Kprime is None:
        if certificate is None:
            raise ConfigurationError(
                "ellipticity constants K and Kprime were not supplied and no ellipticity certificate is available"
            )
        cert_K, cert_Kprime, report = certificate
        K = cert_K if K is None else K
        Kprime = cert_Kprime if Kprime is None else Kprime
        notes.append(f"K, K' from grid certificate ({report.classification}), "
                     f"inflated by {config.ELLIPTIC_INFLATION:g}")
    K, Kprime = float(K), float(Kprime)
    if K < 1.0 or Kprime < 0.0:
        raise InvalidInputError(f"need K >= 1 and Kprime >= 0, got K={K}, Kprime={Kprime}")
    return K, Kprime, notes


def _premise_check(op_norm, jacobian, K: float, Kprime: float) -> SubCheck:
    excess = float(np.max(op_norm ** 2 - K * jacobian - Kprime))
    return subcheck("ellipticity-premise", excess, 0.0, error=1e-12 * (1.0 + Kprime), gating=False)


@instrumented("thm2-finite")
def check_thm2_finite(spec: BoundarySpec, p, K: Optional[float] = None, Kprime: Optional[float] = None, *,
                      certificate: Optional[Tuple[float, float, EllipticityReport]] = None,
                      levels: Optional[int] = None, N: Optional[int] = None,
                      seed: Optional[int] = None, field: Optional[DiskField] = None) -> VerificationReport:
    """
    sup_r M_p(r, ||D_f||) <= 2^{(p-1)/p} (K^p ||F'||^p + K'^{p/2})^{1/p} для (K, K')-эллиптического f.

    lhs - максимум по сетке радиусов (нижняя оценка истинного sup).
    """
    p = _finite(p)
    K, Kprime, notes = _elliptic_pair(K, Kprime, certificate)
    levels = levels or config.RADIAL_LEVELS
    seed = config.RANDOM_SEED if seed is None else seed
    field = _field_for(spec, N, field)

    lhs_report = hardy_norm(DiskScalar(field, "op_norm"), p, levels=levels)
    derivative_norm = lp_circle_norm(boundary_derivative(spec), p)
    inner = K ** p * derivative_norm.value ** p + Kprime ** (p / 2.0)
    rhs = 2.0 ** ((p - 1.0) / p) * inner ** (1.0 / p)
    rhs_error = 2.0 ** ((p - 1.0) / p) * K * derivative_norm.error_estimate

    points = seeded_points(seed, config.SPOT_CHECK_POINTS, 1.0 - 2.0 ** (-levels))
    _, f_z, f_zbar, _, _ = _point_samples(field, points)
    op_norm, min_stretch, jacobian, _, _ = geometry_arrays(f_z, f_zbar)
    pointwise = op_norm ** p / (2.0 ** (p - 1.0) * K ** p) - Kprime ** (p / 2.0) / K ** p - min_stretch ** p

    hardy = {name: hardy_norm(DiskScalar(field, name), p, levels=levels) for name in ("f_z", "f_zbar")}
    checks = [
        subcheck("pointwise-elliptic-bound", float(np.max(pointwise)), 0.0,
                 error=1e-12 * float(np.max(op_norm ** p) + 1.0)),
        subcheck("f_z-hardy-finite", 0.0 if hardy["f_z"].is_finite else math.inf, 0.0),
        subcheck("f_zbar-hardy-finite", 0.0 if hardy["f_zbar"].is_finite else math.inf, 0.0),
        _premise_check(op_norm, jacobian, K, Kprime),
    ]
    notes.append("lhs is the grid lower bound of the true sup over r")

    return _finalize(
        "thm2-finite",
        _parameters(spec, field, levels, p=p, K=K, Kprime=Kprime, seed=seed),
        lhs=lhs_report.value,
        rhs=rhs,
        error=lhs_report.error_estimate + rhs_error,
        subchecks=checks,
        notes=notes,
        diagnostics={
            "op_norm_hardy": lhs_report.to_dict(),
            "derivative_norm": derivative_norm.to_dict(),
            "hardy": {name: report.to_dict() for name, report in hardy.items()},
        },
        degraded=lhs_report.degraded,
    )


@instrumented("thm2-infinite")
def check_thm2_infinite(spec: BoundarySpec, K: Optional[float] = None, Kprime: Optional[float] = None, *,
                        certificate: Optional[Tuple[float, float, EllipticityReport]] = None,
                        levels: Optional[int] = None, N: Optional[int] = None,
                        seed: Optional[int] = None, field: Optional[DiskField] = None) -> VerificationReport:
    """
    sup |z| ||D_f(z)|| <= sqrt(K') + K ||F'||_infty.

    lhs - предел Ричардсона для r_k * max ||D_f|| по сетке r_k = 1 - 2^{-k}
    (если приращения сжимаются), иначе максимум по сетке. Подпроверки -
    цепочка ||F'||_infty >= |f_t| >= r l(D_f) >= (r/K)(||D_f|| - sqrt(K')) в точках.
    """
    K, Kprime, notes = _elliptic_pair(K, Kprime, certificate)
    levels = levels or config.RADIAL_LEVELS
    seed = config.RANDOM_SEED if seed is None else seed
    field = _field_for(spec, N, field)
    scalar = DiskScalar(field, "op_norm")

    sups = [circle_mean(scalar, r, math.inf) for r in radial_grid(levels)]
    weighted = [report.radius * report.value for report in sups]
    grid_value = max(weighted)
    error = max(report.error_estimate for report in sups)
    lhs = grid_value
    if contracting(weighted):
        lhs = max(richardson_limit(weighted), grid_value)
        notes.append("lhs is the Richardson limit of the radial grid sup")
    else:
        notes.append("lhs is the radial grid sup")

    derivative_sup = lp_circle_norm(boundary_derivative(spec), math.inf)
    rhs = math.sqrt(Kprime) + K * derivative_sup.value

    points = seeded_points(seed, config.SPOT_CHECK_POINTS, 1.0 - 2.0 ** (-levels))
    radii, f_z, f_zbar, f_t, _ = _point_samples(field, points)
    op_norm, min_stretch, jacobian, _, _ = geometry_arrays(f_z, f_zbar)
    tangential = np.abs(f_t)
    stretch = radii * min_stretch
    lower = radii / K * (op_norm - math.sqrt(Kprime))
    checks = [
        subcheck("chain-ft", float(np.max(tangential)), derivative_sup.value, error=derivative_sup.error_estimate),
        subcheck("chain-stretch", float(np.max(stretch - tangential)), 0.0,
                 error=1e-12 * float(np.max(tangential) + 1.0)),
        subcheck("chain-elliptic", float(np.max(lower - stretch)), 0.0,
                 error=1e-12 * float(np.max(op_norm) + 1.0)),
        _premise_check(op_norm, jacobian, K, Kprime),
    ]

    return _finalize(
        "thm2-infinite",
        _parameters(spec, field, levels, p=math.inf, K=K, Kprime=Kprime, seed=seed),
        lhs=lhs,
        rhs=rhs,
        error=error + K * derivative_sup.error_estimate,
        subchecks=checks,
        notes=notes,
        diagnostics={
            "grid_value": grid_value,
            "weighted_sups": weighted,
            "derivative_sup": derivative_sup.to_dict(),
        },
        degraded=any(report.degraded for report in sups),
    )


def resolve_statement(statement_id: str) -> str:
    statement_id = STATEMENT_ALIASES.get(statement_id, statement_id)
    if statement_id not in STATEMENTS:
        raise InvalidInputError(f"unknown statement '{statement_id}', expected one of {STATEMENTS}")
    return statement_id


def run_check(statement_id: str, spec: Optional[BoundarySpec] = None, p=None, *, K: Optional[float] = None,
              Kprime: Optional[float] = None, certificate=None, levels: Optional[int] = None,
              N: Optional[int] = None, seed: Optional[int] = None,
              field: Optional[DiskField] = None) -> VerificationReport:
    """
    Единая точка вызова проверки по идентификатору (для CLI и полного прогона).
    Готовое поле field переиспользуется всеми проверками одного пресета.
    """
    statement_id = resolve_statement(statement_id)
    if statement_id == "thm1-counterexample":
        return run_counterexample(levels, N=N)
    if spec is None:
        raise ConfigurationError(f"statement '{statement_id}' needs a boundary function")
    if statement_id == "thm2-infinite":
        return check_thm2_infinite(spec, K, Kprime, certificate=certificate, levels=levels, N=N, seed=seed,
                                   field=field)
    if p is None:
        raise ConfigurationError(f"statement '{statement_id}' needs an exponent p")
    if statement_id == "lemma-ft":
        return check_lemma_ft(spec, p, levels=levels, N=N, field=field)
    if statement_id == "lemma-fr":
        return check_lemma_fr(spec, p, levels=levels, N=N, field=field)
    if statement_id == "thm1-bergman":
        return check_thm1_bergman(spec, p, levels=levels, N=N, seed=seed, field=field)
    return check_thm2_finite(spec, p, K, Kprime, certificate=certificate, levels=levels, N=N, seed=seed,
                             field=field)
