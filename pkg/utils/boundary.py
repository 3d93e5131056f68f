"""
Граничные функции F: T -> C, их производные по углу и коэффициенты Фурье.

Три вида описаний (BoundarySpec.kind):
- preset: именованная функция из PRESETS (точные коэффициенты, точки изломов);
- fourier: конечный список коэффициентов c_n;
- sampled: значения в 2M равноотстоящих точках, трактуются как
  тригонометрический интерполянт.

За вычисления отвечает модель (FourierModel или AbsSineModel), которую
BoundarySpec строит лениво.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import fft

import config
from utils.errors import InvalidInputError, RefusedOperationError
from utils.logger import get_logger, log_event
from utils.norms import NormReport, validate_exponent
from utils.quadrature import adaptive_integrate, wrap_angles

logger = get_logger("boundary")

SPEC_KINDS = ("preset", "fourier", "sampled")
TWO_PI = 2.0 * math.pi


def uniform_series(indices: np.ndarray, values: np.ndarray, nodes: int) -> np.ndarray:
    """
    sum_n values_n * exp(i n theta_j) в theta_j = 2 pi j / nodes.

    Коэффициенты складываются по вычетам n mod nodes, после чего одно
    обратное БПФ даёт точные значения ряда при любой длине.
    """
    bins_index = np.mod(indices, nodes)
    real = np.bincount(bins_index, weights=np.real(values), minlength=nodes)
    imag = np.bincount(bins_index, weights=np.imag(values), minlength=nodes)
    return nodes * fft.ifft(real + 1j * imag)


def _tail_sum(s: int, rho: float, K: int) -> float:
    """Оценка sum_{k>K} k^s rho^k для s <= 1."""
    if rho <= 0.0:
        return 0.0
    if rho >= 1.0:
        return math.inf
    m = K + 1
    head = rho ** m
    if s <= 0:
        return m ** s * head / (1.0 - rho)
    return head * (m / (1.0 - rho) + rho / (1.0 - rho) ** 2)


class FourierModel:
    """Тригонометрический полином sum c_n e^{in theta} с конечным набором индексов."""

    def __init__(self, coefficients: Mapping[int, complex], corners: Sequence[float] = (),
                 real_valued: Optional[bool] = None):
        items = sorted((int(n), complex(c)) for n, c in coefficients.items() if c != 0)
        self.indices = np.array([n for n, _ in items], dtype=np.int64)
        self.values = np.array([c for _, c in items], dtype=complex)
        self._corners = tuple(corners)
        if real_valued is None:
            lookup = dict(items)
            real_valued = all(
                abs(lookup.get(-n, 0.0) - c.conjugate()) <= 1e-14 * max(1.0, abs(c))
                for n, c in items
            )
        self.real_valued = real_valued

    @property
    def degree(self) -> int:
        return int(np.max(np.abs(self.indices))) if self.indices.size else 0

    def coefficients(self, N: int) -> np.ndarray:
        result = np.zeros(2 * N + 1, dtype=complex)
        mask = np.abs(self.indices) <= N
        result[self.indices[mask] + N] = self.values[mask]
        return result

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        flat = theta.ravel()
        out = np.empty(flat.size, dtype=complex)
        chunk = 4096
        for start in range(0, flat.size, chunk):
            part = flat[start:start + chunk]
            out[start:start + chunk] = np.exp(1j * np.outer(part, self.indices)) @ self.values
        return out.reshape(theta.shape)

    def evaluate_uniform(self, nodes: int) -> np.ndarray:
        return uniform_series(self.indices, self.values, nodes)

    def _outside(self, N: int) -> Tuple[np.ndarray, np.ndarray]:
        mask = np.abs(self.indices) > N
        return np.abs(self.indices[mask]), np.abs(self.values[mask])

    def tail_l1(self, N: int) -> float:
        _, mags = self._outside(N)
        return float(np.sum(mags))

    def tail_energy(self, N: int) -> float:
        _, mags = self._outside(N)
        return float(np.sum(mags ** 2))

    def series_tail(self, N: int, radius: float, derivative: bool = False) -> float:
        orders, mags = self._outside(N)
        if not orders.size:
            return 0.0
        if derivative:
            return float(np.sum(orders * mags * radius ** (orders - 1)))
        return float(np.sum(mags * radius ** orders))

    def breakpoints(self) -> Tuple[float, ...]:
        return self._corners

    def jumps(self) -> Tuple[float, ...]:
        return ()

    def derivative(self) -> "FourierModel":
        return FourierModel(
            {int(n): 1j * n * c for n, c in zip(self.indices, self.values)},
            corners=self._corners,
            real_valued=self.real_valued,
        )


class AbsSineModel:
    """
    F = |sin theta| (order 0) и его производная почти всюду
    cos theta * sign(sin theta) (order 1).

    c_0 = 2/pi, c_{2k} = -(2/pi)/(4k^2 - 1), нечётные коэффициенты равны 0.
    """

    real_valued = True
    degree = None

    def __init__(self, order: int = 0):
        if order not in (0, 1):
            raise RefusedOperationError(
                "derivative of cos(theta)*sign(sin(theta)) is not absolutely continuous"
            )
        self.order = order

    def coefficients(self, N: int) -> np.ndarray:
        n = np.arange(-N, N + 1)
        k = n // 2
        c = np.where(n % 2 == 0, -(2.0 / math.pi) / (4.0 * k.astype(float) ** 2 - 1.0), 0.0)
        c = c.astype(complex)
        if self.order == 1:
            c = 1j * n * c
        return c

    def evaluate(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        if self.order == 0:
            return np.abs(np.sin(theta)).astype(complex)
        return (np.cos(theta) * np.sign(np.sin(theta))).astype(complex)

    def evaluate_uniform(self, nodes: int) -> np.ndarray:
        return self.evaluate(TWO_PI * np.arange(nodes) / nodes)

    def tail_l1(self, N: int) -> float:
        if self.order == 1:
            return math.inf
        return (2.0 / math.pi) / (2 * (N // 2) + 1)

    def tail_energy(self, N: int) -> float:
        K = N // 2
        if self.order == 0:
            power_sum = math.pi ** 4 / 90.0 if K == 0 else 1.0 / (3.0 * K ** 3)
            return 2.0 * (4.0 / math.pi ** 2) / 9.0 * power_sum
        power_sum = math.pi ** 2 / 6.0 if K == 0 else 1.0 / K
        return (32.0 / (9.0 * math.pi ** 2)) * power_sum

    def series_tail(self, N: int, radius: float, derivative: bool = False) -> float:
        # |c_{2k}| <= (2/(3 pi)) * 2^order * k^{order-2}, по два индекса +-2k
        K = N // 2
        rho = radius * radius
        scale = (2.0 / (3.0 * math.pi)) * 2 ** self.order
        s = self.order - 2
        if derivative:
            if radius == 0.0:
                return 0.0
            return 2.0 * 2.0 * scale * _tail_sum(s + 1, rho, K) / radius
        return 2.0 * scale * _tail_sum(s, rho, K)

    def breakpoints(self) -> Tuple[float, ...]:
        if self.order == 0:
            return (0.0, math.pi)
        return (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)

    def jumps(self) -> Tuple[float, ...]:
        return (0.0, math.pi) if self.order == 1 else ()

    def derivative(self) -> "AbsSineModel":
        return AbsSineModel(self.order + 1)


def _random_trig(degree: int = 8, seed: int = 42) -> FourierModel:
    degree = int(degree)
    rng = np.random.default_rng(int(seed))
    draws = rng.normal(size=(2, 2 * degree + 1))
    n = np.arange(-degree, degree + 1)
    values = (draws[0] + 1j * draws[1]) / (1.0 + n ** 2)
    return FourierModel(dict(zip(n.tolist(), values.tolist())))


PRESETS: Dict[str, Callable[..., Any]] = {
    "constant": lambda value=1.0: FourierModel({0: value}),
    "identity": lambda: FourierModel({1: 1.0}),
    "conjugate": lambda: FourierModel({-1: 1.0}),
    "mode": lambda k=1, amplitude=1.0: FourierModel({int(k): amplitude}),
    "abs-sin": lambda: AbsSineModel(0),
    "elliptic-trace": lambda: FourierModel({1: 1.0, -2: 0.5}),
    "affine-qr": lambda q=0.5: FourierModel({1: 1.0, -1: q}),
    "random-trig": _random_trig,
}

PRESET_DESCRIPTIONS = {
    "constant": "F = value",
    "identity": "F = e^{i theta}, extension z",
    "conjugate": "F = e^{-i theta}, extension conj(z)",
    "mode": "F = amplitude * e^{i k theta}",
    "abs-sin": "F = |sin theta|",
    "elliptic-trace": "trace of z + conj(z)^2/2",
    "affine-qr": "trace of z + q conj(z)",
    "random-trig": "seeded random trigonometric polynomial",
}

# Пресеты, для которых F вещественна (проверяется симметрия коэффициентов)
REAL_PRESETS = ("constant", "abs-sin")


@dataclass(frozen=True, eq=False)
class BoundarySpec:
    kind: str
    name: Optional[str] = None
    params: Dict[str, Any] = field(default_factory=dict)
    coefficients: Optional[Dict[int, complex]] = None
    samples: Optional[np.ndarray] = None
    order: int = 0
    smooth: bool = False
    derivative: Optional["BoundarySpec"] = None

    def __post_init__(self):
        if self.kind not in SPEC_KINDS:
            raise InvalidInputError(f"unknown boundary kind '{self.kind}', expected one of {SPEC_KINDS}")
        if self.kind == "preset" and self.name not in PRESETS:
            raise InvalidInputError(f"unknown preset '{self.name}', available: {sorted(PRESETS)}")
        if self.kind == "fourier":
            if self.coefficients is None:
                raise InvalidInputError("fourier boundary spec needs coefficients")
            for n, c in self.coefficients.items():
                if not np.isfinite(complex(c)):
                    raise InvalidInputError(f"coefficient c_{n} is not finite")
        if self.kind == "sampled":
            samples = self.samples
            if samples is None or samples.ndim != 1:
                raise InvalidInputError("sampled boundary spec needs a one-dimensional sample array")
            count = samples.size
            if count < config.MIN_SAMPLES or count & (count - 1):
                raise InvalidInputError(
                    f"sampled boundary spec needs a power-of-two count >= {config.MIN_SAMPLES}, got {count}"
                )
            if not np.all(np.isfinite(samples)):
                raise InvalidInputError("boundary samples contain non-finite values")

    @cached_property
    def model(self):
        if self.kind == "preset":
            try:
                model = PRESETS[self.name](**self.params)
            except TypeError as e:
                raise InvalidInputError(f"bad parameters for preset '{self.name}': {e}")
            if self.name in REAL_PRESETS and model.real_valued is not False:
                _check_conjugate_symmetry(model, self.name)
        elif self.kind == "fourier":
            model = FourierModel(self.coefficients)
        else:
            model = _interpolant(self.samples)
        for _ in range(self.order):
            model = model.derivative()
        return model

    @property
    def label(self) -> str:
        base = self.name or self.kind
        return base + "'" * self.order

    @property
    def real_valued(self) -> bool:
        return bool(self.model.real_valued)

    @property
    def degree(self) -> Optional[int]:
        return self.model.degree

    def describe(self) -> Dict[str, Any]:
        info = {"kind": self.kind, "name": self.name, "params": dict(self.params), "order": self.order}
        if self.kind == "preset":
            info["description"] = PRESET_DESCRIPTIONS[self.name]
        if self.kind == "fourier":
            info["N"] = self.model.degree
        if self.kind == "sampled":
            info["samples"] = int(self.samples.size)
            info["smooth"] = self.smooth
        return info


def _check_conjugate_symmetry(model, name: str, N: int = 32) -> None:
    c = model.coefficients(N)
    if not np.allclose(c[::-1], np.conj(c), rtol=0.0, atol=1e-14):
        raise InvalidInputError(f"preset '{name}' is declared real but c_-n != conj(c_n)")


def _interpolant(samples: np.ndarray) -> FourierModel:
    """Коэффициенты тригонометрического интерполянта; слагаемое Найквиста делится пополам."""
    count = samples.size
    c = fft.fft(samples) / count
    half = count // 2
    coefficients = {n: c[n] for n in range(0, half)}
    coefficients.update({-n: c[count - n] for n in range(1, half)})
    coefficients[half] = 0.5 * c[half]
    coefficients[-half] = 0.5 * c[half]
    return FourierModel(coefficients, real_valued=bool(np.all(np.imag(samples) == 0)))


def preset_spec(name: str, **params) -> BoundarySpec:
    spec = BoundarySpec(kind="preset", name=name, params=params)
    spec.model  # проверка параметров при создании
    return spec


def fourier_spec(coefficients: Mapping[int, complex], name: Optional[str] = None) -> BoundarySpec:
    return BoundarySpec(kind="fourier", name=name, coefficients={int(n): complex(c) for n, c in coefficients.items()})


def sampled_spec(values: Sequence[complex], smooth: bool = False, name: Optional[str] = None) -> BoundarySpec:
    try:
        samples = np.asarray(values, dtype=complex)
    except (TypeError, ValueError) as e:
        raise InvalidInputError(f"boundary samples are not numeric: {e}")
    return BoundarySpec(kind="sampled", name=name, samples=samples, smooth=smooth)


@dataclass
class FourierCoefficients:
    """c_n для -N <= n <= N; values[n + N] = c_n."""
    values: np.ndarray
    truncation: int
    tail_bound: float
    tail_energy: float
    exact: bool
    method: str

    def coefficient(self, n: int) -> complex:
        if abs(n) > self.truncation:
            return 0j
        return complex(self.values[n + self.truncation])

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.truncation, self.truncation + 1)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))


def _dft_size(N: int, samples: Optional[int]) -> int:
    wanted = 2 * N + 2
    if samples is not None:
        if samples < wanted:
            raise InvalidInputError(f"{samples} samples cannot resolve coefficients up to N={N}")
        return int(samples)
    size = config.DFT_SAMPLES
    while size < wanted:
        size *= 2
    return size


def fourier_coefficients(spec: BoundarySpec, N: int, *, method: str = "auto",
                         samples: Optional[int] = None) -> FourierCoefficients:
    """
    Коэффициенты c_n, |n| <= N.

    method="exact" (по умолчанию для preset и fourier) берёт коэффициенты
    модели, "discrete" - БПФ значений в 2M >= 2N+2 равноотстоящих точках
    (для sampled это единственный путь; он же используется для сверки).
    tail_bound - l1-масса отброшенных коэффициентов, tail_energy - их энергия.
    """
    if int(N) != N or N < 0:
        raise InvalidInputError(f"truncation must be a non-negative integer, got {N}")
    N = int(N)
    if method == "auto":
        method = "discrete" if spec.kind == "sampled" else "exact"
    if method not in ("exact", "discrete"):
        raise InvalidInputError(f"unknown coefficient method '{method}'")

    model = spec.model
    if method == "exact" or spec.kind == "sampled":
        return FourierCoefficients(
            values=model.coefficients(N),
            truncation=N,
            tail_bound=model.tail_l1(N),
            tail_energy=model.tail_energy(N),
            exact=method == "exact",
            method=method,
        )

    size = _dft_size(N, samples)
    values = model.evaluate_uniform(size)
    if not np.all(np.isfinite(values)):
        raise InvalidInputError(f"boundary function '{spec.label}' produced non-finite samples")
    transform = fft.fft(values) / size
    n = np.arange(-N, N + 1)
    kept = transform[np.mod(n, size)]
    mask = np.ones(size, dtype=bool)
    mask[np.mod(n, size)] = False
    discarded = np.abs(transform[mask])
    log_event(logger, "dft_coefficients", level=logging.DEBUG, spec=spec.label, samples=size, truncation=N)
    return FourierCoefficients(
        values=kept,
        truncation=N,
        tail_bound=float(np.sum(discarded)),
        tail_energy=float(np.sum(discarded ** 2)),
        exact=False,
        method="discrete",
    )


def boundary_derivative(spec: BoundarySpec) -> BoundarySpec:
    """
    Спецификация для F' = dF/dtheta.

    Явно заданная производная возвращается как есть. Для fourier-коэффициентов
    c_n -> i n c_n. Отсчёты без объявленной гладкости дифференцировать
    отказываемся.
    """
    if spec.derivative is not None:
        return spec.derivative
    if spec.kind == "sampled" and not spec.smooth:
        raise RefusedOperationError(
            "numerical differentiation of raw samples is refused; declare the samples smooth "
            "or supply the derivative explicitly"
        )
    if spec.kind == "fourier" and spec.order == 0:
        return fourier_spec({n: 1j * n * c for n, c in spec.coefficients.items()}, name=spec.name)
    derived = BoundarySpec(
        kind=spec.kind, name=spec.name, params=dict(spec.params), coefficients=spec.coefficients,
        samples=spec.samples, order=spec.order + 1, smooth=spec.smooth,
    )
    derived.model  # AbsSine второго порядка отказывает здесь
    return derived


def evaluate(spec: BoundarySpec, theta) -> np.ndarray:
    """Значения F(e^{i theta})."""
    return spec.model.evaluate(np.asarray(theta, dtype=float))


def breakpoints(spec: BoundarySpec) -> Tuple[float, ...]:
    """Изломы, скачки и нули F на [0, 2 pi): квадратурные панели режутся по ним."""
    return tuple(wrap_angles(spec.model.breakpoints()))


def jump_points(spec: BoundarySpec) -> Tuple[float, ...]:
    return tuple(spec.model.jumps())


def lp_circle_norm(spec: BoundarySpec, p) -> NormReport:
    """
    ||F||_{L^p} = ((1/2pi) * integral |F|^p d theta)^{1/p}.

    Конечное p: адаптивный Гаусс-Кронрод с панелями, разрезанными в изломах.
    p = inf: максимум по вложенным сеткам с удвоением (монотонное уточнение).
    """
    p = validate_exponent(p)
    model = spec.model

    if math.isinf(p):
        nodes = 1024
        value = float(np.max(np.abs(model.evaluate_uniform(nodes))))
        change = value
        while nodes * 2 <= config.MAX_ANGULAR_NODES:
            nodes *= 2
            refined = max(value, float(np.max(np.abs(model.evaluate_uniform(nodes)))))
            change = refined - value
            value = refined
            if change <= config.SUP_REFINEMENT_RTOL * max(value, 1e-300):
                break
        return NormReport(
            kind="circle-Lp", p=p, value=value, error_estimate=change,
            grid={"angular_nodes": nodes}, certificate="monotone-refinement",
        )

    def integrand(theta):
        return np.abs(model.evaluate(theta)) ** p / TWO_PI

    result = adaptive_integrate(
        integrand, 0.0, TWO_PI,
        breakpoints=breakpoints(spec),
        atol=1e-15,
        rtol=config.NORM_RTOL,
        max_panels=config.QUADRATURE_MAX_PANELS,
    )
    integral = max(result.value.real, 0.0)
    value = integral ** (1.0 / p)
    error = abs((integral + result.error) ** (1.0 / p) - value)
    return NormReport(
        kind="circle-Lp", p=p, value=value, error_estimate=error,
        grid={"panels": result.panels},
    )


def load_boundary_spec(document: Mapping[str, Any]) -> BoundarySpec:
    """
    Разбирает JSON-описание:
    {"kind": "preset", "name": "abs-sin", "params": {...}}
    {"kind": "fourier", "coefficients": [[n, re, im], ...]}
    {"kind": "sampled", "samples": [[re, im], ...], "smooth": false}
    Необязательное поле "derivative" содержит описание F' того же формата.
    """
    if not isinstance(document, Mapping):
        raise InvalidInputError("boundary document must be a JSON object")
    kind = document.get("kind")
    derivative = document.get("derivative")
    derivative_spec = load_boundary_spec(derivative) if derivative is not None else None

    if kind == "preset":
        params = document.get("params") or {}
        if not isinstance(params, Mapping):
            raise InvalidInputError("preset params must be an object")
        spec = BoundarySpec(kind="preset", name=document.get("name"), params=dict(params),
                            derivative=derivative_spec)
        spec.model
        return spec

    if kind == "fourier":
        coefficients: Dict[int, complex] = {}
        for entry in document.get("coefficients") or []:
            if not isinstance(entry, Sequence) or len(entry) not in (2, 3):
                raise InvalidInputError(f"coefficient entry {entry!r} must be [n, re, im]")
            try:
                n = int(entry[0])
                value = complex(float(entry[1]), float(entry[2]) if len(entry) == 3 else 0.0)
            except (TypeError, ValueError):
                raise InvalidInputError(f"coefficient entry {entry!r} is not numeric")
            if n != entry[0]:
                raise InvalidInputError(f"coefficient index {entry[0]!r} is not an integer")
            if n in coefficients:
                raise InvalidInputError(f"coefficient c_{n} given twice")
            coefficients[n] = value
        return BoundarySpec(kind="fourier", name=document.get("name"), coefficients=coefficients,
                            derivative=derivative_spec)

    if kind == "sampled":
        values = []
        for entry in document.get("samples") or []:
            try:
                if isinstance(entry, Sequence) and not isinstance(entry, str):
                    values.append(complex(float(entry[0]), float(entry[1]) if len(entry) > 1 else 0.0))
                else:
                    values.append(complex(float(entry), 0.0))
            except (TypeError, ValueError, IndexError):
                raise InvalidInputError(f"sample {entry!r} is not numeric")
        return BoundarySpec(kind="sampled", name=document.get("name"),
                            samples=np.asarray(values, dtype=complex),
                            smooth=bool(document.get("smooth", False)), derivative=derivative_spec)

    raise InvalidInputError(f"unknown boundary kind {kind!r}, expected one of {SPEC_KINDS}")


def load_boundary_file(path: str) -> BoundarySpec:
    try:
        with open(path, encoding="utf-8") as fh:
            document = json.load(fh)
    except OSError as e:
        raise InvalidInputError(f"cannot read boundary file {path}: {e}")
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"boundary file {path} is not valid JSON: {e}")
    return load_boundary_spec(document)
