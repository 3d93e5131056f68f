"""
Производные Виртингера и полярные производные гармонического поля,
норма дифференциала, минимальное растяжение, якобиан и вторая дилатация.

Всё считается почленным дифференцированием ряда (f_z = h', f_z̄ = conj(g'));
разностные производные используются только в тестах.
"""

import cmath
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

import config
from utils.errors import InvalidInputError, SingularPointError
from utils.extension import DiskField
from utils.norms import CircleValues


@dataclass(frozen=True)
class DerivativePack:
    at: complex
    f_z: complex
    f_zbar: complex
    f_t: complex
    f_r: complex
    degraded: bool = False
    tail_bound: float = 0.0

    @property
    def radius(self) -> float:
        return abs(self.at)

    @property
    def f_t_over_r(self) -> complex:
        if self.at == 0:
            raise SingularPointError("f_t/r is undefined at z = 0; use f_z and f_zbar directly")
        return self.f_t / abs(self.at)

    def f_z_from_polar(self) -> complex:
        """f_z = (e^{-it}/2) (f_r - (i/r) f_t)."""
        t = cmath.phase(self.at)
        return 0.5 * cmath.exp(-1j * t) * (self.f_r - 1j * self.f_t_over_r)

    def f_zbar_from_polar(self) -> complex:
        """f_z̄ = (e^{it}/2) (f_r + (i/r) f_t)."""
        t = cmath.phase(self.at)
        return 0.5 * cmath.exp(1j * t) * (self.f_r + 1j * self.f_t_over_r)

    def to_dict(self) -> dict:
        return {
            "z": [self.at.real, self.at.imag],
            "f_z": [self.f_z.real, self.f_z.imag],
            "f_zbar": [self.f_zbar.real, self.f_zbar.imag],
            "f_t": [self.f_t.real, self.f_t.imag],
            "f_r": [self.f_r.real, self.f_r.imag],
            "degraded": self.degraded,
        }


@dataclass(frozen=True)
class LocalGeometry:
    op_norm: float
    min_stretch: float
    jacobian: float
    dilatation: Optional[complex]

    @property
    def dilatation_defined(self) -> bool:
        return self.dilatation is not None

    @property
    def sense(self) -> str:
        if self.jacobian > 0:
            return "preserving"
        if self.jacobian < 0:
            return "reversing"
        return "degenerate"

    def to_dict(self) -> dict:
        omega = self.dilatation
        return {
            "op_norm": self.op_norm,
            "min_stretch": self.min_stretch,
            "jacobian": self.jacobian,
            "dilatation": None if omega is None else [omega.real, omega.imag],
            "sense": self.sense,
        }


def geometry_arrays(f_z: np.ndarray, f_zbar: np.ndarray):
    """||D_f||, l(D_f), J_f, |omega| и маска определённости omega по массивам f_z, f_z̄."""
    a = np.abs(f_z)
    b = np.abs(f_zbar)
    defined = a > config.DILATATION_EPS * (1.0 + b)
    with np.errstate(divide="ignore", invalid="ignore"):
        omega_abs = np.where(defined, b / np.where(defined, a, 1.0), np.nan)
    return a + b, np.abs(a - b), a * a - b * b, omega_abs, defined


def wirtinger(field: DiskField, z: complex) -> Tuple[complex, complex]:
    """(f_z, f_z̄) = (h'(z), conj(g'(z)))."""
    sample = field.sample(z)
    return complex(sample.f_z), complex(sample.f_zbar)


def polar(field: DiskField, z: complex) -> DerivativePack:
    """
    f_t = i (z f_z - z̄ f_z̄), f_r = f_z e^{it} + f_z̄ e^{-it}, z = r e^{it}.
    В z = 0 берётся t = 0.
    """
    z = complex(z)
    sample = field.sample(z)
    f_z, f_zbar = complex(sample.f_z), complex(sample.f_zbar)
    unit = cmath.exp(1j * cmath.phase(z))
    return DerivativePack(
        at=z,
        f_z=f_z,
        f_zbar=f_zbar,
        f_t=1j * (z * f_z - z.conjugate() * f_zbar),
        f_r=f_z * unit + f_zbar * unit.conjugate(),
        degraded=sample.degraded,
        tail_bound=float(np.max(sample.tail_bound)),
    )


def second_dilatation(field: DiskField, z: complex) -> Optional[complex]:
    """omega = g'/h'; None там, где |f_z| <= eps (1 + |f_z̄|)."""
    f_z, f_zbar = wirtinger(field, z)
    if abs(f_z) <= config.DILATATION_EPS * (1.0 + abs(f_zbar)):
        return None
    return f_zbar.conjugate() / f_z


def local_geometry(field: DiskField, z: complex) -> LocalGeometry:
    f_z, f_zbar = wirtinger(field, z)
    a, b = abs(f_z), abs(f_zbar)
    omega = None
    if a > config.DILATATION_EPS * (1.0 + b):
        omega = f_zbar.conjugate() / f_z
    return LocalGeometry(op_norm=a + b, min_stretch=abs(a - b), jacobian=a * a - b * b, dilatation=omega)


def directional_derivative(field: DiskField, z: complex, alpha) -> np.ndarray:
    """d_alpha f(z) = f_z e^{i alpha} + f_z̄ e^{-i alpha}."""
    f_z, f_zbar = wirtinger(field, z)
    rotation = np.exp(1j * np.asarray(alpha, dtype=float))
    return f_z * rotation + f_zbar * np.conj(rotation)


@dataclass
class CircleDerivatives:
    radius: float
    theta: np.ndarray
    f: np.ndarray
    f_z: np.ndarray
    f_zbar: np.ndarray
    degraded: bool
    tail_bound: float

    @property
    def z(self) -> np.ndarray:
        return self.radius * np.exp(1j * self.theta)

    @property
    def f_t(self) -> np.ndarray:
        z = self.z
        return 1j * (z * self.f_z - np.conj(z) * self.f_zbar)

    @property
    def f_r(self) -> np.ndarray:
        unit = np.exp(1j * self.theta)
        return self.f_z * unit + self.f_zbar * np.conj(unit)

    @property
    def op_norm(self) -> np.ndarray:
        return np.abs(self.f_z) + np.abs(self.f_zbar)

    @property
    def min_stretch(self) -> np.ndarray:
        return np.abs(np.abs(self.f_z) - np.abs(self.f_zbar))

    @property
    def jacobian(self) -> np.ndarray:
        return np.abs(self.f_z) ** 2 - np.abs(self.f_zbar) ** 2


def circle_derivatives(field: DiskField, radius: float, nodes: int) -> CircleDerivatives:
    """Производные на окружности |z| = radius в nodes равноотстоящих точках (одно БПФ на функцию)."""
    sample = field.on_circle(radius, nodes)
    return CircleDerivatives(
        radius=sample.radius,
        theta=sample.theta,
        f=sample.f,
        f_z=sample.f_z,
        f_zbar=sample.f_zbar,
        degraded=sample.degraded,
        tail_bound=sample.tail_bound,
    )


QUANTITIES = ("f", "f_z", "f_zbar", "f_t", "f_r", "f_t_over_r", "op_norm", "min_stretch")

# |h'| и |g'| - модули голоморфных функций при любом поле
_ALWAYS_ANALYTIC = ("f_z", "f_zbar")


class DiskScalar:
    """Скалярное поле |quantity| поля f для модуля норм."""

    def __init__(self, field: DiskField, quantity: str):
        if quantity not in QUANTITIES:
            raise InvalidInputError(f"unknown quantity '{quantity}', expected one of {QUANTITIES}")
        self.field = field
        self.quantity = quantity
        self.name = quantity
        self.analytic_modulus = quantity in _ALWAYS_ANALYTIC or field.is_analytic

    def on_circle(self, radius: float, nodes: int) -> CircleValues:
        if self.quantity == "f_t_over_r" and radius == 0.0:
            raise SingularPointError("f_t/r is undefined on the degenerate circle r = 0")
        circle = circle_derivatives(self.field, radius, nodes)
        if self.quantity == "f_t_over_r":
            values = np.abs(circle.f_t) / radius
        elif self.quantity in ("op_norm", "min_stretch"):
            values = getattr(circle, self.quantity)
        else:
            values = np.abs(getattr(circle, self.quantity))
        return CircleValues(values=values, degraded=circle.degraded, tail_bound=circle.tail_bound)
