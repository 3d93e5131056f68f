"""
Иерархия исключений инструментария.

Каждому виду ошибки из контракта операций соответствует свой класс;
metrics.classify_error_type переводит их в метки, а CLI - в коды выхода.
"""

from typing import Optional


class HarmonicError(Exception):
    """Базовое исключение инструментария."""


class InvalidInputError(HarmonicError, ValueError):
    """Некорректные входные данные (нечисловые отсчёты, неверная схема JSON и т.п.)."""


class UnsupportedExponentError(InvalidInputError):
    """Показатель p вне поддерживаемого диапазона."""

    def __init__(self, p, supported: str = "[1, inf]"):
        super().__init__(f"exponent p={p} is not supported, expected p in {supported}")
        self.p = p


class DomainError(HarmonicError, ValueError):
    """Точка вне открытого единичного круга (или иной области определения)."""


class SingularPointError(DomainError):
    """Величина не определена в точке (например f_t/r при z = 0)."""


class RefusedOperationError(InvalidInputError):
    """Операция вне контракта (численное дифференцирование сырых отсчётов и т.п.)."""


class ConfigurationError(HarmonicError):
    """Неполная или противоречивая конфигурация запуска."""


class ConvergenceError(HarmonicError, ArithmeticError):
    """Бюджет квадратуры исчерпан до достижения допуска."""

    def __init__(self, message: str, best_estimate=None, residual: Optional[float] = None):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.residual = residual


class SenseViolationError(HarmonicError):
    """Отображение не сохраняет ориентацию на сетке (J_f <= 0)."""

    def __init__(self, message: str, point: complex, jacobian: float, sense: str):
        super().__init__(message)
        self.point = point
        self.jacobian = jacobian
        self.sense = sense


class BoundOverflowError(HarmonicError, OverflowError):
    """Замкнутая формула переполняет double."""
