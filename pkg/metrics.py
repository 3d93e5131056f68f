"""Prometheus metrics for the harmonic toolkit."""

from typing import Optional

from prometheus_client import CollectorRegistry, Counter, Histogram, write_to_textfile

from utils.errors import (
    ConfigurationError,
    ConvergenceError,
    BoundOverflowError,
    HarmonicError,
    SenseViolationError,
)

REGISTRY = CollectorRegistry()

ERRORS_TOTAL = Counter(
    "errors_total",
    "Total number of errors by type and command",
    labelnames=("type", "command"),
    registry=REGISTRY,
)

COMMAND_TOTAL = Counter(
    "command_total",
    "Total number of CLI command invocations",
    labelnames=("command",),
    registry=REGISTRY,
)

CHECKS_TOTAL = Counter(
    "checks_total",
    "Total number of verification checks by statement and outcome",
    labelnames=("statement", "status"),
    registry=REGISTRY,
)

CHECK_DURATION = Histogram(
    "check_duration_seconds",
    "Wall time of verification checks",
    labelnames=("statement",),
    buckets=(0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0, 30.0),
    registry=REGISTRY,
)

TRUNCATION_REFINEMENTS_TOTAL = Counter(
    "truncation_refinements_total",
    "Number of adaptive truncation increases near the boundary",
    registry=REGISTRY,
)

# Коды выхода CLI по меткам classify_error_type
EXIT_CODES = {
    "usage": 2,
    "hypothesis": 1,
    "numerical": 3,
    "unknown": 2,
}


def track_command(command_name: str) -> None:
    COMMAND_TOTAL.labels(command=command_name).inc()


def track_check(statement: str, passed: bool, duration: float) -> None:
    """Records a finished checker run."""
    CHECKS_TOTAL.labels(statement=statement, status="pass" if passed else "fail").inc()
    CHECK_DURATION.labels(statement=statement).observe(duration)


def track_truncation_refinement() -> None:
    TRUNCATION_REFINEMENTS_TOTAL.inc()


def track_error(command_name: str, error_type: str) -> None:
    ERRORS_TOTAL.labels(type=error_type, command=command_name).inc()


def classify_error_type(error: Optional[Exception]) -> str:
    """Maps exception to one of: usage, hypothesis, numerical, unknown."""
    if error is None:
        return "unknown"

    if isinstance(error, (ConvergenceError, BoundOverflowError)):
        return "numerical"

    if isinstance(error, SenseViolationError):
        return "hypothesis"

    if isinstance(error, (ConfigurationError, HarmonicError, ValueError, TypeError, KeyError)):
        return "usage"

    return "unknown"


def exit_code_for(error: Optional[Exception]) -> int:
    return EXIT_CODES[classify_error_type(error)]


def dump_metrics(path: Optional[str]) -> None:
    """Writes the registry in textfile-collector format (CLI runs are short-lived)."""
    if path:
        write_to_textfile(path, REGISTRY)
