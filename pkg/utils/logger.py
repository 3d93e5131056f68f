"""
Структурированное логирование численных прогонов.

Каждая запись - событие (event) с набором полей: JSON-строка или
выровненная текстовая строка, в зависимости от JSON_LOG_FORMAT. Записи
идут в stderr (stdout занят отчётом) и, если задан LOG_FILE, в файл.
В отчёты логи не попадают.
"""
import functools
import json
import logging
import math
import sys
import time
from datetime import datetime, timezone
from typing import Any, Dict, Optional

import numpy as np

# Атрибуты, которые есть у любой LogRecord; всё остальное - поля события
_RECORD_ATTRIBUTES = frozenset(logging.LogRecord("", 0, "", 0, "", (), None).__dict__) | {"message", "event"}

# Поля, которые текстовый формат выводит первыми
_LEADING_FIELDS = ("command", "statement", "preset", "p", "status", "margin", "duration_ms", "error")

# Атрибуты исключений, которые стоит показать рядом с текстом ошибки
_ERROR_ATTRIBUTES = ("best_estimate", "residual", "point", "jacobian", "sense", "p")


def _plain(value: Any) -> Any:
    """Приводит numpy-скаляры, комплексные и нечисловые float к виду, пригодному для JSON."""
    if isinstance(value, np.ndarray):
        return [_plain(item) for item in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, complex):
        return [_plain(value.real), _plain(value.imag)]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    return value


class StructuredFormatter(logging.Formatter):
    """JSON или текст: время, уровень, сервис, событие и поля записи."""

    def __init__(self, json_format: bool = True):
        super().__init__()
        self.json_format = json_format

    @staticmethod
    def fields(record: logging.LogRecord) -> Dict[str, Any]:
        return {
            key: _plain(value)
            for key, value in record.__dict__.items()
            if key not in _RECORD_ATTRIBUTES and value is not None
        }

    def format(self, record: logging.LogRecord) -> str:
        moment = datetime.fromtimestamp(record.created, tz=timezone.utc)
        event = getattr(record, "event", None) or "log_message"
        fields = self.fields(record)
        message = record.getMessage()
        traceback = self.formatException(record.exc_info) if record.exc_info else None

        if self.json_format:
            data = {
                "timestamp": moment.isoformat(timespec="milliseconds").replace("+00:00", "Z"),
                "level": record.levelname,
                "service": record.name,
                "event": event,
                **fields,
            }
            if message:
                data["message"] = message
            if traceback:
                data["traceback"] = traceback
            return json.dumps(data, ensure_ascii=False, default=str)

        ordered = [key for key in _LEADING_FIELDS if key in fields]
        ordered += sorted(key for key in fields if key not in _LEADING_FIELDS)
        line = "{} {:<7} {:<20} {:<22} {}".format(
            moment.strftime("%H:%M:%S.%f")[:-3],
            record.levelname,
            record.name,
            event,
            " ".join(f"{key}={fields[key]}" for key in ordered),
        ).rstrip()
        if message:
            line += " - " + message
        if traceback:
            line += "\n" + traceback
        return line


def get_logger(service: str, json_format: Optional[bool] = None) -> logging.Logger:
    """
    Логгер сервиса с одним обработчиком stderr (и файлом LOG_FILE).
    Повторный вызов возвращает уже настроенный логгер.
    """
    logger = logging.getLogger(service)
    if logger.handlers:
        return logger

    import config
    formatter = StructuredFormatter(config.JSON_LOG_FORMAT if json_format is None else json_format)

    targets = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        targets.append(logging.FileHandler(config.LOG_FILE, encoding="utf-8"))
    for handler in targets:
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    level = logging.getLevelName(config.LOG_LEVEL)
    logger.setLevel(level if isinstance(level, int) else logging.INFO)
    logger.propagate = False
    return logger


def log_event(logger: logging.Logger, event: str, level: int = logging.INFO, status: Optional[str] = None,
              duration_ms: Optional[float] = None, **fields) -> None:
    """Событие с полями; duration_ms округляется до сотых."""
    if not logger.isEnabledFor(level):
        return
    extra = {"event": event, "status": status, **fields}
    if duration_ms is not None:
        extra["duration_ms"] = round(duration_ms, 2)
    logger.log(level, "", extra=extra)


def log_command(logger: logging.Logger, command: str, **options) -> None:
    """Запуск подкоманды CLI с её основными параметрами."""
    log_event(logger, "command_executed", command=command, status="started", **options)


def log_error(logger: logging.Logger, error: Exception, event: str, duration_ms: Optional[float] = None,
              **fields) -> None:
    """
    Ошибка с типом исключения. Для численных отказов добавляются
    лучшая оценка и остаток, для нарушений ориентации - точка и якобиан.
    Трассировка пишется только на уровне DEBUG.
    """
    details = {name: getattr(error, name) for name in _ERROR_ATTRIBUTES if getattr(error, name, None) is not None}
    extra = {
        "event": event,
        "status": "failed",
        "error": str(error),
        "error_type": type(error).__name__,
        **details,
        **fields,
    }
    if duration_ms is not None:
        extra["duration_ms"] = round(duration_ms, 2)
    logger.error("", extra=extra, exc_info=logger.isEnabledFor(logging.DEBUG))


def log_performance(logger: logging.Logger, operation: str, duration: float, status: str = "success",
                    **fields) -> None:
    """<operation>_performance на уровне DEBUG; duration в секундах."""
    log_event(logger, f"{operation}_performance", level=logging.DEBUG, status=status,
              duration_ms=duration * 1000, **fields)


def measure_time(operation: str, service: str = "perf"):
    """Декоратор: время вызова в событии <operation>_performance, статус failed при исключении."""
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start = time.perf_counter()
            status = "failed"
            try:
                result = func(*args, **kwargs)
                status = "success"
                return result
            finally:
                log_performance(get_logger(service), operation, time.perf_counter() - start, status=status)
        return wrapper
    return decorator
