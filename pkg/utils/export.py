"""
Сериализация отчётов: JSON (основной формат) и CSV (плоские строки через pandas).

Одинаковые входные данные дают побайтно одинаковый вывод: ключи
сортируются, бесконечности и NaN пишутся строками, в отчёты не попадают
временные метки.
"""

import dataclasses
import io
import json
import math
import sys
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from utils.errors import InvalidInputError

REPORT_FORMATS = ("json", "csv")

# В CSV не попадают оценки ошибок, допуски и вложенная диагностика
CSV_DROPPED_KEYS = frozenset([
    "error", "error_estimate", "integral_error", "tolerances", "diagnostics",
    "grid", "trend", "qr_trend", "subchecks", "notes", "tail", "tail_bound",
])


def _float(value: float):
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def to_jsonable(obj: Any) -> Any:
    """Рекурсивно приводит отчёт к типам JSON."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return to_jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(value) for value in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_float(float(obj.real)), _float(float(obj.imag))]
    return obj


def dumps_json(payload: Any) -> str:
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _flatten(record: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    row = {}
    for key, value in record.items():
        if key in CSV_DROPPED_KEYS:
            continue
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            row.update(_flatten(value, prefix=f"{name}."))
        elif isinstance(value, list):
            row[name] = json.dumps(value, sort_keys=True)
        else:
            row[name] = value
    return row


def to_rows(payload: Any) -> List[Dict[str, Any]]:
    data = to_jsonable(payload)
    if isinstance(data, dict) and isinstance(data.get("reports"), list):
        records = data["reports"]
    elif isinstance(data, list):
        records = data
    else:
        records = [data]
    return [_flatten(record) if isinstance(record, dict) else {"value": record} for record in records]


def dumps_csv(payload: Any) -> str:
    frame = pd.DataFrame(to_rows(payload))
    frame = frame.reindex(sorted(frame.columns), axis=1)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def render(payload: Any, fmt: str = "json") -> str:
    if fmt == "json":
        return dumps_json(payload)
    if fmt == "csv":
        return dumps_csv(payload)
    raise InvalidInputError(f"unknown report format '{fmt}', expected one of {REPORT_FORMATS}")


def write_report(payload: Any, path: Optional[str] = None, fmt: str = "json", stream=None) -> str:
    """Пишет отчёт в файл path или в stream (по умолчанию stdout); возвращает текст."""
    text = render(payload, fmt)
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        (stream or sys.stdout).write(text)
    return text


def summarize(reports: Iterable[Any]) -> Dict[str, Dict[str, int]]:
    """Счётчики pass/fail по идентификаторам утверждений."""
    summary: Dict[str, Dict[str, int]] = {}
    for report in reports:
        entry = summary.setdefault(report.statement_id, {"pass": 0, "fail": 0, "degraded": 0})
        entry["pass" if report.passed else "fail"] += 1
        entry["degraded"] += int(bool(report.degraded))
    return summary
