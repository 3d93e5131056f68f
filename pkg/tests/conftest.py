"""
Pytest configuration and shared fixtures
"""
import json

import pytest

from main import main
from utils.boundary import preset_spec
from utils.extension import extend

# Мелкая сетка для быстрых проверок; полные уровни - только в slow-тестах
FAST_LEVELS = 6


@pytest.fixture
def fast_levels():
    return FAST_LEVELS


@pytest.fixture
def identity_spec():
    """F = e^{i theta}, продолжение f(z) = z"""
    return preset_spec("identity")


@pytest.fixture
def conjugate_spec():
    return preset_spec("conjugate")


@pytest.fixture
def abs_sin_spec():
    return preset_spec("abs-sin")


@pytest.fixture
def elliptic_trace_spec():
    return preset_spec("elliptic-trace")


@pytest.fixture
def affine_spec():
    return preset_spec("affine-qr", q=0.5)


@pytest.fixture
def random_trig_spec():
    return preset_spec("random-trig")


@pytest.fixture
def identity_field(identity_spec):
    return extend(identity_spec)


@pytest.fixture
def abs_sin_field(abs_sin_spec):
    return extend(abs_sin_spec)


@pytest.fixture
def elliptic_trace_field(elliptic_trace_spec):
    return extend(elliptic_trace_spec)


@pytest.fixture
def run_cli(capsys):
    """Запускает main(argv); возвращает (код выхода, stdout, stderr)"""
    def runner(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return runner


@pytest.fixture
def boundary_file(tmp_path):
    """Пишет JSON-описание граничной функции во временный файл"""
    def writer(document, name="boundary.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)
    return writer
