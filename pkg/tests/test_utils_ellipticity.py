"""Тесты для utils/ellipticity.py"""

import pytest

from utils.ellipticity import (
    DERIVED_K_FLAG,
    GridSweep,
    classify,
    elliptic_constants,
    min_kprime,
    qr_constant,
)
from utils.errors import InvalidInputError, SenseViolationError
from utils.extension import extend


def test_min_kprime_of_elliptic_trace_approaches_four(elliptic_trace_field):
    levels = 12
    report = min_kprime(elliptic_trace_field, K=1, levels=levels)

    assert 4.0 - 8.0 * 2.0 ** -levels <= report.Kprime_estimate <= 4.0
    assert report.trend == sorted(report.trend)
    assert report.grid["angular_nodes"][0] == 64
    assert report.grid["angular_nodes"][-1] == 64 * 2 ** (levels - 1)


def test_qr_constant_of_elliptic_trace_tends_to_one(elliptic_trace_field, fast_levels):
    """Тест: qr_constant для z + conj(z)^2/2 стремится к 1"""
    report = qr_constant(elliptic_trace_field, levels=fast_levels)

    assert report.not_quasiregular
    assert report.qr_trend == sorted(report.qr_trend)
    assert report.qr_constant == pytest.approx(1.0 - 2.0 ** -fast_levels, abs=1e-12)


def test_affine_map_is_quasiregular(affine_spec, fast_levels):
    """Тест квазирегулярности аффинного отображения"""
    field = extend(affine_spec)

    assert qr_constant(field, levels=fast_levels).qr_constant == pytest.approx(0.5, abs=1e-10)

    report = classify(field, (1.0, 3.0), levels=fast_levels)
    assert not report.not_quasiregular
    assert report.derived_K == pytest.approx(3.0, abs=1e-9)
    assert report.classification.startswith("quasiregular")
    assert DERIVED_K_FLAG in report.notes
    assert [entry["K"] for entry in report.scan] == [1.0, 3.0]


def test_elliptic_trace_is_classified_as_elliptic_candidate(elliptic_trace_field, fast_levels):
    """Тест классификации z + conj(z)^2/2"""
    report = classify(elliptic_trace_field, (1.0, 2.0), levels=fast_levels)

    assert report.classification.startswith("elliptic candidate")
    assert report.scan[0]["Kprime"] >= report.scan[1]["Kprime"]


def test_sense_reversing_map_raises(conjugate_spec):
    """Тест: отображение, меняющее ориентацию, вызывает SenseViolationError"""
    with pytest.raises(SenseViolationError) as excinfo:
        GridSweep(extend(conjugate_spec), levels=3)

    assert excinfo.value.sense == "reversing"
    assert excinfo.value.jacobian < 0


def test_k_below_one_is_rejected(identity_field):
    """Тест отказа для K < 1"""
    with pytest.raises(InvalidInputError):
        min_kprime(identity_field, K=0.5, levels=3)


def test_sweep_is_shared_between_reports(identity_field, mocker):
    """Тест: сетка считается один раз для нескольких отчётов"""
    spy = mocker.spy(GridSweep, "__init__")
    sweep = GridSweep(identity_field, levels=4)

    classify(identity_field, (1.0,), sweep=sweep)
    min_kprime(identity_field, sweep=sweep)

    assert spy.call_count == 1


def test_elliptic_constants_are_inflated(affine_spec, elliptic_trace_field, fast_levels):
    """Тест инфляции K и K' на 5%"""
    K, Kprime, report = elliptic_constants(extend(affine_spec), levels=fast_levels)
    assert K == pytest.approx(3.0 * 1.05, abs=1e-8)
    assert Kprime == 0.0

    K, Kprime, _ = elliptic_constants(elliptic_trace_field, levels=fast_levels, K=1.0)
    assert K == 1.0
    assert Kprime >= 4.0
