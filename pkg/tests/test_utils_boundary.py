"""Тесты для utils/boundary.py"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from utils.boundary import (
    PRESETS,
    boundary_derivative,
    breakpoints,
    evaluate,
    fourier_coefficients,
    fourier_spec,
    jump_points,
    load_boundary_file,
    load_boundary_spec,
    lp_circle_norm,
    preset_spec,
    sampled_spec,
    uniform_series,
)
from utils.errors import InvalidInputError, RefusedOperationError, UnsupportedExponentError
from utils.quadrature import adaptive_integrate


def test_abs_sin_coefficients_closed_form(abs_sin_spec):
    """Тест точных коэффициентов |sin theta|"""
    coeffs = fourier_coefficients(abs_sin_spec, 8)

    assert coeffs.exact
    assert coeffs.coefficient(0) == pytest.approx(2.0 / math.pi)
    assert coeffs.coefficient(2) == pytest.approx(-(2.0 / math.pi) / 3.0)
    assert coeffs.coefficient(-4) == pytest.approx(-(2.0 / math.pi) / 15.0)
    assert coeffs.coefficient(1) == 0
    assert coeffs.coefficient(3) == 0
    assert coeffs.coefficient(100) == 0


def test_abs_sin_tail_bound_covers_discarded_mass(abs_sin_spec):
    """Тест: оценка хвоста покрывает отброшенную массу коэффициентов"""
    coeffs = fourier_coefficients(abs_sin_spec, 8)
    exact_tail = 2.0 * sum((2.0 / math.pi) / (4.0 * k * k - 1.0) for k in range(5, 200000))

    assert coeffs.tail_bound >= exact_tail


def test_real_boundary_has_conjugate_symmetric_coefficients(abs_sin_spec):
    values = fourier_coefficients(abs_sin_spec, 16).values

    np.testing.assert_allclose(values[::-1], np.conj(values), atol=1e-15)


def test_discrete_coefficients_match_exact(random_trig_spec):
    """Тест: коэффициенты БПФ совпадают с точными"""
    exact = fourier_coefficients(random_trig_spec, 8, method="exact")
    discrete = fourier_coefficients(random_trig_spec, 8, method="discrete")

    assert not discrete.exact
    np.testing.assert_allclose(discrete.values, exact.values, atol=1e-12)
    assert discrete.tail_bound < 1e-12


def test_discrete_coefficients_need_enough_samples(random_trig_spec):
    with pytest.raises(InvalidInputError):
        fourier_coefficients(random_trig_spec, 8, method="discrete", samples=16)


def test_negative_truncation_rejected(identity_spec):
    with pytest.raises(InvalidInputError):
        fourier_coefficients(identity_spec, -1)


def test_sampled_cosine_recovers_coefficients():
    """Тест восстановления коэффициентов косинуса по отсчётам"""
    theta = 2.0 * math.pi * np.arange(32) / 32
    spec = sampled_spec(np.cos(theta))
    coeffs = fourier_coefficients(spec, 4)

    assert coeffs.coefficient(1) == pytest.approx(0.5, abs=1e-14)
    assert coeffs.coefficient(-1) == pytest.approx(0.5, abs=1e-14)
    assert abs(coeffs.coefficient(0)) < 1e-14
    assert spec.real_valued


def test_sampled_spec_rejects_non_finite_and_bad_sizes():
    """Тест отказа для нечисловых отсчётов и неверного их числа"""
    with pytest.raises(InvalidInputError):
        sampled_spec([1.0] * 15 + [float("nan")])
    with pytest.raises(InvalidInputError):
        sampled_spec([1.0] * 24)
    with pytest.raises(InvalidInputError):
        sampled_spec(["a"] * 16)


def test_raw_samples_are_not_differentiated():
    """Тест: сырые отсчёты не дифференцируются"""
    spec = sampled_spec(np.ones(16))

    with pytest.raises(RefusedOperationError):
        boundary_derivative(spec)

    smooth = sampled_spec(np.ones(16), smooth=True)
    assert boundary_derivative(smooth).order == 1


def test_fourier_derivative_multiplies_by_i_n():
    spec = fourier_spec({2: 1.0, -1: 3.0})
    derivative = boundary_derivative(spec)

    assert derivative.coefficients == {2: 2j, -1: -3j}


def test_abs_sin_second_derivative_is_refused(abs_sin_spec):
    """Тест отказа от второй производной |sin|"""
    derivative = boundary_derivative(abs_sin_spec)

    assert jump_points(derivative) == (0.0, math.pi)
    with pytest.raises(RefusedOperationError):
        boundary_derivative(derivative)


def test_explicit_derivative_wins():
    """Тест: явно заданная производная имеет приоритет"""
    document = {
        "kind": "fourier",
        "coefficients": [[1, 1.0, 0.0]],
        "derivative": {"kind": "fourier", "coefficients": [[1, 0.0, 1.0]]},
    }
    spec = load_boundary_spec(document)

    assert boundary_derivative(spec).coefficients == {1: 1j}


def test_evaluate_identity(identity_spec):
    theta = np.array([0.0, 0.5, 2.0])

    np.testing.assert_allclose(evaluate(identity_spec, theta), np.exp(1j * theta), atol=1e-15)


def test_breakpoints_are_wrapped(abs_sin_spec):
    assert breakpoints(abs_sin_spec) == (0.0, math.pi)


@settings(max_examples=20, deadline=None)
@given(
    k=st.integers(-40, 40),
    nodes=st.sampled_from([4, 8, 16, 64]),
)
def test_uniform_series_folds_aliases(k, nodes):
    """Индексы выше nodes складываются по модулю, значения совпадают с прямой суммой."""
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    values = uniform_series(np.array([k]), np.array([1.0 + 0.5j]), nodes)

    np.testing.assert_allclose(values, (1.0 + 0.5j) * np.exp(1j * k * theta), atol=1e-12)


def test_lp_circle_norm_abs_sin(abs_sin_spec):
    """Тест норм L^p для |sin theta|"""
    assert lp_circle_norm(abs_sin_spec, 1).value == pytest.approx(2.0 / math.pi, rel=1e-10)
    assert lp_circle_norm(abs_sin_spec, 2).value == pytest.approx(math.sqrt(0.5), rel=1e-10)

    sup = lp_circle_norm(abs_sin_spec, math.inf)
    assert sup.value == pytest.approx(1.0, abs=1e-6)
    assert sup.certificate == "monotone-refinement"


def test_lp_circle_norm_elliptic_trace_derivative(elliptic_trace_spec):
    """F' = i e^{i theta} - i e^{-2 i theta}: sup равен 2."""
    sup = lp_circle_norm(boundary_derivative(elliptic_trace_spec), math.inf)

    assert sup.value == pytest.approx(2.0, abs=1e-4)


def test_lp_circle_norm_rejects_small_exponent(identity_spec):
    with pytest.raises(UnsupportedExponentError):
        lp_circle_norm(identity_spec, 0.5)


def test_unknown_preset_and_bad_params():
    """Тест неизвестного пресета и неверных параметров"""
    with pytest.raises(InvalidInputError):
        preset_spec("no-such-preset")
    with pytest.raises(InvalidInputError):
        preset_spec("identity", k=3)


def test_every_preset_builds():
    for name in PRESETS:
        spec = preset_spec(name)
        assert spec.describe()["name"] == name


def test_load_boundary_file_variants(boundary_file):
    """Тест загрузки граничной функции из файла"""
    path = boundary_file({"kind": "preset", "name": "mode", "params": {"k": 3}})
    spec = load_boundary_file(path)
    assert fourier_coefficients(spec, 4).coefficient(3) == 1.0

    path = boundary_file({"kind": "sampled", "samples": [1.0] * 16})
    assert load_boundary_file(path).kind == "sampled"


def test_load_boundary_file_errors(boundary_file, tmp_path):
    """Тест ошибок загрузки файла"""
    bad = tmp_path / "broken.json"
    bad.write_text("{not json", encoding="utf-8")

    with pytest.raises(InvalidInputError):
        load_boundary_file(str(bad))
    with pytest.raises(InvalidInputError):
        load_boundary_file(str(tmp_path / "missing.json"))
    with pytest.raises(InvalidInputError):
        load_boundary_file(boundary_file({"kind": "fourier", "coefficients": [[1, 1.0], [1, 2.0]]}))
    with pytest.raises(InvalidInputError):
        load_boundary_file(boundary_file({"kind": "spline"}))


coefficient_maps = st.dictionaries(
    st.integers(-12, 12),
    st.complex_numbers(min_magnitude=0.05, max_magnitude=2.0, allow_nan=False, allow_infinity=False),
    min_size=1, max_size=6,
)


@settings(max_examples=25, deadline=None)
@given(coefficients=coefficient_maps)
def test_plancherel_for_fourier_specs(coefficients):
    """Тест: ||F||_2^2 равна сумме |c_n|^2"""
    spec = fourier_spec(coefficients)
    energy = fourier_coefficients(spec, 12).energy()

    assert energy == pytest.approx(sum(abs(c) ** 2 for c in coefficients.values()), rel=1e-12)
    assert lp_circle_norm(spec, 2).value ** 2 == pytest.approx(energy, rel=1e-10)


@pytest.mark.parametrize("scale", [2.5, -0.5j, 1e-3 + 1e-3j])
@pytest.mark.parametrize("p", [1, 2, 3, math.inf])
def test_lp_circle_norm_is_homogeneous(random_trig_spec, scale, p):
    """Тест: ||lambda F|| = |lambda| ||F||"""
    coefficients = fourier_coefficients(random_trig_spec, 8)
    scaled = fourier_spec({int(n): scale * c for n, c in zip(coefficients.indices, coefficients.values)})

    base = lp_circle_norm(random_trig_spec, p).value
    assert lp_circle_norm(scaled, p).value == pytest.approx(abs(scale) * base, rel=1e-9)


@pytest.mark.parametrize("preset", ["constant", "identity", "abs-sin", "elliptic-trace", "affine-qr", "random-trig"])
def test_lp_circle_norm_nondecreasing_in_p(preset):
    """Тест: ||F||_p не убывает по p на сетке 1, 2, 4, inf"""
    spec = preset_spec(preset)
    values = [lp_circle_norm(spec, p).value for p in (1, 2, 4, math.inf)]

    for lower, higher in zip(values[:-1], values[1:]):
        assert higher >= lower * (1.0 - 1e-9)


def test_abs_sin_dft_matches_coefficient_quadrature(abs_sin_spec):
    """Тест: БПФ 4096 отсчётов |sin| против прямой квадратуры каждого коэффициента"""
    discrete = fourier_coefficients(abs_sin_spec, 16, method="discrete")
    exact = fourier_coefficients(abs_sin_spec, 16)

    assert discrete.method == "discrete"
    for n in range(-16, 17):
        integral = adaptive_integrate(
            lambda theta: np.abs(np.sin(theta)) * np.exp(-1j * n * theta) / (2.0 * math.pi),
            0.0, 2.0 * math.pi, breakpoints=(math.pi,), atol=1e-14,
        ).value
        assert integral == pytest.approx(exact.coefficient(n), abs=1e-13)
        assert discrete.coefficient(n) == pytest.approx(integral, abs=5e-7)


def test_abs_sin_derivative_modulus_is_abs_cos(abs_sin_spec):
    """Тест: |F'| = |cos theta| в 1024 точках вне изломов"""
    theta = 2.0 * math.pi * (np.arange(1024) + 0.5) / 1024

    values = evaluate(boundary_derivative(abs_sin_spec), theta)

    np.testing.assert_allclose(np.abs(values), np.abs(np.cos(theta)), atol=1e-15)
    np.testing.assert_allclose(values.real, np.cos(theta) * np.sign(np.sin(theta)), atol=1e-15)


def test_preset_description_in_report(affine_spec):
    """Тест описания пресета в отчёте"""
    info = affine_spec.describe()

    assert info["description"] == "trace of z + q conj(z)"
    assert info["params"] == {"q": 0.5}
    assert "description" not in fourier_spec({1: 1.0}).describe()
