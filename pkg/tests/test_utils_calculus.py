"""Тесты для utils/calculus.py"""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import config
from utils.boundary import fourier_coefficients, preset_spec
from utils.calculus import (
    DiskScalar,
    circle_derivatives,
    directional_derivative,
    local_geometry,
    polar,
    second_dilatation,
    wirtinger,
)
from utils.errors import InvalidInputError, SingularPointError
from utils.extension import extend, extend_oracle
from utils.verify import seeded_points


def test_wirtinger_of_elliptic_trace(elliptic_trace_field):
    """f = z + conj(z)^2 / 2: f_z = 1, f_z̄ = conj(z)."""
    z = 0.4 + 0.2j
    f_z, f_zbar = wirtinger(elliptic_trace_field, z)

    assert f_z == pytest.approx(1.0)
    assert f_zbar == pytest.approx(z.conjugate())


def test_polar_derivatives_of_identity(identity_field):
    """Тест полярных производных f(z) = z"""
    z = 0.5 * cmath.exp(0.3j)
    pack = polar(identity_field, z)

    assert pack.f_t == pytest.approx(1j * z)
    assert pack.f_r == pytest.approx(cmath.exp(0.3j))
    assert pack.f_t_over_r == pytest.approx(1j * cmath.exp(0.3j))


def test_polar_at_origin_uses_zero_angle(identity_field):
    """Тест: в нуле угол равен 0, а f_t/r не определено"""
    pack = polar(identity_field, 0.0)

    assert pack.f_t == 0
    assert pack.f_r == pytest.approx(1.0)
    with pytest.raises(SingularPointError):
        pack.f_t_over_r


@settings(max_examples=25, deadline=None)
@given(radius=st.floats(0.05, 0.95), angle=st.floats(0.0, 2.0 * math.pi))
def test_polar_inversion_recovers_wirtinger(radius, angle):
    field = extend(preset_spec("random-trig"))
    pack = polar(field, radius * cmath.exp(1j * angle))

    assert pack.f_z_from_polar() == pytest.approx(pack.f_z, abs=1e-10)
    assert pack.f_zbar_from_polar() == pytest.approx(pack.f_zbar, abs=1e-10)


def test_angular_derivative_matches_oracle_difference(abs_sin_spec, abs_sin_field):
    """f_t против центральной разности по углу от квадратуры Пуассона."""
    r, t, h = 0.6, 0.8, 1e-5
    pack = polar(abs_sin_field, r * cmath.exp(1j * t))
    difference = (extend_oracle(abs_sin_spec, r * cmath.exp(1j * (t + h)), tol=1e-13)
                  - extend_oracle(abs_sin_spec, r * cmath.exp(1j * (t - h)), tol=1e-13)) / (2 * h)

    assert pack.f_t == pytest.approx(difference, abs=1e-6)


def test_second_dilatation(elliptic_trace_field, conjugate_spec):
    """Тест второй дилатации и её отсутствия при f_z = 0"""
    z = 0.3 + 0.1j

    assert second_dilatation(elliptic_trace_field, z) == pytest.approx(z)
    assert second_dilatation(extend(conjugate_spec), z) is None


def test_dilatation_as_g_prime_over_h_prime_matches_wirtinger_form(random_trig_spec):
    """Тест: g'/h' совпадает с conj(f_z̄)/f_z"""
    field = extend(random_trig_spec)
    pair = field.pair
    for z in (0.1 + 0.2j, -0.5j, 0.7 - 0.1j):
        omega = second_dilatation(field, z)
        f_z, f_zbar = wirtinger(field, z)

        assert omega == pytest.approx(complex(pair.g_derivative(z) / pair.h_derivative(z)), rel=1e-12)
        assert omega == pytest.approx(f_zbar.conjugate() / f_z, rel=1e-12)


def test_local_geometry_of_affine_map(affine_spec):
    """f = z + q conj(z), q = 1/2: ||D_f|| = 3/2, l(D_f) = 1/2, J = 3/4."""
    geometry = local_geometry(extend(affine_spec), 0.2j)

    assert geometry.op_norm == pytest.approx(1.5)
    assert geometry.min_stretch == pytest.approx(0.5)
    assert geometry.jacobian == pytest.approx(0.75)
    assert geometry.sense == "preserving"
    assert geometry.to_dict()["dilatation"] == pytest.approx([0.5, 0.0])


def test_sense_reversing_geometry(conjugate_spec):
    """Тест отображения, меняющего ориентацию"""
    geometry = local_geometry(extend(conjugate_spec), 0.5)

    assert geometry.sense == "reversing"
    assert not geometry.dilatation_defined


def test_directional_derivative_extremes(affine_spec):
    """Тест: экстремумы производной по направлению равны ||D_f|| и l(D_f)"""
    field = extend(affine_spec)
    alpha = np.linspace(0.0, 2.0 * math.pi, 721)
    values = np.abs(directional_derivative(field, 0.1, alpha))

    assert values.max() == pytest.approx(1.5, abs=1e-12)
    assert values.min() == pytest.approx(0.5, abs=1e-12)


def test_circle_derivatives_identities(random_trig_spec):
    """Тест: |J| = ||D_f|| l(D_f) на окружности"""
    field = extend(random_trig_spec)
    circle = circle_derivatives(field, 0.8, 64)

    np.testing.assert_allclose(circle.jacobian, circle.op_norm * circle.min_stretch * np.sign(circle.jacobian),
                               atol=1e-12)
    assert circle.z.shape == (64,)


def test_disk_scalar_quantities(elliptic_trace_field):
    scalar = DiskScalar(elliptic_trace_field, "f_zbar")
    values = scalar.on_circle(0.5, 16).values

    np.testing.assert_allclose(values, 0.5, atol=1e-14)
    assert scalar.analytic_modulus
    assert not DiskScalar(elliptic_trace_field, "f").analytic_modulus


def test_disk_scalar_rejects_unknown_quantity_and_origin(identity_field):
    """Тест неизвестной величины и точки z = 0"""
    with pytest.raises(InvalidInputError):
        DiskScalar(identity_field, "laplacian")
    with pytest.raises(SingularPointError):
        DiskScalar(identity_field, "f_t_over_r").on_circle(0.0, 16)


@pytest.mark.parametrize("preset", config.SUITE_PRESETS)
def test_wirtinger_matches_central_differences(preset):
    """Тест: f_z и f_z̄ совпадают с центральными разностями f (шаг 1e-5) до 1e-6"""
    field = extend(preset_spec(preset))
    h = 1e-5
    points = seeded_points(11, 30, 0.9)

    shifted = field.sample(np.concatenate([points + h, points - h, points + 1j * h, points - 1j * h])).f
    right, left, up, down = shifted.reshape(4, -1)
    f_x = (right - left) / (2.0 * h)
    f_y = (up - down) / (2.0 * h)
    sample = field.sample(points)

    np.testing.assert_allclose(sample.f_z, 0.5 * (f_x - 1j * f_y), rtol=0.0, atol=1e-6)
    np.testing.assert_allclose(sample.f_zbar, 0.5 * (f_x + 1j * f_y), rtol=0.0, atol=1e-6)


@pytest.mark.parametrize("preset", config.SUITE_PRESETS)
def test_polar_identities_against_direct_series(preset):
    """Тест: f_t и f_r из пакета совпадают с почленными рядами по углу и радиусу в 200 точках"""
    spec = preset_spec(preset)
    field = extend(spec)
    points = seeded_points(config.RANDOM_SEED, 200, 0.9)
    coeffs = fourier_coefficients(spec, 2048)
    order = np.abs(coeffs.indices)

    radii, angles = np.abs(points)[:, None], np.angle(points)[:, None]
    modes = coeffs.values * np.exp(1j * coeffs.indices * angles)
    expected_t = (1j * coeffs.indices * modes * radii ** order).sum(axis=1)
    expected_r = (order * modes * radii ** (order - 1.0)).sum(axis=1)

    for z, f_t, f_r in zip(points, expected_t, expected_r):
        pack = polar(field, z)
        assert pack.f_t == pytest.approx(f_t, rel=1e-10, abs=1e-10)
        assert pack.f_r == pytest.approx(f_r, rel=1e-10, abs=1e-10)
