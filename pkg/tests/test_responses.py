import math

import numpy as np
import pytest

from spintherm import (
    ArgumentError,
    DomainError,
    EnsembleSpec,
    Oracle,
    ResponseCurve,
    ResponseKind,
    ResponseModel,
    Responses,
    Statistics,
    StatMechCore,
    ThermalPoint,
    Thermo,
)

BOSON_D2_TAU1 = 1 / (4 * math.sinh(0.5) ** 2)


def test_distinguishable_two_state(responses):
    spec = EnsembleSpec.from_states(1, 2, Statistics.DISTINGUISHABLE)
    p = math.exp(-1) / (1 + math.exp(-1))
    assert responses.waste_response_distinguishable(spec, 1.0) == pytest.approx(p * (1 - p), rel=1e-12)
    assert responses.waste_response_distinguishable(spec, 1.0) == pytest.approx(0.196612, abs=1e-6)


def test_distinguishable_three_state_matches_numeric(responses):
    spec = EnsembleSpec.from_states(1, 3, Statistics.DISTINGUISHABLE)
    w = np.exp(-np.arange(3))
    p = w / w.sum()
    var = float(np.dot(p, np.arange(3) ** 2) - np.dot(p, np.arange(3)) ** 2)
    assert responses.waste_response_distinguishable(spec, 1.0) == pytest.approx(var, rel=1e-12)
    assert responses.waste_response_numeric(spec, 1.0) == pytest.approx(var, rel=1e-12)


@pytest.mark.parametrize("tau", [0.1, 0.3, 1.0, 3.0, 10.0])
def test_fluctuation_dissipation_distinguishable(responses, tau):
    spec = EnsembleSpec.from_states(4, 3, Statistics.DISTINGUISHABLE)
    per_particle = responses.waste_response_distinguishable(spec, tau)
    assert responses.waste_response_numeric(spec, tau) / 4 == pytest.approx(per_particle, rel=1e-8)


def test_distinguishable_rejects_other_statistics(responses):
    with pytest.raises(ArgumentError):
        responses.waste_response_distinguishable(EnsembleSpec.from_states(2, 2, Statistics.BOSON), 1.0)


def test_high_tau_two_state_limit(responses):
    tau = 1e6
    spec = EnsembleSpec.from_states(1, 2, Statistics.DISTINGUISHABLE)
    assert responses.waste_response_numeric(spec, tau) == pytest.approx(1 / (4 * tau ** 2), rel=1e-5)


def test_boson_analytic_values():
    assert Responses.waste_response_boson(2, 1.0) == pytest.approx(BOSON_D2_TAU1, rel=1e-12)
    assert Responses.waste_response_boson(2, 1.0) == pytest.approx(0.920674, abs=1e-6)
    assert Responses.waste_response_boson(2, 0.1) < 1e-2


@pytest.mark.parametrize("d", [2, 3, 7, 101])
def test_boson_equipartition_limit(d):
    assert Responses.waste_response_boson(d, 1e6) == pytest.approx(d - 1, rel=1e-6)


def test_einstein_solid_equals_two_state_boson():
    for tau in np.arange(1, 201) * 0.05:
        assert Responses.einstein_solid(float(tau)) == Responses.waste_response_boson(2, float(tau))
    assert Responses.einstein_solid(1e6) == pytest.approx(1.0, rel=1e-6)
    assert Responses.einstein_solid(1.0) == pytest.approx(0.920674, abs=1e-6)


def test_debye_limits(responses):
    assert responses.debye(1e6, 10.0) == pytest.approx(10.0, rel=1e-4)
    assert responses.debye(0.05, 1.0) / responses.debye(0.025, 1.0) == pytest.approx(8.0, rel=1e-3)


def test_debye_matches_boson_sum_at_high_tau(responses):
    # the integral and the mode sum agree once every mode is classical
    assert responses.debye(1e5, 100.0) == pytest.approx(Responses.waste_response_boson(101, 1e5), rel=1e-3)


def test_frozen_responses_vanish(responses):
    tau = 0.01
    assert Responses.waste_response_boson(2, tau) < 1e-12
    assert Responses.einstein_solid(tau) < 1e-12
    assert responses.debye(tau, 1.0) < 1e-4
    for statistics in Statistics:
        spec = EnsembleSpec.from_states(2, 2, statistics)
        assert 0 <= responses.waste_response_numeric(spec, tau) < 1e-12


def test_large_n_boson_converges(responses):
    errors = []
    for N in (10, 100, 1000, 10000):
        spec = EnsembleSpec.from_states(N, 2, Statistics.BOSON)
        errors.append(abs(responses.waste_response_numeric(spec, 1.0) - BOSON_D2_TAU1))
    assert all(b <= a for a, b in zip(errors, errors[1:]))
    assert errors[-1] / BOSON_D2_TAU1 <= 1e-3


def test_large_n_boson_converges_three_states(responses):
    target = Responses.waste_response_boson(3, 1.0)
    errors = [abs(responses.waste_response_numeric(EnsembleSpec.from_states(N, 3, Statistics.BOSON), 1.0) - target)
              for N in (10, 100, 1000)]
    assert all(b <= a for a, b in zip(errors, errors[1:]))


@pytest.mark.parametrize("statistics, N, d", [
    (Statistics.DISTINGUISHABLE, 2, 3),
    (Statistics.BOSON, 3, 3),
    (Statistics.FERMION, 2, 4),
    (Statistics.FERMION, 3, 5),
])
def test_numeric_response_matches_oracle(responses, statistics, N, d):
    spec = EnsembleSpec.from_states(N, d, statistics)
    assert responses.waste_response_numeric(spec, 1.0) == pytest.approx(
        Oracle.finite_diff_response(spec, 1.0, 1e-4), abs=1e-6)


def test_entropic_response_values(responses):
    boson = ResponseModel("boson", d=2)
    assert responses.entropic_response(boson, 1.0) == pytest.approx(0.920674, abs=1e-6)
    assert responses.entropic_response(boson, 0.01) == pytest.approx(0.0, abs=1e-12)
    assert responses.entropic_response(ResponseModel("einstein"), 2.0) == pytest.approx(
        Responses.einstein_solid(2.0) / 2.0)


def test_entropic_response_is_entropy_derivative(responses):
    spec = EnsembleSpec.from_states(2, 3, Statistics.DISTINGUISHABLE)
    tau, h = 0.7, 1e-5
    up = StatMechCore.entropy(ThermalPoint.at_tau(spec, tau + h))
    down = StatMechCore.entropy(ThermalPoint.at_tau(spec, tau - h))
    assert responses.entropic_response(spec, tau) == pytest.approx((up - down) / (2 * h), abs=1e-6)


def test_entropy_from_response_integrates_to_entropy_change(responses):
    spec = EnsembleSpec.from_states(2, 3, Statistics.DISTINGUISHABLE)
    expected = (StatMechCore.entropy(ThermalPoint.at_tau(spec, 2.0))
                - StatMechCore.entropy(ThermalPoint.at_tau(spec, 0.5)))
    assert responses.entropy_from_response(spec, 0.5, 2.0) == pytest.approx(expected, abs=1e-6)

    boson = ResponseModel("boson", d=3)
    expected = Thermo.boson_entropy_analytic(3, 2.0) - Thermo.boson_entropy_analytic(3, 0.5)
    assert responses.entropy_from_response(boson, 0.5, 2.0) == pytest.approx(expected, abs=1e-6)


def test_waste_from_response_integrates_to_heat(responses):
    boson = ResponseModel("boson", d=3)
    assert responses.waste_from_response(boson, 0.3, 0.6) == pytest.approx(
        Thermo.heat_between(3, 0.3, 0.6), abs=1e-6)


def test_response_curve_keeps_grid_order():
    grid = list(np.linspace(0.1, 5.0, 40))
    model = ResponseModel("debye", cutoff=2.0)
    parallel = Responses({"workers": 4}).response_curve(model, grid)
    serial = Responses({"workers": 1}).response_curve(model, grid)
    assert parallel.values == serial.values
    assert parallel.tau_grid == tuple(grid)

    entropic = Responses({"workers": 1}).response_curve(model, grid, ResponseKind.ENTROPIC_RESPONSE)
    assert entropic.values[3] == pytest.approx(serial.values[3] / grid[3])


def test_response_curve_validation():
    with pytest.raises(ArgumentError):
        ResponseCurve((1.0, 2.0), (1.0,), ResponseKind.WASTE_RESPONSE)
    with pytest.raises(ArgumentError):
        ResponseCurve((2.0, 1.0), (1.0, 1.0), ResponseKind.WASTE_RESPONSE)
    with pytest.raises(DomainError):
        ResponseCurve((0.0, 1.0), (1.0, 1.0), ResponseKind.WASTE_RESPONSE)


def test_domain_errors(responses):
    spec = EnsembleSpec.from_states(2, 2, Statistics.BOSON)
    with pytest.raises(DomainError):
        responses.waste_response_numeric(spec, 0.0)
    with pytest.raises(DomainError):
        Responses.waste_response_boson(2, -1.0)
    with pytest.raises(DomainError):
        Responses.einstein_solid(0.0)
    with pytest.raises(DomainError):
        responses.debye(1.0, 0.0)
    with pytest.raises(ArgumentError):
        ResponseModel("phonon")
