import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spintherm import (
    INFINITE_TEMPERATURE,
    ArgumentError,
    DomainError,
    EnsembleSpec,
    Polarization,
    ResponseModel,
    Responses,
    Statistics,
    StatMechCore,
    ThermalPoint,
    Thermo,
)

TAUS = [0.1, 0.5, 1.0, 3.0, 10.0]


def test_boson_entropy_values():
    assert Thermo.boson_entropy_analytic(2, 0.01) < 1e-12
    assert Thermo.boson_entropy_analytic(2, 1.0) == pytest.approx(1.04065, abs=1e-5)


def test_boson_entropy_matches_response_quadrature():
    responses = Responses({"workers": 1})
    for d in (2, 3):
        integrated = responses.entropy_from_response(ResponseModel("boson", d=d), 1e-3, 1.0)
        assert Thermo.boson_entropy_analytic(d, 1.0) == pytest.approx(integrated, abs=1e-6)


def test_boson_heat_values():
    assert Thermo.boson_heat(2, 0.01) == pytest.approx(0.0, abs=1e-12)
    assert Thermo.boson_heat(2, 1.0) == pytest.approx((1 / math.tanh(0.5) - 1) / 2, rel=1e-12)
    assert Thermo.boson_heat(2, 1.0) == pytest.approx(0.581977, abs=1e-6)
    assert Thermo.boson_heat(2, 100.0) == pytest.approx(99.5, abs=1e-3)


def test_heat_between():
    assert Thermo.heat_between(3, 0.4, 0.4) == 0.0
    forward = Thermo.heat_between(2, 0.3, 0.6)
    assert forward == pytest.approx(1 / math.expm1(1 / 0.6) - 1 / math.expm1(1 / 0.3), rel=1e-12)
    assert forward == pytest.approx(0.19586, abs=1e-5)
    assert Thermo.heat_between(2, 0.6, 0.3) == -forward


@pytest.mark.parametrize("d", [2, 3, 7])
@pytest.mark.parametrize("tau", TAUS)
def test_heat_derivative_is_waste_response(d, tau):
    h = 1e-5 * tau
    slope = (Thermo.boson_heat(d, tau + h) - Thermo.boson_heat(d, tau - h)) / (2 * h)
    assert slope == pytest.approx(Responses.waste_response_boson(d, tau), abs=1e-6)


@pytest.mark.parametrize("d", [2, 3, 7])
@pytest.mark.parametrize("tau", TAUS)
def test_entropy_derivative_is_entropic_response(d, tau):
    h = 1e-5 * tau
    slope = (Thermo.boson_entropy_analytic(d, tau + h) - Thermo.boson_entropy_analytic(d, tau - h)) / (2 * h)
    assert slope == pytest.approx(Responses.waste_response_boson(d, tau) / tau, abs=1e-6)


def test_boson_domain_errors():
    with pytest.raises(DomainError):
        Thermo.boson_heat(2, 0.0)
    with pytest.raises(DomainError):
        Thermo.boson_entropy_analytic(2, -1.0)
    with pytest.raises(ArgumentError):
        Thermo.boson_heat(1, 1.0)


def test_entropy_capacity_values():
    assert Thermo.entropy_capacity(Statistics.DISTINGUISHABLE, 4, 7) == pytest.approx(7.78364, abs=1e-5)
    assert Thermo.entropy_capacity(Statistics.BOSON, 4, 7) == pytest.approx(math.log(210))
    assert Thermo.entropy_capacity(Statistics.BOSON, 4, 7) == pytest.approx(5.34711, abs=1e-5)
    assert Thermo.entropy_capacity(Statistics.FERMION, 7, 7) == 0.0
    with pytest.raises(ArgumentError):
        Thermo.entropy_capacity(Statistics.FERMION, 8, 7)


@given(st.integers(1, 12), st.integers(1, 12))
def test_entropy_capacity_ordering(N, d):
    dist = Thermo.entropy_capacity(Statistics.DISTINGUISHABLE, N, d)
    boson = Thermo.entropy_capacity(Statistics.BOSON, N, d)
    assert boson <= dist + 1e-12
    if N <= d:
        assert Thermo.entropy_capacity(Statistics.FERMION, N, d) <= boson + 1e-12


@pytest.mark.parametrize("statistics", list(Statistics))
@pytest.mark.parametrize("N", [4, 6])
def test_entropy_reaches_capacity_at_high_tau(statistics, N):
    spec = EnsembleSpec.from_states(N, 7, statistics)
    entropy = StatMechCore.entropy(ThermalPoint.at_tau(spec, 1e4))
    assert entropy == pytest.approx(Thermo.entropy_capacity(statistics, N, 7), abs=1e-6)


def test_full_fermion_ensemble_has_no_entropy():
    spec = EnsembleSpec.from_states(7, 7, Statistics.FERMION)
    for tau in (0.05, 0.5, 5.0, 50.0):
        assert StatMechCore.entropy(ThermalPoint.at_tau(spec, tau)) == pytest.approx(0.0, abs=1e-12)


def test_waste_capacity():
    assert Thermo.waste_capacity(5, 0) == 0
    assert Thermo.waste_capacity(4, 0.5) == 2
    assert Thermo.waste_capacity(6, 3) == 18
    with pytest.raises(ArgumentError):
        Thermo.waste_capacity(0, 1)


def test_capacity_report():
    report = Thermo.capacity_report(EnsembleSpec.from_states(4, 7, Statistics.BOSON))
    assert report.entropy_capacity == pytest.approx(math.log(210))
    assert report.waste_capacity == 12


def test_polarization_half_spin():
    alpha = 1 / (1 + math.e)
    assert Thermo.polarization_to_tau(alpha, 0.5) == pytest.approx(1.0, rel=1e-10)
    assert Thermo.polarization_to_tau(1 - alpha, 0.5) == pytest.approx(-1.0, rel=1e-10)
    assert Thermo.polarization_to_tau(0.5, 0.5) == INFINITE_TEMPERATURE
    assert Thermo.tau_to_polarization(1.0, 0.5).alpha == pytest.approx(0.268941, abs=1e-6)
    assert Thermo.tau_to_polarization(math.inf, 3).alpha == pytest.approx(0.5)
    assert Thermo.tau_to_polarization(2.0, 0).alpha == 0.5


@pytest.mark.parametrize("S", [0.5, 1])
@pytest.mark.parametrize("alpha", [0.05, 0.1, 0.3, 0.45, 0.55, 0.7, 0.9])
def test_closed_forms_agree_with_root_solver(S, alpha):
    assert Thermo.polarization_to_tau(alpha, S) == pytest.approx(
        Thermo.polarization_to_tau_closed_form(alpha, S), rel=1e-10)


def test_closed_form_matches_numeric_average_spin():
    tau = Thermo.polarization_to_tau_closed_form(0.3, 1)
    spec = EnsembleSpec(1, 1, Statistics.DISTINGUISHABLE)
    spin = StatMechCore.average_spin(ThermalPoint.at_tau(spec, tau))
    assert spin == pytest.approx((2 * 0.3 - 1) * 1, rel=1e-10)


@pytest.mark.parametrize("S", [0.5, 1, 5, 50, 200])
@pytest.mark.parametrize("alpha", [0.1, 0.3, 0.7])
def test_polarization_round_trip(S, alpha):
    tau = Thermo.polarization_to_tau(alpha, S)
    assert Thermo.tau_to_polarization(tau, S).alpha == pytest.approx(alpha, abs=1e-8)


def test_polarization_monotone_on_each_side():
    below = [Thermo.polarization_to_tau(a / 100, 200) for a in range(5, 50, 5)]
    above = [Thermo.polarization_to_tau(a / 100, 200) for a in range(55, 100, 5)]
    assert all(t > 0 for t in below) and all(t < 0 for t in above)
    assert all(b > a for a, b in zip(below, below[1:]))
    assert all(b > a for a, b in zip(above, above[1:]))


def test_polarization_errors():
    for alpha in (0.0, 1.0, -0.1, 1.2):
        with pytest.raises(DomainError):
            Thermo.polarization_to_tau(alpha, 0.5)
    with pytest.raises(DomainError):
        Thermo.polarization_to_tau(0.3, 0)
    with pytest.raises(ArgumentError):
        Thermo.polarization_to_tau_closed_form(0.3, 2)
    with pytest.raises(DomainError):
        Thermo.tau_to_polarization(0.0, 1)
    with pytest.raises(DomainError):
        Polarization(1.5)
