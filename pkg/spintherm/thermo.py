"""
Closed-form entropies, heats and capacities, and the polarization <-> spin temperature map
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import bisect

from .config import Config
from .errors import ArgumentError, DomainError
from .statmech_core import EnsembleSpec, Statistics, StatMechCore, _bose_mean

# gamma = 1/tau = 0 exactly
INFINITE_TEMPERATURE = math.inf


@dataclass(frozen=True)
class Polarization:
    """alpha in [0, 1], with <J_z> = (2 alpha - 1) S N"""

    alpha: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"polarization alpha must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class CapacityReport:
    entropy_capacity: float
    waste_capacity: float


def _require_positive_tau(tau: float, what: str):
    if not tau > 0:
        raise DomainError(f"{what} needs tau > 0, got tau={tau}")


def _require_boson_states(d: int, what: str):
    if int(d) != d or d < 2:
        raise ArgumentError(f"{what} needs an integer d >= 2, got d={d}")


class Thermo:
    """Infinite-N boson closed forms and polarization mapping"""

    @staticmethod
    def boson_entropy_analytic(d: int, tau: float) -> float:
        """Per-particle boson entropy sum_j [(j/2tau) coth(j/2tau) - ln sinh(j/2tau)] - (d-1) ln 2.

        Each term is rewritten as y/(e^y - 1) - ln(1 - e^-y) with y = j/tau, which is
        exact and vanishes once y passes the exponent overflow switch.
        """
        _require_boson_states(d, "boson_entropy_analytic")
        _require_positive_tau(tau, "boson_entropy_analytic")
        y = np.arange(1, d, dtype=float) / tau
        live = y <= Config.EXP_OVERFLOW_THRESHOLD
        ys = np.where(live, y, 1.0)
        terms = ys / np.expm1(ys) - np.log(-np.expm1(-ys))
        return float(np.sum(np.where(live, terms, 0.0)))

    @staticmethod
    def boson_heat(d: int, tau: float) -> float:
        """Per-particle heat above the ground state, (1/2) sum_j j (coth(j/2tau) - 1)"""
        _require_boson_states(d, "boson_heat")
        _require_positive_tau(tau, "boson_heat")
        return float(np.sum(_bose_mean(np.arange(1, d, dtype=float), 1.0 / tau)))

    @staticmethod
    def heat_between(d: int, tau_a: float, tau_b: float) -> float:
        """boson_heat(d, tau_b) - boson_heat(d, tau_a); positive when heat is absorbed"""
        return Thermo.boson_heat(d, tau_b) - Thermo.boson_heat(d, tau_a)

    @staticmethod
    def entropy_capacity(statistics, N: int, d: int) -> float:
        """ln of the total microstate count"""
        statistics = Statistics.parse(statistics)
        if N < 1 or d < 1:
            raise ArgumentError(f"entropy_capacity needs N >= 1 and d >= 1, got N={N}, d={d}")
        if statistics is Statistics.DISTINGUISHABLE:
            return N * math.log(d)
        if statistics is Statistics.BOSON:
            return math.log(math.comb(N + d - 1, d - 1))
        if N > d:
            raise ArgumentError(f"at most d={d} fermions fit in {d} states, got N={N}")
        return math.log(math.comb(d, N))

    @staticmethod
    def waste_capacity(N: int, S: float) -> float:
        if N < 1:
            raise ArgumentError(f"waste_capacity needs N >= 1, got N={N}")
        return S * N

    @staticmethod
    def capacity_report(spec: EnsembleSpec) -> CapacityReport:
        return CapacityReport(
            entropy_capacity=Thermo.entropy_capacity(spec.statistics, spec.N, spec.d),
            waste_capacity=Thermo.waste_capacity(spec.N, spec.S),
        )

    @staticmethod
    def _check_alpha(alpha: float, S: float) -> float:
        alpha = Polarization(float(alpha)).alpha
        if S <= 0 or float(2 * S) != int(2 * S):
            raise DomainError(f"polarization mapping needs a positive half-integer spin, got S={S}")
        if alpha in (0.0, 1.0):
            raise DomainError(f"alpha={alpha} is only reached in the tau -> 0 limit")
        return alpha

    @staticmethod
    def polarization_to_tau(alpha: float, S: float) -> float:
        """Spin temperature of a single spin-S particle at polarization alpha.

        Solves sum_{j=0}^{2S} x^j (2 alpha S - j) = 0 for its unique positive root x = e^{-1/tau}.
        alpha = 1/2 returns INFINITE_TEMPERATURE; alpha > 1/2 gives negative tau.
        """
        alpha = Thermo._check_alpha(alpha, S)
        if alpha == 0.5:
            return INFINITE_TEMPERATURE

        d = int(round(2 * S)) + 1
        coeffs = 2.0 * alpha * S - np.arange(d, dtype=float)

        def sign_preserving(x: float) -> float:
            # divide by x^(d-1) above x = 1 so large spins do not overflow
            if x <= 1.0:
                return float(P.polyval(x, coeffs))
            return float(P.polyval(1.0 / x, coeffs[::-1]))

        if alpha < 0.5:
            lo, hi = 0.0, 1.0
        else:
            lo, hi = 1.0, 2.0
            while sign_preserving(hi) > 0:
                lo, hi = hi, hi * 2.0
                if hi > 1e300:
                    raise DomainError(f"no positive root bracketed for alpha={alpha}, S={S}")

        x = bisect(sign_preserving, lo, hi, xtol=Config.POLARIZATION_XTOL,
                   rtol=4 * np.finfo(float).eps, maxiter=Config.MAX_BISECTION_ITERATIONS * 5)
        return -1.0 / math.log(x)

    @staticmethod
    def polarization_to_tau_closed_form(alpha: float, S: float) -> float:
        """Closed-form inverse for S = 1/2 and S = 1"""
        alpha = Thermo._check_alpha(alpha, S)
        if alpha == 0.5:
            return INFINITE_TEMPERATURE
        if S == 0.5:
            return 1.0 / math.log((1.0 - alpha) / alpha)
        if S == 1:
            root = (2 * alpha - 1) + math.sqrt(-12 * alpha ** 2 + 12 * alpha + 1)
            return 1.0 / math.log(4 * (1 - alpha) / root)
        raise ArgumentError(f"closed forms exist for S = 1/2 and S = 1 only, got S={S}")

    @staticmethod
    def tau_to_polarization(tau: float, S: float) -> Polarization:
        """alpha = <j>/(2S) from the single-particle distribution; S = 0 maps to 1/2"""
        if tau == 0:
            raise DomainError("tau_to_polarization needs tau != 0")
        if S == 0:
            return Polarization(0.5)
        d = int(round(2 * S)) + 1
        gamma = 0.0 if math.isinf(tau) else 1.0 / tau
        p = StatMechCore.single_particle_distribution(d, gamma)
        mean = float(np.dot(p, np.arange(d)))
        return Polarization(min(1.0, max(0.0, mean / (2.0 * S))))
