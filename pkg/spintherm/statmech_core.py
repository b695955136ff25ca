"""
Partition functions, spin averages, entropies and occupations for spin ensembles

Everything is evaluated in the computational basis j = 0..d-1 (Boltzmann weight
exp(-gamma*j)); physical eigenvalues m_j = j - S are recovered by an exact shift.
"""

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.special import expit, logsumexp, softmax

from .combinatorics import Combinatorics, MacrostatePolynomial
from .config import Config
from .errors import ArgumentError, DomainError


class Statistics(enum.Enum):
    """Exchange statistics of the ensemble"""

    DISTINGUISHABLE = "distinguishable"
    BOSON = "boson"
    FERMION = "fermion"

    @classmethod
    def parse(cls, value) -> "Statistics":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise ArgumentError(f"unknown statistics {value!r} (choose from {choices})") from None


class Basis(enum.Enum):
    COMPUTATIONAL = "computational"
    PHYSICAL = "physical"


@dataclass(frozen=True)
class EnsembleSpec:
    """N particles of spin S (d = 2S + 1 states each) with the given statistics"""

    N: int
    S: float
    statistics: Statistics

    def __post_init__(self):
        object.__setattr__(self, "statistics", Statistics.parse(self.statistics))
        if int(self.N) != self.N or self.N < 1:
            raise ArgumentError(f"particle count must be an integer >= 1, got N={self.N}")
        if self.S < 0 or float(2 * self.S) != int(2 * self.S):
            raise ArgumentError(f"spin must be a non-negative half-integer, got S={self.S}")
        if self.statistics is Statistics.FERMION and self.N > self.d:
            raise ArgumentError(f"at most d={self.d} fermions fit in {self.d} spin states, got N={self.N}")

    @classmethod
    def from_states(cls, N: int, d: int, statistics) -> "EnsembleSpec":
        if d < 1:
            raise ArgumentError(f"state count must be >= 1, got d={d}")
        return cls(N, (d - 1) / 2, statistics)

    @property
    def d(self) -> int:
        return int(round(2 * self.S)) + 1

    @property
    def max_macrostate(self) -> int:
        """Largest computational macrostate (d-1)*N"""
        return (self.d - 1) * self.N

    @property
    def min_macrostate(self) -> int:
        """Ground-state macrostate: 0, or N(N-1)/2 under Pauli exclusion"""
        if self.statistics is Statistics.FERMION:
            return self.N * (self.N - 1) // 2
        return 0


@dataclass(frozen=True)
class InverseTemperature:
    """gamma = 1/tau; gamma = 0 is the infinite-temperature point, negative gamma is allowed"""

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise DomainError(f"inverse temperature must be finite, got gamma={self.gamma}")

    @classmethod
    def from_tau(cls, tau: float) -> "InverseTemperature":
        if tau == 0:
            raise DomainError("tau = 0 is only reachable as a limit")
        return cls(0.0 if math.isinf(tau) else 1.0 / tau)

    @property
    def tau(self) -> float:
        return math.inf if self.gamma == 0 else 1.0 / self.gamma


@dataclass(frozen=True)
class ThermalPoint:
    spec: EnsembleSpec
    gamma: InverseTemperature

    @classmethod
    def at(cls, spec: EnsembleSpec, gamma: float) -> "ThermalPoint":
        return cls(spec, InverseTemperature(gamma))

    @classmethod
    def at_tau(cls, spec: EnsembleSpec, tau: float) -> "ThermalPoint":
        return cls(spec, InverseTemperature.from_tau(tau))


def _log1mexp(x: np.ndarray) -> np.ndarray:
    """ln(1 - exp(-x)) for x > 0"""
    x = np.asarray(x, dtype=float)
    return np.where(x < math.log(2.0),
                    np.log(-np.expm1(-np.minimum(x, math.log(2.0)))),
                    np.log1p(-np.exp(-np.maximum(x, math.log(2.0)))))


def _bose_mean(k: np.ndarray, gamma: float) -> np.ndarray:
    """k / (exp(gamma*k) - 1) for gamma > 0; zero once the exponent overflows"""
    x = gamma * k
    safe = np.minimum(x, Config.EXP_OVERFLOW_THRESHOLD)
    return np.where(x > Config.EXP_OVERFLOW_THRESHOLD, 0.0, k / np.expm1(safe))


def _log_polynomial(poly: MacrostatePolynomial) -> Tuple[np.ndarray, np.ndarray]:
    """Macrostates with non-zero multiplicity and the log of those multiplicities"""
    m = np.array([i for i, c in enumerate(poly.coeffs) if c], dtype=float)
    log_g = np.array([math.log(c) for c in poly.coeffs if c], dtype=float)
    return m, log_g


class StatMechCore:
    """Thermal averages of spin ensembles for the three exchange statistics"""

    @staticmethod
    def log_partition(point: ThermalPoint, basis: Basis = Basis.COMPUTATIONAL) -> float:
        """ln Z at the thermal point.

        Distinguishable: N ln(sum_j e^{-gamma j}). Boson: the Gaussian-binomial product
        identity sum_{i=1}^{d-1} [ln(1-q^{N+i}) - ln(1-q^i)], q = e^{-gamma}. Fermion: the
        t^N coefficient of prod_j (1 + t e^{-gamma j}) via exact multiplicities.
        The physical basis adds gamma*S*N.
        """
        spec, gamma = point.spec, point.gamma.gamma
        log_z = StatMechCore._log_partition_j(spec, gamma)
        if Basis(basis) is Basis.PHYSICAL:
            log_z += gamma * spec.S * spec.N
        return float(log_z)

    @staticmethod
    def _log_partition_j(spec: EnsembleSpec, gamma: float) -> float:
        stats = spec.statistics
        if stats is Statistics.DISTINGUISHABLE:
            return spec.N * float(logsumexp(-gamma * np.arange(spec.d)))

        if stats is Statistics.BOSON:
            if gamma < 0:
                # spectrum reflection m -> (d-1)N - m
                return StatMechCore._log_partition_j(spec, -gamma) - gamma * spec.max_macrostate
            N, i = spec.N, np.arange(1, spec.d, dtype=float)
            if gamma < Config.GAMMA_SERIES_THRESHOLD:
                # ln((1-e^{-x})/x) = -x/2 + x^2/24 - ...
                log_count = math.log(math.comb(N + spec.d - 1, spec.d - 1))
                series = np.sum(-gamma * N / 2 + gamma ** 2 * ((N + i) ** 2 - i ** 2) / 24)
                return log_count + float(series)
            return float(np.sum(_log1mexp(gamma * (N + i)) - _log1mexp(gamma * i)))

        m, log_g = _log_polynomial(Combinatorics.fermion_multiplicities(spec.N, spec.d))
        return float(logsumexp(log_g - gamma * m))

    @staticmethod
    def mean_macrostate(point: ThermalPoint) -> float:
        """<j> summed over particles, i.e. -d ln Z / d gamma in the computational basis"""
        spec, gamma = point.spec, point.gamma.gamma
        stats = spec.statistics
        if stats is Statistics.DISTINGUISHABLE:
            p = softmax(-gamma * np.arange(spec.d))
            return spec.N * float(np.dot(p, np.arange(spec.d)))

        if stats is Statistics.BOSON:
            if gamma < 0:
                return spec.max_macrostate - StatMechCore.mean_macrostate(ThermalPoint.at(spec, -gamma))
            N, i = spec.N, np.arange(1, spec.d, dtype=float)
            if gamma < Config.GAMMA_SERIES_THRESHOLD:
                variance = np.sum(((N + i) ** 2 - i ** 2) / 12)
                return spec.max_macrostate / 2 - gamma * float(variance)
            return float(np.sum(_bose_mean(i, gamma) - _bose_mean(N + i, gamma)))

        m, log_g = _log_polynomial(Combinatorics.fermion_multiplicities(spec.N, spec.d))
        return float(np.dot(softmax(log_g - gamma * m), m))

    @staticmethod
    def average_spin(point: ThermalPoint) -> float:
        """<J_z> = <j> - S*N"""
        return StatMechCore.mean_macrostate(point) - point.spec.S * point.spec.N

    @staticmethod
    def entropy(point: ThermalPoint, basis: Basis = Basis.COMPUTATIONAL) -> float:
        """S = ln Z + gamma * <a>, where <a> is the mean macrostate in the chosen basis"""
        gamma = point.gamma.gamma
        if Basis(basis) is Basis.PHYSICAL:
            return StatMechCore.log_partition(point, Basis.PHYSICAL) + gamma * StatMechCore.average_spin(point)
        return StatMechCore.log_partition(point) + gamma * StatMechCore.mean_macrostate(point)

    @staticmethod
    def ensemble_heat(spec: EnsembleSpec, tau: float) -> float:
        """Finite-N spin therm absorbed from the tau -> 0+ ground state up to tau"""
        if tau <= 0:
            raise DomainError(f"ensemble heat needs tau > 0, got tau={tau}")
        return StatMechCore.mean_macrostate(ThermalPoint.at_tau(spec, tau)) - spec.min_macrostate

    @staticmethod
    def single_particle_distribution(d: int, gamma: float) -> np.ndarray:
        """Boltzmann probabilities p(j) of one particle over its d states"""
        if d < 1:
            raise ArgumentError(f"state count must be >= 1, got d={d}")
        return softmax(-gamma * np.arange(d))

    @staticmethod
    def probability(point: ThermalPoint, config: Sequence[int], per_microstate: bool = False) -> float:
        """Probability of the occupation vector `config`.

        For distinguishable particles the default is the configuration probability,
        which carries the multinomial multiplicity; per_microstate=True drops it.
        """
        spec = point.spec
        k = [int(x) for x in config]
        if len(k) != spec.d:
            raise ArgumentError(f"configuration needs {spec.d} occupations, got {len(k)}")
        if any(x < 0 for x in k) or sum(k) != spec.N:
            raise ArgumentError(f"configuration {k} must be non-negative and sum to N={spec.N}")
        if spec.statistics is Statistics.FERMION and any(x > 1 for x in k):
            raise ArgumentError(f"fermion occupations must be 0 or 1, got {k}")

        macrostate = sum(j * x for j, x in enumerate(k))
        log_p = -point.gamma.gamma * macrostate - StatMechCore.log_partition(point)
        if spec.statistics is Statistics.DISTINGUISHABLE and not per_microstate:
            log_p += math.log(Combinatorics.multinomial(spec.N, k))
        return math.exp(log_p)

    @staticmethod
    def occupation_bose(j: float, S: float, tau: float) -> float:
        """Bose-Einstein occupation 1 / (exp((j - S)/tau) - 1)"""
        if tau == 0:
            raise DomainError("occupation_bose needs tau != 0")
        x = (j - S) / tau
        if x <= 0:
            raise DomainError(
                f"Bose occupation needs (j - S)/tau > 0 for a convergent series, got {x}")
        if x > Config.EXP_OVERFLOW_THRESHOLD:
            return 0.0
        return 1.0 / math.expm1(x)

    @staticmethod
    def occupation_fermi(j: float, S: float, tau: float) -> float:
        """Fermi-Dirac occupation 1 / (exp((j - S)/tau) + 1)"""
        if tau == 0:
            raise DomainError("occupation_fermi needs tau != 0")
        return float(expit(-(j - S) / tau))
