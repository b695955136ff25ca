"""
Waste responses (generalized heat capacities) and entropic responses
"""

import enum
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import quad

from .config import Config
from .errors import ArgumentError, DomainError
from .statmech_core import EnsembleSpec, Statistics, StatMechCore, ThermalPoint

logger = logging.getLogger(__name__)


class ResponseKind(enum.Enum):
    WASTE_RESPONSE = "waste_response"
    ENTROPIC_RESPONSE = "entropic_response"


@dataclass(frozen=True)
class ResponseCurve:
    """Samples of C_s or C_s/tau over a strictly increasing positive tau grid"""

    tau_grid: Tuple[float, ...]
    values: Tuple[float, ...]
    kind: ResponseKind

    def __post_init__(self):
        if len(self.tau_grid) != len(self.values):
            raise ArgumentError(
                f"tau grid has {len(self.tau_grid)} points but {len(self.values)} values")
        if any(t <= 0 for t in self.tau_grid):
            raise DomainError("response curves need tau > 0 on every grid point")
        if any(b <= a for a, b in zip(self.tau_grid, self.tau_grid[1:])):
            raise ArgumentError("tau grid must be strictly increasing")


@dataclass(frozen=True)
class ResponseModel:
    """Analytic response selector: distinguishable or boson per particle, Einstein, Debye"""

    kind: str
    d: int = 2
    cutoff: float = 1.0

    KINDS = ("distinguishable", "boson", "einstein", "debye")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ArgumentError(f"unknown response model {self.kind!r} (choose from {', '.join(self.KINDS)})")


ResponseSource = Union[ResponseModel, EnsembleSpec]


def _csch_sq(x: np.ndarray) -> np.ndarray:
    """1/sinh(x)^2 as 4 e^{-2x} / (1 - e^{-2x})^2, exactly 0 past the overflow switch"""
    x = np.asarray(x, dtype=float)
    frozen = x > Config.SINH_OVERFLOW_THRESHOLD
    safe = np.where(frozen, 1.0, x)
    value = 4.0 * np.exp(-2.0 * safe) / np.expm1(-2.0 * safe) ** 2
    return np.where(frozen, 0.0, value)


def _mode_response(j: np.ndarray, tau: float) -> np.ndarray:
    """Per-mode waste response j^2 / (4 tau^2 sinh^2(j / 2tau))"""
    j = np.asarray(j, dtype=float)
    return j ** 2 / (4.0 * tau ** 2) * _csch_sq(j / (2.0 * tau))


def _mode_variance_excess(k: np.ndarray, gamma: float) -> np.ndarray:
    """k^2 / (4 sinh^2(k gamma / 2)) - 1/gamma^2, series below k*gamma = 0.1"""
    k = np.asarray(k, dtype=float)
    y = k * gamma
    small = y < 0.1
    ys = np.where(small, y, 0.0)
    series = k ** 2 * (-1.0 / 12 + ys ** 2 / 240 - ys ** 4 / 6048 + ys ** 6 / 172800)
    yd = np.where(small, 1.0, y)
    direct = k ** 2 / 4.0 * _csch_sq(yd / 2.0) - 1.0 / gamma ** 2
    return np.where(small, series, direct)


def _require_positive_tau(tau: float, what: str):
    if not tau > 0:
        raise DomainError(f"{what} needs tau > 0, got tau={tau}")


class Responses:
    """Waste responses C_s = d<J_z>/dtau and entropic responses C_s/tau"""

    def __init__(self, config_params: Optional[Dict[str, Any]] = None):
        """Initialize with configuration parameters"""
        if config_params is None:
            config_params = Config.get_response_params()

        self.fd_relative_step = config_params.get('fd_relative_step', Config.FD_RELATIVE_STEP)
        self.fd_min_step = config_params.get('fd_min_step', Config.FD_MIN_STEP)
        self.debye_abs_tolerance = config_params.get('debye_abs_tolerance', Config.DEBYE_ABS_TOLERANCE)
        self.quad_limit = config_params.get('quad_limit', Config.QUAD_LIMIT)
        self.workers = config_params.get('workers', Config.DEFAULT_THREADS)

    def waste_response_numeric(self, spec: EnsembleSpec, tau: float) -> float:
        """Total C_s of the finite ensemble at temperature tau.

        Equivalent to 2 tau dlnZ/dtau + tau^2 d2lnZ/dtau2. Distinguishable and boson
        ensembles use the analytic variance Var(m)/tau^2; fermions differentiate the exact
        <m>(tau) by Richardson-extrapolated central differences.
        """
        _require_positive_tau(tau, "waste_response_numeric")
        gamma = 1.0 / tau
        if spec.statistics is Statistics.DISTINGUISHABLE:
            return spec.N * self._single_particle_variance(spec.d, gamma) / tau ** 2

        if spec.statistics is Statistics.BOSON:
            # Var(m) = sum_i [i^2/4sinh^2(i g/2) - (N+i)^2/4sinh^2((N+i) g/2)]; the 1/g^2 parts cancel
            i = np.arange(1, spec.d, dtype=float)
            excess = _mode_variance_excess(i, gamma) - _mode_variance_excess(spec.N + i, gamma)
            return float(np.sum(excess)) / tau ** 2

        return self._richardson_derivative(
            lambda t: StatMechCore.mean_macrostate(ThermalPoint.at_tau(spec, t)), tau)

    def _richardson_derivative(self, f, tau: float) -> float:
        h = max(self.fd_relative_step * tau, self.fd_min_step)
        if tau - h <= 0:
            raise DomainError(f"finite-difference step h={h} reaches tau <= 0 at tau={tau}")

        def central(step: float) -> float:
            return (f(tau + step) - f(tau - step)) / (2.0 * step)

        return (4.0 * central(h / 2.0) - central(h)) / 3.0

    @staticmethod
    def _single_particle_variance(d: int, gamma: float) -> float:
        j = np.arange(d, dtype=float)
        p = StatMechCore.single_particle_distribution(d, gamma)
        mean = float(np.dot(p, j))
        return float(np.dot(p, (j - mean) ** 2))

    def waste_response_distinguishable(self, spec: EnsembleSpec, tau: float) -> float:
        """Per-particle C_s/N = Var(j)/tau^2 from the single-particle Boltzmann distribution"""
        if spec.statistics is not Statistics.DISTINGUISHABLE:
            raise ArgumentError(f"waste_response_distinguishable needs distinguishable statistics, "
                                f"got {spec.statistics.value}")
        _require_positive_tau(tau, "waste_response_distinguishable")
        return self._single_particle_variance(spec.d, 1.0 / tau) / tau ** 2

    @staticmethod
    def waste_response_boson(d: int, tau: float) -> float:
        """Infinite-N per-particle boson response sum_{j=1}^{d-1} j^2 / (4 tau^2 sinh^2(j/2tau))"""
        if d < 2:
            raise ArgumentError(f"waste_response_boson needs d >= 2, got d={d}")
        _require_positive_tau(tau, "waste_response_boson")
        return float(np.sum(_mode_response(np.arange(1, d), tau)))

    @staticmethod
    def einstein_solid(tau: float) -> float:
        """Unitless Einstein solid, one degree of freedom: (1/tau^2) / (e^{1/2tau} - e^{-1/2tau})^2"""
        _require_positive_tau(tau, "einstein_solid")
        return float(np.sum(_mode_response(np.arange(1, 2), tau)))

    def debye(self, tau: float, cutoff: float) -> float:
        """Unitless Debye model (3 / (tau^2 c^2)) int_0^c j^4 / (e^{j/2tau} - e^{-j/2tau})^2 dj"""
        _require_positive_tau(tau, "debye")
        if not cutoff > 0:
            raise DomainError(f"debye needs a positive cutoff (= 2S), got {cutoff}")

        def integrand(j: float) -> float:
            # j^2 times the per-mode response keeps values O(j^2) at large tau
            return j ** 2 * float(_mode_response(j, tau)) if j > 0 else 0.0

        knee = 2.0 * tau
        points = [knee] if knee < cutoff else None
        value, error = quad(integrand, 0.0, cutoff, points=points,
                            epsabs=self.debye_abs_tolerance, limit=self.quad_limit)
        logger.debug("debye(tau=%g, cutoff=%g): integral %g +/- %g", tau, cutoff, value, error)
        return 3.0 * value / cutoff ** 2

    def model_response(self, model: ResponseModel, tau: float) -> float:
        """C_s of an analytic model"""
        if model.kind == "distinguishable":
            return self.waste_response_distinguishable(
                EnsembleSpec.from_states(1, model.d, Statistics.DISTINGUISHABLE), tau)
        if model.kind == "boson":
            return self.waste_response_boson(model.d, tau)
        if model.kind == "einstein":
            return self.einstein_solid(tau)
        return self.debye(tau, model.cutoff)

    def waste_response(self, source: ResponseSource, tau: float) -> float:
        if isinstance(source, EnsembleSpec):
            return self.waste_response_numeric(source, tau)
        return self.model_response(source, tau)

    def entropic_response(self, source: ResponseSource, tau: float) -> float:
        """C_s / tau = dS/dtau for an analytic model or a finite ensemble"""
        return self.waste_response(source, tau) / tau

    def entropy_from_response(self, source: ResponseSource, tau_a: float, tau_b: float) -> float:
        """Entropy change int_{tau_a}^{tau_b} C_s/tau dtau"""
        _require_positive_tau(min(tau_a, tau_b), "entropy_from_response")
        value, _ = quad(lambda t: self.entropic_response(source, t), tau_a, tau_b, limit=self.quad_limit)
        return value

    def waste_from_response(self, source: ResponseSource, tau_a: float, tau_b: float) -> float:
        """Spin therm int_{tau_a}^{tau_b} C_s dtau"""
        _require_positive_tau(min(tau_a, tau_b), "waste_from_response")
        value, _ = quad(lambda t: self.waste_response(source, t), tau_a, tau_b, limit=self.quad_limit)
        return value

    def response_curve(self, source: ResponseSource, tau_grid: Sequence[float],
                       kind: ResponseKind = ResponseKind.WASTE_RESPONSE) -> ResponseCurve:
        """Evaluate a response over a tau grid; output order follows the grid"""
        kind = ResponseKind(kind)
        grid = tuple(float(t) for t in tau_grid)
        evaluate = self.waste_response if kind is ResponseKind.WASTE_RESPONSE else self.entropic_response

        if self.workers > 1 and len(grid) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                values = list(executor.map(lambda t: evaluate(source, t), grid))
        else:
            values = [evaluate(source, t) for t in grid]

        return ResponseCurve(grid, tuple(values), kind)
