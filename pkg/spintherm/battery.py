"""
Entropy battery: entropy balance, final temperature, heats, works and efficiencies
"""

import dataclasses
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from scipy.optimize import bisect

from .config import Config
from .errors import ArgumentError, InfeasibleError, SpinThermError
from .thermo import Thermo

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BatterySpec:
    """Environment, battery energy bath and battery spin bath.

    Every bath is an infinite-N boson bath with modes j = 1..d-1; d_s = 0 switches the
    spin bath off. The environment must start at least as hot as every active battery
    bath; a violation is an InfeasibleError so sweeps can report it in-row.
    """

    tau_env: float
    tau_E0: float
    tau_s0: float
    d_env: int = Config.DEFAULT_D_ENV
    d_E: int = Config.DEFAULT_D_E
    d_s: int = Config.DEFAULT_D_S
    weight_env: float = Config.DEFAULT_WEIGHT_ENV
    weight_E: float = Config.DEFAULT_WEIGHT_E
    weight_s: float = Config.DEFAULT_WEIGHT_S

    def __post_init__(self):
        for name in ("tau_env", "tau_E0", "tau_s0"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ArgumentError(f"{name} must be a finite positive temperature, got {value}")
        for name in ("d_env", "d_E", "d_s"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ArgumentError(f"{name} must be an integer state count, got {value!r}")
        for name in ("d_env", "d_E"):
            if getattr(self, name) < 2:
                raise ArgumentError(f"{name} must be >= 2, got {getattr(self, name)}")
        if self.d_s < 0 or self.d_s == 1:
            raise ArgumentError(f"d_s must be 0 (no spin bath) or >= 2, got {self.d_s}")
        for name in ("weight_env", "weight_E", "weight_s"):
            if not getattr(self, name) > 0:
                raise ArgumentError(f"{name} must be positive, got {getattr(self, name)}")
        if self.tau_env < self.hottest_battery_tau:
            raise InfeasibleError(
                f"battery starts hotter than the environment "
                f"(tau_batt={self.hottest_battery_tau} > tau_env={self.tau_env})")

    @property
    def hottest_battery_tau(self) -> float:
        """Initial temperature of the hottest active battery bath"""
        return max(self.tau_E0, self.tau_s0) if self.d_s else self.tau_E0

    @classmethod
    def from_params(cls, tau_env: float, tau_batt: float, params: Optional[Dict[str, Any]] = None) -> "BatterySpec":
        """Battery baths start at a common tau_batt; bath sizes and weights default to Config"""
        baths = Config.get_bath_defaults()
        if params:
            baths.update({k: v for k, v in params.items() if k in baths and v is not None})
        return cls(tau_env=tau_env, tau_E0=tau_batt, tau_s0=tau_batt, **baths)


@dataclass(frozen=True)
class EquilibriumResult:
    tau_f: float
    Q_env: float
    Q_batt: float
    spin_therm: float
    W_conventional: float
    W_battery: float
    spin_labor: float
    generalized_work: float
    eta_energy: float
    eta_carnot: float
    eta_endoreversible: float
    eta_generalized: float
    residual: float


@dataclass(frozen=True)
class SweepRow:
    """One sweep cell; exactly one of result and error is set"""

    d_s: int
    tau_batt: float
    result: Optional[EquilibriumResult] = None
    error: Optional[str] = None
    infeasible: bool = False

    @property
    def ok(self) -> bool:
        return self.result is not None


@dataclass(frozen=True)
class ConvergenceReport:
    base: EquilibriumResult
    refined: EquilibriumResult
    factor: int

    @property
    def eta_shift(self) -> float:
        return self.refined.eta_energy - self.base.eta_energy


class EntropyBattery:
    """Solves the entropy balance of the environment + battery composite"""

    def __init__(self, config_params: Optional[Dict[str, Any]] = None):
        """Initialize with configuration parameters"""
        if config_params is None:
            config_params = Config.get_battery_params()

        self.entropy_tolerance = config_params.get('entropy_tolerance', Config.ENTROPY_TOLERANCE)
        self.tau_tolerance = config_params.get('tau_tolerance', Config.TAU_TOLERANCE)
        self.max_iterations = config_params.get('max_iterations', Config.MAX_BISECTION_ITERATIONS)
        self.workers = config_params.get('workers', Config.DEFAULT_THREADS)

    @staticmethod
    def total_entropy_change(spec: BatterySpec, tau_f: float) -> float:
        """Weighted entropy change of all baths when each moves to tau_f"""
        entropy = Thermo.boson_entropy_analytic
        delta = (spec.weight_env * (entropy(spec.d_env, tau_f) - entropy(spec.d_env, spec.tau_env))
                 + spec.weight_E * (entropy(spec.d_E, tau_f) - entropy(spec.d_E, spec.tau_E0)))
        if spec.d_s:
            delta += spec.weight_s * (entropy(spec.d_s, tau_f) - entropy(spec.d_s, spec.tau_s0))
        return delta

    def find_final_temperature(self, spec: BatterySpec) -> float:
        """Bisection for the root of total_entropy_change on [min(tau_E0, tau_s0), tau_env]"""
        lo = min(spec.tau_E0, spec.tau_s0) if spec.d_s else spec.tau_E0
        hi = spec.tau_env
        if spec.hottest_battery_tau > hi:
            raise InfeasibleError(
                f"battery starts hotter than the environment "
                f"(tau_batt={spec.hottest_battery_tau} > tau_env={hi})")

        def f(tau: float) -> float:
            return self.total_entropy_change(spec, tau)

        f_lo, f_hi = f(lo), f(hi)
        if f_lo == 0:
            return lo
        if f_hi == 0:
            return hi
        if f_lo > 0 or f_hi < 0:
            raise InfeasibleError(
                f"entropy balance has no sign change on [{lo}, {hi}] "
                f"(dS={f_lo:.3g} .. {f_hi:.3g}); is tau_env below a battery temperature?")

        tau_f, info = bisect(f, lo, hi, xtol=self.tau_tolerance, maxiter=self.max_iterations,
                             full_output=True, disp=False)
        if not info.converged:
            raise InfeasibleError(
                f"bisection did not converge in {self.max_iterations} iterations ({info.flag})")
        logger.debug("tau_f=%r after %d iterations", tau_f, info.iterations)
        return tau_f

    def solve_equilibrium(self, spec: BatterySpec) -> EquilibriumResult:
        tau_f = self.find_final_temperature(spec)
        residual = abs(self.total_entropy_change(spec, tau_f))
        if residual > self.entropy_tolerance:
            logger.warning("Entropy residual %.3g above tolerance %.1g at tau_f=%r",
                           residual, self.entropy_tolerance, tau_f)

        Q_env = spec.weight_env * Thermo.heat_between(spec.d_env, tau_f, spec.tau_env)
        Q_batt = spec.weight_E * Thermo.heat_between(spec.d_E, spec.tau_E0, tau_f)
        # signed: heat absorbed by the spin bath, negative if it cools to tau_f
        spin_therm = 0.0
        if spec.d_s:
            spin_therm = spec.weight_s * Thermo.heat_between(spec.d_s, spec.tau_s0, tau_f)

        W_conventional = Q_env - Q_batt
        W_battery = Q_env - Q_batt + spin_therm
        spin_labor = spin_therm
        if Q_env > 0:
            eta_energy = W_battery / Q_env
            eta_generalized = 1.0 - Q_batt / Q_env
        else:
            eta_energy = eta_generalized = 0.0

        tau_batt = spec.tau_E0
        return EquilibriumResult(
            tau_f=tau_f,
            Q_env=Q_env,
            Q_batt=Q_batt,
            spin_therm=spin_therm,
            W_conventional=W_conventional,
            W_battery=W_battery,
            spin_labor=spin_labor,
            generalized_work=W_battery - spin_labor,
            eta_energy=eta_energy,
            eta_carnot=1.0 - tau_batt / spec.tau_env,
            eta_endoreversible=1.0 - math.sqrt(tau_batt / spec.tau_env),
            eta_generalized=eta_generalized,
            residual=residual,
        )

    def _solve_cell(self, spec: BatterySpec, d_s: int, tau_batt: float) -> SweepRow:
        try:
            cell = dataclasses.replace(spec, d_s=d_s, tau_E0=tau_batt, tau_s0=tau_batt)
            return SweepRow(d_s, tau_batt, result=self.solve_equilibrium(cell))
        except SpinThermError as e:
            logger.warning("Sweep cell d_s=%s tau_batt=%s failed: %s", d_s, tau_batt, e)
            return SweepRow(d_s, tau_batt, error=str(e), infeasible=isinstance(e, InfeasibleError))

    def sweep_efficiency(self, spec: BatterySpec, d_s_values: Sequence[int],
                         tau_batt_values: Sequence[float]) -> List[SweepRow]:
        """One row per (d_s, tau_batt), d_s outermost; failed cells carry their error in-row"""
        cells: List[Tuple[int, float]] = [(int(d_s), float(t)) for d_s in d_s_values for t in tau_batt_values]
        logger.info("Solving %d sweep cells on %d worker(s)", len(cells), self.workers)

        if self.workers > 1 and len(cells) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                return list(executor.map(lambda cell: self._solve_cell(spec, *cell), cells))
        return [self._solve_cell(spec, *cell) for cell in cells]

    def convergence_check(self, spec: BatterySpec, factor: int = Config.CONVERGENCE_FACTOR) -> ConvergenceReport:
        """Re-solve with d_env and d_E multiplied by factor"""
        if factor < 2:
            raise ArgumentError(f"convergence factor must be >= 2, got {factor}")
        base = self.solve_equilibrium(spec)
        refined = self.solve_equilibrium(
            dataclasses.replace(spec, d_env=spec.d_env * factor, d_E=spec.d_E * factor))
        logger.info("Truncation d_E=%d -> %d shifts eta_energy by %.3g",
                    spec.d_E, spec.d_E * factor, refined.eta_energy - base.eta_energy)
        return ConvergenceReport(base, refined, factor)

    @staticmethod
    def endoreversible_reference(tau_batt: float, tau_env: float) -> Tuple[float, float]:
        """(tau_f, eta) at maximum power: (sqrt(tau_batt tau_env), 1 - sqrt(tau_batt/tau_env))"""
        if not 0 < tau_batt <= tau_env:
            raise ArgumentError(f"need 0 < tau_batt <= tau_env, got tau_batt={tau_batt}, tau_env={tau_env}")
        return math.sqrt(tau_batt * tau_env), 1.0 - math.sqrt(tau_batt / tau_env)
