"""
Spin Thermodynamics Library

Partition functions, entropies, waste responses and heats for distinguishable, bosonic
and fermionic spin ensembles, and the entropy-battery equilibrium solver.
"""

__version__ = "1.0.0"
__author__ = "spintherm"

# Core imports for easy access
from .config import Config
from .errors import ArgumentError, CapacityError, DomainError, InfeasibleError, SpinThermError
from .combinatorics import Combinatorics, MacrostatePolynomial
from .statmech_core import Basis, EnsembleSpec, InverseTemperature, Statistics, StatMechCore, ThermalPoint
from .responses import ResponseCurve, ResponseKind, ResponseModel, Responses
from .thermo import INFINITE_TEMPERATURE, CapacityReport, Polarization, Thermo
from .battery import BatterySpec, ConvergenceReport, EntropyBattery, EquilibriumResult, SweepRow
from .oracle import MicrostateEntry, MicrostateEnumeration, Oracle
from .file_operations import FileOperations
from .exporters import Exporters

__all__ = [
    "Config",
    "SpinThermError",
    "ArgumentError",
    "DomainError",
    "CapacityError",
    "InfeasibleError",
    "Combinatorics",
    "MacrostatePolynomial",
    "Statistics",
    "Basis",
    "EnsembleSpec",
    "InverseTemperature",
    "ThermalPoint",
    "StatMechCore",
    "Responses",
    "ResponseCurve",
    "ResponseKind",
    "ResponseModel",
    "Thermo",
    "Polarization",
    "CapacityReport",
    "INFINITE_TEMPERATURE",
    "BatterySpec",
    "EquilibriumResult",
    "SweepRow",
    "ConvergenceReport",
    "EntropyBattery",
    "Oracle",
    "MicrostateEntry",
    "MicrostateEnumeration",
    "FileOperations",
    "Exporters",
]
