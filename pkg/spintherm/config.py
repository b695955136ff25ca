"""
Configuration settings for spin thermodynamics computations
"""

import logging
import os

logger = logging.getLogger(__name__)


class Config:
    """Configuration class for solver, response and battery parameters"""

    # Battery baths
    DEFAULT_D_ENV = 400
    DEFAULT_D_E = 400
    DEFAULT_D_S = 0
    DEFAULT_WEIGHT_ENV = 1.0
    DEFAULT_WEIGHT_E = 1.0
    DEFAULT_WEIGHT_S = 1.0
    CONVERGENCE_FACTOR = 2

    # Entropy-balance bisection
    ENTROPY_TOLERANCE = 1e-10
    TAU_TOLERANCE = 1e-12
    MAX_BISECTION_ITERATIONS = 200

    # Numerics
    GAMMA_SERIES_THRESHOLD = 1e-8
    SINH_OVERFLOW_THRESHOLD = 350.0
    EXP_OVERFLOW_THRESHOLD = 700.0
    FD_RELATIVE_STEP = 1e-5
    FD_MIN_STEP = 1e-7
    DEBYE_ABS_TOLERANCE = 1e-10
    QUAD_LIMIT = 200
    POLARIZATION_XTOL = 1e-14

    # Size guards
    FERMION_CAPACITY = 10_000
    ORACLE_MAX_N = 12
    ORACLE_MAX_D = 8

    # Parallel sweeps
    THREADS_ENV_VAR = "SPINTHERM_THREADS"
    DEFAULT_THREADS = 4

    # Output
    TIMESTAMP_FORMAT = "%Y-%m-%d_%H-%M-%S"
    LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"

    @classmethod
    def get_battery_params(cls):
        """Get battery solver parameters as dict"""
        return {
            'entropy_tolerance': cls.ENTROPY_TOLERANCE,
            'tau_tolerance': cls.TAU_TOLERANCE,
            'max_iterations': cls.MAX_BISECTION_ITERATIONS,
            'workers': cls.thread_count(),
        }

    @classmethod
    def get_response_params(cls):
        """Get finite-difference and quadrature parameters as dict"""
        return {
            'fd_relative_step': cls.FD_RELATIVE_STEP,
            'fd_min_step': cls.FD_MIN_STEP,
            'debye_abs_tolerance': cls.DEBYE_ABS_TOLERANCE,
            'quad_limit': cls.QUAD_LIMIT,
            'workers': cls.thread_count(),
        }

    @classmethod
    def get_bath_defaults(cls):
        """Get default BatterySpec bath sizes and weights as dict"""
        return {
            'd_env': cls.DEFAULT_D_ENV,
            'd_E': cls.DEFAULT_D_E,
            'd_s': cls.DEFAULT_D_S,
            'weight_env': cls.DEFAULT_WEIGHT_ENV,
            'weight_E': cls.DEFAULT_WEIGHT_E,
            'weight_s': cls.DEFAULT_WEIGHT_S,
        }

    @classmethod
    def thread_count(cls) -> int:
        """Worker cap from SPINTHERM_THREADS, falling back to the default"""
        raw = os.environ.get(cls.THREADS_ENV_VAR)
        if not raw:
            return cls.DEFAULT_THREADS
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value < 1:
            logger.warning("Ignoring %s=%r (expected a positive integer)", cls.THREADS_ENV_VAR, raw)
            return cls.DEFAULT_THREADS
        return value
