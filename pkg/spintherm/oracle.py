"""
Brute-force reference sums over explicitly enumerated microstates

Only elementary arithmetic and Combinatorics.multinomial are used here, so these values
can serve as ground truth for the closed forms in statmech_core and responses.
"""

import itertools
import math
from dataclasses import dataclass
from typing import List, Tuple

from .combinatorics import Combinatorics
from .config import Config
from .errors import CapacityError, DomainError
from .statmech_core import EnsembleSpec, Statistics


@dataclass(frozen=True)
class MicrostateEntry:
    config: Tuple[int, ...]
    multiplicity: int
    macrostate: int


@dataclass(frozen=True)
class MicrostateEnumeration:
    spec: EnsembleSpec
    entries: Tuple[MicrostateEntry, ...]

    @property
    def total(self) -> int:
        return sum(e.multiplicity for e in self.entries)


def _occupations(N: int, d: int, fermion: bool) -> List[Tuple[int, ...]]:
    """Occupation vectors k (length d, sum N) in lexicographically decreasing order"""
    if fermion:
        chosen = itertools.combinations(range(d), N)
    else:
        chosen = itertools.combinations_with_replacement(range(d), N)
    configs = []
    for states in chosen:
        k = [0] * d
        for j in states:
            k[j] += 1
        configs.append(tuple(k))
    return sorted(configs, reverse=True)


class Oracle:
    """Direct sums over microstates for small ensembles"""

    @staticmethod
    def enumerate_microstates(spec: EnsembleSpec) -> MicrostateEnumeration:
        if spec.N > Config.ORACLE_MAX_N or spec.d > Config.ORACLE_MAX_D:
            raise CapacityError(
                f"oracle enumeration limited to N <= {Config.ORACLE_MAX_N}, d <= {Config.ORACLE_MAX_D}; "
                f"got N={spec.N}, d={spec.d}")

        fermion = spec.statistics is Statistics.FERMION
        entries = []
        for k in _occupations(spec.N, spec.d, fermion):
            if spec.statistics is Statistics.DISTINGUISHABLE:
                multiplicity = Combinatorics.multinomial(spec.N, k)
            else:
                multiplicity = 1
            macrostate = sum(j * n for j, n in enumerate(k))
            entries.append(MicrostateEntry(k, multiplicity, macrostate))
        return MicrostateEnumeration(spec, tuple(entries))

    @staticmethod
    def _weights(spec: EnsembleSpec, gamma: float) -> Tuple[List[Tuple[float, int]], float]:
        # shift by the smallest exponent so no term overflows at negative gamma
        enumeration = Oracle.enumerate_microstates(spec)
        shift = min(gamma * e.macrostate for e in enumeration.entries)
        return [(e.multiplicity * math.exp(shift - gamma * e.macrostate), e.macrostate)
                for e in enumeration.entries], shift

    @staticmethod
    def brute_partition(spec: EnsembleSpec, gamma: float) -> float:
        """Z = sum_k g(k) exp(-gamma m(k)) in the computational basis"""
        weights, shift = Oracle._weights(spec, gamma)
        return math.fsum(w for w, _ in weights) * math.exp(-shift)

    @staticmethod
    def brute_log_partition(spec: EnsembleSpec, gamma: float) -> float:
        weights, shift = Oracle._weights(spec, gamma)
        return math.log(math.fsum(w for w, _ in weights)) - shift

    @staticmethod
    def brute_average_spin(spec: EnsembleSpec, gamma: float) -> float:
        """<J_z> = <m> - S N"""
        weights, _ = Oracle._weights(spec, gamma)
        z = math.fsum(w for w, _ in weights)
        mean = math.fsum(w * m for w, m in weights) / z
        return mean - spec.S * spec.N

    @staticmethod
    def brute_entropy(spec: EnsembleSpec, gamma: float) -> float:
        """S = -sum_k g p ln p over the enumerated microstates"""
        weights, _ = Oracle._weights(spec, gamma)
        enumeration = Oracle.enumerate_microstates(spec)
        z = math.fsum(w for w, _ in weights)
        terms = []
        for (w, _), entry in zip(weights, enumeration.entries):
            if w == 0:
                continue
            p_micro = w / z / entry.multiplicity
            terms.append(-entry.multiplicity * p_micro * math.log(p_micro))
        return math.fsum(terms)

    @staticmethod
    def finite_diff_response(spec: EnsembleSpec, tau: float, h: float) -> float:
        """Central difference of brute_average_spin in tau"""
        if not h > 0 or tau - h <= 0:
            raise DomainError(f"finite_diff_response needs h > 0 and tau - h > 0, got tau={tau}, h={h}")
        up = Oracle.brute_average_spin(spec, 1.0 / (tau + h))
        down = Oracle.brute_average_spin(spec, 1.0 / (tau - h))
        return (up - down) / (2.0 * h)
