"""
Exact integer combinatorics for macrostate multiplicities
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

from .config import Config
from .errors import ArgumentError, CapacityError


@dataclass(frozen=True)
class MacrostatePolynomial:
    """Multiplicities g(m) indexed by the computational macrostate m = sum_j j*k_j"""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ArgumentError("MacrostatePolynomial needs at least one coefficient")
        if any(c < 0 for c in self.coeffs):
            raise ArgumentError("Multiplicities must be non-negative")

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, m: int) -> int:
        return self.coeffs[m]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        """Value at q = 1, i.e. the total microstate count"""
        return sum(self.coeffs)

    def is_symmetric(self) -> bool:
        return self.coeffs == self.coeffs[::-1]


class Combinatorics:
    """Gaussian binomials, lattice-path counts and multinomials over Python integers"""

    @staticmethod
    def gaussian_binomial(n_top: int, k: int) -> MacrostatePolynomial:
        """Return the q-binomial [n_top choose k]_q as exact integer coefficients.

        Built from the product form prod_{i=1..k} (1 - q^(n_top-k+i)) / (1 - q^i),
        multiplying in one numerator factor and dividing out one denominator factor per
        step. Every intermediate is itself a q-binomial, so each division is exact.
        """
        if k < 0 or n_top < 0 or k > n_top:
            raise ArgumentError(f"gaussian_binomial needs 0 <= k <= n_top, got n_top={n_top}, k={k}")

        k = min(k, n_top - k)
        poly: List[int] = [1]
        for i in range(1, k + 1):
            shift = n_top - k + i
            product = poly + [0] * shift
            for m, c in enumerate(poly):
                product[m + shift] -= c

            # (1 - q^i) * Q = P  =>  Q[m] = P[m] + Q[m - i]
            quotient = product[:len(product) - i]
            for m in range(i, len(quotient)):
                quotient[m] += quotient[m - i]
            poly = quotient

        return MacrostatePolynomial(tuple(poly))

    @staticmethod
    def grid_path_multiplicity(N: int, d: int, m: int) -> int:
        """Count monotone paths on the N x d grid whose enclosed area equals m.

        Columns are the d spin states, rows the N particles; climbing k rows in column j
        puts k bosons in state j and adds j*k to the area. Enumeration is a memoized
        depth-first walk over (column, rows left, area left).
        """
        if N < 1 or d < 1:
            raise ArgumentError(f"grid_path_multiplicity needs N >= 1 and d >= 1, got N={N}, d={d}")
        max_area = (d - 1) * N
        if not 0 <= m <= max_area:
            raise ArgumentError(f"macrostate m={m} outside [0, {max_area}]")

        @lru_cache(maxsize=None)
        def walk(column: int, rows_left: int, area_left: int) -> int:
            if area_left < 0:
                return 0
            if column == d - 1:
                return 1 if area_left == rows_left * column else 0
            return sum(walk(column + 1, rows_left - k, area_left - column * k)
                       for k in range(rows_left + 1))

        return walk(0, N, m)

    @staticmethod
    def multinomial(N: int, k: Sequence[int]) -> int:
        """Exact multinomial coefficient N! / (k_0! k_1! ...)"""
        if any(part < 0 for part in k):
            raise ArgumentError(f"occupation vector has negative entries: {list(k)}")
        if sum(k) != N:
            raise ArgumentError(f"occupation vector sums to {sum(k)}, expected N={N}")

        result = 1
        running = 0
        for part in k:
            running += part
            result *= math.comb(running, part)
        return result

    @staticmethod
    def boson_multiplicities(N: int, d: int) -> MacrostatePolynomial:
        """g_Boson(m), the coefficients of [N+d-1 choose d-1]_q"""
        if N < 1 or d < 1:
            raise ArgumentError(f"boson_multiplicities needs N >= 1 and d >= 1, got N={N}, d={d}")
        return Combinatorics.gaussian_binomial(N + d - 1, d - 1)

    @staticmethod
    def fermion_multiplicities(N: int, d: int) -> MacrostatePolynomial:
        """g_Fermi(m) = [t^N x^m] prod_{j<d} (1 + t x^j), padded to length (d-1)*N + 1"""
        if N < 1 or d < 1:
            raise ArgumentError(f"fermion_multiplicities needs N >= 1 and d >= 1, got N={N}, d={d}")
        if N > d:
            raise ArgumentError(f"at most d={d} fermions fit in {d} states, got N={N}")
        if N * d > Config.FERMION_CAPACITY:
            raise CapacityError(
                f"fermion expansion limited to N*d <= {Config.FERMION_CAPACITY}, got N*d={N * d}")

        length = (d - 1) * N + 1
        # table[n][m]: subsets of the states seen so far with n members summing to m
        table = [[0] * length for _ in range(N + 1)]
        table[0][0] = 1
        for j in range(d):
            for n in range(min(j + 1, N), 0, -1):
                below = table[n - 1]
                row = table[n]
                for m in range(length - j):
                    if below[m]:
                        row[m + j] += below[m]
        return MacrostatePolynomial(tuple(table[N]))
