"""Exact combinatorics: Gaussian binomials, rank-matrix counts, sphere sizes.

Every count is an exact Python int; probabilities and bound constants are
exact fractions.  Logarithms of huge integers are taken from the bit length
plus a refinement of the top 64 bits, never by accumulating floats.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .exceptions import IndexOutOfRange, InvalidParams

GAMMA_TERMS = 64  # truncation depth of the infinite product defining gamma_q


def gaussian_binomial(a: int, b: int, q: int) -> int:
    """Number of b-dimensional subspaces of GF(q)^a."""
    if a < 0 or b < 0:
        raise InvalidParams("a and b must be nonnegative")
    if b > a:
        return 0
    num = 1
    den = 1
    for i in range(1, b + 1):
        num *= q ** (a - b + i) - 1
        den *= q**i - 1
    assert num % den == 0
    return num // den


def num_matrices_of_rank(a: int, b: int, r: int, q: int) -> int:
    """Number of a x b matrices over GF(q) of rank exactly r."""
    if r < 0 or r > min(a, b):
        raise IndexOutOfRange(f"rank {r} outside 0..min({a},{b})")
    num = 1
    den = 1
    for j in range(r):
        num *= (q**a - q**j) * (q**b - q**j)
        den *= q**r - q**j
    assert num % den == 0
    return num // den


def num_decompositions(t: int, ell: int, mu: int) -> int:
    """Number of length-ell vectors with entries in 0..mu summing to t.

    This is the t-th coefficient of (1 + X + ... + X^mu)^ell, evaluated by
    the alternating binomial sum.
    """
    if t < 0 or ell < 0 or mu < 0:
        raise InvalidParams("t, ell, mu must be nonnegative")
    if t == 0:
        return 1
    if ell == 0 or t > mu * ell:
        return 0
    total = 0
    for i in range(t // (mu + 1) + 1):
        term = math.comb(ell, i) * math.comb(t + ell - 1 - (mu + 1) * i, ell - 1)
        total += term if i % 2 == 0 else -term
    return total


def decompositions(t: int, ell: int, mu: int):
    """Yield every length-ell vector with entries in 0..mu summing to t."""
    if ell == 0:
        if t == 0:
            yield ()
        return
    for first in range(min(mu, t), -1, -1):
        rest_t = t - first
        if rest_t > mu * (ell - 1):
            continue
        for rest in decompositions(rest_t, ell - 1, mu):
            yield (first,) + rest


def ordered_decompositions(t: int, ell: int, mu: int, cap: int | None = None):
    """Yield the non-increasing decompositions (one per permutation class)."""
    if cap is None:
        cap = mu
    if ell == 0:
        if t == 0:
            yield ()
        return
    for first in range(min(cap, mu, t), -1, -1):
        if t - first > first * (ell - 1):
            continue
        for rest in ordered_decompositions(t - first, ell - 1, mu, first):
            yield (first,) + rest


def permutation_multiplicity(t_vec) -> int:
    """Number of distinct permutations of the multiset t_vec."""
    counts = {}
    for v in t_vec:
        counts[v] = counts.get(v, 0) + 1
    out = math.factorial(len(t_vec))
    for c in counts.values():
        out //= math.factorial(c)
    return out


class SphereTable:
    """Dynamic-programming table of exact sum-rank sphere sizes.

    ``value(t, l)`` is the number of vectors in GF(q^m)^(eta*l) of sum-rank
    weight exactly t, for t <= t_max and l <= ell_max.  Column l = 1 is the
    rank-matrix count NM(m, eta, t); larger l convolve over the rank of the
    first block.
    """

    def __init__(self, q: int, eta: int, m: int, t_max: int, ell_max: int):
        if min(q, eta, m) < 1 or t_max < 0 or ell_max < 1:
            raise InvalidParams("bad sphere table parameters")
        self.q = q
        self.eta = eta
        self.m = m
        self.mu = min(eta, m)
        self.t_max = t_max
        self.ell_max = ell_max
        self.nm = [
            num_matrices_of_rank(m, eta, i, q) if i <= self.mu else 0
            for i in range(t_max + 1)
        ]
        table = [[0] * (ell_max + 1) for _ in range(t_max + 1)]
        for t in range(t_max + 1):
            table[t][1] = self.nm[t]
        for l in range(2, ell_max + 1):
            for t in range(t_max + 1):
                acc = 0
                for tp in range(min(self.mu, t) + 1):
                    n_first = self.nm[tp]
                    if n_first:
                        acc += n_first * table[t - tp][l - 1]
                table[t][l] = acc
        self._table = table

    def value(self, t: int, ell: int) -> int:
        """N(t, ell); ell = 0 is the empty product (1 iff t = 0)."""
        if ell == 0:
            return 1 if t == 0 else 0
        if not (0 <= ell <= self.ell_max):
            raise InvalidParams(f"ell={ell} outside table")
        if t < 0 or t > self.t_max:
            raise InvalidParams(f"t={t} outside table")
        return self._table[t][ell]


@lru_cache(maxsize=256)
def _sphere_table(q: int, eta: int, m: int, t_max: int, ell_max: int) -> SphereTable:
    return SphereTable(q, eta, m, t_max, ell_max)


def sphere_size(t: int, ell: int, q: int, eta: int, m: int) -> int:
    """Exact number of vectors in GF(q^m)^(eta*ell) of sum-rank weight t."""
    if t < 0:
        raise InvalidParams("t must be nonnegative")
    mu = min(eta, m)
    if t > mu * ell:
        return 0
    return _sphere_table(q, eta, m, max(t, 0), ell).value(t, ell)


# -- gamma_q and exact logs -------------------------------------------------


@lru_cache(maxsize=None)
def gamma_q_lower_fraction(q: int, terms: int = GAMMA_TERMS) -> Fraction:
    """Truncated product for gamma_q; a lower bound on the true constant."""
    out = Fraction(1)
    for i in range(1, terms + 1):
        out *= Fraction(q**i, q**i - 1)
    return out


@lru_cache(maxsize=None)
def gamma_q_upper_fraction(q: int, terms: int = GAMMA_TERMS) -> Fraction:
    """Upper bound on gamma_q: truncation times (1 + 2 q^-terms).

    The neglected tail satisfies prod_{i>terms} (1 - q^-i)^-1 <= 1 + 2 q^-terms,
    so bounds reported with this constant never under-report.
    """
    return gamma_q_lower_fraction(q, terms) * (1 + Fraction(2, q**terms))


def gamma_q(q: int) -> float:
    """Float value of gamma_q (converged far below double precision)."""
    return float(gamma_q_lower_fraction(q))


def log2_int(n: int) -> float:
    """log2 of a positive integer, exact bit length plus 64-bit refinement."""
    if n <= 0:
        raise InvalidParams("log2 of a non-positive integer")
    bits = n.bit_length()
    if bits <= 53:
        return math.log2(n)
    shift = bits - 53
    return shift + math.log2(n >> shift)


def log2_fraction(x: Fraction) -> float:
    if x <= 0:
        raise InvalidParams("log2 of a non-positive rational")
    return log2_int(x.numerator) - log2_int(x.denominator)


# -- sphere-size upper bound ------------------------------------------------


def sphere_size_log2_upper_bound(t: int, ell: int, q: int, eta: int, m: int) -> float:
    """log2 of the closed-form sphere bound gamma^ell C(ell+t-1, ell-1) q^(t(m+eta-t/ell)).

    Only valid for ell > 1; the single-block count is exact, so callers
    should fall back to log2(sphere_size(...)) there.
    """
    if ell <= 1:
        raise InvalidParams("closed-form bound requires ell > 1; use the exact count")
    mu = min(eta, m)
    if t > mu * ell or t < 0:
        raise InvalidParams(f"t={t} outside 0..{mu * ell}")
    gamma = gamma_q_upper_fraction(q)
    const = gamma**ell * math.comb(ell + t - 1, ell - 1)
    exponent = Fraction(t * (m + eta)) - Fraction(t * t, ell)
    return log2_fraction(const) + float(exponent) * math.log2(q)


def sphere_bound_dominates_exact(t: int, ell: int, q: int, eta: int, m: int) -> bool:
    """Exact check N^ell <= (gamma_lower^ell C q^(t(m+eta)-t^2/ell))^ell.

    Raising both sides to the ell-th power clears the fractional exponent, so
    the comparison is carried out on integers; using the truncated (lower)
    gamma makes a pass imply the true inequality.
    """
    n_exact = sphere_size(t, ell, q, eta, m)
    gamma = gamma_q_lower_fraction(q)
    c = math.comb(ell + t - 1, ell - 1)
    rhs = gamma ** (ell * ell) * Fraction(c) ** ell * Fraction(q) ** (t * (m + eta) * ell - t * t)
    return Fraction(n_exact) ** ell <= rhs
