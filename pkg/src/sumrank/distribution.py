"""The designed distribution for drawing random super-supports.

Supports of weight s are drawn in two stages: first a weight decomposition
t_vec is drawn with probability inversely proportional to the containment
probability rho of its greedily completed support shape, then per block a
uniform subspace of the prescribed dimension.  The normalizer Q is computed
exactly by a memoized recursion over sorted decompositions, and decomposition
drawing uses enumerative unranking over exact rational interval boundaries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .blockvec import SumRankSupport
from .counting import gaussian_binomial
from .exceptions import InfeasibleParams, InfeasibleTarget, InvalidPrefix
from .sampling import Rng, sample_uniform_subspace


def scomp(t_vec, s: int, zeta: int, rng: Rng | None = None) -> tuple:
    """Greedy completion of t_vec to a vector summing to s with entries <= zeta.

    Each unit of budget goes to a position with maximal t_i among the
    non-full ones, breaking ties by minimal current s_i and then uniformly at
    random (first index when no rng is given; the output multiset of
    (t_i, s_i) pairs does not depend on the tie-break).
    """
    ell = len(t_vec)
    t = sum(t_vec)
    if any(ti < 0 or ti > zeta for ti in t_vec):
        raise InfeasibleTarget(f"entries of {t_vec} outside 0..{zeta}")
    if s < t or s > ell * zeta:
        raise InfeasibleTarget(f"s={s} outside [{t}, {ell * zeta}]")
    svec = list(t_vec)
    delta = s - t
    while delta > 0:
        j1 = [i for i in range(ell) if svec[i] != zeta]
        tmax = max(t_vec[i] for i in j1)
        j2 = [i for i in j1 if t_vec[i] == tmax]
        smin = min(svec[i] for i in j2)
        j3 = [i for i in j2 if svec[i] == smin]
        h = rng.choice(j3) if rng is not None else j3[0]
        svec[h] += 1
        delta -= 1
    return tuple(svec)


def rho(s_vec, t_vec, q: int, zeta: int) -> Fraction:
    """Probability that a uniform support of shape s_vec contains a fixed
    support of shape t_vec: the product of [s_i t_i] / [zeta t_i]."""
    if len(s_vec) != len(t_vec):
        raise InfeasibleParams("shape vectors differ in length")
    out = Fraction(1)
    for si, ti in zip(s_vec, t_vec):
        if ti > si:
            return Fraction(0)
        if ti == 0:
            continue
        out *= Fraction(gaussian_binomial(si, ti, q), gaussian_binomial(zeta, ti, q))
    return out


def rho_scomp(t_vec, s: int, q: int, zeta: int) -> Fraction:
    """rho of the greedy completion; well defined despite the random tie-break."""
    return rho(scomp(t_vec, s, zeta), t_vec, q, zeta)


class MTable:
    """Memoized table M(t', l', mu', s') behind the exact normalizer Q.

    M sums, over sorted decompositions of t' into l' parts bounded by mu',
    the inverse containment probabilities of their greedy completions at
    budget s', each divided by the number of permutations of the part
    multiset.  Q = l! * M(t, l, mu, s).
    """

    def __init__(self, q: int, zeta: int, t: int, ell: int, mu: int, s: int):
        if mu > zeta:
            raise InfeasibleParams(f"mu={mu} > zeta={zeta}")
        if not 0 <= t <= min(s, ell * mu):
            raise InfeasibleParams(f"t={t} outside 0..min(s={s}, ell*mu={ell * mu})")
        if s > ell * zeta:
            raise InfeasibleParams(f"s={s} > ell*zeta={ell * zeta}")
        self.q = q
        self.zeta = zeta
        self.t = t
        self.ell = ell
        self.mu = mu
        self.s = s
        self._memo: dict = {}
        self._group_memo: dict = {}

    # coefficient of a constant group [t1]*d completed at the given budget
    def _group_factor(self, t1: int, d: int, budget: int) -> Fraction:
        key = (t1, d, budget)
        cached = self._group_memo.get(key)
        if cached is not None:
            return cached
        svec = scomp((t1,) * d, budget, self.zeta)
        out = Fraction(1, math.factorial(d))
        if t1 > 0:
            gz = gaussian_binomial(self.zeta, t1, self.q)
            for si in svec:
                out *= Fraction(gz, gaussian_binomial(si, t1, self.q))
        self._group_memo[key] = out
        return out

    def value(self, tp: int, lp: int, mup: int, sp: int) -> Fraction:
        """M(tp, lp, mup, sp), lazily computed."""
        if lp == 0:
            return Fraction(1) if tp == 0 and sp == 0 else Fraction(0)
        if tp < 0 or sp < 0:
            return Fraction(0)
        if mup < 0 or tp > min(sp, lp * mup) or sp > lp * self.zeta:
            return Fraction(0)
        key = (tp, lp, mup, sp)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        total = Fraction(0)
        t1_lo = -(-tp // lp)  # ceil(tp / lp)
        for t1 in range(t1_lo, min(mup, tp) + 1):
            d_lo = max(tp - lp * (t1 - 1), 1)
            d_hi = lp if t1 == 0 else min(lp, tp // t1)
            for d in range(d_lo, d_hi + 1):
                budget1 = min(sp - (tp - d * t1), d * self.zeta)
                rest = self.value(tp - d * t1, lp - d, t1 - 1, sp - budget1)
                if rest:
                    total += rest * self._group_factor(t1, d, budget1)
        self._memo[key] = total
        return total


def build_m_table(q: int, zeta: int, t: int, ell: int, mu: int, s: int) -> MTable:
    return MTable(q, zeta, t, ell, mu, s)


def q_value(table: MTable) -> Fraction:
    """Q = ell! * M(t, ell, mu, s), the exact sum of rho^-1 over decompositions."""
    return math.factorial(table.ell) * table.value(table.t, table.ell, table.mu, table.s)


def prefix_sum(prefix, table: MTable) -> Fraction:
    """Sum of (#permutations) * rho^-1 over sorted decompositions extending
    ``prefix`` (a non-increasing tuple of entries in 0..mu).

    Weight-infeasible prefixes simply have no extensions and return 0;
    malformed prefixes (unsorted, out of range, too long) raise InvalidPrefix.
    """
    prefix = tuple(prefix)
    if len(prefix) > table.ell:
        raise InvalidPrefix(f"prefix longer than ell={table.ell}")
    if any(v < 0 or v > table.mu for v in prefix):
        raise InvalidPrefix(f"entries of {prefix} outside 0..{table.mu}")
    if any(prefix[i] < prefix[i + 1] for i in range(len(prefix) - 1)):
        raise InvalidPrefix(f"prefix {prefix} is not non-increasing")
    ell, t, s, mu, zeta, q = table.ell, table.t, table.s, table.mu, table.zeta, table.q
    if not prefix:
        return q_value(table)
    if sum(prefix) > t:
        return Fraction(0)
    lp = len(prefix)
    t_last = prefix[-1]
    d = 1
    while d < lp and prefix[lp - 1 - d] == t_last:
        d += 1
    head = prefix[: lp - d]  # entries strictly greater than t_last
    t1 = sum(head)
    s1 = min(s - t + t1, (lp - d) * zeta)

    # permutation count over the strictly-larger values
    coeff = Fraction(math.factorial(ell))
    run = 1
    for i in range(1, len(head) + 1):
        if i < len(head) and head[i] == head[i - 1]:
            run += 1
        else:
            coeff /= math.factorial(run)
            run = 1

    # rho-factor of the strictly-larger group under the greedy completion
    if head:
        svec1 = scomp(head, s1, zeta)
        for si, ti in zip(svec1, head):
            coeff *= Fraction(
                gaussian_binomial(zeta, ti, q), gaussian_binomial(si, ti, q)
            )

    slots = ell - lp + d  # positions available for values <= t_last
    if t_last > 0:
        dp_lo = max(t - t1 - (t_last - 1) * slots, d)
        dp_hi = min(slots, (t - t1) // t_last)
    else:
        if t != t1:
            return Fraction(0)
        dp_lo = dp_hi = slots
    total = Fraction(0)
    for dp in range(dp_lo, dp_hi + 1):
        rest_t = t - dp * t_last - t1
        s2 = min(s - s1 - rest_t, dp * zeta)
        rest = table.value(rest_t, ell - (lp - d + dp), t_last - 1, s - s1 - s2)
        if rest:
            total += rest * table._group_factor(t_last, dp, s2)
    return coeff * total


class SupportDistribution:
    """Frozen description of the designed distribution at one parameter point.

    Exposes the exact normalizer Q, per-decomposition probabilities, cached
    prefix sums for enumerative drawing, and the integer lattice constant
    iota that makes every interval boundary an integer multiple of 1/iota.
    """

    def __init__(self, q: int, zeta: int, t: int, ell: int, mu: int, s: int):
        self.q = q
        self.zeta = zeta
        self.t = t
        self.ell = ell
        self.mu = mu
        self.s = s
        self.table = build_m_table(q, zeta, t, ell, mu, s)
        self.Q = q_value(self.table)
        if self.Q <= 0:
            raise InfeasibleParams("empty decomposition set")
        prod = 1
        for tp in range(mu + 1):
            for sp in range(tp, zeta + 1):
                prod *= gaussian_binomial(sp, tp, q)
        self.iota = math.factorial(ell) * prod**ell
        scaled = self.iota * self.Q
        assert scaled.denominator == 1
        self.iota_q = scaled.numerator
        self._prefix_cache: dict = {}

    def prefix_sum(self, prefix) -> Fraction:
        key = tuple(prefix)
        out = self._prefix_cache.get(key)
        if out is None:
            out = prefix_sum(key, self.table)
            self._prefix_cache[key] = out
        return out

    def probability(self, t_vec) -> Fraction:
        """p_t = rho_scomp(t_vec)^-1 / Q for a single decomposition."""
        r = rho_scomp(t_vec, self.s, self.q, self.zeta)
        return 1 / (r * self.Q)


@lru_cache(maxsize=64)
def _distribution(q, zeta, t, ell, mu, s) -> SupportDistribution:
    return SupportDistribution(q, zeta, t, ell, mu, s)


def draw_decomposition(dist: SupportDistribution, rng: Rng) -> tuple:
    """Draw a weight decomposition with probability rho^-1 / Q.

    A uniform integer below iota*Q selects an exact rational point of [0, Q);
    descending prefix intervals (sorted decompositions weighted by their
    permutation counts) locates the sorted vector, and a uniform shuffle then
    picks one of its arrangements.
    """
    x = Fraction(rng.below(dist.iota_q), dist.iota)
    prefix: list = []
    for i in range(dist.ell):
        cap = dist.mu if i == 0 else prefix[-1]
        acc = Fraction(0)
        chosen = None
        for cand in range(cap + 1):
            w = dist.prefix_sum(tuple(prefix + [cand]))
            if acc + w > x:
                chosen = cand
                x -= acc
                break
            acc += w
        assert chosen is not None, "x must land in some interval"
        prefix.append(chosen)
    out = prefix[:]
    rng.shuffle(out)
    return tuple(out)


def draw_random_support(
    s: int,
    t: int,
    zeta: int,
    ell: int,
    q: int,
    rng: Rng,
    mu: int | None = None,
    kind: str = "row",
) -> SumRankSupport:
    """Draw a random weight-s support per the designed distribution.

    ``mu`` bounds the error decompositions being covered (defaults to zeta).
    The budget must satisfy t <= s <= ell*mu, the range the two-stage drawing
    is designed for.
    """
    if mu is None:
        mu = zeta
    if not t <= s <= ell * mu:
        raise InfeasibleParams(f"need t <= s <= ell*mu, got t={t}, s={s}, ell*mu={ell * mu}")
    dist = _distribution(q, zeta, t, ell, mu, s)
    t_vec = draw_decomposition(dist, rng)
    s_vec = scomp(t_vec, s, zeta, rng)
    bases = tuple(sample_uniform_subspace(dim, zeta, q, rng) for dim in s_vec)
    return SumRankSupport(kind, q, zeta, bases)
