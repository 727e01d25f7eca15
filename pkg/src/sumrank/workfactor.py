"""Work-factor estimates for generic sum-rank decoding, in log2 scale.

Covers the exact lower/upper bounds driven by the normalizer Q, the simple
closed-form upper bound, the two naive baselines (codeword and error
brute force), the Hamming and rank specializations, and the LP-optimal
support distribution solved with an exact-rational simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counting import (
    gamma_q_upper_fraction,
    gaussian_binomial,
    log2_fraction,
    log2_int,
    num_decompositions,
    ordered_decompositions,
    permutation_multiplicity,
    sphere_size,
)
from .distribution import build_m_table, q_value, rho
from .exceptions import InfeasibleParams, TooLarge, UnknownModel, WrongRegime
from .lp import solve_lp

CSV_HEADER = (
    "q,m,n,k,ell,t,s,w_new_lb,w_new_ub,w_new_ub_simple,"
    "w_code,w_errors,w_prange,w_grs,w_optimal"
)


def w_iter_model(n: int, m: int, q: int, model: str = "unit") -> float:
    """Per-iteration cost in log2: 'unit' counts iterations, 'cubic' charges
    the n^3 m^3 log2(q) erasure-decoding estimate with no hidden constant."""
    if model == "unit":
        return 0.0
    if model == "cubic":
        return math.log2(n**3 * m**3 * max(math.log2(q), 1.0))
    raise UnknownModel(f"unknown W_iter model {model!r}")


def w_new_bounds(
    q: int, m: int, n: int, k: int, ell: int, t: int, s: int, model: str = "unit"
):
    """(lb, ub, ub_simple) in log2 for the randomized generic decoder.

    The lower bound Q/|T| carries no per-iteration factor; the upper bounds
    multiply Q (resp. the closed-form bound on Q) by the W_iter model.
    """
    if n % ell:
        raise InfeasibleParams(f"ell={ell} must divide n={n}")
    eta = n // ell
    mu = min(eta, m)
    zeta = mu
    if not t <= s <= ell * mu:
        raise InfeasibleParams(f"need t <= s <= ell*mu, got t={t}, s={s}, ell*mu={ell * mu}")
    table = build_m_table(q, zeta, t, ell, mu, s)
    big_q = q_value(table)
    tcount = num_decompositions(t, ell, mu)
    wit = w_iter_model(n, m, q, model)
    lb = log2_fraction(big_q / tcount)
    ub = wit + log2_fraction(big_q)
    gamma = gamma_q_upper_fraction(q)
    simple_const = gamma**ell * math.comb(ell + t - 1, ell - 1)
    exponent = Fraction(t) * (zeta - Fraction(s, ell))
    ub_simple = wit + log2_fraction(simple_const) + float(exponent) * math.log2(q)
    return lb, ub, ub_simple


def w_naive(q: int, m: int, n: int, k: int, ell: int, t: int):
    """(w_code, w_errors) in log2: brute-forcing codewords vs errors.

    w_code charges q^(mk) codewords at m^2 k n re-encoding cost; w_errors
    charges the closed-form sphere bound at n (n-k) m^2 membership cost.
    """
    if n % ell:
        raise InfeasibleParams(f"ell={ell} must divide n={n}")
    eta = n // ell
    w_code = m * k * math.log2(q) + math.log2(m * m * k * n)
    gamma = gamma_q_upper_fraction(q)
    const = gamma**ell * math.comb(ell + t - 1, ell - 1) * n * (n - k) * m * m
    exponent = Fraction(t) * (m + eta - Fraction(t, ell))
    w_errors = log2_fraction(const) + float(exponent) * math.log2(q)
    return w_code, w_errors


def w_errors_exact_count(q: int, m: int, n: int, k: int, ell: int, t: int) -> float:
    """log2 of n (n-k) m^2 times the exact sphere size (not the bound).

    Kept alongside w_naive because published figures appear to plot the exact
    count; the gap to the closed-form bound is reported, not resolved.
    """
    eta = n // ell
    count = sphere_size(t, ell, q, eta, m)
    return log2_int(n * (n - k) * m * m * count)


def w_extremes(
    q: int, m: int, n: int, k: int, ell: int, t: int, s: int, model: str = "unit"
):
    """(w_prange, w_grs): the Hamming (ell = n) and rank (ell = 1) formulas.

    Each is None outside its regime; requesting it there raises WrongRegime.
    """
    wit = w_iter_model(n, m, q, model)
    w_prange = w_grs = None
    if ell == n:
        w_prange = wit + log2_fraction(Fraction(math.comb(n, t), math.comb(s, t)))
    if ell == 1:
        cap = min(n - k, (m * (n - k)) // n)
        if not t <= s <= cap:
            raise WrongRegime(f"rank formula needs t <= s <= {cap}, got s={s}")
        w_grs = wit + t * (min(n, m) - s) * math.log2(q)
    if w_prange is None and w_grs is None:
        raise WrongRegime(f"ell={ell} is neither 1 nor n={n}")
    return w_prange, w_grs


def optimal_distribution_lp(
    q: int, zeta: int, t: int, ell: int, mu: int, s: int, cap: int = 2000
):
    """Best symmetric support distribution and its worst-case success rate xi.

    Variables are the per-vector probabilities of the ordered support shapes
    (entries up to zeta so the two-stage heuristic is a feasible point);
    constraints require every error decomposition to be covered with
    probability at least xi.  Returns (shape -> probability dict, xi).
    """
    if mu > zeta:
        raise InfeasibleParams(f"mu={mu} > zeta={zeta}")
    if not t <= s <= ell * zeta:
        raise InfeasibleParams(f"need t <= s <= ell*zeta, got t={t}, s={s}")
    s_shapes = list(ordered_decompositions(s, ell, zeta))
    if len(s_shapes) + 1 > cap:
        raise TooLarge(f"{len(s_shapes) + 1} LP variables exceed the cap {cap}")
    t_shapes = list(ordered_decompositions(t, ell, mu))
    nv = len(s_shapes)
    mults = [permutation_multiplicity(sv) for sv in s_shapes]

    def class_rho_sum(s_rep, t_rep):
        # sum of rho over all distinct permutations of s_rep against fixed t
        total = Fraction(0)
        seen = set()
        for perm in _permutations_unique(s_rep):
            if perm in seen:
                continue
            seen.add(perm)
            total += rho(perm, t_rep, q, zeta)
        return total

    a_rows = []
    b = []
    for tv in t_shapes:
        row = [-class_rho_sum(sv, tv) for sv in s_shapes] + [Fraction(1)]
        a_rows.append(row)
        b.append(Fraction(0))
    a_rows.append([Fraction(mult) for mult in mults] + [Fraction(0)])
    b.append(Fraction(1))
    a_rows.append([Fraction(-mult) for mult in mults] + [Fraction(0)])
    b.append(Fraction(-1))
    c = [Fraction(0)] * nv + [Fraction(1)]
    sol = solve_lp(a_rows, b, c)
    if sol.status != "optimal":
        raise InfeasibleParams(f"LP ended {sol.status}; the uniform point is feasible")
    xi = sol.x[nv]
    dist = {sv: sol.x[i] for i, sv in enumerate(s_shapes)}
    total = sum(Fraction(mult) * sol.x[i] for i, mult in enumerate(mults))
    assert total == 1
    return dist, xi, sol, (a_rows, b, c)


def _permutations_unique(vec):
    from itertools import permutations

    return set(permutations(vec))


@dataclass
class WorkFactorReport:
    """Log2 work factors at one parameter point; None marks out-of-regime."""

    q: int
    m: int
    n: int
    k: int
    ell: int
    t: int
    s: int
    w_new_lb: float | None = None
    w_new_ub: float | None = None
    w_new_ub_simple: float | None = None
    w_code: float | None = None
    w_errors: float | None = None
    w_prange: float | None = None
    w_grs: float | None = None
    w_optimal: float | None = None
    feasible: bool = True
    note: str = ""

    def csv_row(self) -> str:
        def cell(v):
            return "" if v is None else f"{v:.4f}"

        return ",".join(
            [
                str(self.q),
                str(self.m),
                str(self.n),
                str(self.k),
                str(self.ell),
                str(self.t),
                str(self.s),
                cell(self.w_new_lb),
                cell(self.w_new_ub),
                cell(self.w_new_ub_simple),
                cell(self.w_code),
                cell(self.w_errors),
                cell(self.w_prange),
                cell(self.w_grs),
                cell(self.w_optimal),
            ]
        )


def point_report(
    q: int,
    m: int,
    n: int,
    k: int,
    ell: int,
    t: int,
    s: int,
    model: str = "unit",
    lp_cap: int = 0,
) -> WorkFactorReport:
    """Full report for one (parameters, ell) point.

    Feasibility follows the practical support range t <= s <= min(n-k,
    floor(m/eta (n-k))) plus the drawing-stage requirement s <= ell*mu;
    infeasible points keep the naive baselines but no decoder bounds.
    LP optimality is attempted only when its variable count fits lp_cap.
    """
    rep = WorkFactorReport(q, m, n, k, ell, t, s)
    eta = n // ell
    mu = min(eta, m)
    rep.w_code, rep.w_errors = w_naive(q, m, n, k, ell, t)
    s_cap = min(n - k, (m * (n - k)) // eta, ell * mu)
    if not t <= s <= s_cap:
        rep.feasible = False
        rep.note = f"infeasible: need t <= s <= {s_cap}"
        return rep
    rep.w_new_lb, rep.w_new_ub, rep.w_new_ub_simple = w_new_bounds(
        q, m, n, k, ell, t, s, model
    )
    if ell == n:
        rep.w_prange, _ = w_extremes(q, m, n, k, ell, t, s, model)
    if ell == 1:
        try:
            _, rep.w_grs = w_extremes(q, m, n, k, ell, t, s, model)
        except WrongRegime:
            pass
    if lp_cap:
        try:
            _, xi, _, _ = optimal_distribution_lp(q, mu, t, ell, mu, s, cap=lp_cap)
            rep.w_optimal = w_iter_model(n, m, q, model) + log2_fraction(1 / xi)
        except TooLarge:
            pass
    return rep


def sweep(
    q: int,
    m: int,
    n: int,
    k: int,
    t: int,
    s: int,
    ells,
    model: str = "unit",
    lp_cap: int = 0,
    threads: int = 1,
):
    """Reports for each block count, optionally parallel over points."""
    args = [(q, m, n, k, ell, t, s, model, lp_cap) for ell in ells]
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(_point_report_star, args))
    return [point_report(*a) for a in args]


def _point_report_star(args):
    return point_report(*args)


def divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]
