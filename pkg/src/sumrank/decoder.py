"""The randomized generic sum-rank decoder and its Monte Carlo harness.

Each iteration draws a random super-support from the designed distribution
and attempts erasure decoding; the loop accepts the first candidate whose
syndrome matches and whose sum-rank weight is at most t.  The algorithm is
Las Vegas: it never returns a wrong answer, only runs for a random time.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field as dc_field

from .blockvec import BlockVector, SumRankParams, sum_rank_weight, zero_vector
from .codes import column_erasure_decode, row_erasure_decode
from .distribution import draw_random_support
from .exceptions import InvalidParams, IterationCapExceeded
from .fields import FieldContext, Matrix
from .sampling import Rng

CSV_HEADER = "seed,trial,iterations,success,miss,nonunique,weight_excess"


def default_support_weight(n: int, k: int, m: int, eta: int) -> int:
    """The practical support-weight heuristic min(n-k, floor(m/eta * (n-k)))."""
    return min(n - k, (m * (n - k)) // eta)


@dataclass
class DecodeConfig:
    """Support budget s, optional iteration cap, and support-kind override.

    kind 'auto' follows the metric shape: row supports (and column erasure
    decoding) when eta <= m, column supports otherwise.
    """

    s: int | None = None
    max_iterations: int | None = None
    kind: str = "auto"

    def resolve_kind(self, params: SumRankParams) -> str:
        if self.kind != "auto":
            return self.kind
        return "row" if params.eta <= params.m else "column"

    def resolve_s(self, params: SumRankParams, k: int) -> int:
        if self.s is not None:
            return self.s
        return default_support_weight(params.n, k, params.m, params.eta)


@dataclass
class DecodeOutcome:
    """Decoded error plus iteration count and per-failure tallies."""

    error: BlockVector
    iterations: int
    nosolution: int = 0
    nonunique: int = 0
    weight_excess: int = 0

    @property
    def tallies(self) -> dict:
        return {
            "miss": self.nosolution,
            "nonunique": self.nonunique,
            "weight_excess": self.weight_excess,
        }


def generic_decode(
    h: Matrix,
    r: BlockVector,
    t: int,
    params: SumRankParams,
    ctx: FieldContext,
    rng: Rng,
    cfg: DecodeConfig | None = None,
) -> DecodeOutcome:
    """Find e' with sum-rank weight <= t and H (r - e')^T = 0.

    Assumes such an e' exists (the syndrome-decoding promise); with no
    iteration cap the loop runs until it finds one.  ``iterations`` counts
    support draws, so an r already in the code returns immediately with 0.
    """
    if cfg is None:
        cfg = DecodeConfig()
    k = params.n - h.rows
    s = cfg.resolve_s(params, k)
    if t > s:
        raise InvalidParams(f"need t <= s, got t={t}, s={s}")
    kind = cfg.resolve_kind(params)
    zeta = params.zeta(kind)
    mu = params.mu
    ext = ctx.ext
    syn = h.mul_vec(r.entries)
    decode_one = column_erasure_decode if kind == "row" else row_erasure_decode

    e = zero_vector(params, ctx)
    if all(v == 0 for v in syn) and t >= 0:
        return DecodeOutcome(e, 0)

    iterations = 0
    nosol = nonuniq = wexcess = 0
    while True:
        if cfg.max_iterations is not None and iterations >= cfg.max_iterations:
            raise IterationCapExceeded(
                f"no acceptable error within {iterations} iterations",
                iterations,
                {"miss": nosol, "nonunique": nonuniq, "weight_excess": wexcess},
            )
        iterations += 1
        support = draw_random_support(s, t, zeta, params.ell, ctx.q, rng, mu=mu, kind=kind)
        out = decode_one(h, r, support, ctx, params)
        if out.status == "nosolution":
            nosol += 1
            continue
        if out.status == "nonunique":
            nonuniq += 1
            continue
        cand = out.error
        if sum_rank_weight(cand) > t:
            wexcess += 1
            continue
        # solve_linear guarantees H cand^T = H r^T exactly; re-check cheaply
        resid = h.mul_vec(tuple(ext.sub(a, b) for a, b in zip(r.entries, cand.entries)))
        assert all(v == 0 for v in resid)
        return DecodeOutcome(cand, iterations, nosol, nonuniq, wexcess)


@dataclass
class TrialRecord:
    seed: int
    trial: int
    iterations: int
    success: bool
    miss: int
    nonunique: int
    weight_excess: int

    def csv_row(self) -> str:
        return (
            f"{self.seed},{self.trial},{self.iterations},{int(self.success)},"
            f"{self.miss},{self.nonunique},{self.weight_excess}"
        )


@dataclass
class ExperimentResult:
    """Aggregated statistics over independent decoding trials."""

    records: list
    mean_iterations: float
    variance_iterations: float
    per_iteration_success: float
    total_iterations: int
    containment_rate: float | None = dc_field(default=None)

    def csv_lines(self) -> list:
        return [CSV_HEADER] + [rec.csv_row() for rec in self.records]


def run_experiment(
    code,
    error_model,
    trials: int,
    rng: Rng,
    cfg: DecodeConfig | None = None,
    check_exact: bool = False,
) -> ExperimentResult:
    """Plant errors with ``error_model(rng)``, decode, and collect statistics.

    Every trial runs on its own split stream, so results are reproducible and
    trials are independent.  With check_exact the recovered error must equal
    the planted one bit for bit (valid when t < d/2).
    """
    if trials < 1:
        raise InvalidParams("trials must be >= 1")
    from .codes import encode

    ctx = code.ctx
    params = code.params
    records = []
    total_iters = 0
    for trial in range(trials):
        trng = rng.split()
        e = error_model(trng)
        msg = tuple(trng.below(ctx.order) for _ in range(code.k))
        r = encode(code, msg) + e
        t = sum_rank_weight(e)
        try:
            out = generic_decode(code.H, r, t, params, ctx, trng, cfg)
            success = True
        except IterationCapExceeded as exc:
            records.append(
                TrialRecord(
                    rng.seed,
                    trial,
                    exc.iterations,
                    False,
                    exc.tallies["miss"],
                    exc.tallies["nonunique"],
                    exc.tallies["weight_excess"],
                )
            )
            total_iters += exc.iterations
            continue
        if check_exact and out.error.entries != e.entries:
            raise AssertionError("recovered error differs from the planted one")
        records.append(
            TrialRecord(
                rng.seed,
                trial,
                out.iterations,
                success,
                out.nosolution,
                out.nonunique,
                out.weight_excess,
            )
        )
        total_iters += out.iterations
    iters = [rec.iterations for rec in records]
    mean = statistics.fmean(iters)
    var = statistics.pvariance(iters) if len(iters) > 1 else 0.0
    successes = sum(1 for rec in records if rec.success)
    p_hat = successes / total_iters if total_iters else 1.0
    return ExperimentResult(records, mean, var, p_hat, total_iters)
