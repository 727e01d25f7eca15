"""Deterministic randomness and uniform sampling of sum-rank objects.

The generator is counter-based (a splitmix-style mix of seed and counter), so
identical seeds give identical streams on every platform and child streams
for parallel trials are derived by splitting.  Uniform integers below huge
bounds are drawn by rejection on whole bit blocks, which keeps the enumerative
error sampler exactly uniform (no modulo bias).
"""

from __future__ import annotations

from .blockvec import BlockVector, SumRankParams
from .counting import _sphere_table
from .exceptions import InvalidShape, InvalidWeight
from .fields import FieldContext, Matrix

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z &= _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class Rng:
    """Counter-based pseudo-random stream with a 64-bit seed."""

    __slots__ = ("seed", "_counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._counter = 0

    def _next64(self) -> int:
        self._counter += 1
        return _mix64(self.seed + self._counter * _GAMMA)

    def bits(self, k: int) -> int:
        """A uniform k-bit integer."""
        out = 0
        got = 0
        while got < k:
            out = (out << 64) | self._next64()
            got += 64
        return out >> (got - k)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection on ceil(log2 n)-bit blocks."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        if n == 1:
            return 0
        k = (n - 1).bit_length()
        while True:
            v = self.bits(k)
            if v < n:
                return v

    def randint(self, a: int, b: int) -> int:
        """Uniform integer in [a, b] inclusive."""
        return a + self.below(b - a + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def split(self) -> "Rng":
        """Derive an independent child stream (for parallel trials)."""
        return Rng(_mix64(self._next64() ^ 0xA5A5A5A5DEADBEEF))


# -- uniform field/matrix sampling -------------------------------------------


def random_matrix(rows: int, cols: int, q: int, rng: Rng):
    """Uniform rows x cols matrix over GF(q) as a tuple of row tuples."""
    return tuple(tuple(rng.below(q) for _ in range(cols)) for _ in range(rows))


def _rows_rank(rows, q, ctx_base=None):
    if not rows:
        return 0
    if q == 2:
        from .fields import gf2_rank

        return gf2_rank([sum(1 << j for j, v in enumerate(r) if v) for r in rows])
    from .fields import make_field

    f = make_field(q, 1).base
    return Matrix(f, [list(r) for r in rows], len(rows), len(rows[0])).rank()


def sample_full_rank_matrix(rows: int, cols: int, q: int, rng: Rng):
    """Uniform full-row-rank matrix over GF(q), by rejection.

    The acceptance rate is at least gamma_q^-1 >= 0.288 for every q.
    """
    if rows > cols:
        raise InvalidShape(f"rows={rows} > cols={cols} has no full-row-rank matrix")
    if rows == 0:
        return ()
    while True:
        m = random_matrix(rows, cols, q, rng)
        if _rows_rank(m, q) == rows:
            return m


def sample_uniform_subspace(dim: int, zeta: int, q: int, rng: Rng):
    """Uniform dim-dimensional subspace of GF(q)^zeta, as an RREF basis.

    Full-rank matrices split evenly across row spaces (|GL(dim, q)| each), so
    reducing a uniform full-rank matrix to RREF samples subspaces uniformly.
    """
    if dim > zeta:
        raise InvalidShape(f"dim={dim} > zeta={zeta}")
    if dim == 0:
        return ()
    m = sample_full_rank_matrix(dim, zeta, q, rng)
    from .blockvec import _rref_rows

    return _rref_rows(m, q)


def sample_full_rank_vector(length: int, ctx: FieldContext, rng: Rng):
    """Uniform vector in GF(q^m)^length with full GF(q)-rank, by rejection."""
    if length == 0:
        return ()
    order = ctx.order
    while True:
        v = tuple(rng.below(order) for _ in range(length))
        if ctx.rank_of_elements(v) == length:
            return v


# -- uniform fixed-weight errors ---------------------------------------------


def sample_uniform_error(
    t: int, params: SumRankParams, ctx: FieldContext, rng: Rng
) -> BlockVector:
    """Uniform vector of sum-rank weight exactly t.

    Draws a rank from the sphere table by enumerative unranking (choosing a
    uniform index below the sphere size and descending per-block rank
    intervals), then fills each block with a uniform full-rank pair
    (a_j, B_j) and emits [a_1 B_1 | ... | a_ell B_ell].
    """
    ell = params.ell
    eta = params.eta
    mu = params.mu
    if t < 0 or t > mu * ell:
        raise InvalidWeight(f"t={t} outside 0..{mu * ell}")
    table = _sphere_table(ctx.q, eta, ctx.m, t, ell)
    total = table.value(t, ell)
    d = 1 + rng.below(total)
    t_vec = []
    t_rem = t
    for j in range(1, ell + 1):
        blocks_left = ell - j
        # ranks below this make the remaining blocks unable to absorb t_rem
        lo = max(0, t_rem - mu * blocks_left)
        acc = 0
        t_j = None
        for cand in range(lo, min(mu, t_rem) + 1):
            w = table.nm[cand] * table.value(t_rem - cand, blocks_left)
            if acc + w >= d:
                t_j = cand
                # renormalize the residual index into the sub-sphere: the
                # interval width carries a factor nm[t_j] whose coordinate is
                # superseded by the fresh uniform (a_j, B_j) draw below
                d = (d - acc - 1) // table.nm[cand] + 1
                break
            acc += w
        assert t_j is not None
        t_vec.append(t_j)
        t_rem -= t_j
    entries = []
    ext = ctx.ext
    for t_j in t_vec:
        a = sample_full_rank_vector(t_j, ctx, rng)
        b = sample_full_rank_matrix(t_j, eta, ctx.q, rng)
        for c in range(eta):
            acc = 0
            for aj, row in zip(a, b):
                if row[c]:
                    acc = ext.add(acc, ext.mul(aj, row[c]))
            entries.append(acc)
    return BlockVector(params, tuple(entries), ctx)
