"""Blocked vectors over GF(q^m): sum-rank weight, decompositions, supports.

A length-n vector is split into ell blocks of length eta = n/ell.  Its
sum-rank weight is the sum of the GF(q)-ranks of the expanded blocks; the
per-block ranks form the weight decomposition.  Every block factors as
e_i = a_i . B_i with a_i full GF(q)-rank over GF(q^m) and B_i full-rank over
GF(q); the row spaces of the B_i give the row support and the column spaces
of the expanded a_i give the column support.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exceptions import InvalidParams, InvalidShape
from .fields import FieldContext, Matrix, gf2_rank, make_field


@dataclass(frozen=True)
class SumRankParams:
    """Metric parameters: length n, block count ell, extension degree m."""

    n: int
    ell: int
    m: int

    def __post_init__(self):
        if self.n <= 0 or self.ell <= 0 or self.m <= 0:
            raise InvalidParams("n, ell, m must be positive")
        if self.n % self.ell != 0:
            raise InvalidParams(f"ell={self.ell} must divide n={self.n}")

    @property
    def eta(self) -> int:
        return self.n // self.ell

    @property
    def mu(self) -> int:
        return min(self.eta, self.m)

    def zeta(self, kind: str) -> int:
        """Ambient support dimension: eta for row supports, m for column."""
        if kind == "row":
            return self.eta
        if kind == "column":
            return self.m
        raise InvalidParams(f"unknown support kind {kind!r}")


@dataclass(frozen=True)
class BlockVector:
    """A length-n vector over GF(q^m) with block structure."""

    params: SumRankParams
    entries: tuple
    ctx: FieldContext = field(compare=False)

    def __post_init__(self):
        if len(self.entries) != self.params.n:
            raise InvalidShape(f"expected {self.params.n} entries, got {len(self.entries)}")
        if self.params.m != self.ctx.m:
            raise InvalidParams("params.m disagrees with the field context")

    def block(self, i: int) -> tuple:
        eta = self.params.eta
        return self.entries[i * eta : (i + 1) * eta]

    def blocks(self):
        return [self.block(i) for i in range(self.params.ell)]

    def weight(self) -> int:
        return sum_rank_weight(self)

    def __add__(self, other: "BlockVector") -> "BlockVector":
        if self.params != other.params:
            raise InvalidShape("parameter mismatch")
        add = self.ctx.ext.add
        return BlockVector(
            self.params,
            tuple(add(a, b) for a, b in zip(self.entries, other.entries)),
            self.ctx,
        )

    def __sub__(self, other: "BlockVector") -> "BlockVector":
        if self.params != other.params:
            raise InvalidShape("parameter mismatch")
        sub = self.ctx.ext.sub
        return BlockVector(
            self.params,
            tuple(sub(a, b) for a, b in zip(self.entries, other.entries)),
            self.ctx,
        )


def block_vector(entries, params: SumRankParams, ctx: FieldContext) -> BlockVector:
    return BlockVector(params, tuple(entries), ctx)


def zero_vector(params: SumRankParams, ctx: FieldContext) -> BlockVector:
    return BlockVector(params, (0,) * params.n, ctx)


def weight_decomposition(x: BlockVector) -> tuple:
    """Per-block GF(q)-ranks of x."""
    return tuple(x.ctx.rank_of_elements(x.block(i)) for i in range(x.params.ell))


def sum_rank_weight(x: BlockVector) -> int:
    return sum(weight_decomposition(x))


def hamming_weight(x: BlockVector) -> int:
    return sum(1 for v in x.entries if v)


def rank_weight(x: BlockVector) -> int:
    """GF(q)-rank of the whole vector (the ell = 1 weight)."""
    return x.ctx.rank_of_elements(x.entries)


@dataclass(frozen=True)
class ErrorDecomposition:
    """Blockwise factorization e_i = a_i . B_i.

    a_blocks[i] is a tuple of t_i elements of GF(q^m) with full GF(q)-rank;
    b_blocks[i] holds the rows of a full-rank t_i x eta matrix over GF(q) in
    reduced row echelon form (the canonical representative of the row-op
    equivalence class).
    """

    params: SumRankParams
    a_blocks: tuple
    b_blocks: tuple
    ctx: FieldContext = field(compare=False)

    def t_vec(self) -> tuple:
        return tuple(len(a) for a in self.a_blocks)


def error_decomposition(e: BlockVector) -> ErrorDecomposition:
    """Factor each block as a_i . B_i with B_i in RREF.

    The expansion of block i satisfies expand(e_i) = expand(a_i) . B_i, so
    B_i is read off as the nonzero rows of rref(expand(e_i)) and a_i as the
    pivot columns of expand(e_i) mapped back to field elements.
    """
    ctx = e.ctx
    a_blocks = []
    b_blocks = []
    for i in range(e.params.ell):
        blk = e.block(i)
        exp = ctx.expand(blk)
        rr, pivots = exp.rref()
        t_i = len(pivots)
        b_rows = tuple(tuple(rr.data[r]) for r in range(t_i))
        a_i = tuple(ctx.from_digits([exp.data[j][p] for j in range(ctx.m)]) for p in pivots)
        a_blocks.append(a_i)
        b_blocks.append(b_rows)
    return ErrorDecomposition(e.params, tuple(a_blocks), tuple(b_blocks), ctx)


def reassemble(dec: ErrorDecomposition) -> BlockVector:
    """Rebuild the vector from its decomposition: e_i = a_i . B_i."""
    ctx = dec.ctx
    ext = ctx.ext
    eta = dec.params.eta
    entries = []
    for a_i, b_rows in zip(dec.a_blocks, dec.b_blocks):
        for c in range(eta):
            acc = 0
            for a, row in zip(a_i, b_rows):
                if row[c]:
                    # B entries lie in GF(q), embedded in GF(q^m) unchanged
                    acc = ext.add(acc, ext.mul(a, row[c]))
            entries.append(acc)
    return BlockVector(dec.params, tuple(entries), ctx)


@dataclass(frozen=True)
class SumRankSupport:
    """Product of ell subspaces of GF(q)^zeta, each as an RREF basis.

    ``bases[i]`` is a tuple of basis rows (tuples of GF(q) elements); its
    length is the block dimension.  Canonical RREF bases make equality and
    containment literal tuple and rank tests.
    """

    kind: str  # "row" or "column"
    q: int
    zeta: int
    bases: tuple

    def __post_init__(self):
        if self.kind not in ("row", "column"):
            raise InvalidParams(f"unknown support kind {self.kind!r}")
        for rows in self.bases:
            for r in rows:
                if len(r) != self.zeta:
                    raise InvalidShape("basis row length disagrees with zeta")

    @property
    def ell(self) -> int:
        return len(self.bases)

    def dims(self) -> tuple:
        return tuple(len(rows) for rows in self.bases)

    def weight(self) -> int:
        return sum(self.dims())


def _base_field(q: int):
    return make_field(q, 1).base


def _rref_rows(rows, q):
    if not rows:
        return ()
    f = _base_field(q)
    m = Matrix(f, [list(r) for r in rows], len(rows), len(rows[0]))
    rr, pivots = m.rref()
    return tuple(tuple(rr.data[i]) for i in range(len(pivots)))


def row_support(e: BlockVector) -> SumRankSupport:
    """Product of the GF(q) row spaces of the B_i factors (in GF(q)^eta)."""
    dec = error_decomposition(e)
    return SumRankSupport("row", e.ctx.q, e.params.eta, dec.b_blocks)


def column_support(e: BlockVector) -> SumRankSupport:
    """Product of the column spaces of the expanded a_i factors (in GF(q)^m)."""
    dec = error_decomposition(e)
    ctx = e.ctx
    bases = []
    for a_i in dec.a_blocks:
        exp = ctx.expand(a_i)  # m x t_i
        rows = exp.transpose().row_tuples()
        bases.append(_rref_rows(rows, ctx.q))
    return SumRankSupport("column", ctx.q, ctx.m, tuple(bases))


def support_from_bases(kind, q, zeta, bases) -> SumRankSupport:
    """Build a support, canonicalizing every basis to RREF."""
    return SumRankSupport(kind, q, zeta, tuple(_rref_rows(rows, q) for rows in bases))


def support_contains(outer: SumRankSupport, inner: SumRankSupport) -> bool:
    """True iff inner_i is a subspace of outer_i for every block."""
    if (
        outer.kind != inner.kind
        or outer.zeta != inner.zeta
        or outer.q != inner.q
        or outer.ell != inner.ell
    ):
        raise InvalidShape("support shapes disagree")
    q = outer.q
    use_bits = q == 2
    f = None if use_bits else _base_field(q)
    for f_rows, e_rows in zip(outer.bases, inner.bases):
        if not e_rows:
            continue
        if len(e_rows) > len(f_rows):
            return False
        if use_bits:
            packed = [sum(1 << j for j, v in enumerate(r) if v) for r in f_rows + e_rows]
            if gf2_rank(packed) != len(f_rows):
                return False
        else:
            stacked = Matrix(f, [list(r) for r in f_rows + e_rows], None, outer.zeta)
            if stacked.rank() != len(f_rows):
                return False
    return True
