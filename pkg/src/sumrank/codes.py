"""Linear codes over GF(q^m): syndromes, brute-force distance, erasure decoding.

Both erasure decoders recover an error from its syndrome given a
super-support: the column decoder solves for the row-space coefficients a
over GF(q^m), the row decoder expands the syndrome equation over GF(q) and
solves for the matrix factors B.  Neither ever guesses among multiple
solutions; rank deficiency or inconsistency is surfaced as a failure so the
generic decoder can treat the iteration as a miss.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .blockvec import BlockVector, SumRankParams, sum_rank_weight
from .exceptions import InvalidDims, InvalidShape, TooLarge
from .fields import FieldContext, Matrix, solve_linear
from .sampling import Rng


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] code over GF(q^m) with generator G and parity check H."""

    params: SumRankParams
    k: int
    G: Matrix = field(compare=False)
    H: Matrix = field(compare=False)
    ctx: FieldContext = field(compare=False)

    @property
    def n(self) -> int:
        return self.params.n


def random_code(params: SumRankParams, k: int, ctx: FieldContext, rng: Rng) -> LinearCode:
    """Code with a uniform full-rank k x n generator; H spans its right kernel."""
    n = params.n
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    ext = ctx.ext
    while True:
        g = Matrix(ext, [[rng.below(ctx.order) for _ in range(n)] for _ in range(k)])
        if g.rank() == k:
            break
    h = Matrix(ext, [list(r) for r in g.right_kernel_basis()], n - k, n)
    return LinearCode(params, k, g, h, ctx)


def code_from_parity_check(h: Matrix, params: SumRankParams, ctx: FieldContext) -> LinearCode:
    """Build a code from a full-rank parity-check matrix."""
    n = params.n
    if h.cols != n:
        raise InvalidDims(f"H has {h.cols} columns, expected {n}")
    if h.rank() != h.rows:
        raise InvalidDims("H must have full row rank")
    k = n - h.rows
    if not 0 < k < n:
        raise InvalidDims(f"need 0 < k < n, got k={k}, n={n}")
    g = Matrix(ctx.ext, [list(r) for r in h.right_kernel_basis()], k, n)
    return LinearCode(params, k, g, h, ctx)


def encode(code: LinearCode, message) -> BlockVector:
    """Codeword for a length-k message vector."""
    ext = code.ctx.ext
    n = code.n
    out = [0] * n
    for u, row in zip(message, code.G.data):
        if u == 0:
            continue
        for j in range(n):
            if row[j]:
                out[j] = ext.add(out[j], ext.mul(u, row[j]))
    return BlockVector(code.params, tuple(out), code.ctx)


def syndrome(h: Matrix, x) -> tuple:
    """H x^T for a BlockVector or a plain entry sequence."""
    entries = x.entries if isinstance(x, BlockVector) else tuple(x)
    return h.mul_vec(entries)


def min_distance_bruteforce(code: LinearCode, budget: int = 1 << 22) -> int:
    """Minimum sum-rank weight over the nonzero codewords, by enumeration."""
    ctx = code.ctx
    order = ctx.order
    if order**code.k > budget:
        raise TooLarge(f"q^(mk) = {order**code.k} exceeds budget {budget}")
    ext = ctx.ext
    n = code.n
    # partial sums over message digits, reusing prefixes across the odometer
    scaled_rows = []
    for row in code.G.data:
        scaled_rows.append([[ext.mul(u, v) for v in row] for u in range(order)])
    best = None
    params = code.params

    def recurse(i, current, nonzero):
        nonlocal best
        if i == code.k:
            if nonzero:
                w = sum_rank_weight(BlockVector(params, tuple(current), ctx))
                if best is None or w < best:
                    best = w
            return
        scaled = scaled_rows[i]
        recurse(i + 1, current, nonzero)
        for u in range(1, order):
            srow = scaled[u]
            recurse(i + 1, [ext.add(a, b) for a, b in zip(current, srow)], True)

    recurse(0, [0] * n, False)
    return best


@dataclass(frozen=True)
class ErasureOutcome:
    """Result of an erasure decode: status 'ok', 'nonunique' or 'nosolution'."""

    status: str
    error: BlockVector | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"


def column_erasure_decode(
    h: Matrix, r: BlockVector, support, ctx: FieldContext, params: SumRankParams
) -> ErasureOutcome:
    """Recover the error from a row super-support of weight s'.

    Stacks the support bases into a block-diagonal B over GF(q) and solves
    (H B^T) a^T = H r^T for a over GF(q^m); the error is a B.  Requires
    rk(H B^T) = s' for uniqueness, guaranteed whenever s' < d.
    """
    if support.kind != "row":
        raise InvalidShape("column erasure decoding needs a row super-support")
    if support.zeta != params.eta or support.ell != params.ell:
        raise InvalidShape("support shape disagrees with the code parameters")
    ext = ctx.ext
    n = params.n
    eta = params.eta
    dims = support.dims()
    syn = h.mul_vec(r.entries)
    # columns of H B^T correspond to support basis rows, blockwise
    cols = []
    for i, rows in enumerate(support.bases):
        off = i * eta
        for brow in rows:
            col = []
            for u in range(h.rows):
                acc = 0
                hrow = h.data[u]
                for c, bc in enumerate(brow):
                    if bc:
                        acc = ext.add(acc, ext.mul(hrow[off + c], bc))
                col.append(acc)
            cols.append(col)
    sp = len(cols)
    hbt = Matrix(ext, [[cols[j][u] for j in range(sp)] for u in range(h.rows)], h.rows, sp)
    sol = solve_linear(hbt, syn)
    if sol.status == "none":
        return ErasureOutcome("nosolution")
    if sol.status == "many":
        return ErasureOutcome("nonunique")
    a = sol.x
    entries = [0] * n
    idx = 0
    for i, rows in enumerate(support.bases):
        off = i * eta
        for brow in rows:
            av = a[idx]
            idx += 1
            if av == 0:
                continue
            for c, bc in enumerate(brow):
                if bc:
                    entries[off + c] = ext.add(entries[off + c], ext.mul(av, bc))
    return ErasureOutcome("ok", BlockVector(params, tuple(entries), ctx))


def row_erasure_decode(
    h: Matrix, r: BlockVector, support, ctx: FieldContext, params: SumRankParams
) -> ErasureOutcome:
    """Recover the error from a column super-support of weight t'.

    Lifts the support bases to elements a_hat over GF(q^m), expands the
    syndrome equation to GF(q) and solves for the eta*t' entries of the
    B_hat factors, ordered (block, basis row, column).
    """
    if support.kind != "column":
        raise InvalidShape("row erasure decoding needs a column super-support")
    if support.zeta != ctx.m or support.ell != params.ell:
        raise InvalidShape("support shape disagrees with the code parameters")
    ext = ctx.ext
    base = ctx.base
    m = ctx.m
    eta = params.eta
    n = params.n
    nk = h.rows
    a_hat = [tuple(ctx.from_digits(row) for row in rows) for rows in support.bases]
    tp = sum(len(a) for a in a_hat)
    syn = h.mul_vec(r.entries)
    rhs = []
    for su in syn:
        rhs.extend(ctx.digits(su))
    # column for unknown (i, j, c): expansion of a_hat[i][j] * H[:, i*eta + c]
    columns = []
    for i, lifted in enumerate(a_hat):
        off = i * eta
        for aij in lifted:
            for c in range(eta):
                col = []
                for u in range(nk):
                    prod = ext.mul(aij, h.data[u][off + c])
                    col.extend(ctx.digits(prod))
                columns.append(col)
    hext = Matrix(
        base,
        [[columns[j][u] for j in range(len(columns))] for u in range(nk * m)],
        nk * m,
        len(columns),
    )
    sol = solve_linear(hext, tuple(rhs))
    if sol.status == "none":
        return ErasureOutcome("nosolution")
    if sol.status == "many":
        return ErasureOutcome("nonunique")
    b = sol.x
    entries = [0] * n
    idx = 0
    for i, lifted in enumerate(a_hat):
        off = i * eta
        for aij in lifted:
            for c in range(eta):
                bc = b[idx]
                idx += 1
                if bc:
                    entries[off + c] = ext.add(entries[off + c], ext.mul(aij, bc))
    return ErasureOutcome("ok", BlockVector(params, tuple(entries), ctx))


# -- code file format --------------------------------------------------------
#
# A code file holds two blank-line-separated blocks of whitespace-separated
# integers: a header line "q m n k ell", then the n-k rows of H.  Each
# GF(q^m) element is the integer whose base-q digits are its polynomial-basis
# coordinates, little-endian (exactly the in-memory packing).


def save_code(code: LinearCode, fp) -> None:
    close = False
    if isinstance(fp, str):
        fp = open(fp, "w")
        close = True
    try:
        p = code.params
        fp.write(f"{code.ctx.q} {code.ctx.m} {p.n} {code.k} {p.ell}\n\n")
        for row in code.H.data:
            fp.write(" ".join(str(v) for v in row) + "\n")
    finally:
        if close:
            fp.close()


def load_code(fp) -> LinearCode:
    from .fields import make_field

    close = False
    if isinstance(fp, str):
        fp = open(fp)
        close = True
    try:
        text = fp.read()
    finally:
        if close:
            fp.close()
    blocks = [b for b in text.split("\n\n") if b.strip()]
    header = blocks[0].split()
    q, m, n, k, ell = (int(v) for v in header[:5])
    ctx = make_field(q, m)
    params = SumRankParams(n, ell, m)
    rows = []
    for line in blocks[1].strip().splitlines():
        rows.append([int(v) for v in line.split()])
    if len(rows) != n - k or any(len(r) != n for r in rows):
        raise InvalidDims("parity-check block has the wrong shape")
    h = Matrix(ctx.ext, rows, n - k, n)
    return code_from_parity_check(h, params, ctx)


def format_vector(entries) -> str:
    """One-line encoding of a vector, same element encoding as code files."""
    return " ".join(str(v) for v in entries)


def parse_vector(line: str) -> tuple:
    return tuple(int(v) for v in line.split())
