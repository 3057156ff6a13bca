"""Block operator matrices over the d-fold lifted weight context.

The lifted weight is the block-diagonal embedding of the base weight; its
spectral caches are embedded blockwise rather than recomputed, so the lifted
projection and pseudoinverse tiles are bit-identical to the base ones and
route comparisons cannot be polluted by independent eigendecompositions.

Block layout is row-major with contiguous n x n tiles.  A single pair of
reshape helpers (:func:`flatten` / :func:`split_blocks`) owns the indexing
convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .core import Operator, PsdContext, in_ba_half
from .errors import BadIndex, BlockNotInBA, DimensionMismatch, NotABounded, RaggedBlocks
from .radii import a_numerical_radius_many

__all__ = [
    "BlockMatrix",
    "lift",
    "assemble",
    "flatten",
    "split_blocks",
    "block_sharp",
    "u_k",
    "structured_norms",
    "structured_omega",
    "diagonal_block_matrix",
    "antidiagonal_block_matrix",
    "hat_matrix",
]


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """A d x d grid of equally sized blocks plus base and lifted contexts."""

    d: int
    blocks: np.ndarray  # shape (d, d, n, n)
    base_ctx: PsdContext
    lifted_ctx: PsdContext

    @property
    def n(self) -> int:
        return self.blocks.shape[-1]


def lift(ctx: PsdContext, d: int) -> PsdContext:
    """Block-diagonal embedding of a context, caches embedded not recomputed."""
    if d < 1:
        raise BadIndex(f"block count must be >= 1, got {d}")
    eye = np.eye(d)
    tiled = np.tile(ctx.eigvals, d)
    order = np.argsort(-tiled, kind="stable")
    fields = dict(
        a=np.kron(eye, ctx.a),
        eigvals=tiled[order],
        eigvecs=np.kron(eye, ctx.eigvecs)[:, order],
        sqrt_a=np.kron(eye, ctx.sqrt_a),
        pinv_a=np.kron(eye, ctx.pinv_a),
        pinv_sqrt_a=np.kron(eye, ctx.pinv_sqrt_a),
        proj_range=np.kron(eye, ctx.proj_range),
    )
    for arr in fields.values():
        arr.setflags(write=False)
    return PsdContext(rank=d * ctx.rank, **fields)


def _as_block_grid(blocks) -> np.ndarray:
    try:
        grid = np.array(blocks, dtype=np.complex128)
    except ValueError as exc:
        raise RaggedBlocks(f"blocks do not form a uniform grid: {exc}") from exc
    if grid.ndim != 4 or grid.shape[0] != grid.shape[1] or grid.shape[2] != grid.shape[3]:
        raise RaggedBlocks(f"expected a (d, d, n, n) grid, got shape {grid.shape}")
    return grid


def assemble(blocks, ctx: PsdContext) -> BlockMatrix:
    """Build a block matrix from a d x d grid of n x n blocks."""
    grid = _as_block_grid(blocks)
    if grid.shape[2] != ctx.dim:
        raise DimensionMismatch(
            f"blocks are {grid.shape[2]}x{grid.shape[2]} but context is {ctx.dim}-dimensional"
        )
    d = grid.shape[0]
    grid.setflags(write=False)
    return BlockMatrix(d=d, blocks=grid, base_ctx=ctx, lifted_ctx=lift(ctx, d))


def flatten(bm: BlockMatrix) -> Operator:
    """The (d n) x (d n) operator of a block matrix, against the lifted context."""
    d, n = bm.d, bm.n
    flat = bm.blocks.transpose(0, 2, 1, 3).reshape(d * n, d * n)
    return Operator(flat, bm.lifted_ctx)


def split_blocks(m: np.ndarray, d: int) -> np.ndarray:
    """Inverse of the flatten layout: a (d n) x (d n) matrix to a (d, d, n, n) grid."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % d:
        raise DimensionMismatch(f"cannot split shape {m.shape} into {d}x{d} blocks")
    n = m.shape[0] // d
    return m.reshape(d, n, d, n).transpose(0, 2, 1, 3)


def _require_members(bm: BlockMatrix, tol: ToleranceConfig) -> None:
    ctx = bm.base_ctx
    comp = np.eye(ctx.dim) - ctx.proj_range
    adj = np.conj(np.swapaxes(bm.blocks, -1, -2))
    resid = np.linalg.svd(comp @ adj @ ctx.a, compute_uv=False)[..., 0]
    norms = np.linalg.svd(bm.blocks, compute_uv=False)[..., 0]
    bad = resid > tol.cmp_atol * (1.0 + ctx.norm * norms)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise BlockNotInBA(int(i), int(j))


def block_sharp(bm: BlockMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> BlockMatrix:
    """Blockwise weighted adjoint: output block (i, j) is the adjoint of block (j, i)."""
    _require_members(bm, tol)
    ctx = bm.base_ctx
    transposed = np.swapaxes(bm.blocks, 0, 1)
    out = ctx.pinv_a @ np.conj(np.swapaxes(transposed, -1, -2)) @ ctx.a
    out.setflags(write=False)
    return BlockMatrix(d=bm.d, blocks=out, base_ctx=ctx, lifted_ctx=bm.lifted_ctx)


def u_k(k: int, d: int, ctx: PsdContext) -> BlockMatrix:
    """Block permutation: anti-diagonal identities on the leading k x k corner,
    identities on the trailing diagonal.  Entries are exact zeros and ones."""
    if not 2 <= k <= d:
        raise BadIndex(f"need 2 <= k <= d, got k={k}, d={d}")
    n = ctx.dim
    eye = np.eye(n, dtype=np.complex128)
    grid = np.zeros((d, d, n, n), dtype=np.complex128)
    for i in range(k):
        grid[i, k - 1 - i] = eye
    for i in range(k, d):
        grid[i, i] = eye
    return assemble(grid, ctx)


def _reduced_grid(bm: BlockMatrix, tol: ToleranceConfig) -> np.ndarray:
    """Reductions of every block in one batch; raises on a non-bounded block."""
    ctx = bm.base_ctx
    comp = np.eye(ctx.dim) - ctx.proj_range
    resid = np.linalg.svd(ctx.sqrt_a @ bm.blocks @ comp, compute_uv=False)[..., 0]
    norms = np.linalg.svd(bm.blocks, compute_uv=False)[..., 0]
    bad = resid > tol.cmp_atol * (1.0 + np.sqrt(ctx.norm) * norms)
    if bad.any():
        i, j = np.argwhere(bad)[0]
        raise NotABounded(f"block ({i}, {j}) is unbounded for the weighted seminorm")
    return ctx.sqrt_a @ bm.blocks @ ctx.pinv_sqrt_a


def hat_matrix(bm: BlockMatrix, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The d x d matrix of blockwise weighted seminorms."""
    reduced = _reduced_grid(bm, tol)
    return np.linalg.svd(reduced, compute_uv=False)[..., 0]


def _entry_operators(entries, shape: str | None = None) -> list[Operator]:
    ops = list(entries)
    if not ops:
        raise DimensionMismatch("need at least one entry")
    if shape is not None and shape not in ("diagonal", "antidiagonal"):
        raise ValueError(f"unknown shape {shape!r}")
    return ops


def structured_norms(entries, shape: str, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Seminorm of a diagonal or antidiagonal block matrix: max of entry seminorms."""
    ops = _entry_operators(entries, shape)
    ctx = ops[0].ctx
    for op in ops:
        if not in_ba_half(op, tol):
            raise NotABounded("entry is unbounded for the weighted seminorm")
    reduced = np.stack([ctx.sqrt_a @ op.t @ ctx.pinv_sqrt_a for op in ops])
    return float(np.linalg.svd(reduced, compute_uv=False)[..., 0].max())


def structured_omega(entries, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Numerical radius of a diagonal block matrix: max of entry radii."""
    ops = _entry_operators(entries, "diagonal")
    return max(a_numerical_radius_many(ops, tol))


def diagonal_block_matrix(entries, ctx: PsdContext | None = None) -> BlockMatrix:
    """Assemble entries T_1 ... T_d on the main diagonal."""
    ops = _entry_operators(entries)
    ctx = ctx or ops[0].ctx
    d, n = len(ops), ctx.dim
    grid = np.zeros((d, d, n, n), dtype=np.complex128)
    for i, op in enumerate(ops):
        grid[i, i] = op.t
    return assemble(grid, ctx)


def antidiagonal_block_matrix(entries, ctx: PsdContext | None = None) -> BlockMatrix:
    """Assemble entries on the anti-diagonal, first entry in the top-right corner."""
    ops = _entry_operators(entries)
    ctx = ctx or ops[0].ctx
    d, n = len(ops), ctx.dim
    grid = np.zeros((d, d, n, n), dtype=np.complex128)
    for i, op in enumerate(ops):
        grid[i, d - 1 - i] = op.t
    return assemble(grid, ctx)
