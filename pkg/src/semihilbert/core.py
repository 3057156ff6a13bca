"""Positive-semidefinite weight contexts and the operator calculus they induce.

A :class:`PsdContext` wraps a Hermitian positive-semidefinite matrix ``A``
together with the spectral caches everything else needs: ``A^{1/2}``, the
Moore-Penrose inverses of ``A`` and ``A^{1/2}``, and the orthogonal
projection ``P`` onto ``range(A)``.  Vectors are measured by the seminorm
``||x||_A = sqrt(x* A x)`` and operators by the induced seminorm.

The workhorse is :func:`reduce`: for an A-bounded operator ``T`` the matrix
``A^{1/2} T (A^{1/2})^+`` has classical operator norm, numerical radius and
spectral radius equal to the A-weighted ones of ``T``, so weighted
quantities come out of ordinary dense linear algebra.  The map is
multiplicative on A-bounded operators and sends the weighted adjoint to the
conjugate transpose, which the test suite exploits as an oracle.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    ABoundednessWarning,
    DimensionMismatch,
    NotABounded,
    NotHermitian,
    NotInBA,
    NotPositive,
    ZeroOperator,
)

__all__ = [
    "PsdContext",
    "Operator",
    "make_context",
    "semi_inner",
    "semi_norm",
    "in_ba",
    "in_ba_half",
    "a_adjoint",
    "reduce",
    "a_op_norm",
    "spectral_norm",
]


def _as_square_complex(a) -> np.ndarray:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    return m


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value; 0.0 for empty input."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True, eq=False)
class PsdContext:
    """A Hermitian PSD weight matrix with its cached spectral companions.

    Eigenvalues are stored in descending order; everything below
    ``rank_rtol * lambda_max`` is truncated to exactly zero, and all
    pseudoinverses are built from the truncated spectrum so that numerical
    null-space leakage cannot contaminate downstream computations.
    """

    a: np.ndarray
    eigvals: np.ndarray
    eigvecs: np.ndarray
    rank: int
    sqrt_a: np.ndarray
    pinv_a: np.ndarray
    pinv_sqrt_a: np.ndarray
    proj_range: np.ndarray

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @property
    def norm(self) -> float:
        """Largest eigenvalue of the weight matrix."""
        return float(self.eigvals[0])


def from_spectrum(eigvals: np.ndarray, eigvecs: np.ndarray, fn) -> np.ndarray:
    """Apply ``fn`` to the nonzero eigenvalues and recompose the matrix."""
    mapped = np.zeros_like(eigvals)
    nz = eigvals > 0
    mapped[nz] = fn(eigvals[nz])
    return (eigvecs * mapped) @ eigvecs.conj().T


def make_context(a, tol: ToleranceConfig = DEFAULT_TOL) -> PsdContext:
    """Validate a Hermitian PSD matrix and build its spectral caches.

    Raises NotHermitian when the asymmetry exceeds tolerance, NotPositive
    when an eigenvalue falls below ``-cmp_atol`` (smaller negatives are
    clamped to zero), and ZeroOperator when the matrix is numerically zero.
    """
    m = _as_square_complex(a)
    scale = spectral_norm(m)
    if spectral_norm(m - m.conj().T) > tol.cmp_atol * (1.0 + scale):
        raise NotHermitian("weight matrix is not Hermitian within tolerance")
    m = (m + m.conj().T) / 2.0

    w, v = np.linalg.eigh(m)
    w = w[::-1].copy()
    v = v[:, ::-1].copy()
    if w[-1] < -tol.cmp_atol:
        raise NotPositive(f"eigenvalue {w[-1]:.3e} below -cmp_atol")
    w = np.maximum(w, 0.0)
    if w[0] <= tol.cmp_atol:
        raise ZeroOperator("weight matrix is numerically zero")
    w[w < tol.rank_rtol * w[0]] = 0.0
    rank = int(np.count_nonzero(w))

    return PsdContext(
        a=_frozen(m),
        eigvals=_frozen(w),
        eigvecs=_frozen(v),
        rank=rank,
        sqrt_a=_frozen(from_spectrum(w, v, np.sqrt)),
        pinv_a=_frozen(from_spectrum(w, v, lambda x: 1.0 / x)),
        pinv_sqrt_a=_frozen(from_spectrum(w, v, lambda x: 1.0 / np.sqrt(x))),
        proj_range=_frozen(from_spectrum(w, v, np.ones_like)),
    )


@dataclass(frozen=True, eq=False)
class Operator:
    """A dense complex square matrix interpreted against a weight context."""

    t: np.ndarray
    ctx: PsdContext

    def __post_init__(self):
        m = _as_square_complex(self.t)
        if m.shape[0] != self.ctx.dim:
            raise DimensionMismatch(
                f"operator is {m.shape[0]}x{m.shape[0]} but context is {self.ctx.dim}-dimensional"
            )
        object.__setattr__(self, "t", _frozen(m))

    @property
    def dim(self) -> int:
        return self.t.shape[0]


def _as_vector(x, n: int) -> np.ndarray:
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if v.shape[0] != n:
        raise DimensionMismatch(f"expected a vector of length {n}, got {v.shape[0]}")
    return v


def semi_inner(x, y, ctx: PsdContext) -> complex:
    """Weighted product x* -> y* A x: linear in ``x``, conjugate-linear in ``y``."""
    xv = _as_vector(x, ctx.dim)
    yv = _as_vector(y, ctx.dim)
    return complex(np.vdot(yv, ctx.a @ xv))


def semi_norm(x, ctx: PsdContext) -> float:
    """Weighted seminorm sqrt(x* A x); zero on the null space of A."""
    val = semi_inner(x, x, ctx).real
    return math.sqrt(max(val, 0.0))


def in_ba(op: Operator, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when the operator admits a weighted adjoint.

    The exact condition is range(T* A) inside range(A); numerically we test
    the residual ||(I - P) T* A|| against a slack scaled by ||A|| ||T||.
    """
    ctx = op.ctx
    resid = (np.eye(ctx.dim) - ctx.proj_range) @ op.t.conj().T @ ctx.a
    return spectral_norm(resid) <= tol.cmp_atol * (1.0 + ctx.norm * spectral_norm(op.t))


def in_ba_half(op: Operator, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when the operator is bounded for the weighted seminorm.

    Equivalent to ``A^{1/2} T`` vanishing on the null space of ``A``; tested
    as a scaled residual on ``A^{1/2} T (I - P)``.
    """
    ctx = op.ctx
    resid = ctx.sqrt_a @ op.t @ (np.eye(ctx.dim) - ctx.proj_range)
    bound = math.sqrt(ctx.norm) * spectral_norm(op.t)
    return spectral_norm(resid) <= tol.cmp_atol * (1.0 + bound)


def a_adjoint(op: Operator, tol: ToleranceConfig = DEFAULT_TOL) -> Operator:
    """Distinguished weighted adjoint ``A^+ T* A``.

    It is the minimal-range solution of ``A X = T* A``; applying it twice
    gives the compression ``P T P``.
    """
    if not in_ba(op, tol):
        raise NotInBA("operator does not admit a weighted adjoint")
    return Operator(op.ctx.pinv_a @ op.t.conj().T @ op.ctx.a, op.ctx)


def reduce(op: Operator, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Similarity image ``A^{1/2} T (A^{1/2})^+`` carrying all weighted data.

    Classical norm / numerical radius / spectral radius of the result equal
    the weighted ones of ``op``.  Requires the operator to be bounded for
    the weighted seminorm.
    """
    if not in_ba_half(op, tol):
        raise NotABounded("operator is unbounded for the weighted seminorm")
    return op.ctx.sqrt_a @ op.t @ op.ctx.pinv_sqrt_a


def a_op_norm(op: Operator, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Weighted operator seminorm sup{||Tx||_A : ||x||_A = 1}.

    Computed as the largest singular value of :func:`reduce`.  A non-bounded
    operator yields ``math.inf`` plus an :class:`ABoundednessWarning` so that
    generator mistakes surface in reports instead of crashing them.
    """
    if not in_ba_half(op, tol):
        warnings.warn(
            "operator is unbounded for the weighted seminorm; reporting inf",
            ABoundednessWarning,
            stacklevel=2,
        )
        return math.inf
    return spectral_norm(op.ctx.sqrt_a @ op.t @ op.ctx.pinv_sqrt_a)
