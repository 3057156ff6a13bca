"""Maximization of smooth objectives over the circle parameter theta.

Strategy: a uniform grid on [0, 2*pi) locates candidate peaks, then
golden-section refinement polishes the best three peak neighborhoods down
to ``theta_refine_tol``.  Many searches with the same grid can run in
lockstep (the bracket widths shrink identically), which keeps the per-call
numpy overhead off the hot path of the verification campaigns.

Objectives receive an array of angles of shape (problems, points) and must
return values of the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig

TWO_PI = 2.0 * math.pi
_SHRINK = (math.sqrt(5.0) - 1.0) / 2.0  # bracket contraction per iteration
_PEAKS = 3


@dataclass(frozen=True)
class ThetaSearchResult:
    """Outcome of a circle-parameter supremum search.

    value          the supremum found (never below any sampled value)
    argmax_theta   maximizing angle in [0, 2*pi); ties go to the smaller angle
    samples        grid resolution used
    refined        whether golden-section refinement ran
    """

    value: float
    argmax_theta: float
    samples: int
    refined: bool


def sup_on_circle_batch(evaluate, count: int, tol: ToleranceConfig = DEFAULT_TOL):
    """Maximize ``count`` objectives over theta simultaneously.

    ``evaluate(thetas)`` must accept shape (count, k) and return per-angle
    objective values of the same shape.
    """
    m = tol.theta_samples
    grid = np.arange(m) * (TWO_PI / m)
    gvals = np.asarray(evaluate(np.broadcast_to(grid, (count, m))), dtype=float)

    # circular local maxima; problems with fewer than _PEAKS of them refine
    # their global best point several times, which is harmless
    peaks = (gvals >= np.roll(gvals, 1, axis=1)) & (gvals >= np.roll(gvals, -1, axis=1))
    scored = np.where(peaks, gvals, -np.inf)
    top = np.argsort(scored, axis=1)[:, : -_PEAKS - 1 : -1]
    best_idx = np.argmax(gvals, axis=1)
    top = np.where(np.take_along_axis(peaks, top, axis=1), top, best_idx[:, None])

    h = TWO_PI / m
    a = top * h - h
    b = top * h + h
    width = 2.0 * h
    refined = width > tol.theta_refine_tol
    while width > tol.theta_refine_tol:
        span = b - a
        c = b - _SHRINK * span
        d = a + _SHRINK * span
        vals = np.asarray(evaluate(np.concatenate([c, d], axis=1)), dtype=float)
        fc = vals[:, :_PEAKS]
        fd = vals[:, _PEAKS:]
        keep_left = fc >= fd
        b = np.where(keep_left, d, b)
        a = np.where(keep_left, a, c)
        width *= _SHRINK

    centers = (a + b) / 2.0
    if refined:
        fcenters = np.asarray(evaluate(centers), dtype=float)
    else:
        fcenters = np.take_along_axis(gvals, top, axis=1)

    results = []
    grid_theta = best_idx * h
    grid_val = gvals[np.arange(count), best_idx]
    for i in range(count):
        cand_theta = np.concatenate(([grid_theta[i]], np.mod(centers[i], TWO_PI)))
        cand_val = np.concatenate(([grid_val[i]], fcenters[i]))
        order = np.lexsort((cand_theta, -cand_val))
        j = order[0]
        results.append(
            ThetaSearchResult(
                value=float(cand_val[j]),
                argmax_theta=float(cand_theta[j] % TWO_PI),
                samples=m,
                refined=bool(refined),
            )
        )
    return results


def sup_on_circle(evaluate, tol: ToleranceConfig = DEFAULT_TOL) -> ThetaSearchResult:
    """Single-objective variant of :func:`sup_on_circle_batch`."""
    return sup_on_circle_batch(evaluate, 1, tol)[0]


def rotation_eig_objective(mats: np.ndarray):
    """Objective lambda_max((e^{i t} M + e^{-i t} M*) / 2) for stacked matrices.

    The rotated Hermitian part is the cosine/sine pencil of the Hermitian and
    skew parts of M, so the whole grid evaluates as one batched eigvalsh.
    """
    mats = np.asarray(mats)
    herm = (mats + np.conj(np.swapaxes(mats, -1, -2))) / 2.0
    skew = (mats - np.conj(np.swapaxes(mats, -1, -2))) / 2.0j

    def evaluate(thetas):
        cos = np.cos(thetas)[..., None, None]
        sin = np.sin(thetas)[..., None, None]
        pencil = cos * herm[:, None] - sin * skew[:, None]
        return np.linalg.eigvalsh(pencil)[..., -1]

    return evaluate


def phase_combo_norm_objective(left: np.ndarray, right: np.ndarray):
    """Objective sigma_max(e^{i t} L + e^{-i t} R) for stacked matrix pairs.

    The spectral norm is evaluated as the root of the largest Gram
    eigenvalue, which is markedly faster than batched SVD at these sizes;
    the clamp guards against eigensolver noise on vanishing combinations.
    """
    left = np.asarray(left)
    right = np.asarray(right)

    def evaluate(thetas):
        ph = np.exp(1j * thetas)[..., None, None]
        combo = ph * left[:, None] + np.conj(ph) * right[:, None]
        gram = combo @ np.conj(np.swapaxes(combo, -1, -2))
        top = np.linalg.eigvalsh(gram)[..., -1]
        return np.sqrt(np.maximum(top, 0.0))

    return evaluate
