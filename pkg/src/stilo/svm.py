"""From-scratch soft-margin linear SVM trained by SMO on the dual.

Small-scale solver for the 4-feature alignment filter: z-score
standardization, pairwise SMO updates with a KKT tolerance of 1e-3, and a
stop rule of 10 consecutive full passes without an update. Deterministic
under a fixed seed.
"""

from __future__ import annotations

import random

import numpy as np

from stilo.errors import DataError

KKT_TOL = 1e-3
MAX_QUIET_PASSES = 10
_MIN_STEP = 1e-12


def standardize_fit(X: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-column mean and population std; constant columns get std 1."""
    means = X.mean(axis=0)
    stds = np.sqrt(((X - means) ** 2).mean(axis=0))
    stds[stds == 0.0] = 1.0
    return means, stds


def _take_step(i, j, alpha, y, K, errors, C, b):
    if i == j:
        return b, False
    ai_old = alpha[i]
    aj_old = alpha[j]
    yi, yj = y[i], y[j]
    Ei, Ej = errors[i], errors[j]
    if yi != yj:
        low = max(0.0, aj_old - ai_old)
        high = min(C, C + aj_old - ai_old)
    else:
        low = max(0.0, ai_old + aj_old - C)
        high = min(C, ai_old + aj_old)
    if low >= high:
        return b, False
    eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
    if eta >= 0.0:
        return b, False
    aj = aj_old - yj * (Ei - Ej) / eta
    aj = min(max(aj, low), high)
    if abs(aj - aj_old) < _MIN_STEP:
        return b, False
    ai = ai_old + yi * yj * (aj_old - aj)
    alpha[i] = ai
    alpha[j] = aj
    b1 = b - Ei - yi * (ai - ai_old) * K[i, i] - yj * (aj - aj_old) * K[i, j]
    b2 = b - Ej - yi * (ai - ai_old) * K[i, j] - yj * (aj - aj_old) * K[j, j]
    if 0.0 < ai < C:
        new_b = b1
    elif 0.0 < aj < C:
        new_b = b2
    else:
        new_b = (b1 + b2) / 2.0
    return new_b, True


def smo_solve(
    Z: np.ndarray,
    y: np.ndarray,
    C: float,
    seed: int,
    tol: float = KKT_TOL,
    max_quiet_passes: int = MAX_QUIET_PASSES,
) -> tuple[np.ndarray, float]:
    """Solve the dual on standardized features; returns (alpha, bias)."""
    n = Z.shape[0]
    K = Z @ Z.T
    alpha = np.zeros(n)
    b = 0.0
    rng = random.Random(seed)
    quiet = 0
    while quiet < max_quiet_passes:
        changed = 0
        for i in range(n):
            decision = (alpha * y) @ K[:, i] + b
            Ei = decision - y[i]
            if (y[i] * Ei < -tol and alpha[i] < C) or (y[i] * Ei > tol and alpha[i] > 0.0):
                errors = (alpha * y) @ K + b - y
                j = rng.randrange(n - 1)
                if j >= i:
                    j += 1
                b, moved = _take_step(i, j, alpha, y, K, errors, C, b)
                if not moved:
                    # deterministic fallback sweep when the random partner stalls
                    for j in range(n):
                        errors = (alpha * y) @ K + b - y
                        b, moved = _take_step(i, j, alpha, y, K, errors, C, b)
                        if moved:
                            break
                if moved:
                    changed += 1
        quiet = 0 if changed else quiet + 1
    return alpha, b


def recompute_bias(Z, y, alpha, C, fallback: float) -> float:
    """Bias from margin support vectors (0 < alpha < C), else the SMO value."""
    w = (alpha * y) @ Z
    on_margin = (alpha > 1e-8) & (alpha < C - 1e-8)
    if not on_margin.any():
        return fallback
    return float((y[on_margin] - Z[on_margin] @ w).mean())


def dual_objective(Z: np.ndarray, y: np.ndarray, alpha: np.ndarray) -> float:
    K = Z @ Z.T
    ay = alpha * y
    return float(alpha.sum() - 0.5 * (ay @ K @ ay))


def train_linear_svm(
    X: np.ndarray, y: np.ndarray, C: float = 1.0, seed: int = 0
) -> tuple[np.ndarray, float, np.ndarray, np.ndarray, np.ndarray]:
    """Standardize, run SMO, and fold the solution into primal weights.

    Returns (weights, bias, means, stds, alpha); weights live in z-space so
    callers must standardize inputs with the returned means/stds.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] != y.shape[0]:
        raise DataError("feature matrix and labels disagree in length")
    if X.shape[0] < 2:
        raise DataError("need at least 2 training examples")
    if C <= 0.0:
        raise DataError("C must be positive")
    classes = np.unique(y)
    if classes.size < 2:
        raise DataError("degenerate training set: only one class present")
    if not np.all(np.isin(classes, (-1.0, 1.0))):
        raise DataError("labels must be +1/-1")
    means, stds = standardize_fit(X)
    Z = (X - means) / stds
    alpha, b = smo_solve(Z, y, C, seed)
    b = recompute_bias(Z, y, alpha, C, fallback=b)
    weights = (alpha * y) @ Z
    return weights, float(b), means, stds, alpha
