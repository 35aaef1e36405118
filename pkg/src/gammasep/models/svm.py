"""Support vector machine trained by sequential minimal optimization.

RBF kernel only. The dual is solved pair-by-pair with maximal-violating-pair
selection (second-order gain for the partner index) until the KKT violation
gap drops below the tolerance or the iteration budget runs out; the budget
case returns the best iterate flagged as non-converged rather than raising.

Kernel rows are computed on demand and kept in a bounded LRU cache, so the
full n x n kernel matrix is never materialized for large training sets.
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np

_EPS = 1e-12
_CHUNK_ROWS = 512


def resolve_gamma(gamma, X):
    """Accepts a float, "auto" (1/d), or "scale" (1/(d * mean attr variance))."""
    d = X.shape[1]
    if gamma == "auto":
        return 1.0 / d
    if gamma == "scale":
        mean_variance = float(X.var(axis=0, ddof=1).mean())
        return 1.0 / (d * mean_variance) if mean_variance > 0 else 1.0 / d
    value = float(gamma)
    if value <= 0:
        raise ValueError("gamma must be positive")
    return value


class _KernelCache:
    """LRU cache of RBF kernel rows against the training set."""

    def __init__(self, X, gamma, budget_bytes=192_000_000):
        self.X = X
        self.gamma = gamma
        self.sq = (X ** 2).sum(axis=1)
        self.rows = OrderedDict()
        self.max_rows = max(8, int(budget_bytes / (8 * X.shape[0])))

    def row(self, i):
        cached = self.rows.get(i)
        if cached is not None:
            self.rows.move_to_end(i)
            return cached
        d2 = self.sq[i] + self.sq - 2.0 * (self.X @ self.X[i])
        np.maximum(d2, 0.0, out=d2)
        value = np.exp(-self.gamma * d2)
        self.rows[i] = value
        if len(self.rows) > self.max_rows:
            self.rows.popitem(last=False)
        return value


def smo_solve(X, y_pm, C, gamma, tol, max_iter, objective_trace=None):
    """Minimize 0.5 a'Qa - sum(a) s.t. 0 <= a <= C, y'a = 0, Q_ij = y_i y_j K_ij.

    Returns (alpha, intercept, converged, n_iter, dual_objective) where the
    dual objective is reported in its maximization form sum(a) - 0.5 a'Qa.
    """
    n = y_pm.size
    cache = _KernelCache(X, gamma)
    alpha = np.zeros(n)
    gradient = -np.ones(n)          # d/da of the minimization objective
    objective = 0.0                 # maximization form, tracked incrementally
    positive = y_pm > 0
    converged = False
    iterations = 0
    gap_half = 0.0

    # KKT membership masks, maintained incrementally (alpha changes at
    # exactly two indices per iteration)
    blocked_up = np.zeros(n, dtype=bool)     # cannot move toward +violation
    blocked_down = np.zeros(n, dtype=bool)
    blocked_up[~positive] = True             # negatives start at lower bound
    blocked_down[positive] = True

    def _refresh_masks(index):
        at_upper = alpha[index] >= C - _EPS
        at_lower = alpha[index] <= _EPS
        if positive[index]:
            blocked_up[index] = at_upper
            blocked_down[index] = at_lower
        else:
            blocked_up[index] = at_lower
            blocked_down[index] = at_upper

    v = np.empty(n)
    up_vals = np.empty(n)
    down_vals = np.empty(n)
    gain = np.empty(n)

    while iterations < max_iter:
        np.multiply(y_pm, gradient, out=v)
        np.negative(v, out=v)                # v = -y * grad, violation scores
        np.copyto(up_vals, v)
        up_vals[blocked_up] = -np.inf
        i = int(np.argmax(up_vals))
        m = up_vals[i]
        np.copyto(down_vals, v)
        down_vals[blocked_down] = np.inf
        big_m = float(down_vals.min())
        if not np.isfinite(m) or not np.isfinite(big_m):
            converged = True
            break
        gap_half = 0.5 * (m + big_m)
        if m - big_m <= tol:
            converged = True
            break

        row_i = cache.row(i)
        # second-order partner choice: maximize the guaranteed decrease
        # of the objective, gain = (m - v_j)^2 / (K_ii + K_jj - 2 K_ij)
        np.subtract(m, down_vals, out=gain)
        np.square(gain, out=gain)
        gain /= np.maximum(2.0 * (1.0 - row_i), _EPS)
        gain[down_vals >= m - _EPS] = -np.inf
        j = int(np.argmax(gain))
        if not np.isfinite(gain[j]):
            converged = True
            break
        row_j = cache.row(j)

        # exact two-variable solve along the equality-feasible direction
        # da_i = y_i t, da_j = -y_j t
        step_quad = max(2.0 * (1.0 - row_i[j]), _EPS)
        t_unconstrained = (v[i] - v[j]) / step_quad
        room_i = (C - alpha[i]) if y_pm[i] > 0 else alpha[i]
        room_j = alpha[j] if y_pm[j] > 0 else (C - alpha[j])
        t = min(t_unconstrained, room_i, room_j)
        if t <= 0.0:
            break  # numerically stalled; report the best iterate
        alpha[i] = min(max(alpha[i] + (t if y_pm[i] > 0 else -t), 0.0), C)
        alpha[j] = min(max(alpha[j] - (t if y_pm[j] > 0 else -t), 0.0), C)
        _refresh_masks(i)
        _refresh_masks(j)
        gradient += (t * y_pm) * (row_i - row_j)
        objective += t * (v[i] - v[j]) - 0.5 * t * t * step_quad
        iterations += 1
        if objective_trace is not None:
            objective_trace.append(objective)

    intercept = gap_half
    return alpha, intercept, converged, iterations, objective


class SvmModel:
    """RBF-kernel SVM; score = raw decision value (margin threshold 0)."""

    algorithm = "svm"

    def __init__(self, support_vectors, dual_coef, intercept, gamma,
                 converged, n_iter, n_features):
        self.support_vectors = support_vectors
        self.dual_coef = dual_coef          # alpha_i * y_i
        self.intercept = intercept
        self.gamma = gamma
        self.converged = converged
        self.n_iter = n_iter
        self.n_features = n_features
        self._sv_sq = (support_vectors ** 2).sum(axis=1)

    def predict_score(self, X):
        scores = np.empty(X.shape[0])
        for start in range(0, X.shape[0], _CHUNK_ROWS):
            chunk = X[start:start + _CHUNK_ROWS]
            d2 = ((chunk ** 2).sum(axis=1)[:, None] + self._sv_sq
                  - 2.0 * chunk @ self.support_vectors.T)
            np.maximum(d2, 0.0, out=d2)
            kernel = np.exp(-self.gamma * d2)
            scores[start:start + chunk.shape[0]] = kernel @ self.dual_coef
        return scores + self.intercept

    def predict_label(self, X):
        return (self.predict_score(X) >= 0.0).astype(np.uint8)

    def to_text(self):
        lines = [
            "gammasep-model v1",
            "algorithm=svm",
            f"converged={str(self.converged).lower()}",
            f"n_iter={self.n_iter}",
            f"gamma={float(self.gamma)!r}",
            f"intercept={float(self.intercept)!r}",
        ]
        for coef, row in zip(self.dual_coef, self.support_vectors):
            lines.append(f"{float(coef)!r};"
                         + ",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"


def fit_svm_model(X, y, params, seed=0):
    gamma = resolve_gamma(params["gamma"], X)
    y_pm = np.where(y == 1, 1.0, -1.0)
    alpha, intercept, converged, n_iter, _ = smo_solve(
        X, y_pm, float(params["C"]), gamma, float(params["tol"]),
        int(params["max_iter"]))
    support = alpha > _EPS
    return SvmModel(
        support_vectors=X[support].copy(),
        dual_coef=(alpha * y_pm)[support],
        intercept=intercept,
        gamma=gamma,
        converged=converged,
        n_iter=n_iter,
        n_features=X.shape[1],
    )
