"""L2-penalized logistic regression fit by Newton iterations."""

from __future__ import annotations

import numpy as np


def sigmoid(z):
    out = np.empty_like(z, dtype=float)
    positive = z >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-z[positive]))
    expz = np.exp(z[~positive])
    out[~positive] = expz / (1.0 + expz)
    return out


def penalized_log_likelihood(X, y, weights, intercept, l2_strength):
    z = X @ weights + intercept
    # y*z - log(1 + e^z), computed without overflow
    return float((y * z - np.logaddexp(0.0, z)).sum()
                 - 0.5 * l2_strength * weights @ weights)


def log_likelihood_gradient(X, y, weights, intercept, l2_strength):
    """Gradient of the penalized log-likelihood w.r.t. (weights, intercept).

    The intercept is not penalized.
    """
    residual = y - sigmoid(X @ weights + intercept)
    return X.T @ residual - l2_strength * weights, float(residual.sum())


def fit_logistic(X, y, l2_strength=1.0, tol=1e-6, max_iter=200):
    """Newton ascent until the gradient max-norm drops below tol.

    Returns (weights, intercept, converged, n_iter). Steps that fail to
    improve the objective are halved; a fully stalled step ends the fit
    at the best iterate with converged=False.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    n, d = X.shape
    weights = np.zeros(d)
    intercept = 0.0
    objective = penalized_log_likelihood(X, y, weights, intercept, l2_strength)
    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        grad_w, grad_b = log_likelihood_gradient(X, y, weights, intercept,
                                                 l2_strength)
        if max(np.abs(grad_w).max(initial=0.0), abs(grad_b)) <= tol:
            converged = True
            break
        p = sigmoid(X @ weights + intercept)
        curvature = np.maximum(p * (1.0 - p), 1e-12)
        weighted = X * curvature[:, None]
        hessian = np.empty((d + 1, d + 1))
        hessian[:d, :d] = X.T @ weighted + l2_strength * np.eye(d)
        hessian[:d, d] = weighted.sum(axis=0)
        hessian[d, :d] = hessian[:d, d]
        hessian[d, d] = curvature.sum()
        gradient = np.append(grad_w, grad_b)
        try:
            step = np.linalg.solve(hessian, gradient)
        except np.linalg.LinAlgError:
            step = np.linalg.solve(
                hessian + 1e-8 * np.trace(hessian) / (d + 1) * np.eye(d + 1),
                gradient)
        scale = 1.0
        improved = False
        for _ in range(30):
            trial_w = weights + scale * step[:d]
            trial_b = intercept + scale * step[d]
            trial_objective = penalized_log_likelihood(
                X, y, trial_w, trial_b, l2_strength)
            if trial_objective >= objective:
                weights, intercept, objective = trial_w, trial_b, trial_objective
                improved = True
                break
            scale *= 0.5
        if not improved:
            break
    return weights, intercept, converged, iteration


class LogisticModel:
    """Sigmoid-probability classifier; label threshold 0.5 (ties to gamma)."""

    algorithm = "lr"

    def __init__(self, weights, intercept, l2_strength, converged, n_iter):
        self.weights = weights
        self.intercept = intercept
        self.l2_strength = l2_strength
        self.converged = converged
        self.n_iter = n_iter
        self.n_features = weights.size

    def predict_score(self, X):
        return sigmoid(X @ self.weights + self.intercept)

    def predict_label(self, X):
        return (self.predict_score(X) >= 0.5).astype(np.uint8)

    def to_text(self):
        return "\n".join([
            "gammasep-model v1",
            "algorithm=lr",
            f"converged={str(self.converged).lower()}",
            f"n_iter={self.n_iter}",
            f"l2_strength={self.l2_strength!r}",
            "weights=" + ",".join(repr(float(w)) for w in self.weights),
            f"intercept={float(self.intercept)!r}",
        ]) + "\n"


def fit_lr_model(X, y, params, seed=0):
    weights, intercept, converged, n_iter = fit_logistic(
        X, y, params["l2_strength"], params["tol"], params["max_iter"])
    return LogisticModel(weights, intercept, params["l2_strength"],
                         converged, n_iter)
