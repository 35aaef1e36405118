"""Linear discriminant analysis with a pooled, ridge-stabilized covariance."""

from __future__ import annotations

import math

import numpy as np

from .logistic import sigmoid


class LdaModel:
    """Two-class LDA; the score is the posterior probability of gamma."""

    algorithm = "lda"
    converged = True

    def __init__(self, weights, intercept, mean_gamma, mean_hadron):
        self.weights = weights
        self.intercept = intercept
        self.mean_gamma = mean_gamma
        self.mean_hadron = mean_hadron
        self.n_features = weights.size

    def predict_score(self, X):
        return sigmoid(X @ self.weights + self.intercept)

    def predict_label(self, X):
        return (self.predict_score(X) >= 0.5).astype(np.uint8)

    def to_text(self):
        return "\n".join([
            "gammasep-model v1",
            "algorithm=lda",
            "weights=" + ",".join(repr(float(w)) for w in self.weights),
            f"intercept={float(self.intercept)!r}",
            "mean_gamma=" + ",".join(repr(float(v)) for v in self.mean_gamma),
            "mean_hadron=" + ",".join(repr(float(v)) for v in self.mean_hadron),
        ]) + "\n"


def fit_lda_model(X, y, params, seed=0):
    gamma_rows = X[y == 1]
    hadron_rows = X[y == 0]
    n = X.shape[0]
    mean_gamma = gamma_rows.mean(axis=0)
    mean_hadron = hadron_rows.mean(axis=0)
    pooled = np.zeros((X.shape[1], X.shape[1]))
    for rows, mean in ((gamma_rows, mean_gamma), (hadron_rows, mean_hadron)):
        centered = rows - mean
        pooled += centered.T @ centered
    pooled /= max(n - 2, 1)
    pooled += params["ridge"] * np.eye(X.shape[1])
    weights = np.linalg.solve(pooled, mean_gamma - mean_hadron)
    prior_log_odds = math.log(len(gamma_rows) / len(hadron_rows))
    intercept = float(-0.5 * (mean_gamma + mean_hadron) @ weights
                      + prior_log_odds)
    return LdaModel(weights, intercept, mean_gamma, mean_hadron)
