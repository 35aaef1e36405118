"""Gaussian naive Bayes with variance smoothing."""

from __future__ import annotations

import math

import numpy as np

from .logistic import sigmoid


class NbModel:
    """Per-class per-attribute Gaussians; score = posterior P(gamma | x)."""

    algorithm = "nb"
    converged = True

    def __init__(self, log_prior_gamma, log_prior_hadron, means, variances):
        self.log_prior_gamma = log_prior_gamma
        self.log_prior_hadron = log_prior_hadron
        self.means = means          # rows: (hadron, gamma)
        self.variances = variances
        self.n_features = means.shape[1]

    def _log_joint(self, X, class_row):
        mean = self.means[class_row]
        var = self.variances[class_row]
        log_density = (-0.5 * (np.log(2.0 * math.pi * var)
                               + (X - mean) ** 2 / var)).sum(axis=1)
        prior = self.log_prior_gamma if class_row == 1 else self.log_prior_hadron
        return log_density + prior

    def predict_score(self, X):
        return sigmoid(self._log_joint(X, 1) - self._log_joint(X, 0))

    def predict_label(self, X):
        return (self.predict_score(X) >= 0.5).astype(np.uint8)

    def to_text(self):
        return "\n".join([
            "gammasep-model v1",
            "algorithm=nb",
            f"log_prior_gamma={self.log_prior_gamma!r}",
            f"log_prior_hadron={self.log_prior_hadron!r}",
            "means_hadron=" + ",".join(repr(float(v)) for v in self.means[0]),
            "means_gamma=" + ",".join(repr(float(v)) for v in self.means[1]),
            "variances_hadron=" + ",".join(repr(float(v))
                                           for v in self.variances[0]),
            "variances_gamma=" + ",".join(repr(float(v))
                                          for v in self.variances[1]),
        ]) + "\n"


def fit_nb_model(X, y, params, seed=0):
    n = X.shape[0]
    # smoothing floor proportional to the largest overall attribute variance
    epsilon = params["var_smoothing"] * float(X.var(axis=0, ddof=1).max())
    means = np.empty((2, X.shape[1]))
    variances = np.empty((2, X.shape[1]))
    counts = {}
    for code in (0, 1):
        rows = X[y == code]
        counts[code] = rows.shape[0]
        means[code] = rows.mean(axis=0)
        if rows.shape[0] >= 2:
            variances[code] = rows.var(axis=0, ddof=1) + epsilon
        else:
            variances[code] = epsilon
    variances = np.maximum(variances, 1e-300)
    return NbModel(math.log(counts[1] / n), math.log(counts[0] / n),
                   means, variances)
