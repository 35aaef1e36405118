"""Six binary classifiers behind one fit / predict-label / predict-score surface.

Labels are {1, 0} for gamma/hadron. Every model exposes a real-valued
``predict_score`` (larger means more gamma-like) and a thresholded
``predict_label``: 0.5 for probability-style scores, 0 for margins, with
exact-threshold ties resolving to gamma. Fitting is deterministic given
(spec, X, y, seed), and ``serialize_model`` emits a versioned text form
whose bytes witness that determinism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cart import fit_cart_model
from .knn import fit_knn_model
from .lda import fit_lda_model
from .logistic import fit_logistic, fit_lr_model
from .naive_bayes import fit_nb_model
from .svm import fit_svm_model

ALGORITHMS = ("lr", "lda", "knn", "cart", "nb", "svm")

DEFAULT_PARAMS = {
    "lr": {"l2_strength": 1.0, "tol": 1e-6, "max_iter": 200},
    "lda": {"ridge": 1e-9},
    "knn": {"k": 5},
    "cart": {"min_split": 2, "max_depth": 0},       # 0 = unlimited depth
    "nb": {"var_smoothing": 1e-9},
    "svm": {"C": 1.0, "gamma": "auto", "tol": 1e-3, "max_iter": 200_000},
}

_FITTERS = {
    "lr": fit_lr_model,
    "lda": fit_lda_model,
    "knn": fit_knn_model,
    "cart": fit_cart_model,
    "nb": fit_nb_model,
    "svm": fit_svm_model,
}


@dataclass(frozen=True)
class ModelSpec:
    """Algorithm tag plus hyperparameter overrides on top of the defaults."""

    algorithm: str
    overrides: tuple = ()

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        for key, _ in self.overrides:
            if key not in DEFAULT_PARAMS[self.algorithm]:
                raise ValueError(
                    f"unknown {self.algorithm} parameter {key!r}")

    @staticmethod
    def make(algorithm, **overrides):
        return ModelSpec(algorithm, tuple(sorted(overrides.items())))

    def params(self):
        merged = dict(DEFAULT_PARAMS[self.algorithm])
        merged.update(self.overrides)
        return merged


def _validate_training_input(X, y):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] < 2 or X.shape[1] < 1:
        raise ValueError("X must be 2-D with at least 2 rows and 1 column")
    if not np.isfinite(X).all():
        raise ValueError("X contains non-finite values")
    if y.shape != (X.shape[0],):
        raise ValueError("y must have one label per row")
    if not np.isin(y, (0, 1)).all():
        raise ValueError("labels must be 0 or 1")
    if len(np.unique(y)) < 2:
        raise ValueError("training labels contain a single class")
    return X, y.astype(np.uint8)


def fit(spec, X, y, seed=0):
    X, y = _validate_training_input(X, y)
    return _FITTERS[spec.algorithm](X, y, spec.params(), seed)


def _validate_predict_input(model, X):
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] != model.n_features:
        raise ValueError(
            f"expected {model.n_features} columns, got "
            f"{X.shape[1] if X.ndim == 2 else 'non-2D input'}")
    return X


def predict_label(model, X):
    return model.predict_label(_validate_predict_input(model, X))


def predict_score(model, X):
    return model.predict_score(_validate_predict_input(model, X))


def serialize_model(model):
    return model.to_text()


__all__ = [
    "ALGORITHMS", "DEFAULT_PARAMS", "ModelSpec",
    "fit", "predict_label", "predict_score", "serialize_model",
    "fit_logistic",
]
