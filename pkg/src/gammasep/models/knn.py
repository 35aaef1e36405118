"""k-nearest-neighbor classifier with deterministic tie handling."""

from __future__ import annotations

import numpy as np

_CHUNK_ROWS = 256
_CANDIDATE_PAD = 32


class KnnModel:
    """Memorized training set; score = gamma fraction among the k nearest.

    Neighbor ties at the k-th distance resolve toward the lower training
    row index; vote ties resolve toward gamma.
    """

    algorithm = "knn"
    converged = True

    def __init__(self, X, y, k):
        self.train_values = X
        self.train_labels = y
        self.k = k
        self.n_features = X.shape[1]
        self._train_sq = (X ** 2).sum(axis=1)

    def _gamma_fractions(self, X):
        n_train = self.train_values.shape[0]
        fractions = np.empty(X.shape[0])
        m = min(self.k + _CANDIDATE_PAD, n_train)
        for start in range(0, X.shape[0], _CHUNK_ROWS):
            chunk = X[start:start + _CHUNK_ROWS]
            d2 = ((chunk ** 2).sum(axis=1)[:, None] + self._train_sq
                  - 2.0 * chunk @ self.train_values.T)
            np.maximum(d2, 0.0, out=d2)
            if m < n_train:
                candidates = np.argpartition(d2, m - 1, axis=1)[:, :m]
            else:
                candidates = np.broadcast_to(np.arange(n_train),
                                             (chunk.shape[0], n_train)).copy()
            candidates.sort(axis=1)  # index order first, then stable by distance
            cand_d = np.take_along_axis(d2, candidates, axis=1)
            order = np.argsort(cand_d, axis=1, kind="stable")
            ranked = np.take_along_axis(candidates, order, axis=1)
            ranked_d = np.take_along_axis(cand_d, order, axis=1)
            # if the candidate window ends inside a tie group, fall back to
            # a full stable sort for those rows
            if m < n_train:
                overflow = ranked_d[:, self.k - 1] >= ranked_d[:, m - 1]
                for row in np.nonzero(overflow)[0]:
                    full = np.argsort(d2[row], kind="stable")
                    ranked[row, :self.k] = full[:self.k]
            votes = self.train_labels[ranked[:, :self.k]]
            fractions[start:start + chunk.shape[0]] = votes.mean(axis=1)
        return fractions

    def predict_score(self, X):
        return self._gamma_fractions(X)

    def predict_label(self, X):
        return (self._gamma_fractions(X) >= 0.5).astype(np.uint8)

    def to_text(self):
        lines = ["gammasep-model v1", "algorithm=knn", f"k={self.k}"]
        for row, label in zip(self.train_values, self.train_labels):
            lines.append(",".join(repr(float(v)) for v in row)
                         + f";{int(label)}")
        return "\n".join(lines) + "\n"


def fit_knn_model(X, y, params, seed=0):
    k = int(params["k"])
    if k < 1 or k > X.shape[0]:
        raise ValueError(f"k={k} outside [1, {X.shape[0]}]")
    return KnnModel(X.copy(), y.copy(), k)
