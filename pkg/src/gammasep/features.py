"""Feature engineering: extraction (PCA, ICA) and selection (UFS, RFE).

All four techniques produce a FeatureMap that projects the 10 input
attributes onto at most 10 outputs. Extraction maps are dense loading
matrices over centered data; selection maps are attribute index subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .data import Dataset
from .linalg import jacobi_eigh, inverse_sqrt_symmetric
from .models.logistic import fit_logistic

PCA, ICA, UFS, RFE = "pca", "ica", "ufs", "rfe"
FEATURE_KINDS = (PCA, ICA, UFS, RFE)


class NumericError(ArithmeticError):
    """Non-finite intermediate quantity in a numeric routine."""


@dataclass(frozen=True)
class FeatureMap:
    kind: str
    n_outputs: int
    projection: np.ndarray | None = None       # (c, d), pca/ica
    center: np.ndarray | None = None           # (d,), pca/ica
    indices: tuple = ()                        # ufs/rfe
    explained_variance_ratios: tuple = ()      # pca
    converged: bool = True                     # ica
    n_iter: int = 0                            # ica
    elimination_order: tuple = ()              # rfe


@dataclass(frozen=True)
class FScoreTable:
    """Per-attribute one-way F statistic between the two classes.

    Rank 1 marks the largest score; ties resolve toward the lower
    attribute index.
    """
    attribute_names: tuple
    scores: tuple
    ranks: tuple


def _centered_covariance(values):
    center = values.mean(axis=0)
    centered = values - center
    cov = centered.T @ centered / (values.shape[0] - 1)
    if not np.isfinite(cov).all():
        raise NumericError("covariance matrix is not finite")
    return center, cov


def pca_fit(ds, variance_target=0.95):
    """Principal components of the sample covariance (unscaled data).

    Keeps the smallest number of components whose cumulative explained
    variance ratio reaches variance_target. Each component is sign-fixed
    so its largest-magnitude loading is positive.
    """
    if ds.has_missing():
        raise ValueError("pca_fit requires a missing-free dataset")
    if ds.n_rows <= ds.n_attributes:
        raise ValueError("pca_fit needs more rows than attributes")
    center, cov = _centered_covariance(ds.values)
    eigenvalues, eigenvectors = jacobi_eigh(cov)
    eigenvalues = np.maximum(eigenvalues, 0.0)
    total = eigenvalues.sum()
    if total <= 0.0:
        raise NumericError("covariance has no variance")
    ratios = eigenvalues / total
    cumulative = np.cumsum(ratios)
    kept = int(np.searchsorted(cumulative, variance_target - 1e-12) + 1)
    kept = min(kept, ds.n_attributes)
    components = eigenvectors[:, :kept].T.copy()
    for row in components:
        if row[np.argmax(np.abs(row))] < 0:
            row *= -1.0
    return FeatureMap(
        kind=PCA, n_outputs=kept, projection=components, center=center,
        explained_variance_ratios=tuple(float(r) for r in ratios[:kept]))


def _symmetric_decorrelation(w):
    return inverse_sqrt_symmetric(w @ w.T) @ w


def ica_fit(ds, n_components=5, max_iter=200, tol=1e-4, seed=0):
    """FastICA with the logcosh contrast and symmetric decorrelation.

    Data is whitened to n_components dimensions through the covariance
    eigenbasis, then the fixed-point iteration runs from a seeded random
    orthonormal start until the largest rotation change falls below tol
    or max_iter is reached (non-convergence is flagged, not raised). The
    returned projection composes unmixing and whitening, so it applies
    directly to the original attributes; outputs are white by construction.
    """
    if ds.has_missing():
        raise ValueError("ica_fit requires a missing-free dataset")
    if n_components > ds.n_attributes:
        raise ValueError("n_components exceeds attribute count")
    center, cov = _centered_covariance(ds.values)
    eigenvalues, eigenvectors = jacobi_eigh(cov)
    eigenvalues = np.maximum(eigenvalues[:n_components], 1e-12)
    whitening = eigenvectors[:, :n_components].T / np.sqrt(eigenvalues)[:, None]
    z = (ds.values - center) @ whitening.T        # unit-covariance scores
    n = z.shape[0]

    rng = np.random.default_rng(seed)
    w = _symmetric_decorrelation(rng.standard_normal((n_components, n_components)))
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        projected = z @ w.T
        g = np.tanh(projected)
        g_prime_mean = (1.0 - g ** 2).mean(axis=0)
        w_next = _symmetric_decorrelation(
            g.T @ z / n - g_prime_mean[:, None] * w)
        drift = float(np.max(np.abs(np.abs(np.sum(w_next * w, axis=1)) - 1.0)))
        w = w_next
        if drift < tol:
            converged = True
            break
    return FeatureMap(
        kind=ICA, n_outputs=n_components, projection=w @ whitening,
        center=center, converged=converged, n_iter=iterations)


def f_scores(ds):
    """One-way F statistic (2 groups, df 1 and N-2) per attribute."""
    gamma_rows = ds.values[ds.labels == 1]
    hadron_rows = ds.values[ds.labels == 0]
    if len(gamma_rows) < 2 or len(hadron_rows) < 2:
        raise ValueError("f_scores requires >= 2 rows in each class")
    n = ds.n_rows
    scores = []
    for j in range(ds.n_attributes):
        g, h = gamma_rows[:, j], hadron_rows[:, j]
        grand = ds.values[:, j].mean()
        ss_between = (g.size * (g.mean() - grand) ** 2
                      + h.size * (h.mean() - grand) ** 2)
        ss_within = ((g - g.mean()) ** 2).sum() + ((h - h.mean()) ** 2).sum()
        if ss_within == 0.0:
            scores.append(0.0 if ss_between == 0.0 else math.inf)
        else:
            scores.append(float(ss_between / (ss_within / (n - 2))))
    order = sorted(range(len(scores)), key=lambda j: (-scores[j], j))
    ranks = [0] * len(scores)
    for position, j in enumerate(order, start=1):
        ranks[j] = position
    return FScoreTable(ds.attribute_names, tuple(scores), tuple(ranks))


def ufs_select(ds, k=5):
    """Top-k attributes by F score, listed in descending-score order."""
    if k > ds.n_attributes:
        raise ValueError(f"k={k} exceeds {ds.n_attributes} attributes")
    table = f_scores(ds)
    order = sorted(range(ds.n_attributes),
                   key=lambda j: (-table.scores[j], j))
    return FeatureMap(kind=UFS, n_outputs=k, indices=tuple(order[:k]))


def rfe_select(ds, k=5, l2_strength=1.0, tol=1e-6, max_iter=200):
    """Recursive elimination with an L2 logistic estimator on standardized data.

    Each round standardizes the surviving attributes, fits the estimator,
    and drops the single attribute with the smallest absolute coefficient
    (ties drop the higher attribute index). Selected indices come back in
    original attribute order; the elimination order is recorded.
    """
    if ds.has_missing():
        raise ValueError("rfe_select requires a missing-free dataset")
    if k > ds.n_attributes:
        raise ValueError(f"k={k} exceeds {ds.n_attributes} attributes")
    surviving = list(range(ds.n_attributes))
    eliminated = []
    y = ds.labels.astype(float)
    while len(surviving) > k:
        sub = ds.values[:, surviving]
        std = sub.std(axis=0, ddof=1)
        scale = np.where(std == 0.0, 1.0, std)
        standardized = (sub - sub.mean(axis=0)) / scale
        standardized[:, std == 0.0] = 0.0
        weights, _, _, _ = fit_logistic(standardized, y, l2_strength, tol,
                                        max_iter)
        magnitudes = np.abs(weights)
        worst_position = min(
            range(len(surviving)),
            key=lambda p: (magnitudes[p], -surviving[p]))
        eliminated.append(surviving.pop(worst_position))
    return FeatureMap(kind=RFE, n_outputs=k, indices=tuple(surviving),
                      elimination_order=tuple(eliminated))


def apply_map(fm, ds):
    """Project or subset a dataset; labels are preserved."""
    if fm.kind in (PCA, ICA):
        if ds.n_attributes != fm.projection.shape[1]:
            raise ValueError("attribute count does not match the feature map")
        out = (ds.values - fm.center) @ fm.projection.T
        prefix = "PC" if fm.kind == PCA else "IC"
        names = tuple(f"{prefix}{i + 1}" for i in range(fm.n_outputs))
        return ds.replace(values=out, provenance=fm.kind,
                          attribute_names=names)
    subset = ds.values[:, list(fm.indices)]
    names = tuple(ds.attribute_names[j] for j in fm.indices)
    return ds.replace(values=subset, provenance=fm.kind,
                      attribute_names=names)


def save_feature_map(fm, path, header_comment=None):
    """Text serialization; the audit artifact for the feature stage."""
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    lines.append(f"kind={fm.kind}")
    lines.append(f"n_outputs={fm.n_outputs}")
    if fm.kind in (PCA, ICA):
        lines.append("center=" + ",".join(repr(float(v)) for v in fm.center))
        for i, row in enumerate(fm.projection, start=1):
            lines.append(f"row{i}=" + ",".join(repr(float(v)) for v in row))
    if fm.kind == PCA:
        lines.append("ratios=" + ",".join(
            repr(float(r)) for r in fm.explained_variance_ratios))
    if fm.kind == ICA:
        lines.append(f"converged={str(fm.converged).lower()}")
        lines.append(f"n_iter={fm.n_iter}")
    if fm.kind in (UFS, RFE):
        lines.append("indices=" + ",".join(str(j) for j in fm.indices))
    if fm.kind == RFE:
        lines.append("elimination_order=" + ",".join(
            str(j) for j in fm.elimination_order))
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_feature_map(path):
    entries = {}
    rows = []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        if key.startswith("row"):
            rows.append([float(v) for v in value.split(",")])
        else:
            entries[key] = value
    kind = entries["kind"]
    if kind not in FEATURE_KINDS:
        raise ValueError(f"bad feature map file {path}")
    n_outputs = int(entries["n_outputs"])
    projection = np.array(rows) if rows else None
    center = (np.array([float(v) for v in entries["center"].split(",")])
              if "center" in entries else None)
    ratios = (tuple(float(v) for v in entries["ratios"].split(","))
              if "ratios" in entries else ())
    indices = (tuple(int(v) for v in entries["indices"].split(","))
               if entries.get("indices") else ())
    elimination = (tuple(int(v) for v in entries["elimination_order"].split(","))
                   if entries.get("elimination_order") else ())
    return FeatureMap(
        kind=kind, n_outputs=n_outputs, projection=projection, center=center,
        indices=indices, explained_variance_ratios=ratios,
        converged=entries.get("converged", "true") == "true",
        n_iter=int(entries.get("n_iter", 0)),
        elimination_order=elimination)
