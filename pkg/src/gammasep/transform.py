"""Dimension-preserving rescaling: min-max normalization and z-score standardization."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .data import Dataset

MINMAX = "minmax"
ZSCORE = "zscore"
TRANSFORM_KINDS = (MINMAX, ZSCORE)

PROVENANCE = {MINMAX: "norm", ZSCORE: "stand"}


class DegenerateAttributeWarning(UserWarning):
    """A constant attribute was mapped to all zeros."""


@dataclass(frozen=True)
class FittedTransform:
    """Per-attribute rescaling parameters learned from one dataset.

    For minmax the parameter pairs are (min, max); for zscore they are
    (mean, sample std). Immutable after fit and shareable across threads.
    """

    kind: str
    p1: np.ndarray          # min or mean
    p2: np.ndarray          # max or std
    fitted_on: str
    attribute_names: tuple

    @property
    def degenerate(self):
        """Mask of attributes with max == min (minmax) or std == 0 (zscore)."""
        if self.kind == MINMAX:
            return self.p2 == self.p1
        return self.p2 == 0.0


def fit(kind, ds):
    """Learn per-attribute parameters over all rows of a missing-free dataset."""
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"unknown transform kind {kind!r}")
    if ds.has_missing():
        raise ValueError("transform fit requires a missing-free dataset")
    if kind == MINMAX:
        p1 = ds.values.min(axis=0)
        p2 = ds.values.max(axis=0)
    else:
        p1 = ds.values.mean(axis=0)
        p2 = ds.values.std(axis=0, ddof=1)
    return FittedTransform(kind, p1.copy(), p2.copy(), ds.provenance,
                           ds.attribute_names)


def apply(t, ds):
    """Rescale every attribute; labels ride along unchanged.

    Degenerate attributes (max == min, or std == 0) map to a column of
    zeros and raise a DegenerateAttributeWarning. No clipping is performed,
    so applying a fit to new rows can produce values outside [0, 1] or
    beyond +-3.
    """
    if ds.attribute_names != t.attribute_names:
        raise ValueError("attribute order does not match the fitted transform")
    denominator = (t.p2 - t.p1) if t.kind == MINMAX else t.p2
    degenerate = t.degenerate
    safe = np.where(degenerate, 1.0, denominator)
    out = (ds.values - t.p1) / safe
    if degenerate.any():
        names = [t.attribute_names[j] for j in np.nonzero(degenerate)[0]]
        warnings.warn(
            f"degenerate attributes mapped to 0: {', '.join(names)}",
            DegenerateAttributeWarning, stacklevel=2)
        out[:, degenerate] = 0.0
    return ds.replace(values=out, provenance=PROVENANCE[t.kind])


def fit_apply(kind, ds):
    return apply(fit(kind, ds), ds)


def fit_apply_arrays(kind, train, test):
    """Array-level variant for per-fold refitting inside cross-validation.

    Parameters come from the training rows only; degenerate attributes map
    to zero in both outputs (no warning at this level).
    """
    if kind == MINMAX:
        p1 = train.min(axis=0)
        denominator = train.max(axis=0) - p1
    elif kind == ZSCORE:
        p1 = train.mean(axis=0)
        denominator = train.std(axis=0, ddof=1)
    else:
        raise ValueError(f"unknown transform kind {kind!r}")
    degenerate = denominator == 0.0
    safe = np.where(degenerate, 1.0, denominator)
    out_train = (train - p1) / safe
    out_test = (test - p1) / safe
    if degenerate.any():
        out_train[:, degenerate] = 0.0
        out_test[:, degenerate] = 0.0
    return out_train, out_test


def save_transform(t, path, header_comment=None):
    """Flat key-value text file: kind plus one parameter pair per attribute."""
    lines = []
    if header_comment:
        lines.append(f"# {header_comment}")
    lines.append(f"kind={t.kind}")
    lines.append(f"fitted_on={t.fitted_on}")
    for name, a, b in zip(t.attribute_names, t.p1, t.p2):
        lines.append(f"{name}={a!r},{b!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def load_transform(path):
    kind = fitted_on = None
    names, p1, p2 = [], [], []
    for line in Path(path).read_text(encoding="ascii").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        if key == "kind":
            kind = value
        elif key == "fitted_on":
            fitted_on = value
        else:
            a, _, b = value.partition(",")
            names.append(key)
            p1.append(float(a))
            p2.append(float(b))
    if kind not in TRANSFORM_KINDS:
        raise ValueError(f"bad transform file {path}")
    return FittedTransform(kind, np.array(p1), np.array(p2), fitted_on or "",
                           tuple(names))
