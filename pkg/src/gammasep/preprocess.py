"""Missing-value removal and outlier-row filtering.

Two single-pass outlier rules are supported, both applied per attribute with
statistics computed once over the full input (never iteratively re-fit):

* IQR fence: flag x > Q3 + k*(Q3 - Q1) or x < Q1 - k*(Q3 - Q1), k = 1.5
* three-sigma: flag |x - mean| > m * s (sample std), m = 3

A row is removed when any of its attributes violates the rule.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .data import Dataset, _quantile

IQR_FENCE = "iqr-fence"
THREE_SIGMA = "three-sigma"
OUTLIER_KINDS = (IQR_FENCE, THREE_SIGMA)


@dataclass(frozen=True)
class OutlierRule:
    kind: str
    multiplier: float

    def __post_init__(self):
        if self.kind not in OUTLIER_KINDS:
            raise ValueError(f"unknown outlier rule {self.kind!r}")
        if self.multiplier <= 0:
            raise ValueError("multiplier must be positive")

    @staticmethod
    def iqr_fence(k=1.5):
        return OutlierRule(IQR_FENCE, k)

    @staticmethod
    def three_sigma(m=3.0):
        return OutlierRule(THREE_SIGMA, m)


@dataclass(frozen=True)
class CleanReport:
    rule: OutlierRule
    rows_in: int
    missing_rows_removed: int
    outlier_rows_removed: int
    per_attribute_flag_counts: tuple

    @property
    def rows_out(self):
        return self.rows_in - self.missing_rows_removed - self.outlier_rows_removed

    def to_csv(self, path, attribute_names, header_comment=None):
        with open(path, "w", newline="", encoding="ascii") as handle:
            if header_comment:
                handle.write(f"# {header_comment}\n")
            writer = csv.writer(handle)
            writer.writerow(["field", "value"])
            writer.writerow(["rule", self.rule.kind])
            writer.writerow(["multiplier", repr(self.rule.multiplier)])
            writer.writerow(["rows_in", self.rows_in])
            writer.writerow(["missing_rows_removed", self.missing_rows_removed])
            writer.writerow(["outlier_rows_removed", self.outlier_rows_removed])
            writer.writerow(["rows_out", self.rows_out])
            for name, count in zip(attribute_names, self.per_attribute_flag_counts):
                writer.writerow([f"flags_{name}", count])


def remove_missing(ds):
    """Drop every row containing a missing value; returns (dataset, count).

    Surviving rows keep their relative order. Raises ValueError if nothing
    survives.
    """
    keep = ~np.isnan(ds.values).any(axis=1)
    dropped = int(ds.n_rows - np.count_nonzero(keep))
    if dropped == 0:
        return ds, 0
    if not keep.any():
        raise ValueError("all rows contain missing values")
    return ds.take(np.nonzero(keep)[0]), dropped


def _violation_mask(values, rule):
    """Boolean (n, d) mask of per-cell rule violations."""
    if rule.kind == THREE_SIGMA:
        mean = values.mean(axis=0)
        std = values.std(axis=0, ddof=1)
        # constant attribute: s == 0 and every deviation is 0, so no flags
        return np.abs(values - mean) > rule.multiplier * std
    q1 = np.array([_quantile(np.sort(values[:, j]), 0.25)
                   for j in range(values.shape[1])])
    q3 = np.array([_quantile(np.sort(values[:, j]), 0.75)
                   for j in range(values.shape[1])])
    fence = rule.multiplier * (q3 - q1)
    return (values > q3 + fence) | (values < q1 - fence)


def flag_outliers(ds, rule):
    """Indices of rows where any attribute violates the rule.

    Statistics are computed per attribute over the full input in a single
    pass. Requires a missing-free dataset.
    """
    if ds.has_missing():
        raise ValueError("flag_outliers requires a missing-free dataset")
    mask = _violation_mask(ds.values, rule)
    return np.nonzero(mask.any(axis=1))[0]


def clean(ds, rule=None):
    """Remove missing rows, then outlier rows; returns (dataset, report).

    Missing removal happens strictly before outlier statistics are computed.
    The output carries provenance "clean".
    """
    rule = rule or OutlierRule.three_sigma()
    rows_in = ds.n_rows
    no_missing, n_missing = remove_missing(ds)
    mask = _violation_mask(no_missing.values, rule)
    flagged = mask.any(axis=1)
    per_attribute = tuple(int(c) for c in mask.sum(axis=0))
    survivors = np.nonzero(~flagged)[0]
    if survivors.size == 0:
        raise ValueError("outlier rule removed every row")
    report = CleanReport(
        rule=rule,
        rows_in=rows_in,
        missing_rows_removed=n_missing,
        outlier_rows_removed=int(np.count_nonzero(flagged)),
        per_attribute_flag_counts=per_attribute,
    )
    return no_missing.take(survivors, provenance="clean"), report
