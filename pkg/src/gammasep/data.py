"""Loading, validation, and per-attribute summaries of the gamma-telescope event table.

The native file format is a header-less CSV with 11 comma-separated fields per
line: ten real-valued image attributes followed by a single class character,
``g`` (gamma, the signal class) or ``h`` (hadron, the background class).
Empty fields and the exact numeric value 99999 conventionally mark missing
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

ATTRIBUTE_NAMES = (
    "fLength", "fWidth", "fSize", "fConc", "fConc1",
    "fAsym", "fM3Long", "fM3Trans", "fAlpha", "fDist",
)
N_ATTRIBUTES = len(ATTRIBUTE_NAMES)

GAMMA, HADRON = 1, 0
LABEL_CHARS = {"g": GAMMA, "h": HADRON}
LABEL_BY_CODE = {GAMMA: "g", HADRON: "h"}

MISSING_SENTINEL = 99999.0

# empty-cell: only blank fields are missing; value-99999 / both: blank fields
# and the exact sentinel value are missing (a blank field can never carry data,
# so it is treated as missing under every policy).
SENTINEL_POLICIES = ("empty-cell", "value-99999", "both")


class ParseError(ValueError):
    """Malformed input line; message names the offending line number."""


class SkewnessUnavailableError(ValueError):
    """Attribute has fewer than 3 non-missing values."""


class Dataset:
    """Labeled numeric table: n rows of real attributes plus a binary class.

    ``values`` is an (n, d) float array with NaN marking missing slots;
    ``labels`` is an (n,) array of {1, 0} for gamma/hadron. Arrays are
    marked read-only, so instances are safe to share across threads.
    """

    def __init__(self, values, labels, provenance="raw",
                 attribute_names=ATTRIBUTE_NAMES):
        values = np.array(values, dtype=float)
        labels = np.array(labels, dtype=np.uint8)
        if values.ndim != 2:
            raise ValueError("values must be a 2-D array")
        if values.shape[0] == 0:
            raise ValueError("dataset must contain at least one row")
        if values.shape[1] != len(attribute_names):
            raise ValueError(
                f"row width {values.shape[1]} does not match "
                f"{len(attribute_names)} attribute names")
        if labels.shape != (values.shape[0],):
            raise ValueError("labels must be one per row")
        if not np.isin(labels, (GAMMA, HADRON)).all():
            raise ValueError("labels must be 1 (gamma) or 0 (hadron)")
        values.flags.writeable = False
        labels.flags.writeable = False
        self.values = values
        self.labels = labels
        self.provenance = provenance
        self.attribute_names = tuple(attribute_names)

    @property
    def n_rows(self):
        return self.values.shape[0]

    @property
    def n_attributes(self):
        return self.values.shape[1]

    def class_counts(self):
        """Return (gamma_count, hadron_count); they always sum to n_rows."""
        n_gamma = int(np.count_nonzero(self.labels == GAMMA))
        return n_gamma, self.n_rows - n_gamma

    def missing_mask(self):
        return np.isnan(self.values)

    def has_missing(self):
        return bool(np.isnan(self.values).any())

    def take(self, row_indices, provenance=None):
        """New Dataset restricted to the given rows (order preserved)."""
        idx = np.asarray(row_indices, dtype=int)
        return Dataset(self.values[idx], self.labels[idx],
                       provenance or self.provenance, self.attribute_names)

    def replace(self, values=None, labels=None, provenance=None,
                attribute_names=None):
        return Dataset(
            self.values if values is None else values,
            self.labels if labels is None else labels,
            provenance or self.provenance,
            self.attribute_names if attribute_names is None else attribute_names,
        )

    def __repr__(self):
        g, h = self.class_counts()
        return (f"Dataset(n={self.n_rows}, d={self.n_attributes}, "
                f"gamma={g}, hadron={h}, provenance={self.provenance!r})")


@dataclass(frozen=True)
class AttributeSummary:
    name: str
    n: int
    mean: float
    std: float
    minimum: float
    maximum: float
    q1: float
    median: float
    q3: float
    skewness: float
    missing_count: int


def _parse_field(field, line_no, policy):
    text = field.strip()
    if text == "":
        return math.nan
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"line {line_no}: unparsable number {field!r}") from None
    if policy in ("value-99999", "both") and value == MISSING_SENTINEL:
        return math.nan
    return value


def load_csv(path, sentinel_policy="both"):
    """Parse an event file into a Dataset, flagging missing-value sentinels.

    Every line must carry exactly 11 comma-separated fields. Empty fields
    always become missing; fields equal to exactly 99999 become missing
    under the ``value-99999`` and ``both`` policies. A header line starting
    with ``fLength`` is skipped. Raises ParseError naming the line number
    for wrong field counts, unparsable numbers, or unknown label characters.
    """
    if sentinel_policy not in SENTINEL_POLICIES:
        raise ValueError(f"unknown sentinel policy {sentinel_policy!r}")
    path = Path(path)
    rows, labels = [], []
    with open(path, "r", encoding="ascii") as handle:
        for line_no, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            if line_no == 1 and line.startswith("fLength"):
                continue
            fields = line.split(",")
            if len(fields) != N_ATTRIBUTES + 1:
                raise ParseError(
                    f"line {line_no}: expected {N_ATTRIBUTES + 1} fields, "
                    f"got {len(fields)}")
            label_char = fields[-1].strip()
            if label_char not in LABEL_CHARS:
                raise ParseError(
                    f"line {line_no}: unknown label {label_char!r}")
            rows.append([_parse_field(f, line_no, sentinel_policy)
                         for f in fields[:-1]])
            labels.append(LABEL_CHARS[label_char])
    if not rows:
        raise ParseError(f"{path}: no data rows")
    return Dataset(np.array(rows), np.array(labels), provenance="raw")


def format_value(x):
    """Shortest decimal string that round-trips the float exactly."""
    if math.isnan(x):
        return ""
    return repr(float(x))


def save_csv(ds, path):
    """Write a Dataset back in the native 11-field format."""
    with open(path, "w", encoding="ascii") as handle:
        for row, label in zip(ds.values, ds.labels):
            fields = [format_value(v) for v in row]
            fields.append(LABEL_BY_CODE[int(label)])
            handle.write(",".join(fields) + "\n")


def _quantile(sorted_values, fraction):
    # linear interpolation between closest order statistics (type 7)
    n = sorted_values.size
    position = fraction * (n - 1)
    low = int(math.floor(position))
    high = min(low + 1, n - 1)
    weight = position - low
    return float(sorted_values[low] * (1 - weight) + sorted_values[high] * weight)


def skewness(values):
    """Adjusted Fisher-Pearson skewness, g1 * sqrt(n(n-1)) / (n-2).

    Requires at least 3 values; a constant sample has skewness 0.
    """
    x = np.asarray(values, dtype=float)
    n = x.size
    if n < 3:
        raise SkewnessUnavailableError(
            f"skewness needs >= 3 values, got {n}")
    mean = x.mean()
    m2 = ((x - mean) ** 2).mean()
    if m2 == 0.0:
        return 0.0
    m3 = ((x - mean) ** 3).mean()
    g1 = m3 / m2 ** 1.5
    return float(g1 * math.sqrt(n * (n - 1)) / (n - 2))


def summarize(ds):
    """Per-attribute summary statistics over non-missing values.

    Quantiles use linear interpolation between closest ranks; std uses the
    N-1 denominator. Raises SkewnessUnavailableError naming the attribute
    when it has fewer than 3 non-missing values.
    """
    summaries = []
    for j, name in enumerate(ds.attribute_names):
        column = ds.values[:, j]
        present = column[~np.isnan(column)]
        missing = ds.n_rows - present.size
        if present.size < 3:
            raise SkewnessUnavailableError(
                f"attribute {name}: skewness needs >= 3 non-missing values, "
                f"got {present.size}")
        ordered = np.sort(present)
        summaries.append(AttributeSummary(
            name=name,
            n=int(present.size),
            mean=float(present.mean()),
            std=float(present.std(ddof=1)),
            minimum=float(ordered[0]),
            maximum=float(ordered[-1]),
            q1=_quantile(ordered, 0.25),
            median=_quantile(ordered, 0.50),
            q3=_quantile(ordered, 0.75),
            skewness=skewness(present),
            missing_count=int(missing),
        ))
    return summaries
