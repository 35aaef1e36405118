"""Seeded synthetic event tables with realistic attribute scales.

Not a physics simulation: the generator only mimics the scale diversity,
skew, and class structure of real telescope image parameters so the
pipeline can be exercised end to end (and the CLI demonstrated) without
the real data file. fAlpha is the strongest separator by construction.
"""

from __future__ import annotations

import numpy as np

from .data import GAMMA, HADRON, LABEL_BY_CODE, Dataset, format_value


def make_synthetic(n_rows=4000, seed=0, gamma_fraction=0.65):
    rng = np.random.default_rng(seed)
    labels = (rng.random(n_rows) < gamma_fraction).astype(np.uint8)
    is_gamma = labels == GAMMA
    n = n_rows

    length = np.exp(rng.normal(np.where(is_gamma, 3.35, 3.75), 0.65, n))
    width = 2.0 + 0.32 * length * np.abs(rng.normal(1.0, 0.35, n))
    size = 2.0 + 0.011 * length + 0.004 * width + rng.normal(0.0, 0.28, n)
    conc_logit = 1.3 - 0.9 * (size - 2.6) + rng.normal(0.0, 0.5, n)
    conc = 0.75 / (1.0 + np.exp(-conc_logit)) + 0.05
    conc1 = conc * rng.uniform(0.45, 0.68, n)
    asym = rng.normal(np.where(is_gamma, 9.0, -6.0), 55.0, n)
    m3_long = rng.normal(np.where(is_gamma, 16.0, -6.0), 48.0, n)
    m3_trans = rng.normal(0.0, 19.0, n)
    alpha = np.where(
        is_gamma,
        np.abs(rng.normal(0.0, 13.0, n)),
        rng.uniform(0.0, 90.0, n))
    alpha = np.clip(alpha, 0.0, 90.0)
    dist = np.clip(rng.normal(np.where(is_gamma, 190.0, 208.0), 72.0, n),
                   5.0, 460.0)

    values = np.column_stack([length, width, size, conc, conc1,
                              asym, m3_long, m3_trans, alpha, dist])
    return Dataset(values, labels, provenance="raw")


def write_csv_with_sentinels(ds, path, n_sentinels, seed=0):
    """Write a dataset in the native format with missing-value sentinels
    injected at seeded random positions, at most one per row.

    Half the injected slots (rounded down) become empty fields, the rest
    the literal 99999. Returns the list of (row, column) positions.
    """
    if n_sentinels > ds.n_rows:
        raise ValueError("cannot place more sentinels than rows")
    rng = np.random.default_rng(seed)
    rows = rng.choice(ds.n_rows, size=n_sentinels, replace=False)
    columns = rng.integers(0, ds.n_attributes, size=n_sentinels)
    positions = {(int(r), int(c)) for r, c in zip(rows, columns)}
    empty_cut = n_sentinels // 2
    styles = {}
    for index, (r, c) in enumerate(sorted(positions)):
        styles[(r, c)] = "" if index < empty_cut else "99999"
    with open(path, "w", encoding="ascii") as handle:
        for r in range(ds.n_rows):
            fields = []
            for c in range(ds.n_attributes):
                if (r, c) in styles:
                    fields.append(styles[(r, c)])
                else:
                    fields.append(format_value(ds.values[r, c]))
            fields.append(LABEL_BY_CODE[int(ds.labels[r])])
            handle.write(",".join(fields) + "\n")
    return sorted(positions)
