"""End-to-end construction of the eight data forms evaluated by the grid.

raw    events after missing-value removal only (the comparison baseline)
clean  raw minus outlier rows under the configured rule
norm   clean rescaled to [0, 1] per attribute
stand  clean rescaled to zero mean, unit sample variance
pca    clean projected onto the principal components kept by the
       variance target
ica    clean projected onto independent components (whitened outputs)
ufs    clean restricted to the top-k attributes by F score
rfe    clean restricted to the survivors of recursive elimination
"""

from __future__ import annotations

from dataclasses import dataclass

from . import features, preprocess, transform
from .data import Dataset


@dataclass
class PipelineArtifacts:
    """Everything the downstream grid, stats, and reports consume."""

    raw: Dataset
    clean: Dataset
    forms: dict                     # name -> Dataset, grid row order
    clean_report: preprocess.CleanReport
    minmax: transform.FittedTransform
    zscore: transform.FittedTransform
    fscore_table: features.FScoreTable
    feature_maps: dict              # kind -> FeatureMap


def build_forms(dataset, rule=None, variance_target=0.95, n_features=5,
                ica_seed=0, ica_max_iter=200, rfe_seed=0):
    """Run cleaning, rescaling, and feature engineering on a loaded dataset.

    The input may contain missing values; the raw baseline is the dataset
    after missing-value removal only. rfe_seed is accepted for config
    completeness (the elimination loop is deterministic).
    """
    del rfe_seed
    raw, _ = preprocess.remove_missing(dataset)
    clean, clean_report = preprocess.clean(dataset, rule)

    minmax = transform.fit(transform.MINMAX, clean)
    zscore = transform.fit(transform.ZSCORE, clean)

    pca_map = features.pca_fit(clean, variance_target)
    ica_map = features.ica_fit(clean, n_components=n_features,
                               max_iter=ica_max_iter, seed=ica_seed)
    fscore_table = features.f_scores(clean)
    ufs_map = features.ufs_select(clean, n_features)
    rfe_map = features.rfe_select(clean, n_features)

    forms = {
        "raw": raw,
        "clean": clean,
        "norm": transform.apply(minmax, clean),
        "stand": transform.apply(zscore, clean),
        "pca": features.apply_map(pca_map, clean),
        "ica": features.apply_map(ica_map, clean),
        "ufs": features.apply_map(ufs_map, clean),
        "rfe": features.apply_map(rfe_map, clean),
    }
    return PipelineArtifacts(
        raw=raw, clean=clean, forms=forms, clean_report=clean_report,
        minmax=minmax, zscore=zscore, fscore_table=fscore_table,
        feature_maps={"pca": pca_map, "ica": ica_map,
                      "ufs": ufs_map, "rfe": rfe_map})
