"""gammasep: gamma/hadron event classification pipeline.

Cleaning, rescaling, feature extraction/selection, six from-scratch
classifiers, a cross-validated experiment grid over eight data forms, and
the statistical comparison of those forms against the raw baseline.
"""

from .data import (
    ATTRIBUTE_NAMES, Dataset, ParseError, load_csv, save_csv, skewness,
    summarize,
)
from .preprocess import CleanReport, OutlierRule, clean, flag_outliers, remove_missing
from .transform import FittedTransform, fit, apply, fit_apply
from .features import (
    FeatureMap, FScoreTable, apply_map, f_scores, ica_fit, pca_fit,
    rfe_select, ufs_select,
)
from .models import ALGORITHMS, ModelSpec
from .evaluation import (
    DATA_FORMS, EvalCell, FoldPlan, ResultsGrid, cross_validate, make_folds,
    roc_auc, run_grid,
)
from .stats import (
    AdequacyReport, AnovaReport, DunnettReport, adequacy, anova_oneway,
    dunnett, dunnett_critical_value,
)
from .pipeline import PipelineArtifacts, build_forms
from .synthetic import make_synthetic

__version__ = "0.1.0"
