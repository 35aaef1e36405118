"""One-way ANOVA over data forms, adequacy checks, and many-to-one comparison.

The workflow mirrors a classical fixed-effects analysis: verify that the
grid residuals are plausibly normal (Anderson-Darling, estimated mean and
variance) and that group variances are homogeneous (Brown-Forsythe), then
run the F test, then compare every treatment group against the designated
control with simultaneous confidence intervals whose critical value comes
from a seeded Monte Carlo estimate of the max-|t|-type null distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import anderson_darling_p, f_sf, normal_cdf

# fixed Monte Carlo chunk size; part of the seed contract, do not change
_MC_CHUNK = 200_000


@dataclass(frozen=True)
class AnovaReport:
    df_model: int
    df_error: int
    ss_model: float
    ss_error: float
    ss_total: float
    ms_model: float
    ms_error: float
    f_value: float
    p_value: float
    r_square: float
    coeff_var: float
    root_mse: float
    grand_mean: float


@dataclass(frozen=True)
class AdequacyReport:
    normality_stat: float       # Anderson-Darling A^2, small-sample corrected
    normality_p: float
    homogeneity_stat: float     # Brown-Forsythe F
    homogeneity_p: float
    alpha: float

    @property
    def normality_pass(self):
        return self.normality_p > self.alpha

    @property
    def homogeneity_pass(self):
        return self.homogeneity_p > self.alpha

    @property
    def passed(self):
        return self.normality_pass and self.homogeneity_pass


@dataclass(frozen=True)
class DunnettComparison:
    label: str
    difference: float
    ci_low: float
    ci_high: float
    significant: bool


@dataclass(frozen=True)
class DunnettReport:
    control_label: str
    comparisons: tuple
    critical_value: float
    standard_error: float
    df_error: int
    alpha: float
    mc_draws: int
    mc_seed: int

    @property
    def any_significant(self):
        return any(c.significant for c in self.comparisons)


def _validate_groups(groups):
    arrays = [np.asarray(g, dtype=float) for g in groups]
    if len(arrays) < 2:
        raise ValueError("need at least 2 groups")
    for g in arrays:
        if g.ndim != 1 or g.size < 2:
            raise ValueError("every group needs at least 2 values")
        if not np.isfinite(g).all():
            raise ValueError("groups contain non-finite values")
    return arrays


def anova_oneway(groups):
    """Fixed-effects one-way decomposition with an exact F-tail p-value."""
    arrays = _validate_groups(groups)
    pooled = np.concatenate(arrays)
    n_total = pooled.size
    k = len(arrays)
    df_model = k - 1
    df_error = n_total - k
    if df_error <= 0:
        raise ValueError("zero error degrees of freedom")
    grand_mean = float(pooled.mean())
    ss_total = float(((pooled - grand_mean) ** 2).sum())
    ss_model = float(sum(g.size * (g.mean() - grand_mean) ** 2
                         for g in arrays))
    ss_error = float(sum(((g - g.mean()) ** 2).sum() for g in arrays))
    ms_model = ss_model / df_model
    ms_error = ss_error / df_error
    if ms_error > 0.0:
        f_value = ms_model / ms_error
    else:
        f_value = math.inf if ms_model > 0.0 else 0.0
    p_value = f_sf(f_value, df_model, df_error)
    r_square = ss_model / ss_total if ss_total > 0.0 else 0.0
    root_mse = math.sqrt(ms_error)
    coeff_var = (100.0 * root_mse / grand_mean
                 if grand_mean != 0.0 else math.inf)
    return AnovaReport(
        df_model=df_model, df_error=df_error,
        ss_model=ss_model, ss_error=ss_error, ss_total=ss_total,
        ms_model=ms_model, ms_error=ms_error,
        f_value=float(f_value), p_value=float(p_value),
        r_square=float(r_square), coeff_var=float(coeff_var),
        root_mse=float(root_mse), grand_mean=grand_mean)


def anderson_darling_normal(values):
    """Anderson-Darling normality test with estimated mean and variance.

    Returns (corrected statistic, p). The small-sample correction
    A^2 * (1 + 0.75/n + 2.25/n^2) is applied before the p lookup.
    """
    x = np.sort(np.asarray(values, dtype=float))
    n = x.size
    if n < 4:
        raise ValueError("Anderson-Darling needs at least 4 values")
    std = x.std(ddof=1)
    if std == 0.0:
        raise ValueError("degenerate sample: zero variance")
    z = (x - x.mean()) / std
    cdf = np.clip(np.array([normal_cdf(v) for v in z]), 1e-300, 1 - 1e-16)
    i = np.arange(1, n + 1)
    a2 = -n - np.mean((2 * i - 1) * (np.log(cdf) + np.log1p(-cdf[::-1])))
    a2_star = a2 * (1.0 + 0.75 / n + 2.25 / n ** 2)
    return float(a2_star), anderson_darling_p(a2_star)


def brown_forsythe(groups):
    """Homogeneity-of-variance F test on absolute deviations from medians."""
    arrays = _validate_groups(groups)
    deviations = [np.abs(g - np.median(g)) for g in arrays]
    report = anova_oneway(deviations)
    return report.f_value, report.p_value


def adequacy(groups, alpha=0.05):
    """Normality of pooled residuals plus variance homogeneity.

    Residuals are deviations from group means. Raises on degenerate
    (all-zero) residuals.
    """
    arrays = _validate_groups(groups)
    residuals = np.concatenate([g - g.mean() for g in arrays])
    if np.all(residuals == 0.0):
        raise ValueError("degenerate residuals: all zero")
    normality_stat, normality_p = anderson_darling_normal(residuals)
    homogeneity_stat, homogeneity_p = brown_forsythe(arrays)
    return AdequacyReport(
        normality_stat=normality_stat, normality_p=normality_p,
        homogeneity_stat=homogeneity_stat, homogeneity_p=homogeneity_p,
        alpha=alpha)


def dunnett_critical_value(n_comparisons, df_error, alpha=0.05,
                           mc_draws=1_000_000, seed=0):
    """Two-sided many-to-one critical value by Monte Carlo.

    Simulates max_i |Z_i - Z_0| / (S * sqrt(2)) with Z iid standard normal
    and S^2 = chi^2_df / df, then takes the (1 - alpha) quantile. The draw
    sequence is fully determined by the seed and the fixed chunk size.
    """
    rng = np.random.default_rng(seed)
    statistics = np.empty(mc_draws)
    filled = 0
    while filled < mc_draws:
        take = min(_MC_CHUNK, mc_draws - filled)
        z = rng.standard_normal((take, n_comparisons + 1))
        scale = np.sqrt(rng.chisquare(df_error, take) / df_error)
        spread = np.abs(z[:, 1:] - z[:, :1]).max(axis=1)
        statistics[filled:filled + take] = spread / (scale * math.sqrt(2.0))
        filled += take
    return float(np.quantile(statistics, 1.0 - alpha))


def dunnett(groups, control_index=0, alpha=0.05, mc_draws=1_000_000,
            seed=0, labels=None):
    """Compare every group mean against the control with simultaneous CIs.

    Requires balanced groups. CI half-width is d * sqrt(2 * MSE / n) where
    d is the Monte Carlo critical value; a comparison is significant
    exactly when its interval excludes zero.
    """
    arrays = _validate_groups(groups)
    sizes = {g.size for g in arrays}
    if len(sizes) != 1:
        raise ValueError("dunnett requires balanced groups")
    n = arrays[0].size
    k = len(arrays) - 1
    if labels is None:
        labels = [f"group{i}" for i in range(len(arrays))]
    if not 0 <= control_index < len(arrays):
        raise ValueError("control index out of range")
    base = anova_oneway(arrays)
    standard_error = math.sqrt(2.0 * base.ms_error / n)
    critical = dunnett_critical_value(k, base.df_error, alpha,
                                      mc_draws, seed)
    control_mean = arrays[control_index].mean()
    comparisons = []
    for index, (group, label) in enumerate(zip(arrays, labels)):
        if index == control_index:
            continue
        difference = float(group.mean() - control_mean)
        half_width = critical * standard_error
        low, high = difference - half_width, difference + half_width
        comparisons.append(DunnettComparison(
            label=label, difference=difference,
            ci_low=float(low), ci_high=float(high),
            significant=not (low <= 0.0 <= high)))
    # report order: largest difference first, matching the classical layout
    comparisons.sort(key=lambda c: -c.difference)
    return DunnettReport(
        control_label=labels[control_index],
        comparisons=tuple(comparisons),
        critical_value=critical,
        standard_error=standard_error,
        df_error=base.df_error,
        alpha=alpha, mc_draws=mc_draws, mc_seed=seed)
