"""Command line interface: clean -> transform -> features -> grid -> stats -> report.

Every command writes into a single run directory and refreshes its manifest.
Outputs embed the config hash and seeds, and reruns with an identical
configuration reproduce every file byte for byte (the manifest timestamp
aside).
"""

from __future__ import annotations

import argparse
import csv
import datetime
import hashlib
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import data, evaluation, features, preprocess, reference, reporting, stats, transform
from .config import ConfigError, RunConfig, load_config, validate_config
from .data import ParseError
from .features import NumericError
from .pipeline import build_forms

DATA_ENV = "GAMMASEP_DATA"


class UserError(Exception):
    """Bad paths, missing prerequisites, or other operator mistakes."""


# ---------------------------------------------------------------------------
# small io helpers


def _out_dir(config):
    path = Path(config.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_text(path, text):
    Path(path).write_text(text, encoding="ascii")


def _write_kv_csv(path, pairs, stamp):
    with open(path, "w", newline="", encoding="ascii") as handle:
        handle.write(f"# {stamp}\n")
        writer = csv.writer(handle)
        writer.writerow(["field", "value"])
        for key, value in pairs:
            writer.writerow([key, value])


def _read_kv_csv(path):
    pairs = {}
    with open(path, "r", encoding="ascii") as handle:
        for row in csv.reader(
                line for line in handle if not line.startswith("#")):
            if not row or row[0] == "field":
                continue
            pairs[row[0]] = row[1]
    return pairs


def _sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for block in iter(lambda: handle.read(65536), b""):
            digest.update(block)
    return digest.hexdigest()


def _update_manifest(config, out_dir, command, written):
    manifest_path = out_dir / "manifest.json"
    manifest = {"config_hash": config.config_hash(),
                "seeds": config.seeds(), "commands": [], "files": {}}
    if manifest_path.exists():
        previous = json.loads(manifest_path.read_text(encoding="ascii"))
        manifest["commands"] = previous.get("commands", [])
        manifest["files"] = previous.get("files", {})
    if command not in manifest["commands"]:
        manifest["commands"].append(command)
    for path in written:
        manifest["files"][Path(path).name] = _sha256(path)
    manifest["generated"] = datetime.datetime.now(
        datetime.timezone.utc).isoformat()
    manifest_path.write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n",
        encoding="ascii")


# ---------------------------------------------------------------------------
# lazy pipeline context shared by the commands


def _load_input(config, ctx):
    if "input" not in ctx:
        path = Path(config.input_path)
        if not path.exists():
            raise UserError(
                f"input file {path} not found (set --input or {DATA_ENV})")
        ctx["input"] = data.load_csv(path, config.sentinel_policy)
    return ctx["input"]


def _rule(config):
    if config.outlier_rule == "iqr-fence":
        return preprocess.OutlierRule.iqr_fence(config.iqr_multiplier)
    return preprocess.OutlierRule.three_sigma(config.sigma_multiplier)


def _ensure_artifacts(config, ctx):
    if "artifacts" not in ctx:
        dataset = _load_input(config, ctx)
        ctx["artifacts"] = build_forms(
            dataset, rule=_rule(config),
            variance_target=config.variance_target,
            n_features=config.n_features,
            ica_seed=config.ica_seed, rfe_seed=config.rfe_seed)
    return ctx["artifacts"]


# ---------------------------------------------------------------------------
# commands


def cmd_clean(config, ctx):
    out = _out_dir(config)
    stamp = config.stamp()
    artifacts = _ensure_artifacts(config, ctx)
    written = []

    for name, ds in (("raw.csv", artifacts.raw), ("clean.csv", artifacts.clean)):
        data.save_csv(ds, out / name)
        written.append(out / name)

    artifacts.clean_report.to_csv(out / "clean_report.csv",
                                  artifacts.clean.attribute_names, stamp)
    written.append(out / "clean_report.csv")

    # both rules side by side on the missing-free baseline
    iqr_count = len(preprocess.flag_outliers(
        artifacts.raw, preprocess.OutlierRule.iqr_fence(config.iqr_multiplier)))
    sigma_count = len(preprocess.flag_outliers(
        artifacts.raw,
        preprocess.OutlierRule.three_sigma(config.sigma_multiplier)))
    _write_kv_csv(out / "outlier_counts.csv",
                  [("iqr_fence_rows", iqr_count),
                   ("three_sigma_rows", sigma_count),
                   ("rows_after_missing_removal", artifacts.raw.n_rows)],
                  stamp)
    written.append(out / "outlier_counts.csv")

    with open(out / "clean_summary.csv", "w", newline="",
              encoding="ascii") as handle:
        handle.write(f"# {stamp}\n")
        writer = csv.writer(handle)
        writer.writerow(["attribute", "n", "mean", "std", "min", "q1",
                         "median", "q3", "max", "skewness", "missing"])
        for s in data.summarize(artifacts.clean):
            writer.writerow([s.name, s.n, repr(s.mean), repr(s.std),
                             repr(s.minimum), repr(s.q1), repr(s.median),
                             repr(s.q3), repr(s.maximum), repr(s.skewness),
                             s.missing_count])
    written.append(out / "clean_summary.csv")

    _update_manifest(config, out, "clean", written)
    report = artifacts.clean_report
    print(f"clean: {report.rows_in} rows in, "
          f"{report.missing_rows_removed} missing removed, "
          f"{report.outlier_rows_removed} outlier rows removed "
          f"({report.rule.kind}), {report.rows_out} rows out")
    print(f"clean: outlier counts side by side: iqr-fence={iqr_count} "
          f"three-sigma={sigma_count}")
    return 0


def cmd_transform(config, ctx):
    out = _out_dir(config)
    stamp = config.stamp()
    artifacts = _ensure_artifacts(config, ctx)
    written = []
    for name, ds in (("norm.csv", artifacts.forms["norm"]),
                     ("stand.csv", artifacts.forms["stand"])):
        data.save_csv(ds, out / name)
        written.append(out / name)
    transform.save_transform(artifacts.minmax, out / "minmax.txt", stamp)
    transform.save_transform(artifacts.zscore, out / "zscore.txt", stamp)
    written += [out / "minmax.txt", out / "zscore.txt"]
    _update_manifest(config, out, "transform", written)
    print("transform: wrote norm.csv, stand.csv and fitted parameters")
    return 0


def cmd_features(config, ctx):
    out = _out_dir(config)
    stamp = config.stamp()
    artifacts = _ensure_artifacts(config, ctx)
    written = []
    for kind in ("pca", "ica", "ufs", "rfe"):
        features.save_feature_map(artifacts.feature_maps[kind],
                                  out / f"{kind}_map.txt", stamp)
        data.save_csv(artifacts.forms[kind], out / f"{kind}.csv")
        written += [out / f"{kind}_map.txt", out / f"{kind}.csv"]
    table = artifacts.fscore_table
    with open(out / "fscores.csv", "w", newline="", encoding="ascii") as handle:
        handle.write(f"# {stamp}\n")
        writer = csv.writer(handle)
        writer.writerow(["attribute", "f_score", "rank"])
        for name, score, rank in zip(table.attribute_names, table.scores,
                                     table.ranks):
            writer.writerow([name, repr(score), rank])
    written.append(out / "fscores.csv")
    _update_manifest(config, out, "features", written)
    pca_map = artifacts.feature_maps["pca"]
    print(f"features: pca kept {pca_map.n_outputs} components "
          f"(cumulative variance "
          f"{sum(pca_map.explained_variance_ratios):.4f})")
    ica_map = artifacts.feature_maps["ica"]
    print(f"features: ica converged={ica_map.converged} "
          f"after {ica_map.n_iter} iterations")
    ufs_names = [artifacts.clean.attribute_names[j]
                 for j in artifacts.feature_maps["ufs"].indices]
    rfe_names = [artifacts.clean.attribute_names[j]
                 for j in artifacts.feature_maps["rfe"].indices]
    print(f"features: ufs selected {', '.join(ufs_names)}")
    print(f"features: rfe selected {', '.join(rfe_names)}")
    return 0


def cmd_grid(config, ctx):
    out = _out_dir(config)
    stamp = config.stamp()
    artifacts = _ensure_artifacts(config, ctx)
    forms = dict(artifacts.forms)
    refit = None
    if config.per_fold_transform:
        # strict mode: rescaling parameters are re-fit inside each fold
        forms["norm"] = artifacts.clean
        forms["stand"] = artifacts.clean
        refit = {"norm": "minmax", "stand": "zscore"}
    grid = evaluation.run_grid(
        forms, n_folds=config.n_folds, seed=config.fold_seed,
        workers=config.workers, refit_transforms=refit)
    ctx["grid"] = grid
    written = []
    evaluation.write_grid_detail(grid, out / "grid_detail.csv", stamp)
    written.append(out / "grid_detail.csv")
    for metric in ("accuracy", "auc"):
        reporting.write_summary_csv(grid, metric,
                                    out / f"summary_{metric}.csv", stamp)
        _write_text(out / f"summary_{metric}.txt",
                    f"# {stamp}\n"
                    + reporting.summary_table_text(grid, metric))
        written += [out / f"summary_{metric}.csv",
                    out / f"summary_{metric}.txt"]
    _update_manifest(config, out, "grid", written)
    for metric in ("accuracy", "auc"):
        best = max(grid.data_forms, key=lambda f: grid.row_mean(f, metric))
        print(f"grid: best {metric} row mean: {best} "
              f"({grid.row_mean(best, metric):.4f})")
    return 0


def _anova_csv_pairs(report):
    return [(name, repr(getattr(report, name))) for name in (
        "df_model", "df_error", "ss_model", "ss_error", "ss_total",
        "ms_model", "ms_error", "f_value", "p_value", "r_square",
        "coeff_var", "root_mse", "grand_mean")]


def _write_dunnett_csv(report, path, stamp):
    with open(path, "w", newline="", encoding="ascii") as handle:
        handle.write(f"# {stamp}\n")
        writer = csv.writer(handle)
        writer.writerow(["comparison", "difference", "ci_low", "ci_high",
                         "significant"])
        for c in report.comparisons:
            writer.writerow([f"{c.label}-{report.control_label}",
                             repr(c.difference), repr(c.ci_low),
                             repr(c.ci_high), str(c.significant).lower()])
        writer.writerow(["critical_value", repr(report.critical_value),
                         "", "", ""])


def _grid_for_stats(config, ctx):
    if "grid" in ctx:
        return ctx["grid"]
    detail = Path(config.output_dir) / "grid_detail.csv"
    if not detail.exists():
        raise UserError("grid results not found; run 'gammasep grid' first")
    return evaluation.read_grid_detail(detail)


def cmd_stats(config, ctx):
    out = _out_dir(config)
    stamp = config.stamp()
    grid = _grid_for_stats(config, ctx)
    written = []

    for metric in ("accuracy", "auc"):
        groups = [grid.row_values(form, metric) for form in grid.data_forms]
        adequacy_report = stats.adequacy(groups, config.alpha)
        _write_text(out / f"adequacy_{metric}.txt",
                    f"# {stamp}\n" + reporting.adequacy_text(adequacy_report,
                                                             metric))
        _write_kv_csv(out / f"adequacy_{metric}.csv", [
            ("normality_stat", repr(adequacy_report.normality_stat)),
            ("normality_p", repr(adequacy_report.normality_p)),
            ("homogeneity_stat", repr(adequacy_report.homogeneity_stat)),
            ("homogeneity_p", repr(adequacy_report.homogeneity_p)),
            ("passed", str(adequacy_report.passed).lower()),
        ], stamp)
        written += [out / f"adequacy_{metric}.txt",
                    out / f"adequacy_{metric}.csv"]
        if not adequacy_report.passed and not config.force_anova:
            print(f"stats: {metric} failed adequacy checks "
                  f"(normality p={adequacy_report.normality_p:.4f}, "
                  f"homogeneity p={adequacy_report.homogeneity_p:.4f}); "
                  f"ANOVA skipped (use --force-anova to override)")
            continue
        anova_report = stats.anova_oneway(groups)
        _write_text(out / f"anova_{metric}.txt",
                    f"# {stamp}\n"
                    + reporting.anova_text(anova_report, metric.upper()))
        _write_kv_csv(out / f"anova_{metric}.csv",
                      _anova_csv_pairs(anova_report), stamp)
        control = grid.data_forms.index("raw") if "raw" in grid.data_forms else 0
        dunnett_report = stats.dunnett(
            groups, control_index=control, alpha=config.alpha,
            mc_draws=config.mc_draws, seed=config.mc_seed,
            labels=list(grid.data_forms))
        _write_text(out / f"dunnett_{metric}.txt",
                    f"# {stamp}\n" + reporting.dunnett_text(dunnett_report))
        _write_dunnett_csv(dunnett_report, out / f"dunnett_{metric}.csv",
                           stamp)
        written += [out / f"anova_{metric}.txt", out / f"anova_{metric}.csv",
                    out / f"dunnett_{metric}.txt",
                    out / f"dunnett_{metric}.csv"]
        conclusion = ("no significant difference"
                      if anova_report.p_value > config.alpha
                      else "significant difference")
        print(f"stats: {metric} ANOVA F={anova_report.f_value:.2f} "
              f"p={anova_report.p_value:.4f} -> {conclusion} "
              f"at alpha={config.alpha:g}")

    # deterministic reference analysis of the published AUC summary values
    reference_groups = reference.auc_groups()
    reference_anova = stats.anova_oneway(reference_groups)
    _write_text(out / "reference_anova.txt",
                f"# {stamp}\n"
                + reporting.anova_text(reference_anova, "AUC"))
    _write_kv_csv(out / "reference_anova.csv",
                  _anova_csv_pairs(reference_anova), stamp)
    reference_dunnett = stats.dunnett(
        reference_groups, control_index=0, alpha=0.05,
        mc_draws=config.mc_draws, seed=config.mc_seed,
        labels=list(reference.FORM_ORDER))
    _write_text(out / "reference_dunnett.txt",
                f"# {stamp}\n" + reporting.dunnett_text(reference_dunnett))
    _write_dunnett_csv(reference_dunnett, out / "reference_dunnett.csv",
                       stamp)
    written += [out / "reference_anova.txt", out / "reference_anova.csv",
                out / "reference_dunnett.txt", out / "reference_dunnett.csv"]

    auc_groups = [grid.row_values(form, "auc") for form in grid.data_forms]
    svg = reporting.box_whisker_svg(
        auc_groups, grid.data_forms,
        title="AUC by data form", comment=stamp)
    _write_text(out / "auc_boxplot.svg", svg)
    written.append(out / "auc_boxplot.svg")

    _update_manifest(config, out, "stats", written)
    return 0


def _tolerance(config, key, default):
    return config.tolerance_overrides.get(key, default)


def _scorecard_rows(config, out):
    rows = []
    tol = lambda key, default: _tolerance(config, key, default)

    def fmt(value, digits=4):
        if value is None:
            return "-"
        return f"{value:.{digits}f}"

    # outlier counts
    counts_path = out / "outlier_counts.csv"
    iqr = sigma = None
    if counts_path.exists():
        pairs = _read_kv_csv(counts_path)
        iqr = float(pairs["iqr_fence_rows"])
        sigma = float(pairs["three_sigma_rows"])
    fraction = tol("outliers", 0.05)
    rows.append(("outlier rows (iqr fence)", reference.OUTLIERS_IQR_FENCE,
                 fmt(iqr, 0), f"+-{fraction:.0%}",
                 reporting.verdict_rel(iqr, reference.OUTLIERS_IQR_FENCE,
                                       fraction) if iqr is not None
                 else reporting.NA))
    rows.append(("outlier rows (three sigma)",
                 reference.OUTLIERS_THREE_SIGMA, fmt(sigma, 0),
                 f"+-{fraction:.0%}",
                 reporting.verdict_rel(sigma, reference.OUTLIERS_THREE_SIGMA,
                                       fraction) if sigma is not None
                 else reporting.NA))

    # clean-data skewness
    summary_path = out / "clean_summary.csv"
    skewness = {}
    if summary_path.exists():
        with open(summary_path, "r", encoding="ascii") as handle:
            for row in csv.DictReader(
                    line for line in handle if not line.startswith("#")):
                skewness[row["attribute"]] = float(row["skewness"])
    for name, target in reference.CLEAN_SKEWNESS.items():
        measured = skewness.get(name)
        t = tol(f"skewness_{name}", tol("skewness", 0.15))
        rows.append((f"clean skewness {name}", f"{target:.6f}",
                     fmt(measured, 6), f"+-{t:g}",
                     reporting.verdict_abs(measured, target, t)))

    # pca
    pca_path = out / "pca_map.txt"
    if pca_path.exists():
        pca_map = features.load_feature_map(pca_path)
        ratios = pca_map.explained_variance_ratios
        rows.append(("pca components kept", reference.PCA_N_COMPONENTS,
                     str(pca_map.n_outputs), "exact",
                     reporting.verdict_bool(
                         pca_map.n_outputs == reference.PCA_N_COMPONENTS)))
        cumulative = sum(ratios)
        t = tol("pca_cumulative", 0.01)
        rows.append(("pca cumulative variance",
                     f"{reference.PCA_CUMULATIVE_VARIANCE:.4f}",
                     fmt(cumulative), f"+-{t:g}",
                     reporting.verdict_abs(cumulative,
                                           reference.PCA_CUMULATIVE_VARIANCE,
                                           t)))
        for index, target in enumerate(reference.PCA_VARIANCE_RATIOS):
            measured = ratios[index] if index < len(ratios) else None
            t = tol("pca_ratio", 0.02)
            rows.append((f"pca variance ratio {index + 1}",
                         f"{target:.6f}", fmt(measured, 6), f"+-{t:g}",
                         reporting.verdict_abs(measured, target, t)))
    else:
        rows.append(("pca components kept", reference.PCA_N_COMPONENTS,
                     "-", "exact", reporting.NA))

    # f scores and selections
    fscore_path = out / "fscores.csv"
    if fscore_path.exists():
        measured_scores = {}
        with open(fscore_path, "r", encoding="ascii") as handle:
            for row in csv.DictReader(
                    line for line in handle if not line.startswith("#")):
                measured_scores[row["attribute"]] = float(row["f_score"])
        fraction = tol("fscore", 0.10)
        for name, target in reference.UFS_SCORES.items():
            measured = measured_scores.get(name)
            rows.append((f"f score {name}", f"{target:.4g}",
                         fmt(measured, 3), f"+-{fraction:.0%}",
                         reporting.verdict_rel(measured, target, fraction)))
    ufs_path = out / "ufs_map.txt"
    if ufs_path.exists():
        ufs_map = features.load_feature_map(ufs_path)
        names = {data.ATTRIBUTE_NAMES[j] for j in ufs_map.indices}
        rows.append(("ufs selected set",
                     "{" + ", ".join(reference.UFS_SELECTED) + "}",
                     "{" + ", ".join(sorted(names)) + "}", "exact set",
                     reporting.verdict_bool(
                         names == set(reference.UFS_SELECTED))))
    rfe_path = out / "rfe_map.txt"
    if rfe_path.exists():
        rfe_map = features.load_feature_map(rfe_path)
        names = {data.ATTRIBUTE_NAMES[j] for j in rfe_map.indices}
        overlap = len(names & set(reference.RFE_SELECTED))
        rows.append(("rfe overlap with published set", ">= 4 of 5",
                     f"{overlap} of 5", "-",
                     reporting.verdict_bool(overlap >= 4)))

    # grid cells and orderings
    cells = {}
    means = {}
    for metric in ("accuracy", "auc"):
        path = out / f"summary_{metric}.csv"
        if not path.exists():
            continue
        with open(path, "r", encoding="ascii") as handle:
            for row in csv.DictReader(
                    line for line in handle if not line.startswith("#")):
                form = row["data_form"]
                means[(form, metric)] = float(row["mean"])
                for algorithm in reference.ALGORITHM_ORDER:
                    if algorithm in row:
                        cells[(form, algorithm, metric)] = float(row[algorithm])
    if cells:
        t = tol("grid_cell", 0.03)
        for metric, table in (("accuracy", reference.ACCURACY_TABLE),
                              ("auc", reference.AUC_TABLE)):
            for form in ("clean", "norm", "stand"):
                for algorithm in ("lr", "lda"):
                    target = table[form][
                        reference.ALGORITHM_ORDER.index(algorithm)]
                    measured = cells.get((form, algorithm, metric))
                    rows.append((f"{metric} {form}/{algorithm}",
                                 f"{target:.4f}", fmt(measured), f"+-{t:g}",
                                 reporting.verdict_abs(measured, target, t)))
        gap = None
        if ("stand", "svm", "accuracy") in cells:
            gap = (cells[("stand", "svm", "accuracy")]
                   - cells[("raw", "svm", "accuracy")])
        rows.append(("svm accuracy gap stand - raw", ">= 0.2", fmt(gap),
                     "-", reporting.verdict_bool(
                         None if gap is None else gap >= 0.2)))
        for metric in ("accuracy", "auc"):
            metric_means = {f: m for (f, mt), m in means.items()
                            if mt == metric}
            if metric_means:
                best = max(metric_means, key=lambda f: metric_means[f])
                rows.append((f"stand row has best mean {metric}", "stand",
                             best, "-",
                             reporting.verdict_bool(best == "stand")))
        if ("norm", "auc") in means:
            rows.append(("norm and stand auc beat raw", "true",
                         str(means[("norm", "auc")] > means[("raw", "auc")]
                             and means[("stand", "auc")]
                             > means[("raw", "auc")]).lower(), "-",
                         reporting.verdict_bool(
                             means[("norm", "auc")] > means[("raw", "auc")]
                             and means[("stand", "auc")]
                             > means[("raw", "auc")])))

    # behavioral reproduction of the adequacy gate
    accuracy_adequacy = out / "adequacy_accuracy.csv"
    if accuracy_adequacy.exists():
        passed = _read_kv_csv(accuracy_adequacy)["passed"] == "true"
        rows.append(("accuracy grid fails adequacy", "fail",
                     "fail" if not passed else "pass", "-",
                     reporting.verdict_bool(not passed)))
    auc_adequacy = out / "adequacy_auc.csv"
    if auc_adequacy.exists():
        passed = _read_kv_csv(auc_adequacy)["passed"] == "true"
        rows.append(("auc grid passes adequacy", "pass",
                     "pass" if passed else "fail", "-",
                     reporting.verdict_bool(passed)))
    anova_auc = out / "anova_auc.csv"
    if anova_auc.exists():
        p = float(_read_kv_csv(anova_auc)["p_value"])
        rows.append(("auc grid anova p > 0.05", "> 0.05", fmt(p), "-",
                     reporting.verdict_bool(p > 0.05)))

    # deterministic reference analysis
    reference_anova = out / "reference_anova.csv"
    if reference_anova.exists():
        pairs = _read_kv_csv(reference_anova)
        f_value = float(pairs["f_value"])
        p_value = float(pairs["p_value"])
        ss_model = float(pairs["ss_model"])
        grand = float(pairs["grand_mean"])
        rows.append(("reference anova F", f"{reference.ANOVA_F:.2f}",
                     fmt(f_value, 3), "+-0.02",
                     reporting.verdict_abs(f_value, reference.ANOVA_F,
                                           tol("reference_f", 0.02))))
        rows.append(("reference anova p", f"{reference.ANOVA_P:.4f}",
                     fmt(p_value), "+-0.005",
                     reporting.verdict_abs(p_value, reference.ANOVA_P,
                                           tol("reference_p", 0.005))))
        rows.append(("reference anova model SS",
                     f"{reference.ANOVA_SS_MODEL:.8f}", fmt(ss_model, 8),
                     "+-1%",
                     reporting.verdict_rel(ss_model,
                                           reference.ANOVA_SS_MODEL,
                                           tol("reference_ss", 0.01))))
        rows.append(("reference anova grand mean",
                     f"{reference.ANOVA_GRAND_MEAN:.6f}", fmt(grand, 6),
                     "+-1e-4",
                     reporting.verdict_abs(grand,
                                           reference.ANOVA_GRAND_MEAN,
                                           tol("reference_mean", 1e-4))))
    reference_dunnett = out / "reference_dunnett.csv"
    if reference_dunnett.exists():
        comparisons = {}
        critical = None
        with open(reference_dunnett, "r", encoding="ascii") as handle:
            for row in csv.reader(
                    line for line in handle if not line.startswith("#")):
                if not row or row[0] == "comparison":
                    continue
                if row[0] == "critical_value":
                    critical = float(row[1])
                else:
                    comparisons[row[0]] = (float(row[1]), float(row[2]),
                                           float(row[3]), row[4] == "true")
        target_diff, target_low, target_high = reference.DUNNETT_VS_RAW["stand"]
        measured = comparisons.get("stand-raw")
        rows.append(("reference stand-raw difference",
                     f"{target_diff:.5f}",
                     fmt(measured[0], 5) if measured else "-", "+-1e-4",
                     reporting.verdict_abs(
                         measured[0] if measured else None, target_diff,
                         tol("reference_diff", 1e-4))))
        rows.append(("reference stand-raw CI low", f"{target_low:.5f}",
                     fmt(measured[1], 5) if measured else "-", "+-0.002",
                     reporting.verdict_abs(
                         measured[1] if measured else None, target_low,
                         tol("reference_ci", 0.002))))
        rows.append(("reference stand-raw CI high", f"{target_high:.5f}",
                     fmt(measured[2], 5) if measured else "-", "+-0.002",
                     reporting.verdict_abs(
                         measured[2] if measured else None, target_high,
                         tol("reference_ci", 0.002))))
        rows.append(("reference comparisons all non-significant", "true",
                     str(not any(c[3] for c in comparisons.values())).lower()
                     if comparisons else "-", "-",
                     reporting.verdict_bool(
                         not any(c[3] for c in comparisons.values())
                         if comparisons else None)))
        rows.append(("reference critical value",
                     f"{reference.DUNNETT_CRITICAL_VALUE:.2f}",
                     fmt(critical, 3) if critical is not None else "-",
                     "+-0.02",
                     reporting.verdict_abs(critical,
                                           reference.DUNNETT_CRITICAL_VALUE,
                                           tol("reference_critical", 0.02))))
    return rows


def cmd_report(config, ctx):
    out = _out_dir(config)
    rows = _scorecard_rows(config, out)
    available = [r for r in rows if r[4] != reporting.NA]
    if not available:
        print("report: no artifacts found in the output directory; "
              "scorecard contains only N/A rows", file=sys.stderr)
    text = reporting.scorecard_markdown(
        rows, "Reproduction scorecard",
        preamble=f"`{config.stamp()}`")
    _write_text(out / "scorecard.md", text)
    _update_manifest(config, out, "report", [out / "scorecard.md"])
    print(f"report: wrote scorecard with {len(rows)} checks "
          f"({len(available)} evaluated)")
    return 0


def cmd_all(config, ctx):
    for command in (cmd_clean, cmd_transform, cmd_features, cmd_grid,
                    cmd_stats, cmd_report):
        status = command(config, ctx)
        if status != 0:
            return status
    return 0


COMMANDS = {
    "clean": cmd_clean,
    "transform": cmd_transform,
    "features": cmd_features,
    "grid": cmd_grid,
    "stats": cmd_stats,
    "report": cmd_report,
    "all": cmd_all,
}


# ---------------------------------------------------------------------------
# argument handling


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(1)


def _build_parser():
    parser = _Parser(prog="gammasep",
                     description="Gamma/hadron classification pipeline")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", help="key=value configuration file")
    parser.add_argument("--input", help="event file path "
                        f"(overrides config; {DATA_ENV} env var also works)")
    parser.add_argument("--output", help="run directory")
    parser.add_argument("--rule", choices=("iqr-fence", "three-sigma"),
                        help="outlier rule for the clean step")
    parser.add_argument("--workers", type=int,
                        help="worker processes for grid cells")
    parser.add_argument("--folds", type=int, help="cross-validation folds")
    parser.add_argument("--mc-draws", type=int,
                        help="Monte Carlo draws for the comparison test")
    parser.add_argument("--per-fold-transform", action="store_true",
                        default=None,
                        help="re-fit norm/stand inside every fold")
    parser.add_argument("--force-anova", action="store_true", default=None,
                        help="run ANOVA even when adequacy checks fail")
    return parser


def _resolve_config(args):
    config = load_config(args.config) if args.config else RunConfig()
    env_path = os.environ.get(DATA_ENV)
    if env_path:
        config.input_path = env_path
    overrides = (("input", "input_path"), ("output", "output_dir"),
                 ("rule", "outlier_rule"), ("workers", "workers"),
                 ("folds", "n_folds"), ("mc_draws", "mc_draws"),
                 ("per_fold_transform", "per_fold_transform"),
                 ("force_anova", "force_anova"))
    for flag, field_name in overrides:
        value = getattr(args, flag)
        if value is not None:
            setattr(config, field_name, value)
    return validate_config(config)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        config = _resolve_config(args)
        return COMMANDS[args.command](config, {})
    except (ConfigError, UserError, ParseError, FileNotFoundError) as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except (NumericError, ArithmeticError, np.linalg.LinAlgError,
            ValueError) as error:
        print(f"numeric failure: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
