"""Rendering of summary tables, test reports, the box plot, and the scorecard."""

from __future__ import annotations

import csv
import math

import numpy as np

from .data import _quantile

ALGORITHM_LABELS = {"lr": "LR", "lda": "LDA", "knn": "KNN",
                    "cart": "CART", "nb": "NB", "svm": "SVM"}


def _row_marks(grid, metric):
    """Per-form mean, star for beating the raw baseline, max marker."""
    means = {form: grid.row_mean(form, metric) for form in grid.data_forms}
    baseline = means.get("raw")
    best = max(means, key=lambda f: means[f])
    marks = {}
    for form in grid.data_forms:
        starred = (baseline is not None and form != "raw"
                   and means[form] > baseline)
        marks[form] = (means[form], starred, form == best)
    return marks


def summary_table_text(grid, metric):
    """Aligned text table: one row per data form, starred means, max marked."""
    marks = _row_marks(grid, metric)
    headers = ["Data"] + [ALGORITHM_LABELS.get(a, a.upper())
                          for a in grid.algorithms] + ["Mean"]
    lines = ["  ".join(f"{h:>8}" for h in headers)]
    for form in grid.data_forms:
        mean, starred, is_max = marks[form]
        cells = [f"{form:>8}"]
        for value in grid.row_values(form, metric):
            cells.append(f"{value:8.4f}")
        mean_text = f"{'*' if starred else ''}{mean:.4f}"
        if is_max:
            mean_text = f"[{mean_text}]"
        cells.append(f"{mean_text:>8}")
        lines.append("  ".join(cells))
    lines.append("* mean above the raw baseline; [] marks the best mean")
    return "\n".join(lines) + "\n"


def write_summary_csv(grid, metric, path, header_comment=None):
    marks = _row_marks(grid, metric)
    with open(path, "w", newline="", encoding="ascii") as handle:
        if header_comment:
            handle.write(f"# {header_comment}\n")
        writer = csv.writer(handle)
        writer.writerow(["data_form"] + list(grid.algorithms)
                        + ["mean", "beats_raw", "is_max"])
        for form in grid.data_forms:
            mean, starred, is_max = marks[form]
            writer.writerow(
                [form]
                + [repr(v) for v in grid.row_values(form, metric)]
                + [repr(mean), "*" if starred else "", "max" if is_max else ""])


def anova_text(report, dependent="AUC"):
    lines = [
        f"One-way analysis of variance, dependent variable: {dependent}",
        "",
        f"{'Source':<16}{'DF':>4}{'Sum of Squares':>16}{'Mean Square':>14}"
        f"{'F Value':>10}{'Pr > F':>10}",
        f"{'Model':<16}{report.df_model:>4}{report.ss_model:>16.8f}"
        f"{report.ms_model:>14.8f}{report.f_value:>10.2f}"
        f"{report.p_value:>10.4f}",
        f"{'Error':<16}{report.df_error:>4}{report.ss_error:>16.8f}"
        f"{report.ms_error:>14.8f}",
        f"{'Corrected Total':<16}{report.df_model + report.df_error:>4}"
        f"{report.ss_total:>16.8f}",
        "",
        f"{'R-Square':>10}{'Coeff Var':>12}{'Root MSE':>12}"
        f"{dependent + ' Mean':>12}",
        f"{report.r_square:>10.6f}{report.coeff_var:>12.6f}"
        f"{report.root_mse:>12.6f}{report.grand_mean:>12.6f}",
    ]
    return "\n".join(lines) + "\n"


def dunnett_text(report):
    lines = [
        f"Comparisons significant at the {report.alpha:g} level are "
        f"indicated by ***.",
        f"control: {report.control_label}   critical value: "
        f"{report.critical_value:.4f}   standard error: "
        f"{report.standard_error:.6f}   df: {report.df_error}",
        f"mc_draws: {report.mc_draws}   mc_seed: {report.mc_seed}",
        "",
        f"{'Comparison':<20}{'Difference':>12}{'Lower CL':>12}"
        f"{'Upper CL':>12}",
    ]
    for comparison in report.comparisons:
        flag = " ***" if comparison.significant else ""
        lines.append(
            f"{comparison.label + ' - ' + report.control_label:<20}"
            f"{comparison.difference:>12.5f}{comparison.ci_low:>12.5f}"
            f"{comparison.ci_high:>12.5f}{flag}")
    return "\n".join(lines) + "\n"


def adequacy_text(report, metric):
    verdict = "PASS" if report.passed else "FAIL"
    return "\n".join([
        f"Adequacy checks for {metric} (alpha = {report.alpha:g}): {verdict}",
        f"  normality (Anderson-Darling): statistic "
        f"{report.normality_stat:.4f}, p {report.normality_p:.4f} "
        f"-> {'pass' if report.normality_pass else 'fail'}",
        f"  homogeneity (Brown-Forsythe): statistic "
        f"{report.homogeneity_stat:.4f}, p {report.homogeneity_p:.4f} "
        f"-> {'pass' if report.homogeneity_pass else 'fail'}",
    ]) + "\n"


def _nice_ticks(low, high, target=5):
    span = high - low
    if span <= 0:
        return [low]
    raw_step = span / target
    magnitude = 10.0 ** math.floor(math.log10(raw_step))
    for multiple in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = multiple * magnitude
        if span / step <= target:
            break
    first = math.ceil(low / step) * step
    ticks = []
    value = first
    while value <= high + 1e-12:
        ticks.append(round(value, 10))
        value += step
    return ticks


def box_whisker_svg(groups, labels, title="", width=760, height=420,
                    comment=None):
    """Box-and-whisker plot: median, quartile box, 1.5 IQR whiskers,
    outlier dots; one box per group in the given order."""
    margin_left, margin_right, margin_top, margin_bottom = 56, 16, 34, 42
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom
    flat = np.concatenate([np.asarray(g, dtype=float) for g in groups])
    low, high = float(flat.min()), float(flat.max())
    pad = 0.05 * (high - low) if high > low else 0.5
    low, high = low - pad, high + pad

    def y_of(value):
        return margin_top + plot_h * (high - value) / (high - low)

    slot = plot_w / len(groups)
    box_half = min(28.0, slot * 0.3)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">']
    if comment:
        parts.append(f"<!-- {comment} -->")
    parts.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    if title:
        parts.append(
            f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>')
    for tick in _nice_ticks(low, high):
        y = y_of(tick)
        parts.append(
            f'<line x1="{margin_left}" y1="{y:.2f}" '
            f'x2="{width - margin_right}" y2="{y:.2f}" '
            f'stroke="#dddddd" stroke-width="1"/>')
        parts.append(
            f'<text x="{margin_left - 6}" y="{y + 4:.2f}" '
            f'text-anchor="end" font-family="sans-serif" '
            f'font-size="11">{tick:g}</text>')
    for index, (group, label) in enumerate(zip(groups, labels)):
        values = np.sort(np.asarray(group, dtype=float))
        q1 = _quantile(values, 0.25)
        median = _quantile(values, 0.50)
        q3 = _quantile(values, 0.75)
        iqr = q3 - q1
        in_fence = values[(values >= q1 - 1.5 * iqr)
                          & (values <= q3 + 1.5 * iqr)]
        whisker_low, whisker_high = float(in_fence[0]), float(in_fence[-1])
        outliers = values[(values < q1 - 1.5 * iqr)
                          | (values > q3 + 1.5 * iqr)]
        cx = margin_left + slot * (index + 0.5)
        box = [
            f'<g class="box" id="box-{label}">',
            f'<line x1="{cx:.2f}" y1="{y_of(whisker_high):.2f}" '
            f'x2="{cx:.2f}" y2="{y_of(q3):.2f}" stroke="black"/>',
            f'<line x1="{cx:.2f}" y1="{y_of(q1):.2f}" '
            f'x2="{cx:.2f}" y2="{y_of(whisker_low):.2f}" stroke="black"/>',
            f'<line x1="{cx - box_half * 0.6:.2f}" '
            f'y1="{y_of(whisker_high):.2f}" x2="{cx + box_half * 0.6:.2f}" '
            f'y2="{y_of(whisker_high):.2f}" stroke="black"/>',
            f'<line x1="{cx - box_half * 0.6:.2f}" '
            f'y1="{y_of(whisker_low):.2f}" x2="{cx + box_half * 0.6:.2f}" '
            f'y2="{y_of(whisker_low):.2f}" stroke="black"/>',
            f'<rect x="{cx - box_half:.2f}" y="{y_of(q3):.2f}" '
            f'width="{2 * box_half:.2f}" '
            f'height="{y_of(q1) - y_of(q3):.2f}" fill="#9ecae1" '
            f'stroke="black"/>',
            f'<line x1="{cx - box_half:.2f}" y1="{y_of(median):.2f}" '
            f'x2="{cx + box_half:.2f}" y2="{y_of(median):.2f}" '
            f'stroke="black" stroke-width="2"/>',
        ]
        for value in outliers:
            box.append(f'<circle cx="{cx:.2f}" cy="{y_of(value):.2f}" '
                       f'r="2.5" fill="black"/>')
        box.append(
            f'<text x="{cx:.2f}" y="{height - margin_bottom + 16}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{label}</text>')
        box.append('</g>')
        parts.extend(box)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# scorecard


PASS, NEAR, FAIL, NA = "PASS", "NEAR", "FAIL", "N/A"


def verdict_abs(measured, target, tolerance):
    if measured is None:
        return NA
    delta = abs(measured - target)
    if delta <= tolerance:
        return PASS
    if delta <= 2 * tolerance:
        return NEAR
    return FAIL


def verdict_rel(measured, target, fraction):
    return verdict_abs(measured, target, abs(target) * fraction)


def verdict_bool(condition):
    if condition is None:
        return NA
    return PASS if condition else FAIL


def scorecard_markdown(rows, title, preamble=""):
    """Render comparison rows as a markdown table.

    Each row is (name, target_text, measured_text, tolerance_text, verdict).
    """
    lines = [f"# {title}", ""]
    if preamble:
        lines += [preamble, ""]
    lines.append("| check | target | reproduced | tolerance | verdict |")
    lines.append("|---|---|---|---|---|")
    for name, target, measured, tolerance, verdict in rows:
        lines.append(f"| {name} | {target} | {measured} | {tolerance} "
                     f"| {verdict} |")
    counts = {}
    for row in rows:
        counts[row[4]] = counts.get(row[4], 0) + 1
    summary = ", ".join(f"{counts[v]} {v}" for v in (PASS, NEAR, FAIL, NA)
                        if v in counts)
    lines += ["", f"Totals: {summary}", ""]
    return "\n".join(lines)
