"""Stratified cross-validation, accuracy, rank-based AUC, and the results grid.

The experiment grid crosses the eight data forms with the six algorithms;
every cell carries per-fold accuracies and AUCs plus their means. Cells of
the same data form share one fold plan, and cells are independent of each
other, so the grid can be computed by a worker pool with results identical
to serial execution.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import models
from .transform import fit_apply_arrays

DATA_FORMS = ("raw", "clean", "norm", "stand", "pca", "ica", "ufs", "rfe")


@dataclass(frozen=True)
class FoldPlan:
    n_folds: int
    seed: int
    folds: tuple                   # tuple of index tuples, a partition
    stratified: bool = True


def make_folds(y, n_folds=10, seed=0):
    """Stratified fold assignment: seeded shuffle within each class, then
    round-robin. Deterministic for a given (labels, n_folds, seed)."""
    y = np.asarray(y)
    if n_folds < 2:
        raise ValueError("need at least 2 folds")
    rng = np.random.default_rng(seed)
    assignment = np.empty(y.size, dtype=int)
    for class_value in (1, 0):     # gamma first, then hadron
        indices = np.nonzero(y == class_value)[0]
        if indices.size < n_folds:
            raise ValueError(
                f"class {class_value} has {indices.size} rows, "
                f"fewer than {n_folds} folds")
        rng.shuffle(indices)
        assignment[indices] = np.arange(indices.size) % n_folds
    folds = tuple(
        tuple(int(i) for i in np.nonzero(assignment == f)[0])
        for f in range(n_folds))
    return FoldPlan(n_folds=n_folds, seed=seed, folds=folds)


def accuracy(predicted, actual):
    predicted = np.asarray(predicted)
    actual = np.asarray(actual)
    return float(np.mean(predicted == actual))


def roc_auc(scores, y):
    """Rank-based (Mann-Whitney) AUC with ties counted one half.

    Equals the trapezoidal area under the ROC curve.
    """
    scores = np.asarray(scores, dtype=float)
    y = np.asarray(y)
    n_pos = int(np.count_nonzero(y == 1))
    n_neg = y.size - n_pos
    if n_pos == 0 or n_neg == 0:
        raise ValueError("roc_auc requires both classes")
    order = np.argsort(scores, kind="stable")
    base_ranks = np.empty(y.size)
    base_ranks[order] = np.arange(1, y.size + 1)
    _, inverse, counts = np.unique(scores, return_inverse=True,
                                   return_counts=True)
    rank_sums = np.bincount(inverse, weights=base_ranks)
    ranks = (rank_sums / counts)[inverse]
    positive_rank_sum = ranks[y == 1].sum()
    return float((positive_rank_sum - n_pos * (n_pos + 1) / 2.0)
                 / (n_pos * n_neg))


@dataclass(frozen=True)
class EvalCell:
    data_form: str
    algorithm: str
    fold_accuracies: tuple
    fold_aucs: tuple

    @property
    def mean_accuracy(self):
        return float(np.mean(self.fold_accuracies))

    @property
    def mean_auc(self):
        return float(np.mean(self.fold_aucs))


def cross_validate(spec, ds, plan, seed=0, refit_transform=None):
    """Train on each fold complement, score the held-out fold.

    refit_transform ("minmax" or "zscore") rescales each fold's training
    and test matrices using parameters fit on that fold's training rows
    only; the default (None) evaluates the dataset exactly as given.
    """
    if ds.has_missing():
        raise ValueError("cross_validate requires a missing-free dataset")
    X, y = ds.values, ds.labels
    fold_accuracies, fold_aucs = [], []
    for test_rows in plan.folds:
        mask = np.zeros(ds.n_rows, dtype=bool)
        mask[list(test_rows)] = True
        X_train, y_train = X[~mask], y[~mask]
        X_test, y_test = X[mask], y[mask]
        if len(np.unique(y_train)) < 2:
            raise ValueError("a fold's training set is single-class")
        if refit_transform is not None:
            X_train, X_test = fit_apply_arrays(refit_transform,
                                               X_train, X_test)
        model = models.fit(spec, X_train, y_train, seed)
        fold_accuracies.append(accuracy(model.predict_label(X_test), y_test))
        fold_aucs.append(roc_auc(model.predict_score(X_test), y_test))
    return EvalCell(ds.provenance, spec.algorithm,
                    tuple(fold_accuracies), tuple(fold_aucs))


@dataclass(frozen=True)
class ResultsGrid:
    data_forms: tuple
    algorithms: tuple
    cells: dict                     # (data_form, algorithm) -> EvalCell
    n_folds: int
    fold_seed: int

    def cell(self, data_form, algorithm):
        return self.cells[(data_form, algorithm)]

    def row_cells(self, data_form):
        return [self.cells[(data_form, a)] for a in self.algorithms]

    def row_mean(self, data_form, metric="auc"):
        values = self.row_values(data_form, metric)
        return float(np.mean(values))

    def row_values(self, data_form, metric="auc"):
        if metric == "auc":
            return [c.mean_auc for c in self.row_cells(data_form)]
        if metric == "accuracy":
            return [c.mean_accuracy for c in self.row_cells(data_form)]
        raise ValueError(f"unknown metric {metric!r}")


def _cell_task(args):
    spec, ds, plan, seed, refit = args
    return cross_validate(spec, ds, plan, seed, refit)


def run_grid(forms, specs=None, n_folds=10, seed=0, workers=1,
             refit_transforms=None):
    """Evaluate every (data form, algorithm) cell.

    ``forms`` maps form names to missing-free Datasets, evaluated in the
    given order. ``refit_transforms`` optionally maps a form name to a
    transform kind refit inside each fold (the matching Dataset must then
    hold the untransformed clean data). Worker-pool execution returns the
    same grid as serial execution.
    """
    if specs is None:
        specs = [models.ModelSpec(a) for a in models.ALGORITHMS]
    refit_transforms = refit_transforms or {}
    form_names = tuple(forms)
    plans = {name: make_folds(forms[name].labels, n_folds, seed)
             for name in form_names}
    tasks = [(spec, forms[name], plans[name], seed,
              refit_transforms.get(name))
             for name in form_names for spec in specs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_cell_task, tasks))
    else:
        results = [_cell_task(t) for t in tasks]
    cells = {}
    position = 0
    for name in form_names:
        for spec in specs:
            cell = results[position]
            position += 1
            cells[(name, spec.algorithm)] = EvalCell(
                name, spec.algorithm, cell.fold_accuracies, cell.fold_aucs)
    return ResultsGrid(
        data_forms=form_names,
        algorithms=tuple(s.algorithm for s in specs),
        cells=cells, n_folds=n_folds, fold_seed=seed)


def write_grid_detail(grid, path, header_comment=None):
    """Long-format CSV: one line per (data_form, algorithm, fold)."""
    with open(path, "w", newline="", encoding="ascii") as handle:
        if header_comment:
            handle.write(f"# {header_comment}\n")
        handle.write(f"# n_folds={grid.n_folds} fold_seed={grid.fold_seed}\n")
        writer = csv.writer(handle)
        writer.writerow(["data_form", "algorithm", "fold",
                         "accuracy", "auc"])
        for form in grid.data_forms:
            for algorithm in grid.algorithms:
                cell = grid.cell(form, algorithm)
                for fold, (acc, auc) in enumerate(
                        zip(cell.fold_accuracies, cell.fold_aucs)):
                    writer.writerow([form, algorithm, fold,
                                     repr(acc), repr(auc)])


def read_grid_detail(path):
    n_folds = fold_seed = 0
    rows = []
    with open(path, "r", encoding="ascii") as handle:
        for line in handle:
            line = line.strip()
            if line.startswith("# n_folds="):
                parts = dict(p.split("=") for p in line[2:].split())
                n_folds = int(parts["n_folds"])
                fold_seed = int(parts["fold_seed"])
                continue
            if not line or line.startswith("#") or line.startswith("data_form"):
                continue
            rows.append(line.split(","))
    forms, algorithms = [], []
    fold_values = {}
    for form, algorithm, fold, acc, auc in rows:
        if form not in forms:
            forms.append(form)
        if algorithm not in algorithms:
            algorithms.append(algorithm)
        fold_values.setdefault((form, algorithm), []).append(
            (int(fold), float(acc), float(auc)))
    cells = {}
    for key, triples in fold_values.items():
        triples.sort()
        cells[key] = EvalCell(key[0], key[1],
                              tuple(t[1] for t in triples),
                              tuple(t[2] for t in triples))
    return ResultsGrid(tuple(forms), tuple(algorithms), cells,
                       n_folds, fold_seed)
