"""CART-style binary decision tree minimizing Gini impurity.

Thresholds sit at midpoints between consecutive distinct sorted values;
rows with value <= threshold go left. A node is split only when the best
candidate strictly decreases the weighted impurity. Ties across candidate
splits resolve to the lower attribute index, then the lower threshold.
"""

from __future__ import annotations

import numpy as np


class TreeNode:
    __slots__ = ("feature", "threshold", "left", "right",
                 "n_samples", "gamma_fraction", "impurity")

    def __init__(self):
        self.feature = -1
        self.threshold = 0.0
        self.left = None
        self.right = None
        self.n_samples = 0
        self.gamma_fraction = 0.0
        self.impurity = 0.0

    @property
    def is_leaf(self):
        return self.left is None


def _gini(gamma_fraction):
    return 2.0 * gamma_fraction * (1.0 - gamma_fraction)


def _best_split(values, labels):
    """Best (weighted_gini, feature, threshold) over all midpoint splits.

    Vectorized per feature: sort once, then score every boundary between
    distinct values with cumulative class counts.
    """
    n = labels.size
    total_gamma = int(labels.sum())
    best = None
    for feature in range(values.shape[1]):
        column = values[:, feature]
        order = np.argsort(column, kind="stable")
        sorted_values = column[order]
        boundaries = np.nonzero(sorted_values[1:] != sorted_values[:-1])[0]
        if boundaries.size == 0:
            continue
        cumulative_gamma = np.cumsum(labels[order])
        left_n = boundaries + 1.0
        left_gamma = cumulative_gamma[boundaries]
        right_n = n - left_n
        right_gamma = total_gamma - left_gamma
        weighted = (left_n * _gini(left_gamma / left_n)
                    + right_n * _gini(right_gamma / right_n)) / n
        pick = int(np.argmin(weighted))  # first minimum -> lowest threshold
        if best is None or weighted[pick] < best[0] - 1e-15:
            boundary = boundaries[pick]
            threshold = 0.5 * (sorted_values[boundary]
                               + sorted_values[boundary + 1])
            best = (float(weighted[pick]), feature, float(threshold))
    return best


def fit_cart_tree(X, y, min_split=2, max_depth=0):
    """Grow the tree with an explicit stack; max_depth 0 means unlimited."""
    root = TreeNode()
    stack = [(root, np.arange(X.shape[0]), 0)]
    while stack:
        node, rows, depth = stack.pop()
        labels = y[rows]
        node.n_samples = rows.size
        node.gamma_fraction = float(labels.mean())
        node.impurity = _gini(node.gamma_fraction)
        if (node.impurity == 0.0 or rows.size < min_split
                or (max_depth and depth >= max_depth)):
            continue
        split = _best_split(X[rows], labels)
        if split is None or split[0] >= node.impurity - 1e-12:
            continue
        _, node.feature, node.threshold = split
        goes_left = X[rows, node.feature] <= node.threshold
        node.left = TreeNode()
        node.right = TreeNode()
        stack.append((node.left, rows[goes_left], depth + 1))
        stack.append((node.right, rows[~goes_left], depth + 1))
    return root


class CartModel:
    """Fitted tree; score = gamma fraction of the reached leaf."""

    algorithm = "cart"
    converged = True

    def __init__(self, root, n_features):
        self.root = root
        self.n_features = n_features

    def _leaf_fractions(self, X):
        out = np.empty(X.shape[0])
        stack = [(self.root, np.arange(X.shape[0]))]
        while stack:
            node, rows = stack.pop()
            if rows.size == 0:
                continue
            if node.is_leaf:
                out[rows] = node.gamma_fraction
                continue
            goes_left = X[rows, node.feature] <= node.threshold
            stack.append((node.left, rows[goes_left]))
            stack.append((node.right, rows[~goes_left]))
        return out

    def predict_score(self, X):
        return self._leaf_fractions(X)

    def predict_label(self, X):
        return (self._leaf_fractions(X) >= 0.5).astype(np.uint8)

    def split_nodes(self):
        """Internal (feature, threshold) pairs in preorder, for inspection."""
        splits = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                continue
            splits.append((node.feature, node.threshold))
            stack.append(node.right)
            stack.append(node.left)
        return splits

    def to_text(self):
        lines = ["gammasep-model v1", "algorithm=cart"]
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if node.is_leaf:
                lines.append(f"{depth};leaf;{node.n_samples};"
                             f"{node.gamma_fraction!r}")
            else:
                lines.append(f"{depth};split;{node.feature};"
                             f"{node.threshold!r};{node.n_samples}")
                stack.append((node.right, depth + 1))
                stack.append((node.left, depth + 1))
        return "\n".join(lines) + "\n"


def fit_cart_model(X, y, params, seed=0):
    root = fit_cart_tree(X, y, int(params["min_split"]),
                         int(params["max_depth"]))
    return CartModel(root, X.shape[1])
