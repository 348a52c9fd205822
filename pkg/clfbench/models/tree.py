"""Axis-aligned binary decision trees: C4.5 and Simple Cart.

Both variants share :class:`TreeGrower`; they differ in the split criterion
and in the pruning applied to the grown tree. Random Forest reuses the grower
with the plain information-gain criterion.
"""
import numpy as np
from scipy.stats import norm

from . import BaseModel, register_model, fit
from .schema import ParamSchema, Param, log_range, linear_range, choice_of
from ..utils.numeric import Rng, assign_folds

GAIN_TOL = 1e-6
COLLAPSE_TOL = 0.1
REP_SEED = 1


class Node(object):
    r"""
    Tree node. Leaves have ``feature == -1``; internal nodes send
    ``x[feature] <= threshold`` to ``left``.

    Attributes
    -----------
    counts : numpy.ndarray
        Training instances per class that reached the node.
    """
    __slots__ = ('counts', 'feature', 'threshold', 'left', 'right')

    def __init__(self, counts, feature=-1, threshold=0.0, left=None, right=None):
        self.counts = counts
        self.feature = feature
        self.threshold = threshold
        self.left = left
        self.right = right

    @property
    def is_leaf(self):
        return self.feature < 0

    @property
    def n(self):
        return float(self.counts.sum())

    @property
    def errors(self):
        return self.n - float(self.counts.max())

    def as_leaf(self):
        return Node(self.counts)

    def depth(self):
        if self.is_leaf:
            return 0
        return 1 + max(self.left.depth(), self.right.depth())

    def n_leaves(self):
        if self.is_leaf:
            return 1
        return self.left.n_leaves() + self.right.n_leaves()

    def __repr__(self):
        if self.is_leaf:
            return 'Leaf({})'.format(self.counts.tolist())
        return 'Node(x{} <= {:.6g})'.format(self.feature, self.threshold)


def entropy(counts):
    r"""Entropy in bits of every row of a count matrix."""
    counts = np.atleast_2d(np.asarray(counts, dtype=np.float64))
    total = counts.sum(axis=1, keepdims=True)
    p = np.divide(counts, total, out=np.zeros_like(counts), where=total > 0)
    logp = np.log2(p, out=np.zeros_like(p), where=p > 0)
    return -(p * logp).sum(axis=1)


def gini(counts):
    counts = np.atleast_2d(np.asarray(counts, dtype=np.float64))
    total = counts.sum(axis=1, keepdims=True)
    p = np.divide(counts, total, out=np.zeros_like(counts), where=total > 0)
    return 1.0 - (p * p).sum(axis=1)


def candidate_splits(x, y, n_classes, min_leaf):
    r"""
    Every admissible threshold of one feature with the class counts it induces.

    A threshold lies halfway between consecutive distinct values and must
    leave at least ``min_leaf`` instances on either side.

    Returns
    -------
    thresholds : numpy.ndarray, shape (s,)
    left, right : numpy.ndarray, shape (s, n_classes)
    """
    order = np.argsort(x, kind='stable')
    xs, ys = x[order], y[order]
    n = len(xs)
    onehot = np.zeros((n, n_classes))
    onehot[np.arange(n), ys] = 1.0
    left = np.cumsum(onehot, axis=0)[:-1]
    right = left[-1] + onehot[-1] - left if n > 1 else left
    n_left = np.arange(1, n)
    valid = (xs[:-1] < xs[1:]) & (n_left >= min_leaf) & (n - n_left >= min_leaf)
    lo, hi = xs[:-1][valid], xs[1:][valid]
    thresholds = lo + (hi - lo) / 2.0
    thresholds = np.where(thresholds < hi, thresholds, lo)
    return thresholds, left[valid], right[valid]


def split_gain(impurity, parent, left, right):
    n = parent.sum()
    nl = left.sum(axis=1)
    nr = right.sum(axis=1)
    return impurity(parent)[0] - (nl * impurity(left) + nr * impurity(right)) / n


class TreeGrower(object):
    r"""
    Recursive partitioning shared by all tree learners.

    Parameters
    ----------
    criterion : str
        ``'gain_ratio'`` (C4.5), ``'gini'`` (CART) or ``'info_gain'`` (random trees).
    min_leaf : int
        Minimum number of instances in each branch of a split.
    max_depth : int
        Depth limit, 0 for none.
    n_candidates : int
        Features examined per split (random trees only, 0 = all).
    rng : Rng
        Stream for the random feature order of random trees.
    """

    def __init__(self, criterion, min_leaf=1, max_depth=0, n_candidates=0, rng=None):
        if criterion not in ('gain_ratio', 'gini', 'info_gain'):
            raise ValueError('unknown split criterion {!r}'.format(criterion))
        self.criterion = criterion
        self.min_leaf = min_leaf
        self.max_depth = max_depth
        self.n_candidates = n_candidates
        self.rng = rng

    def grow(self, X, y, n_classes):
        self.n_classes = n_classes
        return self._grow(X, y, np.arange(X.shape[0]), 0)

    def _grow(self, X, y, idx, depth):
        counts = np.bincount(y[idx], minlength=self.n_classes).astype(np.float64)
        node = Node(counts)
        if counts.max() == len(idx) or len(idx) < 2 * self.min_leaf:
            return node
        if self.max_depth and depth >= self.max_depth:
            return node
        split = self.best_split(X[idx], y[idx], counts)
        if split is None:
            return node
        node.feature, node.threshold = split
        goes_left = X[idx, node.feature] <= node.threshold
        node.left = self._grow(X, y, idx[goes_left], depth + 1)
        node.right = self._grow(X, y, idx[~goes_left], depth + 1)
        return node

    def best_split(self, X, y, counts):
        if self.criterion == 'gain_ratio':
            return self._gain_ratio_split(X, y, counts)
        if self.criterion == 'gini':
            return self._gini_split(X, y, counts)
        return self._random_split(X, y, counts)

    def _gain_ratio_split(self, X, y, counts):
        n = len(y)
        min_leaf = min(max(0.1 * n / self.n_classes, self.min_leaf), 25)
        found = []
        for f in range(X.shape[1]):
            thresholds, left, right = candidate_splits(X[:, f], y, self.n_classes, min_leaf)
            if not len(thresholds):
                continue
            gains = split_gain(entropy, counts, left, right) - np.log2(len(thresholds)) / n
            best = int(np.argmax(gains))
            sizes = np.array([[left[best].sum(), right[best].sum()]])
            found.append((f, thresholds[best], gains[best], gains[best] / entropy(sizes)[0]))
        if not found:
            return None
        average = np.mean([g for _, _, g, _ in found])
        best = None
        for f, threshold, gain, ratio in found:
            if gain < 0 or gain < average - 1e-3:
                continue
            if best is None or ratio > best[2]:
                best = (f, threshold, ratio)
        return None if best is None else best[:2]

    def _gini_split(self, X, y, counts):
        best = None
        for f in range(X.shape[1]):
            thresholds, left, right = candidate_splits(X[:, f], y, self.n_classes, self.min_leaf)
            if not len(thresholds):
                continue
            gains = split_gain(gini, counts, left, right)
            i = int(np.argmax(gains))
            if best is None or gains[i] > best[2]:
                best = (f, thresholds[i], gains[i])
        return None if best is None else best[:2]

    def _random_split(self, X, y, counts):
        F = X.shape[1]
        k = self.n_candidates or F
        best = None
        for tried, f in enumerate(self.rng.permutation(F)):
            if tried >= k and best is not None and best[2] > GAIN_TOL:
                break
            thresholds, left, right = candidate_splits(X[:, f], y, self.n_classes, self.min_leaf)
            if not len(thresholds):
                continue
            gains = split_gain(entropy, counts, left, right)
            i = int(np.argmax(gains))
            if best is None or gains[i] > best[2]:
                best = (int(f), thresholds[i], gains[i])
        if best is None or best[2] <= GAIN_TOL:
            return None
        return best[:2]


def leaf_counts(root, X):
    r"""Class counts of the leaf reached by every row of ``X``."""
    out = np.zeros((X.shape[0], len(root.counts)))
    stack = [(root, np.arange(X.shape[0]))]
    while stack:
        node, idx = stack.pop()
        if not idx.size:
            continue
        if node.is_leaf:
            out[idx] = node.counts
            continue
        goes_left = X[idx, node.feature] <= node.threshold
        stack.append((node.left, idx[goes_left]))
        stack.append((node.right, idx[~goes_left]))
    return out


def tree_predict(root, X):
    return np.argmax(leaf_counts(root, X), axis=1)


def add_errs(n, e, cf):
    r"""
    Extra errors added to ``e`` observed errors out of ``n`` instances by the
    upper confidence limit of the binomial at confidence ``cf``.
    """
    if e < 1:
        base = n * (1.0 - cf ** (1.0 / n))
        if e == 0:
            return base
        return base + e * (add_errs(n, 1.0, cf) - base)
    if e + 0.5 >= n:
        return max(n - e, 0.0)
    z = norm.ppf(1.0 - cf)
    f = (e + 0.5) / n
    r = (f + z * z / (2 * n) + z * np.sqrt(f / n - f * f / n + z * z / (4 * n * n))) / (1 + z * z / n)
    return r * n - e


def pessimistic_prune(node, cf):
    r"""Bottom-up subtree replacement by estimated error; returns (tree, estimated errors)."""
    leaf_estimate = node.errors + add_errs(node.n, node.errors, cf)
    if node.is_leaf:
        return node, leaf_estimate
    left, left_estimate = pessimistic_prune(node.left, cf)
    right, right_estimate = pessimistic_prune(node.right, cf)
    if leaf_estimate <= left_estimate + right_estimate + COLLAPSE_TOL:
        return node.as_leaf(), leaf_estimate
    return Node(node.counts, node.feature, node.threshold, left, right), left_estimate + right_estimate


def reduced_error_prune(node, X, y):
    r"""Replace subtrees that do not beat a leaf on the pruning set ``(X, y)``."""
    leaf_errors = int((y != np.argmax(node.counts)).sum())
    if node.is_leaf:
        return node, leaf_errors
    goes_left = X[:, node.feature] <= node.threshold
    left, left_errors = reduced_error_prune(node.left, X[goes_left], y[goes_left])
    right, right_errors = reduced_error_prune(node.right, X[~goes_left], y[~goes_left])
    if leaf_errors <= left_errors + right_errors:
        return node.as_leaf(), leaf_errors
    return Node(node.counts, node.feature, node.threshold, left, right), left_errors + right_errors


def prune_at(node, alpha, n_total):
    r"""
    Smallest subtree minimising error rate + ``alpha`` * leaves.

    Returns (tree, error rate, leaves).
    """
    leaf_cost = node.errors / n_total
    if node.is_leaf:
        return node, leaf_cost, 1
    left, left_cost, left_leaves = prune_at(node.left, alpha, n_total)
    right, right_cost, right_leaves = prune_at(node.right, alpha, n_total)
    cost, leaves = left_cost + right_cost, left_leaves + right_leaves
    if leaf_cost + alpha <= cost + alpha * leaves + 1e-12:
        return node.as_leaf(), leaf_cost, 1
    return Node(node.counts, node.feature, node.threshold, left, right), cost, leaves


def weakest_link(node, n_total):
    r"""Smallest per-leaf error increase over the internal nodes of ``node``."""
    if node.is_leaf:
        return np.inf, node.errors / n_total, 1
    left_g, left_cost, left_leaves = weakest_link(node.left, n_total)
    right_g, right_cost, right_leaves = weakest_link(node.right, n_total)
    cost, leaves = left_cost + right_cost, left_leaves + right_leaves
    g = (node.errors / n_total - cost) / (leaves - 1)
    return min(g, left_g, right_g), cost, leaves


def pruning_sequence(root, n_total):
    r"""Nested cost-complexity subtrees ``[(alpha, tree), ...]`` from the full tree down to the root leaf."""
    current = prune_at(root, 0.0, n_total)[0]
    sequence = [(0.0, current)]
    while not current.is_leaf:
        alpha = max(weakest_link(current, n_total)[0], 0.0)
        current = prune_at(current, alpha, n_total)[0]
        sequence.append((alpha, current))
    return sequence


@register_model('c45')
class C45(BaseModel):
    r"""
    C4.5 decision tree.

    Splits maximise the gain ratio among the features whose information gain
    (corrected by ``log2(#thresholds) / n``) is at least average. The grown tree
    is pruned by pessimistic error estimates at confidence ``C``, or, with
    ``N >= 2``, by reduced-error pruning against one of ``N`` stratified folds.
    """
    schema = ParamSchema('c45', 'C4.5', (
        Param('U', 'bool', False, help='unpruned tree'),
        Param('S', 'bool', False, inert=True, help='disable subtree raising'),
        Param('A', 'bool', False, help='Laplace smoothing of leaf probabilities'),
        Param('C', 'real', 0.25, grid=(0.05, 0.1, 0.15, 0.35, 0.5), space=linear_range(0.05, 0.5),
              low=0.0, high=0.5, low_open=True, help='confidence factor for pruning'),
        Param('M', 'int', 2, grid=(1, 3, 5, 10, 20), space=log_range(1, 20), low=1,
              help='minimum number of instances per branch'),
        Param('N', 'choice', 0, grid=(2, 3, 5, 10), space=choice_of(0, 2, 3, 5, 10), choices=(0, 2, 3, 5, 10),
              parse=lambda v: _reduced_error_folds(v), help='reduced-error pruning folds (0 = off)'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        return cls(confidence=args['C'], min_leaf=args['M'], rep_folds=args['N'],
                   laplace=args['A'], unpruned=args['U'])

    def __init__(self, confidence=0.25, min_leaf=2, rep_folds=0, laplace=False, unpruned=False):
        super(C45, self).__init__()
        self.confidence = confidence
        self.min_leaf = min_leaf
        self.rep_folds = rep_folds
        self.laplace = laplace
        self.unpruned = unpruned

    def _fit(self, X, y):
        grower = TreeGrower('gain_ratio', min_leaf=self.min_leaf)
        if self.unpruned:
            self.root = grower.grow(X, y, self.n_classes)
        elif self.rep_folds >= 2 and X.shape[0] >= self.rep_folds:
            folds = assign_folds(y, self.rep_folds, Rng(REP_SEED))
            held = folds == self.rep_folds - 1
            root = grower.grow(X[~held], y[~held], self.n_classes)
            self.root = reduced_error_prune(root, X[held], y[held])[0]
        else:
            root = grower.grow(X, y, self.n_classes)
            self.root = pessimistic_prune(root, self.confidence)[0]

    def _predict(self, X):
        return tree_predict(self.root, X)

    def _posterior(self, X):
        counts = leaf_counts(self.root, X)
        if self.laplace:
            counts = counts + 1.0
        return counts / counts.sum(axis=1, keepdims=True)


def _reduced_error_folds(value):
    folds = int(value)
    if folds == 1 or folds < 0:
        raise ValueError(value)
    return folds


@register_model('cart')
class SimpleCart(BaseModel):
    r"""
    CART with Gini splits and minimal cost-complexity pruning.

    The complexity parameter is chosen by internal stratified ``N``-fold
    cross-validation seeded with ``S``, evaluated at the geometric means of
    consecutive breakpoints of the pruning sequence; ``-A`` picks the simplest
    tree within one standard error of the minimum.
    """
    schema = ParamSchema('cart', 'Simple Cart', (
        Param('S', 'int', 1, grid=tuple(range(2, 12)), space=linear_range(1, 11), low=0,
              help='seed of the internal cross-validation'),
        Param('C', 'real', 1.0, grid=(0.25, 0.5, 0.75), space=linear_range(0.25, 1.0), low=0.0, high=1.0,
              low_open=True, inert=True, help='training set proportion'),
        Param('M', 'int', 2, grid=(1, 3, 5, 10, 20), space=log_range(1, 20), low=1,
              help='minimum number of instances at terminal nodes'),
        Param('N', 'int', 5, grid=(2, 3, 10), space=linear_range(2, 10), low=2,
              help='folds of the internal cross-validation'),
        Param('A', 'bool', False, help='one-standard-error rule'),
        Param('H', 'bool', False, inert=True, help='heuristic search for nominal attributes'),
        Param('U', 'bool', False, help='unpruned tree'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        return cls(seed=args['S'], min_leaf=args['M'], folds=args['N'], one_se=args['A'], unpruned=args['U'])

    def __init__(self, seed=1, min_leaf=2, folds=5, one_se=False, unpruned=False):
        super(SimpleCart, self).__init__()
        self.seed = seed
        self.min_leaf = min_leaf
        self.folds = folds
        self.one_se = one_se
        self.unpruned = unpruned

    def _grow(self, X, y):
        return TreeGrower('gini', min_leaf=self.min_leaf).grow(X, y, self.n_classes)

    def _fit(self, X, y):
        root = self._grow(X, y)
        n = X.shape[0]
        if self.unpruned or n < self.folds:
            self.root = root
            return
        sequence = pruning_sequence(root, n)
        alphas = [a for a, _ in sequence]
        midpoints = [np.sqrt(alphas[k] * alphas[k + 1]) for k in range(len(alphas) - 1)] + [alphas[-1]]
        errors = np.zeros(len(midpoints))
        folds = assign_folds(y, self.folds, Rng(self.seed))
        for k in range(self.folds):
            held = folds == k
            fold_root = self._grow(X[~held], y[~held])
            n_fold = int((~held).sum())
            for i, alpha in enumerate(midpoints):
                pruned = prune_at(fold_root, alpha, n_fold)[0]
                errors[i] += (tree_predict(pruned, X[held]) != y[held]).sum()
        best = errors.min()
        if self.one_se:
            rate = best / n
            best = best + n * np.sqrt(rate * (1.0 - rate) / n)
        chosen = max(i for i in range(len(midpoints)) if errors[i] <= best + 1e-9)
        self.alpha = alphas[chosen]
        self.root = sequence[chosen][1]

    def _predict(self, X):
        return tree_predict(self.root, X)

    def _posterior(self, X):
        counts = leaf_counts(self.root, X)
        return counts / counts.sum(axis=1, keepdims=True)


def tree_fit(config, train):
    return fit(config, train)
