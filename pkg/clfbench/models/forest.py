import numpy as np

from . import BaseModel, register_model, fit
from .schema import ParamSchema, Param, log_range, linear_range, choice_of
from .tree import TreeGrower, tree_predict
from ..utils.numeric import Rng


def default_n_candidates(n_features):
    return int(np.log2(n_features)) + 1


@register_model('random_forest')
class RandomForest(BaseModel):
    r"""
    Bagged random trees.

    Each tree is grown unpruned on a bootstrap resample of the training set,
    examining ``K`` random features per split (more when none of them yields a
    positive information gain). Tree ``t`` draws from the stream
    ``Rng(S).derive(t)``.

    Parameters
    ----------
    n_trees : int
        ``-I``.
    n_candidates : int
        ``-K``; 0 means ``floor(log2(F)) + 1``.
    max_depth : int
        ``-depth``; 0 for unlimited.
    seed : int
        ``-S``.
    """
    schema = ParamSchema('random_forest', 'Random Forest', (
        Param('I', 'int', 10, grid=(1, 25, 50, 100), space=log_range(1, 100), low=1, help='number of trees'),
        Param('K', 'int', 0, grid='F', space=linear_range(0, 'F'), low=0, high='F',
              help='features per split (0 = log2(F) + 1)'),
        Param('depth', 'int', 0, grid=(1, 2, 5, 10, 25), space=choice_of(0, 1, 2, 5, 10, 25), low=0,
              help='maximum depth (0 = unlimited)'),
        Param('S', 'int', 1, grid=tuple(range(2, 12)), space=linear_range(1, 11), low=0, help='random seed'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        return cls(n_trees=args['I'], n_candidates=args['K'], max_depth=args['depth'], seed=args['S'])

    def __init__(self, n_trees=10, n_candidates=0, max_depth=0, seed=1):
        super(RandomForest, self).__init__()
        self.n_trees = n_trees
        self.n_candidates = n_candidates
        self.max_depth = max_depth
        self.seed = seed

    def _fit(self, X, y):
        k = self.n_candidates or default_n_candidates(X.shape[1])
        self.trees = []
        for t in range(self.n_trees):
            rng = Rng(self.seed).derive(t)
            sample = rng.bootstrap(X.shape[0])
            grower = TreeGrower('info_gain', min_leaf=1, max_depth=self.max_depth, n_candidates=k, rng=rng)
            self.trees.append(grower.grow(X[sample], y[sample], self.n_classes))

    def votes(self, X):
        r"""Vote count of every class for every row of ``X``; rows sum to the number of trees."""
        X = self._check_fitted(X)
        if self.constant is not None:
            return np.full((X.shape[0], 1), self.n_trees, dtype=np.int64)
        counts = np.zeros((X.shape[0], self.n_classes), dtype=np.int64)
        rows = np.arange(X.shape[0])
        for tree in self.trees:
            np.add.at(counts, (rows, tree_predict(tree, X)), 1)
        return counts

    def _predict(self, X):
        return np.argmax(self.votes(X), axis=1)

    def _posterior(self, X):
        return self.votes(X) / float(self.n_trees)


def forest_fit(config, train):
    return fit(config, train)
