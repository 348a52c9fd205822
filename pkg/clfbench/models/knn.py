import numpy as np

from . import BaseModel, register_model
from .base_model import check_instances
from .schema import ParamSchema, Param, log_range

MIN_DISTANCE = 1e-12
MIN_SIMILARITY = 1e-12


def euclidean(A, B):
    r"""Pairwise Euclidean distances between the rows of ``A`` and ``B``."""
    diff = A[:, None, :] - B[None, :, :]
    return np.sqrt((diff * diff).sum(axis=-1))


def neighbour_weights(dist, weighting):
    r"""
    Vote weight of each neighbour.

    ``'similarity'`` weights are ``1 - distance`` floored at ``MIN_SIMILARITY``:
    neighbours farther than 1 keep an equal small weight, so when all of them
    are that far the vote is a plain majority.
    """
    if weighting == 'inverse':
        return 1.0 / np.maximum(dist, MIN_DISTANCE)
    if weighting == 'similarity':
        return np.maximum(1.0 - dist, MIN_SIMILARITY)
    return np.ones_like(dist)


def vote(labels, dist, n_classes, weighting=None):
    r"""
    Weighted majority among neighbours ordered by increasing distance.

    Ties go to the class whose nearest member is closest, then to the lowest
    class index.

    Parameters
    ----------
    labels : numpy.ndarray, shape (m, k)
        Encoded labels of the k nearest neighbours of each query.
    dist : numpy.ndarray, shape (m, k)
        Their distances.
    """
    m, k = labels.shape
    rows = np.repeat(np.arange(m), k)
    scores = np.zeros((m, n_classes))
    np.add.at(scores, (rows, labels.ravel()), neighbour_weights(dist, weighting).ravel())
    nearest = np.full((m, n_classes), np.inf)
    np.minimum.at(nearest, (rows, labels.ravel()), dist.ravel())
    tied = scores == scores.max(axis=1, keepdims=True)
    return np.argmin(np.where(tied, nearest, np.inf), axis=1)


@register_model('knn')
class KNN(BaseModel):
    r"""
    k-nearest-neighbour classifier under the Euclidean distance.

    Parameters
    ----------
    k : int
        Number of neighbours (``-K``).
    weighting : str or None
        ``'inverse'`` (``-I``), ``'similarity'`` (``-F``) or ``None``.
    cross_validate : bool
        Choose the best k in ``1..K`` by hold-one-out on the training set (``-X``).
    """
    schema = ParamSchema('knn', 'kNN', (
        Param('K', 'int', 1, grid=(2, 3, 5, 7, 10, 15, 20, 30, 50), space=log_range(1, 50), low=1,
              help='number of neighbours'),
        Param('I', 'bool', False, help='weight neighbours by 1/distance'),
        Param('F', 'bool', False, help='weight neighbours by 1-distance'),
        Param('X', 'bool', False, help='select k in 1..K by hold-one-out'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        weighting = None
        if args['I']:
            weighting = 'inverse'
        elif args['F']:
            weighting = 'similarity'
        return cls(k=args['K'], weighting=weighting, cross_validate=args['X'])

    def __init__(self, k=1, weighting=None, cross_validate=False):
        super(KNN, self).__init__()
        self.k = k
        self.weighting = weighting
        self.cross_validate = cross_validate
        self.k_used = k

    def _fit(self, X, y):
        self.X = X
        self.y = y
        self.k_used = min(self.k, X.shape[0])
        if self.cross_validate and self.k > 1 and X.shape[0] > 1:
            self.k_used = self._hold_one_out()

    def _hold_one_out(self):
        dist = euclidean(self.X, self.X)
        np.fill_diagonal(dist, np.inf)
        k_max = min(self.k, self.X.shape[0] - 1)
        order = np.argsort(dist, axis=1, kind='stable')[:, :k_max]
        ordered = np.take_along_axis(dist, order, axis=1)
        best_k, best_hits = 1, -1
        for k in range(1, k_max + 1):
            predicted = vote(self.y[order[:, :k]], ordered[:, :k], self.n_classes, self.weighting)
            hits = int((predicted == self.y).sum())
            if hits > best_hits:
                best_k, best_hits = k, hits
        return best_k

    def neighbours(self, X):
        r"""Indices and distances of the ``k_used`` nearest training instances, nearest first."""
        dist = euclidean(X, self.X)
        order = np.argsort(dist, axis=1, kind='stable')[:, :self.k_used]
        return order, np.take_along_axis(dist, order, axis=1)

    def _predict(self, X):
        order, dist = self.neighbours(X)
        return vote(self.y[order], dist, self.n_classes, self.weighting)


def knn_predict(model, x):
    r"""Label of a single feature vector ``x`` under a fitted :class:`KNN`."""
    x = check_instances(x)
    return model.predict(x)[0]
