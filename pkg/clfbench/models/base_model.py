from abc import ABCMeta, abstractmethod

import numpy as np

from ..utils.errors import DataError, DimensionMismatchError


def check_instances(X, n_features=None):
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(1, -1)
    if X.ndim != 2:
        raise DataError('instances must form a 2-D array, got shape {}'.format(X.shape))
    if n_features is not None and X.shape[1] != n_features:
        raise DimensionMismatchError('model was trained on {} features, got {}'.format(n_features, X.shape[1]))
    return X


class BaseModel(metaclass=ABCMeta):
    r"""
    Common fit/predict contract of every classifier.

    ``fit`` validates the training data, encodes the labels as ``0..k-1`` and
    hands the encoded problem to :meth:`_fit`. A training set with a single
    class yields a model predicting that class everywhere without calling
    :meth:`_fit`. A fitted model is never mutated again.

    Attributes
    -----------
    n_features : int
        Feature count of the training set.
    classes : numpy.ndarray
        Sorted distinct training labels.
    n_classes : int
        Class count of the training set.
    """
    schema = None
    model_name = None

    @classmethod
    def build_model_from_args(cls, args):
        r"""
        Build the model instance from a validated :class:`ClassifierConfig`.

        So every subclass inheriting it should override the method.
        """
        raise NotImplementedError("Models must implement the build_model_from_args method")

    def __init__(self):
        super(BaseModel, self).__init__()
        self.n_features = None
        self.classes = None
        self.n_classes = 0
        self.constant = None

    def fit(self, X, y):
        X = check_instances(X)
        y = np.asarray(y).astype(np.int64)
        if X.shape[0] == 0:
            raise DataError('cannot train on an empty dataset')
        if y.shape != (X.shape[0],):
            raise DataError('{} labels for {} instances'.format(y.shape[0], X.shape[0]))
        self.n_features = X.shape[1]
        self.classes, encoded = np.unique(y, return_inverse=True)
        self.n_classes = len(self.classes)
        if self.n_classes == 1:
            self.constant = self.classes[0]
            return self
        self._fit(X, encoded)
        return self

    def predict(self, X):
        X = self._check_fitted(X)
        if self.constant is not None:
            return np.full(X.shape[0], self.constant, dtype=np.int64)
        return self.classes[self._predict(X)]

    def posterior(self, X):
        r"""Class probabilities, one column per training class (sorted by label)."""
        X = self._check_fitted(X)
        if self.constant is not None:
            return np.ones((X.shape[0], 1))
        return self._posterior(X)

    def _check_fitted(self, X):
        if self.n_features is None:
            raise DataError('{} is not fitted'.format(type(self).__name__))
        return check_instances(X, self.n_features)

    @abstractmethod
    def _fit(self, X, y):
        r"""Learn from instances ``X`` and labels ``y`` encoded as ``0..n_classes-1``."""

    @abstractmethod
    def _predict(self, X):
        r"""Return encoded labels for ``X``."""

    def _posterior(self, X):
        one_hot = np.zeros((X.shape[0], self.n_classes))
        one_hot[np.arange(X.shape[0]), self._predict(X)] = 1.0
        return one_hot


def argmax_lowest(scores):
    r"""Row-wise argmax; ties resolve to the lowest column index."""
    return np.argmax(scores, axis=1)
