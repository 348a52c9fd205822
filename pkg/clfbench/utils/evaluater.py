import numpy as np
from sklearn.metrics import accuracy_score

from .errors import DataError


def accuracy(predicted, truth):
    r"""
    Accuracy rate in percent: correctly classified instances over all instances.

    Parameters
    ----------
    predicted : sequence of int
    truth : sequence of int

    Returns
    -------
    float
        ``100 * #correct / #total``
    """
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    if predicted.shape != truth.shape:
        raise DataError('length mismatch: {} predictions for {} labels'.format(predicted.shape, truth.shape))
    if truth.size == 0:
        raise DataError('accuracy of an empty label list is undefined')
    return 100.0 * accuracy_score(truth, predicted)


class Evaluator(object):
    r"""
    Bundles the metric used by every protocol.

    Only the accuracy rate is reported; the seed is kept so that results files
    can echo the protocol that produced them.
    """

    def __init__(self, seed):
        self.seed = seed

    def cal_acc(self, y_true, y_pred):
        return accuracy(y_pred, y_true)

    def summary(self, values):
        return summarize(values)


class Summary(object):
    __slots__ = ('mean', 'deviation', 'best', 'worst')

    def __init__(self, mean, deviation, best, worst):
        self.mean = mean
        self.deviation = deviation
        self.best = best
        self.worst = worst


def summarize(values):
    r"""Mean, population deviation, maximum and minimum of a non-empty list."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise DataError('cannot summarise an empty list')
    return Summary(float(values.mean()), float(values.std()), float(values.max()), float(values.min()))
