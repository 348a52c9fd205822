from types import SimpleNamespace

import numpy as np

from . import BaseTask, register_task
from ..models import fit
from ..utils import Evaluator, accuracy
from ..utils.errors import StratificationError, ParameterRangeError
from ..utils.numeric import Rng, assign_folds


def stratified_folds(d, k, seed):
    r"""
    Partition the instances of ``d`` into ``k`` stratified folds.

    Parameters
    ----------
    d : Dataset
    k : int
        Number of folds, at least 2.
    seed : int
        Seed of the shuffle; the same seed always gives the same folds.

    Returns
    -------
    list[numpy.ndarray]
        ``k`` sorted, pairwise disjoint index arrays covering every instance.
    """
    if k < 2:
        raise ParameterRangeError('cross-validation needs at least 2 folds, got {}'.format(k))
    counts = np.bincount(d.labels)
    present = counts[counts > 0]
    if present.min() < k:
        smallest = int(np.flatnonzero(counts == present.min())[0])
        raise StratificationError('class {} has {} instances, fewer than {} folds'.format(smallest, present.min(), k))
    folds = assign_folds(d.labels, k, Rng(seed).derive('folds'))
    return [np.flatnonzero(folds == f) for f in range(k)]


def cross_val_predict(config, d, folds):
    predicted = np.empty(d.n_instances, dtype=np.int64)
    everything = np.arange(d.n_instances)
    for held in folds:
        train = d.subset(np.setdiff1d(everything, held))
        model = fit(config, train)
        predicted[held] = model.predict(d.instances[held])
    return predicted


def cross_val_accuracy(config, d, k=10, seed=0):
    r"""
    Pooled k-fold accuracy: every instance is predicted once by the model
    trained on the other folds and all predictions are scored together.
    """
    folds = stratified_folds(d, k, seed)
    return accuracy(cross_val_predict(config, d, folds), d.labels)


@register_task('cross_validation')
class CrossValidation(BaseTask):
    r"""
    Stratified k-fold cross-validation task.

    Attributes
    -----------
    folds : int
        Number of folds.
    seed : int
        Shuffle seed of the folds.
    evaluator : Evaluator
        Accuracy metric of the pooled held-out predictions.
    """

    def __init__(self, args):
        super(CrossValidation, self).__init__()
        self.folds = args.folds
        self.seed = args.cv_seed
        self.evaluator = Evaluator(self.seed)

    def get_folds(self, dataset):
        return stratified_folds(dataset, self.folds, self.seed)

    def evaluate(self, config, dataset):
        predicted = cross_val_predict(config, dataset, self.get_folds(dataset))
        return self.evaluator.cal_acc(dataset.labels, predicted)


def cv_task(k=10, seed=0):
    r"""A :class:`CrossValidation` task for ``k`` folds shuffled with ``seed``."""
    return CrossValidation(SimpleNamespace(task='cross_validation', folds=k, cv_seed=seed))
