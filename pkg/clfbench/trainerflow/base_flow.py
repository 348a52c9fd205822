import hashlib
import sys
from abc import ABC, abstractmethod

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from ..tasks import build_task
from ..utils.errors import DataError, MissingFamilyError
from ..utils.logger import get_logger
from ..utils.utils import stable_hash

logger = get_logger(__name__)


def family_fingerprint(family):
    r"""SHA-256 over the instances and labels of every dataset, in order."""
    digest = hashlib.sha256()
    for d in family:
        digest.update(np.ascontiguousarray(d.instances).tobytes())
        digest.update(np.ascontiguousarray(d.labels).tobytes())
    return digest.hexdigest()


def check_family(family):
    family = list(family)
    if not family:
        raise MissingFamilyError('the dataset family is empty')
    n_features = family[0].n_features
    for d in family:
        if d.n_features != n_features:
            raise DataError('family mixes {} and {} features'.format(n_features, d.n_features))
    return family


def dataset_ids(family):
    return [i if d.index is None else d.index for i, d in enumerate(family)]


def evaluate_trial(task, config, dataset):
    return task.evaluate(config, dataset)


def run_trials(task, trials, jobs=1, desc=None, progress=False):
    r"""
    Cross-validated accuracy of every ``(config, dataset)`` trial, in input order.

    Trials are independent, so ``jobs`` only changes the wall time.
    """
    trials = list(trials)
    iterator = tqdm(trials, desc=desc, file=sys.stderr, disable=not progress, leave=False)
    if jobs == 1:
        return [evaluate_trial(task, config, d) for config, d in iterator]
    return Parallel(n_jobs=jobs)(delayed(evaluate_trial)(task, config, d) for config, d in iterator)


def evaluate_grid(task, configs, family, jobs=1, desc=None, progress=False):
    r"""
    Accuracy matrix ``[dataset][config]``; identical configurations are evaluated once.
    """
    keys = [stable_hash(c.to_dict()) for c in configs]
    unique = {}
    for key, config in zip(keys, configs):
        unique.setdefault(key, config)
    order = list(unique)
    trials = [(unique[key], d) for d in family for key in order]
    logger.info('%s: %d configurations x %d datasets', desc or 'evaluation', len(order), len(family))
    flat = run_trials(task, trials, jobs, desc, progress)
    column = {key: i for i, key in enumerate(order)}
    width = len(order)
    return [[flat[r * width + column[key]] for key in keys] for r in range(len(family))]


class BaseFlow(ABC):
    r"""
    A protocol run over a dataset family.

    Attributes
    -----------
    args : RunConfig
        Run settings: folds, cross-validation seed, job count and protocol options.
    task : BaseTask
        The evaluation task named by ``args.task``.
    """

    def __init__(self, args):
        super(BaseFlow, self).__init__()
        self.args = args
        self.task = build_task(args)
        self.jobs = args.jobs
        self.progress = getattr(args, 'progress', False)

    @abstractmethod
    def train(self, family):
        r"""Run the protocol and return its results."""
