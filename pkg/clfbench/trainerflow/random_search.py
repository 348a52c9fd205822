import numpy as np

from . import BaseFlow, register_flow
from .base_flow import check_family, dataset_ids, evaluate_grid, family_fingerprint
from .results import SearchReport, Improvement, DatasetBest, RankingEntry
from ..auto import sample_configs
from ..models import get_schema
from ..tasks.cross_validation import cv_task
from ..utils.errors import FamilyMismatchError
from ..utils.logger import print_search, get_logger
from ..utils.numeric import Rng

logger = get_logger(__name__)


def search_seed(seed, classifier):
    r"""Sampler seed of one classifier; the same configurations serve every dataset of the family."""
    return Rng(seed).derive(classifier).seed_int()


def build_search_report(schema, family, default, configs, accuracies, n_configs, seed):
    accuracies = np.asarray(accuracies, dtype=np.float64)
    default_acc = accuracies[:, 0]
    trial_acc = accuracies[:, 1:]
    deltas = trial_acc - default_acc[:, None]
    improving = deltas[deltas > 0]
    improvement = None
    if improving.size:
        improvement = Improvement(float(improving.mean()), float(improving.std()), float(improving.max()))
    per_dataset = []
    for row, index in enumerate(dataset_ids(family)):
        p_value = 100.0 * float((deltas[row] > 0).mean())
        if (deltas[row] > 0).any():
            best = int(np.argmax(trial_acc[row]))
            per_dataset.append(DatasetBest(int(index), best, dict(configs[best].params), float(trial_acc[row, best]),
                                           float(default_acc[row]), p_value))
        else:
            per_dataset.append(DatasetBest(int(index), -1, dict(default.params), float(default_acc[row]),
                                           float(default_acc[row]), p_value))
    return SearchReport(
        classifier=schema.classifier, name=schema.display_name, family=family_fingerprint(family),
        n_configs=n_configs, seed=seed, default_params=dict(default.params),
        configs=tuple(dict(c.params) for c in configs),
        p_value=100.0 * float((deltas > 0).sum()) / deltas.size, improvement=improvement,
        per_dataset=tuple(per_dataset), deltas=tuple(tuple(float(v) for v in row) for row in deltas))


def random_search(classifier, family, n_configs=200, seed=0, k=10, cv_seed=0, jobs=1, base=None,
                  progress=False, task=None):
    r"""
    Evaluate ``n_configs`` random configurations of ``classifier`` on every dataset.

    Parameters
    ----------
    classifier : str
    family : list[Dataset]
    n_configs : int
        Random configurations, drawn once and shared by all datasets.
    seed : int
        Seed of the configuration sampler.
    k, cv_seed : int
        Folds and shuffle seed of the cross-validation.
    base : dict
        Overrides of the default configuration the trials are compared with.

    Returns
    -------
    SearchReport
    """
    family = check_family(family)
    schema = get_schema(classifier)
    n_features = family[0].n_features
    configs = sample_configs(schema, n_configs, search_seed(seed, classifier), n_features)
    default = schema.resolve(base or {}, n_features)
    accuracies = evaluate_grid(task or cv_task(k, cv_seed), [default] + configs, family, jobs,
                               schema.display_name, progress)
    return build_search_report(schema, family, default, configs, accuracies, n_configs, seed)


def best_of_random_ranking(reports, family):
    r"""
    Rank classifiers by the mean over datasets of their best configuration's accuracy.

    A dataset whose default beat every random configuration contributes its
    default accuracy.

    Raises
    ------
    FamilyMismatchError
        When a report was computed on another family.
    """
    fingerprint = family_fingerprint(check_family(family))
    for report in reports:
        if report.family != fingerprint:
            raise FamilyMismatchError('search report of {} covers another dataset family'.format(report.name))
    rows = []
    for report in reports:
        values = np.asarray(report.best_accuracies(), dtype=np.float64)
        rows.append((report, float(values.mean()), float(values.std()), tuple(float(v) for v in values)))
    rows.sort(key=lambda r: -r[1])
    return [RankingEntry(rank + 1, report.classifier, report.name, mean, deviation, values)
            for rank, (report, mean, deviation, values) in enumerate(rows)]


@register_flow('random_search')
class RandomSearch(BaseFlow):
    r"""Random parameter search of every selected classifier, followed by the best-of-random ranking."""

    def __init__(self, args):
        super(RandomSearch, self).__init__(args)
        self.configs = args.classifier_configs()
        self.n_configs = args.n_configs
        self.seed = args.seed

    def train(self, family):
        reports = []
        for config in self.configs:
            logger.info('random search of %s: %d configurations', config.classifier, self.n_configs)
            report = random_search(config.classifier, family, self.n_configs, self.seed, jobs=self.jobs,
                                   base=config.params, progress=self.progress, task=self.task)
            print_search(report)
            reports.append(report)
        return reports, best_of_random_ranking(reports, family)
