from . import BaseFlow, register_flow
from .default_benchmark import benchmark_entries
from .results import CurveSeries
from ..tasks.cross_validation import cv_task
from ..utils.errors import DataError, MissingFamilyError


def feature_curve(families, configs=None, k=10, seed=0, jobs=1, features=None, progress=False, task=None):
    r"""
    Mean default accuracy of every classifier as a function of the feature count.

    Parameters
    ----------
    families : dict[int, list[Dataset]]
        One family per feature count.
    features : list[int]
        Feature counts the curve must cover, by default every key of ``families``.

    Returns
    -------
    list[CurveSeries]
        One series per configuration, in the order given.
    """
    features = sorted(families) if features is None else sorted(features)
    for n_features in features:
        if not families.get(n_features):
            raise MissingFamilyError('no dataset family with {} features'.format(n_features))
    task = task or cv_task(k, seed)
    columns = []
    for n_features in features:
        family = families[n_features]
        if family[0].n_features != n_features:
            raise DataError('family registered for F={} has {} features'.format(n_features, family[0].n_features))
        columns.append(benchmark_entries(family, configs, jobs=jobs, progress=progress, task=task))
    if not columns:
        return []
    series = []
    for j, entry in enumerate(columns[0]):
        points = tuple((n_features, column[j].stats.mean) for n_features, column in zip(features, columns))
        series.append(CurveSeries(entry.classifier, entry.name, points))
    return series


@register_flow('feature_curve')
class FeatureCurve(BaseFlow):
    r"""Default accuracy of the selected classifiers across families of growing dimension."""

    def __init__(self, args):
        super(FeatureCurve, self).__init__(args)
        self.configs = args.classifier_configs()

    def train(self, families):
        return feature_curve(families, self.configs, jobs=self.jobs, features=getattr(self.args, 'features', None),
                             progress=self.progress, task=self.task)
