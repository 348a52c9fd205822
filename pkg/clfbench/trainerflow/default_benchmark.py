from . import BaseFlow, register_flow
from .base_flow import check_family, evaluate_grid
from .results import BenchmarkEntry, EvalStats
from ..models import DEFAULT_ROSTER, get_schema, resolve_config
from ..tasks.cross_validation import cv_task
from ..utils.logger import print_stats


def benchmark_entries(family, configs=None, k=10, seed=0, jobs=1, progress=False, task=None):
    r"""One :class:`BenchmarkEntry` per configuration, in the order given."""
    family = check_family(family)
    n_features = family[0].n_features
    configs = [resolve_config(c, n_features) for c in (configs or DEFAULT_ROSTER)]
    task = task or cv_task(k, seed)
    accuracies = evaluate_grid(task, configs, family, jobs, 'benchmark', progress)
    entries = []
    for j, config in enumerate(configs):
        values = tuple(row[j] for row in accuracies)
        entries.append(BenchmarkEntry(config.classifier, get_schema(config.classifier).display_name,
                                      dict(config.params), EvalStats.from_values(values), values))
    return entries


def default_benchmark(family, configs=None, k=10, seed=0, jobs=1, progress=False, task=None):
    r"""
    Cross-validated accuracy of every classifier at its default parameters.

    Parameters
    ----------
    family : list[Dataset]
    configs : list[ClassifierConfig or str]
        Classifiers to compare, by default the full roster.
    k, seed : int
        Folds and shuffle seed of the cross-validation.
    jobs : int
        Worker processes.

    Returns
    -------
    list[BenchmarkEntry]
        Sorted by mean accuracy, highest first.
    """
    entries = benchmark_entries(family, configs, k, seed, jobs, progress, task)
    return sorted(entries, key=lambda e: -e.stats.mean)


@register_flow('default_benchmark')
class DefaultBenchmark(BaseFlow):
    r"""Compare the classifiers of ``args.classifiers`` at their default parameters."""

    def __init__(self, args):
        super(DefaultBenchmark, self).__init__(args)
        self.configs = args.classifier_configs()

    def train(self, family):
        entries = default_benchmark(family, self.configs, jobs=self.jobs, progress=self.progress, task=self.task)
        for entry in entries:
            print_stats(entry.name, entry.stats)
        return entries
