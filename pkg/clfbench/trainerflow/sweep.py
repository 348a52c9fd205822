from . import BaseFlow, register_flow
from .base_flow import check_family, evaluate_grid
from .results import SweepReport
from ..models import get_schema
from ..tasks.cross_validation import cv_task
from ..utils.errors import EmptyGridError
from ..utils.logger import print_sweep


def sweep_configs(schema, target, n_features, base=None):
    r"""Baseline configuration followed by one configuration per grid value of ``target``."""
    grid = target.param.sweep_grid(n_features)
    if not grid:
        raise EmptyGridError('{} has an empty sweep grid'.format(target.label))
    baseline = schema.resolve({**(base or {}), **target.context}, n_features)
    configs = [baseline] + [schema.resolve({**baseline.params, target.param.name: v}, n_features) for v in grid]
    return grid, configs


def _report(schema, target, grid, accuracies):
    return SweepReport.from_accuracies(
        schema.classifier, schema.display_name, target.param.name, target.label, target.context, grid,
        [row[0] for row in accuracies], [row[1:] for row in accuracies])


def sweep_parameter(classifier, parameter, family, k=10, seed=0, jobs=1, context=None, base=None,
                    progress=False, task=None):
    r"""
    One-dimensional sensitivity ``S = max over grid - baseline`` of a parameter.

    The baseline is the default configuration, updated with ``base`` and with
    the sweep ``context`` (e.g. ``{'kernel': 'rbf'}`` for the RBF gamma).
    """
    family = check_family(family)
    schema = get_schema(classifier)
    context = {name: schema[name].coerce(value) for name, value in (context or {}).items()}
    target = schema.sweep_target(parameter, context)
    grid, configs = sweep_configs(schema, target, family[0].n_features, base)
    accuracies = evaluate_grid(task or cv_task(k, seed), configs, family, jobs, target.label, progress)
    return _report(schema, target, grid, accuracies)


def sweep_all(classifier, family, k=10, seed=0, jobs=1, base=None, progress=False, task=None):
    r"""A :class:`SweepReport` for every sweep target of ``classifier``, in schema order."""
    family = check_family(family)
    schema = get_schema(classifier)
    n_features = family[0].n_features
    plans = []
    configs = []
    for target in schema.sweep_targets():
        grid, target_configs = sweep_configs(schema, target, n_features, base)
        plans.append((target, grid, len(configs), len(target_configs)))
        configs.extend(target_configs)
    if not plans:
        return []
    accuracies = evaluate_grid(task or cv_task(k, seed), configs, family, jobs, schema.display_name, progress)
    return [_report(schema, target, grid, [row[start:start + width] for row in accuracies])
            for target, grid, start, width in plans]


@register_flow('sweep')
class Sweep(BaseFlow):
    r"""
    One-dimensional analysis of ``args.parameter`` of every selected classifier,
    or of all their parameters when no parameter is named.
    """

    def __init__(self, args):
        super(Sweep, self).__init__(args)
        self.configs = args.classifier_configs()
        self.parameter = getattr(args, 'parameter', None)
        self.context = getattr(args, 'context', None)

    def train(self, family):
        reports = []
        for config in self.configs:
            if self.parameter:
                reports.append(sweep_parameter(config.classifier, self.parameter, family, jobs=self.jobs,
                                               context=self.context, base=config.params,
                                               progress=self.progress, task=self.task))
            else:
                reports.extend(sweep_all(config.classifier, family, jobs=self.jobs, base=config.params,
                                         progress=self.progress, task=self.task))
        for report in reports:
            print_sweep(report)
        return reports
