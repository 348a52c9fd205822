"""Result records of the evaluation protocols.

Every record converts to and from plain dictionaries so that results files
can be written as JSON and re-rendered later.
"""
from dataclasses import dataclass, field, asdict

import numpy as np

from ..utils.evaluater import summarize


@dataclass(frozen=True)
class EvalStats:
    r"""Mean, population deviation, best and worst accuracy (percent) over a family."""
    mean: float
    deviation: float
    best: float
    worst: float

    @classmethod
    def from_values(cls, values):
        s = summarize(values)
        return cls(s.mean, s.deviation, s.best, s.worst)

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(d['mean'], d['deviation'], d['best'], d['worst'])


@dataclass(frozen=True)
class BenchmarkEntry:
    classifier: str
    name: str
    params: dict
    stats: EvalStats
    accuracies: tuple

    def to_dict(self):
        return {'classifier': self.classifier, 'name': self.name, 'params': dict(self.params),
                'stats': self.stats.to_dict(), 'accuracies': list(self.accuracies)}

    @classmethod
    def from_dict(cls, d):
        return cls(d['classifier'], d['name'], d['params'], EvalStats.from_dict(d['stats']), tuple(d['accuracies']))


@dataclass(frozen=True)
class SweepReport:
    r"""
    One-dimensional sensitivity of a parameter.

    ``S[d]`` is the best accuracy over the grid minus the accuracy of the
    baseline configuration on dataset ``d``; the grid never contains the
    baseline value, so ``S`` may be negative.
    """
    classifier: str
    name: str
    parameter: str
    label: str
    context: dict
    grid: tuple
    mean_S: float
    std_S: float
    max_S: float
    S: tuple
    default_accuracies: tuple
    grid_accuracies: tuple

    @classmethod
    def from_accuracies(cls, classifier, name, parameter, label, context, grid, default_accuracies, grid_accuracies):
        grid_accuracies = np.asarray(grid_accuracies, dtype=np.float64)
        S = grid_accuracies.max(axis=1) - np.asarray(default_accuracies, dtype=np.float64)
        return cls(classifier, name, parameter, label, dict(context), tuple(grid),
                   float(S.mean()), float(S.std()), float(S.max()), tuple(float(s) for s in S),
                   tuple(float(a) for a in default_accuracies),
                   tuple(tuple(float(a) for a in row) for row in grid_accuracies))

    def to_dict(self):
        return {'classifier': self.classifier, 'name': self.name, 'parameter': self.parameter,
                'label': self.label, 'context': dict(self.context), 'grid': list(self.grid),
                'mean_S': self.mean_S, 'std_S': self.std_S, 'max_S': self.max_S, 'S': list(self.S),
                'default_accuracies': list(self.default_accuracies),
                'grid_accuracies': [list(row) for row in self.grid_accuracies]}

    @classmethod
    def from_dict(cls, d):
        return cls(d['classifier'], d['name'], d['parameter'], d['label'], d['context'], tuple(d['grid']),
                   d['mean_S'], d['std_S'], d['max_S'], tuple(d['S']), tuple(d['default_accuracies']),
                   tuple(tuple(row) for row in d['grid_accuracies']))


@dataclass(frozen=True)
class Improvement:
    r"""Statistics of the accuracy gains of the improving trials only."""
    mean: float
    deviation: float
    maximum: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class DatasetBest:
    r"""
    Best configuration found for one dataset. ``config_index`` is -1 when no
    random configuration beat the default.
    """
    dataset: int
    config_index: int
    params: dict
    accuracy: float
    default_accuracy: float
    p_value: float

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        return cls(**d)


@dataclass(frozen=True)
class SearchReport:
    r"""
    Outcome of the random search of one classifier over a family.

    Attributes
    -----------
    p_value : float
        Percent of all (dataset, configuration) trials more accurate than the default.
    improvement : Improvement or None
        ``None`` when no trial improved on the default.
    deltas : tuple[tuple[float]]
        Trial accuracy minus default accuracy, per dataset and configuration.
    """
    classifier: str
    name: str
    family: str
    n_configs: int
    seed: int
    default_params: dict
    configs: tuple
    p_value: float
    improvement: object
    per_dataset: tuple
    deltas: tuple = field(repr=False)

    def recomputed_p_value(self):
        deltas = np.asarray(self.deltas, dtype=np.float64)
        return 100.0 * float((deltas > 0).sum()) / deltas.size

    def best_accuracies(self):
        return [b.accuracy for b in self.per_dataset]

    def to_dict(self):
        return {'classifier': self.classifier, 'name': self.name, 'family': self.family,
                'n_configs': self.n_configs, 'seed': self.seed, 'default_params': dict(self.default_params),
                'configs': [dict(c) for c in self.configs], 'p_value': self.p_value,
                'improvement': None if self.improvement is None else self.improvement.to_dict(),
                'per_dataset': [b.to_dict() for b in self.per_dataset],
                'deltas': [list(row) for row in self.deltas]}

    @classmethod
    def from_dict(cls, d):
        improvement = None if d['improvement'] is None else Improvement(**d['improvement'])
        return cls(d['classifier'], d['name'], d['family'], d['n_configs'], d['seed'], d['default_params'],
                   tuple(d['configs']), d['p_value'], improvement,
                   tuple(DatasetBest.from_dict(b) for b in d['per_dataset']),
                   tuple(tuple(row) for row in d['deltas']))


@dataclass(frozen=True)
class RankingEntry:
    rank: int
    classifier: str
    name: str
    mean: float
    deviation: float
    accuracies: tuple

    def to_dict(self):
        return {'rank': self.rank, 'classifier': self.classifier, 'name': self.name, 'mean': self.mean,
                'deviation': self.deviation, 'accuracies': list(self.accuracies)}

    @classmethod
    def from_dict(cls, d):
        return cls(d['rank'], d['classifier'], d['name'], d['mean'], d['deviation'], tuple(d['accuracies']))


@dataclass(frozen=True)
class CurveSeries:
    r"""Mean default accuracy of one classifier per feature count, sorted by feature count."""
    classifier: str
    name: str
    points: tuple

    def to_dict(self):
        return {'classifier': self.classifier, 'name': self.name,
                'points': [{'F': int(f), 'mean_accuracy': float(m)} for f, m in self.points]}

    @classmethod
    def from_dict(cls, d):
        return cls(d['classifier'], d['name'], tuple((p['F'], p['mean_accuracy']) for p in d['points']))
