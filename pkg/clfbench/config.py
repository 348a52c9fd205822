import configparser
import os
from dataclasses import dataclass, field, asdict, fields

from .dataset.spec import DistributionSpec, GeneratorSpec
from .models import ClassifierConfig, get_schema
from .utils.errors import UsageError

DEFAULT_INI = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'config.ini')

# fields that change how a run executes, never what it computes
RUNTIME_FIELDS = ('jobs', 'progress', 'verbose')


@dataclass
class RunConfig:
    r"""
    Everything a subcommand needs to reproduce its output.

    Attributes
    -----------
    command : str
        The subcommand, e.g. ``bench``.
    protocol : str
        The flow run by the command, e.g. ``default_benchmark``.
    data : list[str]
        Family directories read by the command.
    seed : int
        Global seed: root seed of ``gen`` and sampler seed of ``search``.
    overrides : list[str]
        Classifier parameters as ``<classifier>.<param>=<value>``.
    context : dict
        Parameters fixed while sweeping ``parameter``, e.g. ``{'kernel': 'rbf'}``.
    """
    command: str = None
    protocol: str = None
    data: list = field(default_factory=list)
    out: str = None
    seed: int = 0
    task: str = 'cross_validation'
    folds: int = 10
    cv_seed: int = 0
    classifiers: list = field(default_factory=list)
    overrides: list = field(default_factory=list)
    parameter: str = None
    context: dict = field(default_factory=dict)
    n_configs: int = 200
    features: list = None
    bins: int = 20
    formats: list = field(default_factory=lambda: ['markdown'])
    generator: dict = None
    jobs: int = 1
    progress: bool = False
    verbose: int = 0

    def update(self, values):
        known = {f.name for f in fields(self)}
        for key, value in values.items():
            if key not in known:
                raise UsageError('unknown run-config key {!r}'.format(key))
            setattr(self, key, value)
        return self

    def classifier_overrides(self):
        r"""``--set`` assignments grouped by classifier, coerced against each schema."""
        grouped = {}
        for item in self.overrides:
            target, sep, value = item.partition('=')
            classifier, dot, param = target.partition('.')
            if not sep or not dot or not classifier or not param:
                raise UsageError('cannot parse --set {!r}, expected <classifier>.<param>=<value>'.format(item))
            schema = get_schema(classifier.strip())
            grouped.setdefault(schema.classifier, {})[param.strip()] = schema[param.strip()].coerce(value.strip())
        return grouped

    def classifier_configs(self):
        r"""One :class:`ClassifierConfig` per selected classifier, defaults updated with ``--set``."""
        grouped = self.classifier_overrides()
        for classifier in grouped:
            if classifier not in self.classifiers:
                raise UsageError('--set targets {} which is not among the selected classifiers'.format(classifier))
        configs = []
        for classifier in self.classifiers:
            schema = get_schema(classifier)
            configs.append(ClassifierConfig(classifier, schema.resolve(grouped.get(classifier, {})).params))
        return configs

    def to_dict(self):
        d = asdict(self)
        for key in RUNTIME_FIELDS:
            d.pop(key)
        return d


class Config(object):
    r"""
    Defaults of every subcommand, read from ``config.ini``.

    Parameters
    ----------
    file_path : str or list[str]
        Ini file(s); later files override earlier ones.
    """

    def __init__(self, file_path=None):
        conf = configparser.ConfigParser()
        read = conf.read(file_path or DEFAULT_INI)
        if not read:
            raise FileNotFoundError('configuration file not found: {}'.format(file_path))

        self.n_classes = conf.getint('generator', 'classes')
        self.per_class = conf.getint('generator', 'per_class')
        self.alpha = conf.getfloat('generator', 'alpha')
        self.n_datasets = conf.getint('generator', 'n_datasets')
        self.generator_seed = conf.getint('generator', 'seed')
        self.f_sigma = DistributionSpec.parse(conf.get('generator', 'f_sigma'))
        self.f_c = DistributionSpec.parse(conf.get('generator', 'f_c'))

        self.task = conf.get('evaluation', 'task')
        self.folds = conf.getint('evaluation', 'folds')
        self.cv_seed = conf.getint('evaluation', 'cv_seed')
        self.classifiers = [c.strip() for c in conf.get('evaluation', 'classifiers').split(',') if c.strip()]

        self.n_configs = conf.getint('search', 'n_configs')
        self.search_seed = conf.getint('search', 'seed')
        self.bins = conf.getint('histogram', 'bins')
        self.jobs = conf.getint('runtime', 'jobs')
        self.alpha_presets = {name: conf.getfloat('alpha_presets', name) for name in conf.options('alpha_presets')}

    def alpha_preset(self, name):
        if name not in self.alpha_presets:
            raise UsageError('unknown alpha preset {!r}; choose from {}'.format(name, ', '.join(self.alpha_presets)))
        return self.alpha_presets[name]

    def generator_spec(self, n_features, **overrides):
        r"""A :class:`GeneratorSpec` from the ``[generator]`` section; ``None`` overrides are ignored."""
        values = dict(n_classes=self.n_classes, n_features=n_features, per_class=self.per_class,
                      alpha=self.alpha, f_sigma=self.f_sigma, f_c=self.f_c,
                      n_datasets=self.n_datasets, seed=self.generator_seed)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return GeneratorSpec(**values).validate()

    def run_config(self, command, protocol=None):
        return RunConfig(command=command, protocol=protocol, task=self.task, folds=self.folds,
                         cv_seed=self.cv_seed, classifiers=list(self.classifiers), n_configs=self.n_configs,
                         seed=self.search_seed, bins=self.bins, jobs=self.jobs)
