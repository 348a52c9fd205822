import optuna

from .hpo_space import func_search
from ..utils.errors import UsageError, ParameterRangeError

optuna.logging.set_verbosity(optuna.logging.WARNING)


class AutoML(object):
    r"""
    Random configurations of one classifier drawn through an optuna study.

    The study uses :class:`optuna.samplers.RandomSampler`, so no trial result
    ever steers the sampling; it only makes the draws reproducible from
    ``seed``.

    Parameters
    ----------
    schema : ParamSchema
    n_trials : int
        Number of configurations.
    seed : int
    n_features : int
        Feature count of the family, for feature-dependent ranges.
    """

    def __init__(self, schema, n_trials, seed, n_features=None):
        if n_trials < 1:
            raise ParameterRangeError('the number of random configurations must be at least 1, got {}'.format(n_trials))
        if not schema.tunable():
            raise UsageError('{} has no tunable parameters'.format(schema.display_name))
        self.schema = schema
        self.n_trials = n_trials
        self.seed = seed
        self.n_features = n_features
        self.func_search = func_search(schema, n_features)
        self.configs = []

    def _objective(self, trial):
        values = self.func_search(trial)
        self.configs.append(self.schema.resolve(values, self.n_features))
        return 0.0

    def run(self):
        self.configs = []
        sampler = optuna.samplers.RandomSampler(seed=self.seed)
        study = optuna.create_study(direction='maximize', sampler=sampler)
        study.optimize(self._objective, n_trials=self.n_trials, n_jobs=1)
        return list(self.configs)


def sample_configs(schema, n_configs, seed, n_features=None):
    r"""``n_configs`` validated random :class:`ClassifierConfig` of ``schema``, in draw order."""
    return AutoML(schema, n_configs, seed, n_features).run()
