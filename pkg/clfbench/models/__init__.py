import importlib

from .base_model import BaseModel
from .schema import ParamSchema, Param, ClassifierConfig, Space, SweepTarget
from ..utils.errors import UnknownClassifierError

MODEL_REGISTRY = {}


def register_model(name):
    r"""
    Class decorator registering a classifier under the id ``name``.

    The class must extend :class:`BaseModel` and carry a :class:`ParamSchema`
    whose ``classifier`` is ``name``::

        @register_model('knn')
        class KNN(BaseModel):
            schema = ParamSchema('knn', 'kNN', (...))
    """

    def decorate(cls):
        if not issubclass(cls, BaseModel):
            raise TypeError("classifier {!r} ({}) is not a BaseModel".format(name, cls.__name__))
        if cls.schema is None or cls.schema.classifier != name:
            raise ValueError("classifier {!r} needs a ParamSchema with the same id".format(name))
        if MODEL_REGISTRY.setdefault(name, cls) is not cls:
            raise ValueError("classifier {!r} is registered twice".format(name))
        cls.model_name = name
        return cls

    return decorate


def try_import_model(model):
    if model in MODEL_REGISTRY:
        return True
    module = SUPPORTED_MODELS.get(model)
    if module is None:
        return False
    importlib.import_module(module)
    return model in MODEL_REGISTRY


def build_model(model):
    if not try_import_model(model):
        raise UnknownClassifierError(
            "unknown classifier {!r}; choose from {}".format(model, ', '.join(SUPPORTED_MODELS)))
    return MODEL_REGISTRY[model]


def get_schema(model):
    return build_model(model).schema


def all_schemas():
    return [get_schema(name) for name in SUPPORTED_MODELS]


def default_config(model):
    return get_schema(model).default_config()


def resolve_config(config, n_features=None):
    r"""Validated :class:`ClassifierConfig` from a config, or from a bare classifier id."""
    if isinstance(config, str):
        config = ClassifierConfig(config, {})
    return get_schema(config.classifier).resolve(config.params, n_features)


def fit(config, train):
    r"""
    Train the classifier named by ``config`` on the dataset ``train``.

    Parameters
    ----------
    config : ClassifierConfig or str
        Parameter assignment; missing parameters take their defaults.
    train : Dataset

    Returns
    -------
    BaseModel
        The fitted model.
    """
    config = resolve_config(config, train.n_features)
    model_cls = build_model(config.classifier)
    model = model_cls.build_model_from_args(config)
    return model.fit(train.instances, train.labels)


SUPPORTED_MODELS = {
    'knn': 'clfbench.models.knn',
    'naive_bayes': 'clfbench.models.naive_bayes',
    'logistic': 'clfbench.models.logistic',
    'c45': 'clfbench.models.tree',
    'cart': 'clfbench.models.tree',
    'random_forest': 'clfbench.models.forest',
    'svm': 'clfbench.models.svm',
    'mlp': 'clfbench.models.mlp',
    'zero_r': 'clfbench.models.zero_r',
}

DEFAULT_ROSTER = ('knn', 'naive_bayes', 'logistic', 'c45', 'cart', 'random_forest', 'svm', 'mlp')
