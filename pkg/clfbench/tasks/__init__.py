import importlib

from .base_task import BaseTask
from ..utils.errors import UsageError

TASK_REGISTRY = {}


def register_task(name):
    r"""
    Class decorator registering an evaluation scheme under ``name``.

    A scheme scores one classifier configuration on one dataset; every
    protocol looks it up through ``args.task``::

        @register_task('cross_validation')
        class CrossValidation(BaseTask):
            (...)

    Parameters
    ----------
    name : str
        The value of ``task`` selecting the scheme.
    """

    def decorate(cls):
        if not issubclass(cls, BaseTask):
            raise TypeError("evaluation task {!r} ({}) is not a BaseTask".format(name, cls.__name__))
        if TASK_REGISTRY.setdefault(name, cls) is not cls:
            raise ValueError("evaluation task {!r} is registered twice".format(name))
        return cls

    return decorate


def try_import_task(task):
    if task in TASK_REGISTRY:
        return True
    module = SUPPORTED_TASKS.get(task)
    if module is None:
        return False
    importlib.import_module(module)
    return task in TASK_REGISTRY


def build_task(args):
    r"""Instance of the evaluation task named by ``args.task``, configured from ``args``."""
    if not try_import_task(args.task):
        raise UsageError("unknown evaluation task {!r}; choose from {}".format(
            args.task, ', '.join(sorted(SUPPORTED_TASKS))))
    return TASK_REGISTRY[args.task](args)


SUPPORTED_TASKS = {
    'cross_validation': 'clfbench.tasks.cross_validation',
}
