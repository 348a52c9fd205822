import importlib

from .base_flow import BaseFlow
from ..utils.errors import UsageError

FLOW_REGISTRY = {}


def register_flow(name):
    r"""
    Class decorator registering a protocol under ``name``.

    The CLI maps each evaluation subcommand onto one protocol::

        @register_flow('sweep')
        class Sweep(BaseFlow):
            def train(self, family):
                (...)
    """

    def decorate(cls):
        if not issubclass(cls, BaseFlow):
            raise TypeError("protocol {!r} ({}) is not a BaseFlow".format(name, cls.__name__))
        if FLOW_REGISTRY.setdefault(name, cls) is not cls:
            raise ValueError("protocol {!r} is registered twice".format(name))
        return cls

    return decorate


def try_import_flow(flow):
    if flow in FLOW_REGISTRY:
        return True
    module = SUPPORTED_FLOWS.get(flow)
    if module is None:
        return False
    importlib.import_module(module)
    return flow in FLOW_REGISTRY


def build_flow(args, flow_name):
    r"""
    Protocol ``flow_name`` bound to the run settings ``args``.

    Raises
    ------
    UsageError
        ``flow_name`` is not a protocol, or ``args`` names a classifier or an
        override the protocol cannot use.
    """
    if not try_import_flow(flow_name):
        raise UsageError("unknown protocol {!r}; choose from {}".format(
            flow_name, ', '.join(SUPPORTED_FLOWS)))
    return FLOW_REGISTRY[flow_name](args)


SUPPORTED_FLOWS = {
    'default_benchmark': 'clfbench.trainerflow.default_benchmark',
    'sweep': 'clfbench.trainerflow.sweep',
    'random_search': 'clfbench.trainerflow.random_search',
    'feature_curve': 'clfbench.trainerflow.feature_curve',
}
