"""Typed parameter schemas of the classifiers.

A :class:`ParamSchema` lists the flag-style parameters of one classifier
together with their default value, the grid used by one-dimensional sweeps
and the range sampled by the random search.
"""
from dataclasses import dataclass, field

from ..utils.errors import ParameterRangeError, EmptyGridError

KINDS = ('int', 'real', 'bool', 'choice')
FEATURES = 'F'

_TRUE = ('1', 'true', 'yes', 'on')
_FALSE = ('0', 'false', 'no', 'off')


def _resolve_bound(bound, n_features):
    if bound == FEATURES:
        return n_features
    return bound


@dataclass(frozen=True)
class Space:
    r"""
    Random-search range of one parameter.

    Attributes
    -----------
    scale : str
        ``'log'`` or ``'linear'`` for numeric ranges, ``'choice'`` for a finite set.
    low, high : float or int or str
        Inclusive bounds. ``high`` may be ``'F'``, the feature count.
    choices : tuple
        Candidate values when ``scale == 'choice'``.
    """
    scale: str
    low: object = None
    high: object = None
    choices: tuple = ()

    def bounds(self, n_features=None):
        return _resolve_bound(self.low, n_features), _resolve_bound(self.high, n_features)

    def contains(self, value, n_features=None):
        if self.scale == 'choice':
            return value in self.choices
        low, high = self.bounds(n_features)
        if low is None or high is None:
            return True
        return low <= value <= high

    def to_dict(self):
        if self.scale == 'choice':
            return {'scale': 'choice', 'choices': list(self.choices)}
        return {'scale': self.scale, 'low': self.low, 'high': self.high}


def log_range(low, high):
    return Space('log', low, high)


def linear_range(low, high):
    return Space('linear', low, high)


def choice_of(*values):
    return Space('choice', choices=tuple(values))


@dataclass(frozen=True)
class Param:
    r"""
    One classifier parameter.

    Parameters
    ----------
    name : str
        Flag-style name, e.g. ``"K"``.
    kind : str
        One of ``int``, ``real``, ``bool`` and ``choice``.
    default :
        Default value.
    grid : tuple or str
        Sweep grid, or ``'F'`` for the integers ``1..n_features``.
    space : Space
        Random-search range. Booleans always sample both values.
    low, high :
        Admissible bounds of numeric kinds (``None`` = unbounded, ``'F'`` = feature count).
    low_open, high_open : bool
        Whether ``low`` or ``high`` itself is excluded.
    choices : tuple
        Admissible values of a ``choice`` parameter.
    parse : callable
        Optional validator of free-form ``choice`` values; returns the canonical value
        or raises ``ValueError``.
    requires : tuple
        ``((name, allowed_values), ...)``: the parameter is active only when every
        named parameter takes one of its allowed values.
    contexts : tuple[dict]
        Assignments applied on top of the defaults before sweeping this parameter.
    fixed : bool
        Excluded from sweeps and random sampling.
    inert : bool
        Accepted but without effect on the learned model.
    """
    name: str
    kind: str
    default: object
    grid: object = ()
    space: Space = None
    low: object = None
    high: object = None
    low_open: bool = False
    high_open: bool = False
    choices: tuple = ()
    parse: object = None
    requires: tuple = ()
    contexts: tuple = ({},)
    fixed: bool = False
    inert: bool = False
    help: str = ''

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError('unknown parameter kind {!r}'.format(self.kind))

    def sweep_grid(self, n_features=None):
        if self.kind == 'bool':
            return (not self.default,)
        if self.grid == FEATURES:
            if n_features is None:
                raise ParameterRangeError('the grid of -{} depends on the feature count'.format(self.name))
            values = tuple(range(1, n_features + 1))
        else:
            values = tuple(self.grid)
        return tuple(v for v in values if v != self.default)

    def random_space(self):
        if self.kind == 'bool':
            return choice_of(False, True)
        return self.space

    def coerce(self, value):
        r"""Convert ``value`` (possibly a command-line string) to the parameter kind."""
        try:
            if self.kind == 'bool':
                if isinstance(value, str):
                    text = value.strip().lower()
                    if text in _TRUE:
                        return True
                    if text in _FALSE:
                        return False
                    raise ValueError(value)
                if value in (0, 1):
                    return bool(value)
                raise ValueError(value)
            if self.kind == 'int':
                if isinstance(value, bool):
                    raise ValueError(value)
                if isinstance(value, float):
                    if not value.is_integer():
                        raise ValueError(value)
                    return int(value)
                return int(value)
            if self.kind == 'real':
                if isinstance(value, bool):
                    raise ValueError(value)
                return float(value)
            if self.parse is not None:
                return self.parse(value)
            for candidate in self.choices:
                if value == candidate or str(value) == str(candidate):
                    return candidate
            raise ValueError(value)
        except (TypeError, ValueError):
            raise ParameterRangeError('-{}: {!r} is not a valid {} value'.format(self.name, value, self.kind))

    def validate(self, value, n_features=None):
        r"""Raise :class:`ParameterRangeError` unless ``value`` is admissible; return it coerced."""
        value = self.coerce(value)
        if self.kind in ('int', 'real'):
            if value != value:
                raise ParameterRangeError('-{} must be a number'.format(self.name))
            low = _resolve_bound(self.low, n_features)
            high = _resolve_bound(self.high, n_features)
            if low is not None:
                if value < low or (self.low_open and value == low):
                    raise ParameterRangeError('-{}={} is below its lower bound {}{}'.format(
                        self.name, value, low, ' (exclusive)' if self.low_open else ''))
            if high is not None:
                if value > high or (self.high_open and value == high):
                    raise ParameterRangeError('-{}={} exceeds its upper bound {}{}'.format(
                        self.name, value, high, ' (exclusive)' if self.high_open else ''))
        return value

    def is_active(self, assignment):
        return all(assignment.get(name) in allowed for name, allowed in self.requires)

    def to_dict(self):
        space = self.random_space()
        return {
            'name': self.name,
            'kind': self.kind,
            'default': self.default,
            'grid': self.grid if self.grid == FEATURES else list(self.sweep_grid()),
            'range': None if space is None else space.to_dict(),
            'requires': {name: list(allowed) for name, allowed in self.requires},
            'fixed': self.fixed,
            'inert': self.inert,
            'help': self.help,
        }


@dataclass(frozen=True)
class SweepTarget:
    param: Param
    context: dict
    label: str


@dataclass(frozen=True)
class ClassifierConfig:
    r"""
    A classifier id with a value for every parameter of its schema.

    Instances are built through :meth:`ParamSchema.resolve`, which validates them.
    """
    classifier: str
    params: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.params[name]

    def get(self, name, default=None):
        return self.params.get(name, default)

    def to_dict(self):
        return {'classifier': self.classifier, 'params': dict(self.params)}

    def __str__(self):
        flags = ' '.join('-{} {}'.format(k, v) for k, v in self.params.items())
        return '{} {}'.format(self.classifier, flags).strip()


class ParamSchema(object):
    r"""
    Ordered parameter set of one classifier.

    Parameters are listed so that every parameter a conditional one
    ``requires`` appears before it.
    """

    def __init__(self, classifier, display_name, params=()):
        self.classifier = classifier
        self.display_name = display_name
        self.params = tuple(params)
        self._by_name = {p.name: p for p in self.params}
        if len(self._by_name) != len(self.params):
            raise ValueError('duplicate parameter names in schema {}'.format(classifier))

    def __getitem__(self, name):
        try:
            return self._by_name[name]
        except KeyError:
            raise ParameterRangeError('{} has no parameter -{}'.format(self.display_name, name))

    def __contains__(self, name):
        return name in self._by_name

    def __iter__(self):
        return iter(self.params)

    def __len__(self):
        return len(self.params)

    def defaults(self):
        return {p.name: p.default for p in self.params}

    def default_config(self):
        return ClassifierConfig(self.classifier, self.defaults())

    def resolve(self, overrides=None, n_features=None):
        r"""
        Build a validated :class:`ClassifierConfig` from the defaults and ``overrides``.

        Feature-dependent bounds are only checked when ``n_features`` is given.
        """
        values = self.defaults()
        for name, value in (overrides or {}).items():
            values[name] = self[name].coerce(value)
        for p in self.params:
            values[p.name] = p.validate(values[p.name], n_features)
        return ClassifierConfig(self.classifier, values)

    def tunable(self):
        return tuple(p for p in self.params if not p.fixed)

    def sweep_targets(self):
        r"""All (parameter, context) pairs swept by a full one-dimensional analysis."""
        targets = []
        for p in self.tunable():
            for context in p.contexts:
                if not p.is_active({**self.defaults(), **context}):
                    continue
                targets.append(SweepTarget(p, dict(context), self.label(p, context)))
        return targets

    def sweep_target(self, name, context=None):
        p = self[name]
        if p.fixed:
            raise EmptyGridError('-{} of {} is fixed and cannot be swept'.format(name, self.display_name))
        contexts = [context] if context else list(p.contexts)
        for ctx in contexts:
            if p.is_active({**self.defaults(), **ctx}):
                return SweepTarget(p, dict(ctx), self.label(p, ctx))
        raise ParameterRangeError('-{} of {} is inactive under {}'.format(name, self.display_name, contexts))

    def label(self, param, context=None):
        if context:
            qualifier = ', '.join('{} {}'.format(v, k) for k, v in context.items())
            return '{} ({}) -{}'.format(self.display_name, qualifier, param.name)
        return '{} -{}'.format(self.display_name, param.name)

    def to_dict(self):
        return {
            'classifier': self.classifier,
            'name': self.display_name,
            'params': [p.to_dict() for p in self.params],
        }
