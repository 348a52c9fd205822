from dataclasses import dataclass, field

import numpy as np

from ..utils.errors import SpecValidationError
from ..utils.numeric import gram, standard_normals

DISTRIBUTION_KINDS = ('uniform', 'gaussian', 'arcsine')


@dataclass(frozen=True)
class DistributionSpec:
    r"""
    A fixed one-dimensional distribution.

    Attributes
    -----------
    kind : str
        ``uniform`` and ``arcsine`` (U-shaped) use ``a``/``b`` as the bounds ``lo < hi``;
        ``gaussian`` uses them as mean and standard deviation.
    """
    kind: str
    a: float
    b: float

    def validate(self):
        if self.kind not in DISTRIBUTION_KINDS:
            raise SpecValidationError('unknown distribution kind {!r}'.format(self.kind))
        if self.kind == 'gaussian':
            if not self.b > 0:
                raise SpecValidationError('gaussian std must be positive, got {}'.format(self.b))
        elif not self.a < self.b:
            raise SpecValidationError('{} bounds must satisfy lo < hi, got ({}, {})'.format(self.kind, self.a, self.b))
        return self

    def mean(self):
        if self.kind == 'gaussian':
            return float(self.a)
        return 0.5 * (self.a + self.b)

    def variance(self):
        if self.kind == 'gaussian':
            return float(self.b) ** 2
        width = self.b - self.a
        if self.kind == 'uniform':
            return width ** 2 / 12.0
        return width ** 2 / 8.0

    def support(self):
        if self.kind == 'gaussian':
            return -np.inf, np.inf
        return float(self.a), float(self.b)

    def sample(self, rng, n):
        if self.kind == 'uniform':
            return rng.uniform(self.a, self.b, size=n)
        if self.kind == 'arcsine':
            u = rng.uniform(size=n)
            return self.a + (self.b - self.a) * np.sin(0.5 * np.pi * u) ** 2
        return self.a + self.b * standard_normals(rng, n)

    def to_dict(self):
        return {'kind': self.kind, 'a': self.a, 'b': self.b}

    @classmethod
    def from_dict(cls, d):
        return cls(d['kind'], float(d['a']), float(d['b']))

    @classmethod
    def parse(cls, text):
        r"""Parse ``kind:a,b`` e.g. ``uniform:-1,1``."""
        try:
            kind, args = text.split(':', 1)
            a, b = (float(v) for v in args.split(','))
        except ValueError:
            raise SpecValidationError('cannot parse distribution {!r}, expected kind:a,b'.format(text))
        return cls(kind.strip(), a, b).validate()

    def __str__(self):
        return '{}:{!r},{!r}'.format(self.kind, self.a, self.b)


@dataclass(frozen=True)
class GeneratorSpec:
    r"""
    Strong parameters and fixed distributions of one dataset family.

    Attributes
    -----------
    n_classes : int
        Number of classes, at least 2.
    n_features : int
        Number of features, at least 2.
    per_class : int
        Instances per class, at least ``n_features + 1``.
    alpha : float
        Separation; every class standard deviation is divided by it.
    f_sigma : DistributionSpec
        Distribution of per-feature standard deviations.
    f_c : DistributionSpec
        Distribution of pairwise correlations.
    n_datasets : int
        Datasets in the family.
    seed : int
        64-bit root seed.
    """
    n_classes: int = 10
    n_features: int = 2
    per_class: int = 40
    alpha: float = 1.0
    f_sigma: DistributionSpec = field(default_factory=lambda: DistributionSpec('uniform', 0.5, 1.5))
    f_c: DistributionSpec = field(default_factory=lambda: DistributionSpec('uniform', -1.0, 1.0))
    n_datasets: int = 50
    seed: int = 0

    def validate(self):
        if self.n_classes < 2:
            raise SpecValidationError('need at least 2 classes, got {}'.format(self.n_classes))
        if self.n_features < 2:
            raise SpecValidationError('need at least 2 features, got {}'.format(self.n_features))
        if self.per_class < self.n_features + 1:
            raise SpecValidationError('per_class must be at least n_features + 1 = {}, got {}'
                                      .format(self.n_features + 1, self.per_class))
        if not self.alpha > 0:
            raise SpecValidationError('alpha must be positive, got {}'.format(self.alpha))
        if self.n_datasets < 1:
            raise SpecValidationError('n_datasets must be positive, got {}'.format(self.n_datasets))
        if not 0 <= self.seed < (1 << 64):
            raise SpecValidationError('seed must be a 64-bit unsigned integer, got {}'.format(self.seed))
        self.f_sigma.validate()
        self.f_c.validate()
        lo, hi = self.f_c.support()
        if lo < -1.0 or hi > 1.0 or (self.f_c.kind == 'gaussian' and abs(self.f_c.mean()) >= 1.0):
            raise SpecValidationError('f_c must describe correlations inside (-1, 1), got {}'.format(self.f_c))
        return self

    @property
    def family_name(self):
        return 'DB{}F'.format(self.n_features)

    def to_dict(self):
        return {
            'n_classes': self.n_classes,
            'n_features': self.n_features,
            'per_class': self.per_class,
            'alpha': self.alpha,
            'f_sigma': self.f_sigma.to_dict(),
            'f_c': self.f_c.to_dict(),
            'n_datasets': self.n_datasets,
            'seed': self.seed,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(n_classes=int(d['n_classes']),
                   n_features=int(d['n_features']),
                   per_class=int(d['per_class']),
                   alpha=float(d['alpha']),
                   f_sigma=DistributionSpec.from_dict(d['f_sigma']),
                   f_c=DistributionSpec.from_dict(d['f_c']),
                   n_datasets=int(d['n_datasets']),
                   seed=int(d['seed']))


@dataclass(frozen=True)
class RootSpec:
    r"""Column count and entry moments of a root matrix."""
    m: int
    mu_g: float
    sigma_g2: float

    def to_dict(self):
        return {'m': self.m, 'mu_g': self.mu_g, 'sigma_g2': self.sigma_g2}

    @classmethod
    def from_dict(cls, d):
        return cls(int(d['m']), float(d['mu_g']), float(d['sigma_g2']))


@dataclass(frozen=True, eq=False)
class ClassModel:
    r"""
    Mean vector and scaled root matrix of one class.

    The covariance is ``gram(root)``; row ``i`` of ``root`` has norm ``target_stds[i]``.
    """
    mean: np.ndarray
    root: np.ndarray
    target_stds: np.ndarray
    root_spec: RootSpec

    @property
    def n_features(self):
        return self.mean.shape[0]

    def covariance(self):
        return gram(self.root)

    def correlation(self):
        cov = self.covariance()
        d = np.sqrt(np.diag(cov))
        return cov / np.outer(d, d)

    def to_dict(self):
        return {
            'mean': self.mean.tolist(),
            'target_stds': self.target_stds.tolist(),
            'root_spec': self.root_spec.to_dict(),
            'root': self.root.tolist(),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(mean=np.asarray(d['mean'], dtype=np.float64),
                   root=np.asarray(d['root'], dtype=np.float64),
                   target_stds=np.asarray(d['target_stds'], dtype=np.float64),
                   root_spec=RootSpec.from_dict(d['root_spec']))

    def __eq__(self, other):
        if not isinstance(other, ClassModel):
            return NotImplemented
        return (np.array_equal(self.mean, other.mean) and np.array_equal(self.root, other.root)
                and np.array_equal(self.target_stds, other.target_stds) and self.root_spec == other.root_spec)
