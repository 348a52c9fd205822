import numpy as np
from scipy.special import logsumexp

from . import BaseModel, register_model
from .base_model import check_instances
from .schema import ParamSchema, Param

VARIANCE_FLOOR = 1e-9
MIN_BANDWIDTH = 1e-3
N_BINS = 10
LOG_2PI = np.log(2.0 * np.pi)


def gaussian_log_density(x, mean, var):
    return -0.5 * (LOG_2PI + np.log(var)) - (x - mean) ** 2 / (2.0 * var)


def equal_frequency_cuts(values, n_bins=N_BINS):
    r"""Inner cut points splitting ``values`` into ``n_bins`` bins of (nearly) equal counts."""
    ordered = np.sort(values)
    n = len(ordered)
    positions = [int(np.ceil(n * b / n_bins)) for b in range(1, n_bins)]
    cuts = [0.5 * (ordered[p - 1] + ordered[p]) for p in positions if 0 < p < n]
    return np.unique(np.asarray(cuts, dtype=np.float64))


@register_model('naive_bayes')
class NaiveBayes(BaseModel):
    r"""
    Naive Bayes with per-feature class-conditional densities.

    Gaussian densities by default; ``-K`` switches to a Gaussian kernel density
    estimate and ``-D`` to discretised features (10 equal-frequency bins with
    Laplace-smoothed counts). ``-D`` takes precedence over ``-K``.

    Class priors are Laplace smoothed: ``(count + 1) / (n + n_classes)``.
    """
    schema = ParamSchema('naive_bayes', 'Naive Bayes', (
        Param('K', 'bool', False, help='kernel density estimate per feature'),
        Param('D', 'bool', False, help='discretise features into equal-frequency bins'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        variant = 'gaussian'
        if args['D']:
            variant = 'discretized'
        elif args['K']:
            variant = 'kernel'
        return cls(variant)

    def __init__(self, variant='gaussian'):
        super(NaiveBayes, self).__init__()
        if variant not in ('gaussian', 'kernel', 'discretized'):
            raise ValueError('unknown naive Bayes variant {!r}'.format(variant))
        self.variant = variant

    def _fit(self, X, y):
        n, F = X.shape
        C = self.n_classes
        counts = np.bincount(y, minlength=C)
        self.log_prior = np.log((counts + 1.0) / (n + C))
        if self.variant == 'gaussian':
            self.mean = np.stack([X[y == c].mean(axis=0) for c in range(C)])
            self.var = np.stack([np.maximum(X[y == c].var(axis=0), VARIANCE_FLOOR) for c in range(C)])
        elif self.variant == 'kernel':
            self.points = [X[y == c] for c in range(C)]
            self.bandwidth = []
            for pts in self.points:
                spread = pts.max(axis=0) - pts.min(axis=0)
                self.bandwidth.append(np.maximum(spread / np.sqrt(len(pts)), MIN_BANDWIDTH))
        else:
            self.cuts = [equal_frequency_cuts(X[:, f]) for f in range(F)]
            self.log_bin_prob = []
            for f in range(F):
                bins = np.searchsorted(self.cuts[f], X[:, f], side='right')
                n_bins = len(self.cuts[f]) + 1
                table = np.zeros((C, n_bins))
                np.add.at(table, (y, bins), 1.0)
                self.log_bin_prob.append(np.log((table + 1.0) / (counts[:, None] + n_bins)))

    def log_likelihood(self, X):
        r"""Log class-conditional likelihood of every instance, shape (m, n_classes)."""
        m = X.shape[0]
        C = self.n_classes
        if self.variant == 'gaussian':
            dens = gaussian_log_density(X[:, None, :], self.mean[None, :, :], self.var[None, :, :])
            return dens.sum(axis=2)
        out = np.zeros((m, C))
        if self.variant == 'kernel':
            for c in range(C):
                pts, h = self.points[c], self.bandwidth[c]
                dens = gaussian_log_density(X[:, None, :], pts[None, :, :], (h * h)[None, None, :])
                out[:, c] = (logsumexp(dens, axis=1) - np.log(len(pts))).sum(axis=1)
            return out
        for f, cuts in enumerate(self.cuts):
            bins = np.searchsorted(cuts, X[:, f], side='right')
            out += self.log_bin_prob[f][:, bins].T
        return out

    def _posterior(self, X):
        joint = self.log_likelihood(X) + self.log_prior[None, :]
        post = np.exp(joint - logsumexp(joint, axis=1, keepdims=True))
        return post / post.sum(axis=1, keepdims=True)

    def _predict(self, X):
        return np.argmax(self._posterior(X), axis=1)


def naive_bayes_posterior(model, x):
    r"""Posterior probability of every training class for a single feature vector."""
    return model.posterior(check_instances(x))[0]
