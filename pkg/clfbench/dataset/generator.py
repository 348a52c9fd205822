"""Random multivariate Gaussian classification datasets.

Each class gets its own covariance, built from a root matrix ``G`` so that
``G G^T`` is positive semi-definite by construction. The entries of ``G``
are drawn with moments chosen so that the off-diagonal elements of the
normalised covariance match the first two moments of ``f_c``; rows are then
rescaled so that feature ``i`` has standard deviation ``sigma_i / alpha``
exactly.
"""
import math

import numpy as np
from joblib import Parallel, delayed

from ..utils.errors import FeasibilityError
from ..utils.numeric import derive, standard_normals
from ..utils.utils import round_half_up
from ..utils.logger import get_logger
from .base_dataset import Dataset, DatasetMeta
from .spec import ClassModel, RootSpec

logger = get_logger(__name__)


def moment_match(mu_d, mu_o, s_o2, F):
    r"""
    Column count and entry moments of a root matrix.

    Entries of an ``F x m`` matrix ``G`` drawn i.i.d. with mean ``mu_g`` and
    variance ``sigma_g2`` give ``E[(GG^T)_ii] = mu_d``, ``E[(GG^T)_ij] = mu_o``
    and, before ``m`` is raised to ``F``, ``Var[(GG^T)_ij] = s_o2``.

    Parameters
    ----------
    mu_d : float
        Target mean of the diagonal.
    mu_o : float
        Target mean of the off-diagonal, ``0 <= mu_o < mu_d``.
    s_o2 : float
        Target variance of the off-diagonal.
    F : int
        Feature count; ``m`` is floored at ``F`` so the covariance has full rank.

    Returns
    -------
    RootSpec
    """
    if not mu_d > 0:
        raise FeasibilityError('diagonal mean must be positive, got {}'.format(mu_d))
    if not 0 <= mu_o < mu_d:
        raise FeasibilityError('off-diagonal mean must lie in [0, {}), got {}'.format(mu_d, mu_o))
    if not s_o2 > 0:
        raise FeasibilityError('off-diagonal variance must be positive, got {}'.format(s_o2))
    m = max(round_half_up((mu_d ** 2 - mu_o ** 2) / s_o2), 1)
    m = max(m, int(F))
    mu_g = math.sqrt(mu_o / m)
    sigma_g2 = mu_d / m - mu_g ** 2
    if not sigma_g2 > 0:
        raise FeasibilityError('infeasible moments: entry variance {} <= 0'.format(sigma_g2))
    return RootSpec(m=m, mu_g=mu_g, sigma_g2=sigma_g2)


def draw_class_model(F, alpha, f_sigma, f_c, rng):
    r"""
    Draw the mean and scaled root matrix of one class.

    The draw order is fixed (mean, standard deviations, root entries) and none
    of the draws depend on ``alpha``, so regenerating with another ``alpha``
    from the same stream only rescales the covariance.
    """
    root_spec = moment_match(1.0, f_c.mean(), f_c.variance(), F)
    mean = rng.uniform(-1.0, 1.0, size=F)
    target_stds = np.abs(f_sigma.sample(rng, F)) / alpha
    G = root_spec.mu_g + math.sqrt(root_spec.sigma_g2) * standard_normals(rng, F * root_spec.m).reshape(F, root_spec.m)
    norms = np.sqrt(np.sum(G * G, axis=1))
    norms[norms == 0.0] = 1.0
    root = G * (target_stds / norms)[:, None]
    return ClassModel(mean=mean, root=root, target_stds=target_stds, root_spec=root_spec)


def sample_instances(model, n, rng):
    r"""``n`` rows of ``mean + root z`` with ``z ~ N(0, I_m)``."""
    n = int(n)
    m = model.root.shape[1]
    z = standard_normals(rng, n * m).reshape(n, m)
    return model.mean[None, :] + z @ model.root.T


def correlation_moments(class_models):
    r"""Mean and variance of the off-diagonal correlations pooled over ``class_models``."""
    values = []
    for model in class_models:
        corr = model.correlation()
        iu = np.triu_indices(corr.shape[0], k=1)
        values.append(corr[iu])
    values = np.concatenate(values) if values else np.zeros(0)
    if values.size == 0:
        return {'mean': 0.0, 'variance': 0.0, 'count': 0}
    return {'mean': float(values.mean()), 'variance': float(values.var()), 'count': int(values.size)}


def gen_dataset(spec, k):
    r"""Dataset ``k`` of the family described by ``spec``, drawn from ``derive(spec.seed, k)``."""
    rng = derive(spec.seed, k)
    models = [draw_class_model(spec.n_features, spec.alpha, spec.f_sigma, spec.f_c, rng)
              for _ in range(spec.n_classes)]
    blocks = [sample_instances(model, spec.per_class, rng) for model in models]
    labels = np.repeat(np.arange(spec.n_classes), spec.per_class)
    meta = DatasetMeta(spec=spec, dataset_index=k, class_models=models,
                       realized_moments=correlation_moments(models))
    return Dataset(np.vstack(blocks), labels, meta)


def gen_family(spec, jobs=1):
    r"""
    Generate the ``spec.n_datasets`` datasets of a family.

    Datasets only depend on ``(seed, k)``, so ``jobs`` changes wall time and
    nothing else.
    """
    spec.validate()
    logger.info('generating %s: %d datasets, C=%d, N=%d, alpha=%s',
                spec.family_name, spec.n_datasets, spec.n_classes, spec.per_class, spec.alpha)
    if jobs == 1:
        return [gen_dataset(spec, k) for k in range(spec.n_datasets)]
    return Parallel(n_jobs=jobs)(delayed(gen_dataset)(spec, k) for k in range(spec.n_datasets))
