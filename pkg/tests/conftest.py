import numpy as np
import pytest

from clfbench.dataset import Dataset, DistributionSpec, GeneratorSpec, gen_family
from clfbench.utils import Rng


def blobs(centers, per_class, scale, seed):
    r"""Isotropic Gaussian blobs around ``centers``, ``per_class`` rows each, classes in label order."""
    rng = np.random.default_rng(seed)
    centers = np.asarray(centers, dtype=np.float64)
    X = np.vstack([c + scale * rng.standard_normal((per_class, centers.shape[1])) for c in centers])
    y = np.repeat(np.arange(len(centers)), per_class)
    return Dataset(X, y)


@pytest.fixture
def rng():
    return Rng(12345)


@pytest.fixture
def small_spec():
    return GeneratorSpec(n_classes=3, n_features=2, per_class=20, alpha=3.0,
                         f_sigma=DistributionSpec('uniform', 0.5, 1.5),
                         f_c=DistributionSpec('uniform', -1.0, 1.0), n_datasets=2, seed=7)


@pytest.fixture
def small_family(small_spec):
    return gen_family(small_spec)


@pytest.fixture
def separable():
    r"""Three far-apart classes in two dimensions, 20 instances each."""
    return blobs([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]], per_class=20, scale=0.5, seed=3)


@pytest.fixture
def two_class():
    return blobs([[-2.0, 0.0], [2.0, 0.0]], per_class=25, scale=0.8, seed=11)


@pytest.fixture
def balanced_ten():
    r"""Ten classes of 10 instances; every feature value is noise."""
    rng = np.random.default_rng(5)
    return Dataset(rng.standard_normal((100, 2)), np.repeat(np.arange(10), 10))


def well_apart(d):
    r"""Whether the two class means of ``d`` lie at least six standard deviations apart in every direction."""
    a, b = d.meta.class_models
    spread = max(np.linalg.norm(a.target_stds), np.linalg.norm(b.target_stds))
    return np.linalg.norm(a.mean - b.mean) >= 6.0 * spread


@pytest.fixture(scope='session')
def near_disjoint():
    r"""Up to three two-class datasets of an α = 7, two-feature family whose classes barely overlap."""
    spec = GeneratorSpec(n_classes=2, n_features=2, per_class=40, alpha=7.0, n_datasets=30, seed=0)
    chosen = [d for d in gen_family(spec) if well_apart(d)][:3]
    assert chosen
    return chosen
