import numpy as np
import pytest

from clfbench.dataset import GeneratorSpec, draw_class_model, gen_family
from clfbench.dataset.spec import DistributionSpec
from clfbench.models import DEFAULT_ROSTER, get_schema
from clfbench.trainerflow.default_benchmark import default_benchmark
from clfbench.trainerflow.feature_curve import feature_curve
from clfbench.trainerflow.random_search import best_of_random_ranking, random_search
from clfbench.trainerflow.sweep import sweep_all, sweep_parameter
from clfbench.utils import Rng, gram, min_eigenvalue

pytestmark = pytest.mark.slow


def desk_family(n_features, seed=0):
    return gen_family(GeneratorSpec(n_classes=10, n_features=n_features, per_class=40, alpha=1.0,
                                    n_datasets=20, seed=seed), jobs=-1)


@pytest.fixture(scope='module')
def db2f():
    return desk_family(2)


@pytest.fixture(scope='module')
def db10f():
    return desk_family(10)


@pytest.fixture(scope='module')
def db2f_benchmark(db2f):
    return default_benchmark(db2f, jobs=-1)


def test_generator_validity():
    rng = Rng(0)
    f_sigma = DistributionSpec('uniform', 0.5, 1.5)
    f_c = DistributionSpec('uniform', -1.0, 1.0)
    for F in range(2, 11):
        for _ in range(112):
            model = draw_class_model(F, 1.0, f_sigma, f_c, rng)
            cov = gram(model.root)
            assert min_eigenvalue(cov) >= -1e-9
            np.testing.assert_allclose(np.diag(cov), model.target_stds ** 2, rtol=1e-10)


def test_db2f_default_spread(db2f_benchmark):
    means = [e.stats.mean for e in db2f_benchmark]
    assert max(means) - min(means) <= 12.0
    assert min(means) >= 55.0


def test_db10f_knn_leads(db10f):
    entries = default_benchmark(db10f, jobs=-1)
    assert entries[0].classifier == 'knn'
    assert entries[0].stats.mean > 85.0
    assert entries[0].stats.mean >= entries[1].stats.mean + 5.0


def test_feature_curve_pattern(db2f, db10f):
    families = {2: db2f, 6: desk_family(6), 10: db10f}
    series = feature_curve(families, jobs=-1)
    by_name = {s.classifier: [m for _, m in s.points] for s in series}
    assert by_name['knn'][-1] >= by_name['knn'][0] + 15.0
    assert any(curve[0] - curve[-1] >= 3.0 and all(a >= b for a, b in zip(curve, curve[1:]))
               for curve in by_name.values())


def test_knn_sensitivity_to_k(db2f, db10f):
    assert sweep_parameter('knn', 'K', db2f, jobs=-1).mean_S >= 3.0
    assert sweep_parameter('knn', 'K', db10f, jobs=-1).mean_S <= 1.0


def test_inert_flags_have_no_effect(db2f):
    for classifier in DEFAULT_ROSTER:
        inert = {p.name for p in get_schema(classifier).tunable() if p.inert}
        if not inert:
            continue
        for report in sweep_all(classifier, db2f[:3], jobs=-1, base={'N': 50} if classifier == 'mlp' else None):
            if report.parameter in inert:
                assert report.mean_S == 0.0 and report.max_S == 0.0


def test_svm_random_search(db2f, db10f):
    report = random_search('svm', db10f, n_configs=200, seed=0, jobs=-1)
    assert report.p_value >= 80.0
    assert report.improvement.mean >= 10.0
    assert random_search('svm', db2f, n_configs=200, seed=0, jobs=-1).p_value >= 75.0
    others = [random_search(c, db10f, n_configs=200, seed=0, jobs=-1) for c in DEFAULT_ROSTER if c != 'svm']
    ranking = best_of_random_ranking([report] + others, db10f)
    assert ranking[0].classifier == 'svm'


def test_benchmark_independent_of_jobs(db2f, db2f_benchmark):
    assert default_benchmark(db2f, jobs=1) == db2f_benchmark
