import numpy as np
import pytest

from clfbench.dataset import Dataset
from clfbench.models import (DEFAULT_ROSTER, SUPPORTED_MODELS, ClassifierConfig, all_schemas, build_model, fit,
                             get_schema, resolve_config)
from clfbench.models.knn import MIN_SIMILARITY, knn_predict, neighbour_weights
from clfbench.models.naive_bayes import VARIANCE_FLOOR, naive_bayes_posterior
from clfbench.models.schema import FEATURES
from clfbench.utils.errors import DimensionMismatchError, ParameterRangeError, UnknownClassifierError


def test_unknown_classifier():
    with pytest.raises(UnknownClassifierError):
        fit('bayesnet', Dataset([[0.0]], [0]))


def test_parameter_out_of_range():
    with pytest.raises(ParameterRangeError):
        resolve_config(ClassifierConfig('knn', {'K': 0}))
    with pytest.raises(ParameterRangeError):
        resolve_config(ClassifierConfig('mlp', {'M': 1.0}))
    with pytest.raises(ParameterRangeError):
        resolve_config(ClassifierConfig('knn', {'Q': 1}))


def test_feature_dependent_bound():
    resolve_config(ClassifierConfig('random_forest', {'K': 2}), n_features=2)
    with pytest.raises(ParameterRangeError):
        resolve_config(ClassifierConfig('random_forest', {'K': 3}), n_features=2)


@pytest.mark.parametrize('classifier', SUPPORTED_MODELS)
def test_single_class_training_set(classifier):
    d = Dataset([[0.0, 1.0], [1.0, 0.0], [2.0, 2.0]], [4, 4, 4])
    model = fit(classifier, d)
    np.testing.assert_array_equal(model.predict([[5.0, 5.0], [-1.0, 0.0]]), [4, 4])


@pytest.mark.parametrize('classifier', DEFAULT_ROSTER)
def test_dimension_mismatch_rejected(classifier, two_class):
    model = fit(classifier, two_class)
    with pytest.raises(DimensionMismatchError):
        model.predict(np.zeros((1, 3)))


@pytest.mark.parametrize('classifier', DEFAULT_ROSTER)
def test_fit_is_deterministic(classifier, small_family):
    d = small_family[0]
    queries = np.random.default_rng(0).uniform(-2.0, 2.0, size=(25, 2))
    np.testing.assert_array_equal(fit(classifier, d).predict(queries), fit(classifier, d).predict(queries))


@pytest.mark.parametrize('classifier', DEFAULT_ROSTER)
def test_posteriors_are_distributions(classifier, small_family):
    d = small_family[1]
    p = fit(classifier, d).posterior(d.instances[:15])
    assert p.shape == (15, 3)
    assert np.all(p >= 0.0) and np.all(p <= 1.0)
    np.testing.assert_allclose(p.sum(axis=1), 1.0, atol=1e-12)


def test_schema_integrity():
    schemas = {s.classifier: s for s in all_schemas()}
    expected = {
        'knn': {'K', 'I', 'F', 'X'},
        'naive_bayes': {'K', 'D'},
        'logistic': {'R', 'M'},
        'c45': {'U', 'S', 'A', 'C', 'M', 'N'},
        'cart': {'S', 'C', 'M', 'N', 'A', 'H', 'U'},
        'random_forest': {'I', 'K', 'depth', 'S'},
        'svm': {'C', 'L', 'P', 'N', 'kernel', 'E', 'G', 'S', 'O', 'V', 'W'},
        'mlp': {'D', 'H', 'L', 'M', 'N', 'V', 'C', 'E', 'S'},
    }
    for classifier, names in expected.items():
        assert {p.name for p in schemas[classifier]} == names
    for schema in schemas.values():
        defaults = schema.defaults()
        for p in schema:
            if p.grid != FEATURES:
                assert p.default not in p.sweep_grid()
            space = p.random_space()
            if space is not None and p.kind != 'bool':
                assert space.contains(p.default, n_features=10), (schema.classifier, p.name)
        schema.resolve(defaults)
    assert get_schema('mlp').display_name == 'Perceptron'


def test_inert_flags_are_marked():
    inert = {(s.classifier, p.name) for s in all_schemas() for p in s if p.inert}
    assert {('c45', 'S'), ('cart', 'C'), ('cart', 'H'), ('svm', 'V'), ('svm', 'W'),
            ('mlp', 'C'), ('mlp', 'E')} <= inert


def test_build_model_registry():
    cls = build_model('knn')
    assert cls.model_name == 'knn'
    assert cls.schema.classifier == 'knn'


# kNN

def test_knn_single_nearest():
    model = fit('knn', Dataset([[0.0, 0.0], [1.0, 1.0]], [0, 1]))
    assert knn_predict(model, [0.1, 0.0]) == 0


def test_knn_majority_and_inverse_weighting():
    d = Dataset([[0.0, 0.0], [1.0, 0.0], [1.1, 0.0]], [0, 1, 1])
    assert knn_predict(fit(ClassifierConfig('knn', {'K': 3}), d), [0.5, 0.0]) == 1
    assert knn_predict(fit(ClassifierConfig('knn', {'K': 3, 'I': True}), d), [0.05, 0.0]) == 0


def test_knn_similarity_weighting():
    d = Dataset([[0.0], [0.7], [0.8]], [0, 1, 1])
    plain = fit(ClassifierConfig('knn', {'K': 3}), d)
    similar = fit(ClassifierConfig('knn', {'K': 3, 'F': True}), d)
    assert similar.weighting == 'similarity'
    assert knn_predict(plain, [0.0]) == 1
    assert knn_predict(similar, [0.0]) == 0


def test_knn_similarity_far_neighbours_vote_by_majority():
    d = Dataset([[0.0], [0.7], [0.8]], [0, 1, 1])
    np.testing.assert_array_equal(neighbour_weights(np.array([[3.0, 3.7, 3.8]]), 'similarity'),
                                  np.full((1, 3), MIN_SIMILARITY))
    assert knn_predict(fit(ClassifierConfig('knn', {'K': 3, 'F': True}), d), [-3.0]) == 1
    assert knn_predict(fit(ClassifierConfig('knn', {'K': 3}), d), [-3.0]) == 1


def test_knn_tie_goes_to_closest_class():
    d = Dataset([[0.0], [3.0], [-1.5], [5.0]], [1, 0, 0, 1])
    # two votes each; class 1 owns the nearest neighbour
    assert knn_predict(fit(ClassifierConfig('knn', {'K': 4}), d), [0.2]) == 1


def exhaustive_knn(X, y, x, k):
    dist = [float(np.sqrt(((row - x) ** 2).sum())) for row in X]
    order = sorted(range(len(X)), key=lambda i: (dist[i], i))[:k]
    votes = {}
    nearest = {}
    for i in order:
        votes[y[i]] = votes.get(y[i], 0) + 1
        nearest[y[i]] = min(nearest.get(y[i], np.inf), dist[i])
    top = max(votes.values())
    return min((c for c in votes if votes[c] == top), key=lambda c: (nearest[c], c))


@pytest.mark.parametrize('k', [1, 3, 5])
def test_knn_matches_exhaustive_scan(k):
    rng = np.random.default_rng(k)
    X = rng.uniform(-1.0, 1.0, size=(100, 3))
    y = rng.integers(0, 4, size=100)
    model = fit(ClassifierConfig('knn', {'K': k}), Dataset(X, y))
    queries = rng.uniform(-1.0, 1.0, size=(200, 3))
    expected = [exhaustive_knn(X, y, x, k) for x in queries]
    np.testing.assert_array_equal(model.predict(queries), expected)


def test_knn_hold_one_out_is_inert_at_k1(two_class):
    base = fit('knn', two_class)
    chosen = fit(ClassifierConfig('knn', {'X': True}), two_class)
    np.testing.assert_array_equal(base.predict(two_class.instances), chosen.predict(two_class.instances))


def test_knn_hold_one_out_picks_k(two_class):
    model = fit(ClassifierConfig('knn', {'K': 9, 'X': True}), two_class)
    assert 1 <= model.k_used <= 9


# Naive Bayes

def test_naive_bayes_symmetry():
    d = Dataset([[-1.0], [-2.0], [1.0], [2.0]], [0, 0, 1, 1])
    np.testing.assert_allclose(naive_bayes_posterior(fit('naive_bayes', d), [0.0]), [0.5, 0.5], atol=1e-12)


def test_naive_bayes_variance_floor():
    d = Dataset([[0.0], [0.0], [2.0], [2.0]], [0, 0, 1, 1])
    model = fit('naive_bayes', d)
    np.testing.assert_allclose(model.var, VARIANCE_FLOOR)
    log_a = -(0.5 - 0.0) ** 2 / (2 * VARIANCE_FLOOR)
    log_b = -(0.5 - 2.0) ** 2 / (2 * VARIANCE_FLOOR)
    expected_a = 1.0 / (1.0 + np.exp(log_b - log_a))
    np.testing.assert_allclose(naive_bayes_posterior(model, [0.5]), [expected_a, 1.0 - expected_a], atol=1e-9)
    np.testing.assert_allclose(naive_bayes_posterior(model, [1.0]), [0.5, 0.5], atol=1e-9)


def test_naive_bayes_hand_posterior():
    X = np.array([[0.0, 1.0], [1.0, 3.0], [2.0, 2.0], [4.0, 0.0], [5.0, 1.0]])
    y = np.array([0, 0, 0, 1, 1])
    model = fit('naive_bayes', Dataset(X, y))
    x = np.array([2.5, 1.5])

    def log_normal(v, mean, var):
        return -0.5 * np.log(2 * np.pi * var) - (v - mean) ** 2 / (2 * var)

    joint = []
    for c, prior in ((0, 4.0 / 7.0), (1, 3.0 / 7.0)):
        rows = X[y == c]
        joint.append(np.log(prior) + sum(log_normal(x[f], rows[:, f].mean(), rows[:, f].var()) for f in range(2)))
    joint = np.array(joint)
    expected = np.exp(joint - joint.max())
    expected /= expected.sum()
    np.testing.assert_allclose(naive_bayes_posterior(model, x), expected, atol=1e-9)


@pytest.mark.parametrize('flags', [{'K': True}, {'D': True}, {'K': True, 'D': True}])
def test_naive_bayes_variants(flags, separable):
    model = fit(ClassifierConfig('naive_bayes', flags), separable)
    assert (model.predict(separable.instances) == separable.labels).mean() >= 0.95
    expected = 'discretized' if flags.get('D') else 'kernel'
    assert model.variant == expected


def test_zero_r_predicts_majority():
    d = Dataset([[0.0], [1.0], [2.0], [3.0]], [2, 1, 1, 2])
    np.testing.assert_array_equal(fit('zero_r', d).predict([[9.0]]), [1])
