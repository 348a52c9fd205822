import numpy as np
import pytest

from clfbench.dataset import Dataset, sample_instances
from clfbench.models import ClassifierConfig, fit
from clfbench.models.tree import add_errs, candidate_splits, entropy, gini, pruning_sequence
from clfbench.utils import Rng, accuracy


def test_impurities():
    np.testing.assert_allclose(entropy([[1, 1], [4, 0], [0, 0]]), [1.0, 0.0, 0.0])
    np.testing.assert_allclose(gini([[1, 1], [4, 0]]), [0.5, 0.0])
    assert entropy([[1, 1, 1, 1]])[0] == pytest.approx(2.0)


def test_candidate_splits_skip_duplicate_values():
    thresholds, left, right = candidate_splits(np.array([1.0, 1.0, 2.0, 3.0]), np.array([0, 1, 0, 1]), 2, 1)
    np.testing.assert_allclose(thresholds, [1.5, 2.5])
    np.testing.assert_array_equal(left, [[1, 1], [2, 1]])
    np.testing.assert_array_equal(right, [[1, 1], [0, 1]])


def test_candidate_splits_respect_min_leaf():
    x = np.arange(6, dtype=np.float64)
    thresholds, _, _ = candidate_splits(x, np.array([0, 0, 0, 1, 1, 1]), 2, 2)
    np.testing.assert_allclose(thresholds, [1.5, 2.5, 3.5])


def test_add_errs():
    assert add_errs(6.0, 0.0, 0.25) == pytest.approx(6.0 * (1.0 - 0.25 ** (1.0 / 6.0)))
    assert add_errs(4.0, 3.6, 0.25) == pytest.approx(0.4)
    assert add_errs(20.0, 2.0, 0.1) > add_errs(20.0, 2.0, 0.25) > 0.0


def test_c45_threshold_between_classes():
    d = Dataset([[0.0], [1.0], [2.0], [3.0], [4.0], [5.0]], [0, 0, 0, 1, 1, 1])
    model = fit('c45', d)
    assert model.root.feature == 0
    assert 2.0 < model.root.threshold < 3.0
    np.testing.assert_array_equal(model.predict(d.instances), d.labels)


@pytest.mark.parametrize('classifier', ['c45', 'cart'])
def test_unpruned_tree_solves_xor(classifier):
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    d = Dataset(X, [0, 0, 1, 1])
    model = fit(ClassifierConfig(classifier, {'U': True, 'M': 1}), d)
    np.testing.assert_array_equal(model.predict(X), d.labels)
    assert model.root.depth() == 2


def test_c45_pruning_shrinks_noise_tree(balanced_ten):
    full = fit(ClassifierConfig('c45', {'U': True}), balanced_ten)
    pruned = fit('c45', balanced_ten)
    assert pruned.root.n_leaves() <= full.root.n_leaves()


def test_c45_reduced_error_pruning(separable):
    model = fit(ClassifierConfig('c45', {'N': 3}), separable)
    assert (model.predict(separable.instances) == separable.labels).mean() >= 0.9


def test_c45_laplace_leaf_probabilities(separable):
    model = fit(ClassifierConfig('c45', {'A': True}), separable)
    p = model.posterior(separable.instances[:1])
    np.testing.assert_allclose(p, [[21.0 / 23.0, 1.0 / 23.0, 1.0 / 23.0]])


def test_pruning_sequence_is_nested(two_class):
    root = fit(ClassifierConfig('cart', {'U': True, 'M': 1}), two_class).root
    sequence = pruning_sequence(root, two_class.n_instances)
    alphas = [a for a, _ in sequence]
    leaves = [tree.n_leaves() for _, tree in sequence]
    assert alphas == sorted(alphas)
    assert all(a > b for a, b in zip(leaves, leaves[1:]))
    assert sequence[-1][1].is_leaf


def test_cart_one_standard_error_is_simpler(small_family):
    d = small_family[0]
    plain = fit('cart', d)
    simpler = fit(ClassifierConfig('cart', {'A': True}), d)
    assert simpler.root.n_leaves() <= plain.root.n_leaves()


def test_forest_votes_sum_to_tree_count(small_family):
    d = small_family[0]
    model = fit(ClassifierConfig('random_forest', {'I': 7}), d)
    votes = model.votes(d.instances)
    np.testing.assert_array_equal(votes.sum(axis=1), np.full(d.n_instances, 7))
    np.testing.assert_array_equal(model.predict(d.instances), np.argmax(votes, axis=1))


def test_forest_depth_limit(small_family):
    model = fit(ClassifierConfig('random_forest', {'depth': 2}), small_family[0])
    assert all(tree.depth() <= 2 for tree in model.trees)


def test_forest_seed_controls_trees(separable):
    a = fit(ClassifierConfig('random_forest', {'S': 3}), separable)
    b = fit(ClassifierConfig('random_forest', {'S': 3}), separable)
    for ta, tb in zip(a.trees, b.trees):
        assert repr(ta) == repr(tb) and ta.n_leaves() == tb.n_leaves()
    np.testing.assert_array_equal(a.predict(separable.instances), separable.labels)


def test_forest_near_disjoint_held_out(near_disjoint):
    for d in near_disjoint:
        rng = Rng(1)
        X = np.vstack([sample_instances(m, 50, rng) for m in d.meta.class_models])
        y = np.repeat([0, 1], 50)
        model = fit(ClassifierConfig('random_forest', {'I': 100}), d)
        assert accuracy(model.predict(X), y) >= 95.0
