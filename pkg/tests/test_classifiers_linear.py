import numpy as np
import pytest

from clfbench.auto import sample_configs
from clfbench.dataset import Dataset, GeneratorSpec, gen_family
from clfbench.models import ClassifierConfig, fit, get_schema
from clfbench.models.logistic import loss_and_grad
from clfbench.models.mlp import Network, parse_hidden, canonical_hidden
from clfbench.models.svm import KernelSpec, kernel_eval, kkt_violation, smo
from clfbench.trainerflow.random_search import search_seed
from clfbench.utils import Rng
from clfbench.utils.errors import ConvergenceError, DimensionMismatchError, ParameterRangeError


def relative_error(a, b):
    return np.max(np.abs(a - b) / np.maximum(np.abs(a) + np.abs(b), 1e-8))


def central_differences(f, theta, step=1e-5):
    grad = np.zeros_like(theta)
    for i in range(theta.size):
        up, down = theta.copy(), theta.copy()
        up.flat[i] += step
        down.flat[i] -= step
        grad.flat[i] = (f(up) - f(down)) / (2 * step)
    return grad


# Logistic

def test_logistic_gradient_check():
    rng = np.random.default_rng(0)
    X = rng.standard_normal((12, 4))
    y = rng.integers(0, 3, size=12)
    W = 0.3 * rng.standard_normal((5, 3))
    _, grad = loss_and_grad(W, X, y, 0.1)
    numeric = central_differences(lambda w: loss_and_grad(w, X, y, 0.1)[0], W)
    assert relative_error(grad, numeric) <= 1e-4


def test_logistic_separable():
    d = Dataset([[0.0], [0.5], [1.0], [1.5], [3.0], [3.5], [4.0], [4.5]], [0, 0, 0, 0, 1, 1, 1, 1])
    model = fit('logistic', d)
    np.testing.assert_array_equal(model.predict(d.instances), d.labels)


def test_logistic_heavy_ridge():
    rng = np.random.default_rng(1)
    X = rng.standard_normal((30, 2))
    y = np.array([0] * 18 + [1] * 12)
    model = fit(ClassifierConfig('logistic', {'R': 1e6}), Dataset(X, y))
    assert np.all(np.abs(model.weights[1:]) <= 1e-3)
    np.testing.assert_array_equal(model.predict(X), np.zeros(30, dtype=np.int64))


def test_logistic_multiclass(separable):
    model = fit('logistic', separable)
    assert (model.predict(separable.instances) == separable.labels).all()


# SVM

def test_kernel_values():
    x, y = np.array([1.0, 2.0]), np.array([3.0, -1.0])
    assert kernel_eval(KernelSpec('poly', exponent=1), x, y) == pytest.approx(1.0)
    assert kernel_eval(KernelSpec('poly', exponent=2), x, y) == pytest.approx(1.0)
    assert kernel_eval(KernelSpec('npoly', exponent=2), x, x) == pytest.approx(1.0)
    assert kernel_eval(KernelSpec('rbf', gamma=0.5), x, x) == 1.0
    assert kernel_eval(KernelSpec('rbf', gamma=0.5), x, y) == pytest.approx(np.exp(-0.5 * 13.0))
    for sigma in (0.1, 1.0, 5.0):
        for omega in (0.5, 1.0, 3.0):
            assert kernel_eval(KernelSpec('puk', sigma=sigma, omega=omega), x, x) == pytest.approx(1.0)


def test_puk_at_distance_sigma_over_two_is_half():
    # Pearson VII reaches half height at |x - y| = sigma / 2
    spec = KernelSpec('puk', sigma=2.0, omega=1.0)
    assert kernel_eval(spec, [0.0], [1.0]) == pytest.approx(0.5)


def test_kernel_matrix_matches_pairwise():
    rng = np.random.default_rng(2)
    A, B = rng.standard_normal((4, 3)), rng.standard_normal((5, 3))
    for spec in (KernelSpec('poly', exponent=3), KernelSpec('npoly', exponent=2), KernelSpec('rbf', gamma=0.3),
                 KernelSpec('puk', sigma=0.7, omega=2.0)):
        expected = [[kernel_eval(spec, a, b) for b in B] for a in A]
        np.testing.assert_allclose(spec.matrix(A, B), expected, rtol=1e-10, atol=1e-12)


def test_kernel_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        kernel_eval(KernelSpec('rbf'), [1.0, 2.0], [1.0])


def test_smo_linearly_separable():
    rng = np.random.default_rng(3)
    X = np.vstack([rng.uniform([-3.0, -1.0], [-2.0, 1.0], size=(20, 2)),
                   rng.uniform([2.0, -1.0], [3.0, 1.0], size=(20, 2))])
    y = np.array([1.0] * 20 + [-1.0] * 20)
    K = KernelSpec('poly', exponent=1).matrix(X, X)
    machine = smo(K, y, C=1.0, tol=1e-3)
    assert np.all(machine.alpha >= 0.0) and np.all(machine.alpha <= 1.0)
    assert abs(float(machine.alpha @ y)) <= 1e-9
    assert kkt_violation(machine, K, 1.0) <= 1e-3
    assert np.all(np.sign(machine.decision(K)) == y)


def test_svm_linear_training_accuracy():
    rng = np.random.default_rng(4)
    X = np.vstack([rng.uniform([-3.0, -1.0], [-2.0, 1.0], size=(20, 2)),
                   rng.uniform([2.0, -1.0], [3.0, 1.0], size=(20, 2))])
    d = Dataset(X, [0] * 20 + [1] * 20)
    model = fit(ClassifierConfig('svm', {'N': 2}), d)
    np.testing.assert_array_equal(model.predict(X), d.labels)
    for idx, machine in model.machines.values():
        assert abs(float(machine.alpha @ machine.y)) <= 1e-9


def test_svm_xor_rbf():
    X = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0], [1.0, 0.0]])
    d = Dataset(X, [0, 0, 1, 1])
    model = fit(ClassifierConfig('svm', {'kernel': 'rbf', 'G': 1.0, 'C': 10.0}), d)
    np.testing.assert_array_equal(model.predict(X), [0, 0, 1, 1])


def test_svm_zero_decision_votes_for_higher_class():
    d = Dataset([[-1.0], [1.0]], [0, 1])
    model = fit(ClassifierConfig('svm', {'N': 2}), d)
    idx, machine = model.machines[(0, 1)]
    assert machine.bias == 0.0
    assert machine.decision(model.kernel.matrix([[0.0]], model.X)[:, idx])[0] == 0.0
    np.testing.assert_array_equal(model.predict([[-1.0], [0.0], [1.0]]), [0, 1, 1])


@pytest.mark.parametrize('kernel', ['poly', 'npoly', 'rbf', 'puk'])
def test_svm_dual_feasibility(kernel, small_family):
    model = fit(ClassifierConfig('svm', {'kernel': kernel, 'C': 10.0}), small_family[0])
    for idx, machine in model.machines.values():
        assert np.all(machine.alpha >= 0.0) and np.all(machine.alpha <= 10.0)
        assert abs(float(machine.alpha @ machine.y)) <= 1e-9


def test_smo_reports_non_convergence():
    rng = np.random.default_rng(5)
    X = rng.standard_normal((30, 2))
    y = np.where(rng.uniform(size=30) < 0.5, 1.0, -1.0)
    K = KernelSpec('rbf', gamma=1.0).matrix(X, X)
    with pytest.raises(ConvergenceError) as info:
        smo(K, y, C=100.0, tol=1e-9, max_iter=3)
    assert info.value.worst_violation > 1e-9


def test_svm_rejects_non_positive_c():
    with pytest.raises(ParameterRangeError):
        fit(ClassifierConfig('svm', {'C': 0.0}), Dataset([[0.0], [1.0]], [0, 1]))


@pytest.fixture(scope='module')
def ten_class_plane():
    return gen_family(GeneratorSpec(n_classes=10, n_features=2, per_class=40, alpha=1.0, n_datasets=1, seed=0))[0]


def assert_machines_solved(model, tol):
    K = model.kernel.matrix(model.X, model.X)
    for idx, machine in model.machines.values():
        sub = K[np.ix_(idx, idx)]
        assert np.all(machine.alpha >= 0.0) and np.all(machine.alpha <= model.C)
        assert abs(float(machine.alpha @ machine.y)) <= 1e-9
        assert kkt_violation(machine, sub, model.C) <= tol


@pytest.mark.parametrize('params', [
    {'kernel': 'poly', 'E': 5, 'C': 1000.0, 'N': 0},
    {'kernel': 'poly', 'E': 5, 'C': 1000.0, 'N': 1},
    {'kernel': 'poly', 'E': 5, 'C': 1000.0, 'N': 2},
    {'kernel': 'poly', 'E': 4, 'C': 1000.0, 'N': 2},
    {'kernel': 'npoly', 'E': 5, 'C': 1000.0, 'N': 2},
    {'kernel': 'poly', 'E': 4, 'C': 225.0, 'N': 0},
    {'kernel': 'npoly', 'E': 5, 'C': 437.0, 'N': 0},
])
def test_svm_converges_on_high_degree_large_c(params, ten_class_plane):
    model = fit(ClassifierConfig('svm', params), ten_class_plane)
    assert_machines_solved(model, 1e-3)


@pytest.mark.slow
def test_svm_converges_on_sampled_polynomial_configs(ten_class_plane):
    configs = sample_configs(get_schema('svm'), 200, search_seed(0, 'svm'), 2)
    steep = [c for c in configs if c['kernel'] in ('poly', 'npoly') and c['E'] >= 4]
    assert steep
    for config in steep:
        model = fit(config, ten_class_plane)
        assert_machines_solved(model, config['L'])


# Multilayer perceptron

def test_mlp_gradient_check():
    rng = np.random.default_rng(6)
    net = Network([3, 4, 2], Rng(1))
    net.weights = [0.5 * rng.standard_normal(W.shape) for W in net.weights]
    X = rng.uniform(-1.0, 1.0, size=(5, 3))
    Y = np.eye(2)[[0, 1, 1, 0, 1]]
    _, grads = net.loss_and_grad(X, Y)
    theta = net.flat()

    def loss(t):
        other = Network([3, 4, 2], Rng(1))
        other.set_flat(t)
        return other.loss_and_grad(X, Y)[0]

    numeric = central_differences(loss, theta)
    assert relative_error(np.concatenate([g.ravel() for g in grads]), numeric) <= 1e-4


def test_hidden_wildcards():
    assert parse_hidden('a', 10, 10) == [10]
    assert parse_hidden('a', 2, 3) == [3]
    assert parse_hidden('i', 4, 3) == [4]
    assert parse_hidden('o', 4, 3) == [3]
    assert parse_hidden('t', 4, 3) == [7]
    assert parse_hidden('4, 8', 4, 3) == [4, 8]
    assert parse_hidden('0', 4, 3) == []
    assert canonical_hidden(' 4,A ') == '4,a'
    with pytest.raises(ValueError):
        canonical_hidden('x')


def test_mlp_separable_with_defaults(separable):
    model = fit('mlp', separable)
    np.testing.assert_array_equal(model.predict(separable.instances), separable.labels)


def test_mlp_validation_and_decay(separable):
    config = ClassifierConfig('mlp', {'V': 20, 'D': True, 'N': 50})
    model = fit(config, separable)
    np.testing.assert_array_equal(model.predict(separable.instances), fit(config, separable).predict(separable.instances))


def test_mlp_inert_flags(two_class):
    sub = two_class.subset(np.r_[0:8, 25:33])
    base = fit(ClassifierConfig('mlp', {'N': 30}), sub)
    flagged = fit(ClassifierConfig('mlp', {'N': 30, 'C': True, 'E': 5}), sub)
    for a, b in zip(base.network.weights, flagged.network.weights):
        np.testing.assert_array_equal(a, b)
