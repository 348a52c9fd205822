import numpy as np
from scipy.special import expit, logsumexp

from . import BaseModel, register_model, fit
from .schema import ParamSchema, Param, log_range, linear_range, choice_of
from ..utils.errors import TrainingDivergenceError
from ..utils.numeric import Rng
from ..utils.utils import round_half_up

INIT_RANGE = 0.05
PATIENCE = 20
WILDCARDS = ('a', 'i', 'o', 't')


def canonical_hidden(value):
    r"""Normalise a hidden-layer spec such as ``"a"``, ``8`` or ``"4, 4"``; raise ``ValueError`` if malformed."""
    tokens = [t.strip().lower() for t in str(value).split(',')]
    for t in tokens:
        if t in WILDCARDS:
            continue
        if not t.isdigit():
            raise ValueError(value)
        if int(t) == 0 and len(tokens) > 1:
            raise ValueError(value)
    return ','.join(str(int(t)) if t.isdigit() else t for t in tokens)


def parse_hidden(spec, n_features, n_classes):
    r"""
    Hidden layer widths of a spec.

    ``a`` = round((F + C) / 2), ``i`` = F, ``o`` = C, ``t`` = F + C; integers
    give that width; ``0`` means no hidden layer.
    """
    widths = []
    for token in canonical_hidden(spec).split(','):
        if token == 'a':
            width = round_half_up((n_features + n_classes) / 2.0)
        elif token == 'i':
            width = n_features
        elif token == 'o':
            width = n_classes
        elif token == 't':
            width = n_features + n_classes
        else:
            width = int(token)
        if width > 0:
            widths.append(width)
    return widths


class Network(object):
    r"""
    Fully connected network: sigmoid hidden layers, softmax output.

    Attributes
    -----------
    weights : list[numpy.ndarray]
        ``weights[l]`` has shape (fan_in + 1, fan_out); row 0 holds the biases.
    """

    def __init__(self, sizes, rng):
        self.weights = [rng.uniform(-INIT_RANGE, INIT_RANGE, size=(a + 1, b)) for a, b in zip(sizes[:-1], sizes[1:])]

    def forward(self, X):
        activations = [X]
        h = X
        for l, W in enumerate(self.weights):
            z = h @ W[1:] + W[0]
            h = expit(z) if l < len(self.weights) - 1 else z
            activations.append(h)
        return activations

    def log_proba(self, X):
        z = self.forward(X)[-1]
        return z - logsumexp(z, axis=1, keepdims=True)

    def loss_and_grad(self, X, Y):
        r"""
        Summed cross-entropy of one-hot targets ``Y`` and its gradient per weight matrix.
        """
        activations = self.forward(X)
        z = activations[-1]
        log_p = z - logsumexp(z, axis=1, keepdims=True)
        loss = -float((Y * log_p).sum())
        delta = np.exp(log_p) - Y
        grads = [None] * len(self.weights)
        for l in range(len(self.weights) - 1, -1, -1):
            h = activations[l]
            grads[l] = np.vstack([delta.sum(axis=0, keepdims=True), h.T @ delta])
            if l:
                delta = (delta @ self.weights[l][1:].T) * h * (1.0 - h)
        return loss, grads

    def flat(self):
        return np.concatenate([W.ravel() for W in self.weights])

    def set_flat(self, theta):
        offset = 0
        for l, W in enumerate(self.weights):
            self.weights[l] = theta[offset:offset + W.size].reshape(W.shape).copy()
            offset += W.size


def stratified_holdout(y, percent, rng):
    r"""Boolean mask selecting ``percent`` of every class (rounded) as validation instances."""
    mask = np.zeros(len(y), dtype=bool)
    for c in np.unique(y):
        members = np.flatnonzero(y == c)
        k = round_half_up(len(members) * percent / 100.0)
        k = min(k, len(members) - 1)
        if k > 0:
            mask[members[rng.permutation(len(members))[:k]]] = True
    return mask


@register_model('mlp')
class MLP(BaseModel):
    r"""
    Multilayer perceptron trained by back-propagation.

    Stochastic gradient descent with momentum, one instance per update, in a
    fresh shuffled order each epoch. Inputs are rescaled to [-1, 1]. With
    ``-D`` the learning rate halves after every epoch; with ``-V`` a stratified
    share of the training set is held out and training stops after 20 epochs
    without a lower validation error, keeping the best weights.
    """
    schema = ParamSchema('mlp', 'Perceptron', (
        Param('D', 'bool', False, help='halve the learning rate every epoch'),
        Param('H', 'choice', 'a', grid=('1', '2', '4', '8', '16', '32'),
              space=choice_of('a', '1', '2', '4', '8', '16', '32'), choices=WILDCARDS, parse=canonical_hidden,
              help='hidden layers: a, i, o, t, widths or comma-separated widths'),
        Param('L', 'real', 0.3, grid=(0.01, 0.05, 0.1, 0.5, 1.0), space=log_range(0.01, 1.0), low=0.0,
              low_open=True, help='learning rate'),
        Param('M', 'real', 0.2, grid=(0.0, 0.5, 0.9), space=linear_range(0.0, 0.9), low=0.0, high=1.0,
              high_open=True, help='momentum'),
        Param('N', 'int', 500, grid=(50, 100, 1000), space=log_range(50, 1000), low=1, help='training epochs'),
        Param('V', 'int', 0, grid=(10, 20, 30), space=linear_range(0, 30), low=0, high=50,
              help='validation set size in percent'),
        Param('C', 'bool', False, inert=True, help='do not normalise a numeric class'),
        Param('E', 'int', 20, grid=(5, 10, 50), space=linear_range(5, 50), low=1, inert=True,
              help='validation threshold'),
        Param('S', 'int', 0, low=0, fixed=True, help='random seed'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        return cls(hidden=args['H'], learning_rate=args['L'], momentum=args['M'], epochs=args['N'],
                   validation=args['V'], decay=args['D'], seed=args['S'])

    def __init__(self, hidden='a', learning_rate=0.3, momentum=0.2, epochs=500, validation=0, decay=False, seed=0):
        super(MLP, self).__init__()
        self.hidden = hidden
        self.learning_rate = learning_rate
        self.momentum = momentum
        self.epochs = epochs
        self.validation = validation
        self.decay = decay
        self.seed = seed

    def scale(self, X):
        return 2.0 * (X - self.low) / self.span - 1.0

    def _fit(self, X, y):
        self.low = X.min(axis=0)
        span = X.max(axis=0) - self.low
        self.span = np.where(span > 0, span, 1.0)
        inputs = self.scale(X)
        targets = np.eye(self.n_classes)[y]
        rng = Rng(self.seed)
        sizes = [X.shape[1]] + parse_hidden(self.hidden, X.shape[1], self.n_classes) + [self.n_classes]
        self.network = Network(sizes, rng.derive('init'))

        held = np.zeros(len(y), dtype=bool)
        if self.validation > 0:
            held = stratified_holdout(y, self.validation, rng.derive('validation'))
        train_x, train_t = inputs[~held], targets[~held]
        best_error, best_weights, stale = np.inf, None, 0

        order_rng = rng.derive('order')
        velocity = [np.zeros_like(W) for W in self.network.weights]
        rate = self.learning_rate
        for epoch in range(self.epochs):
            epoch_loss = 0.0
            for i in order_rng.permutation(len(train_x)):
                loss, grads = self.network.loss_and_grad(train_x[i:i + 1], train_t[i:i + 1])
                epoch_loss += loss
                for l, g in enumerate(grads):
                    velocity[l] = self.momentum * velocity[l] - rate * g
                    self.network.weights[l] += velocity[l]
            if not np.isfinite(epoch_loss):
                raise TrainingDivergenceError('perceptron diverged in epoch {}'.format(epoch + 1))
            if held.any():
                error = int((np.argmax(self.network.log_proba(inputs[held]), axis=1) != y[held]).sum())
                if error < best_error:
                    best_error, best_weights, stale = error, [W.copy() for W in self.network.weights], 0
                else:
                    stale += 1
                    if stale >= PATIENCE:
                        break
            if self.decay:
                rate *= 0.5
        if best_weights is not None:
            self.network.weights = best_weights

    def _posterior(self, X):
        p = np.exp(self.network.log_proba(self.scale(X)))
        return p / p.sum(axis=1, keepdims=True)

    def _predict(self, X):
        return np.argmax(self.network.log_proba(self.scale(X)), axis=1)


def mlp_fit(config, train):
    return fit(config, train)
