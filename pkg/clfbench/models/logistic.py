import numpy as np
import torch as th

from . import BaseModel, register_model, fit
from .schema import ParamSchema, Param, log_range
from ..utils.errors import TrainingDivergenceError

GRAD_TOL = 1e-6


def add_intercept(X):
    return np.hstack([np.ones((X.shape[0], 1)), X])


def penalized_nll(W, X, y, ridge):
    r"""
    Ridge-penalised multinomial negative log-likelihood.

    Parameters
    ----------
    W : th.Tensor, shape (F + 1, C)
        One weight vector per class, intercepts in row 0.
    X : th.Tensor, shape (n, F + 1)
        Instances with a leading column of ones.
    y : th.Tensor, shape (n,)
        Encoded labels.
    ridge : float
        Penalty on the squared norm of the non-intercept weights.
    """
    logits = X @ W
    nll = th.nn.functional.cross_entropy(logits, y, reduction='sum')
    return nll + ridge * (W[1:] ** 2).sum()


def loss_and_grad(weights, X, y, ridge):
    r"""Loss and autograd gradient at ``weights`` (numpy in, numpy out)."""
    W = th.tensor(np.asarray(weights, dtype=np.float64), requires_grad=True)
    loss = penalized_nll(W, th.as_tensor(add_intercept(X)), th.as_tensor(np.asarray(y, dtype=np.int64)), ridge)
    loss.backward()
    return float(loss.item()), W.grad.numpy().copy()


@register_model('logistic')
class Logistic(BaseModel):
    r"""
    Multinomial logistic regression with a ridge penalty, trained with L-BFGS.

    Features are standardised on the training set. Optimisation stops when the
    gradient's infinity norm drops to 1e-6 or after ``max_iter`` iterations.

    Parameters
    ----------
    ridge : float
        ``-R``, weight of the squared-norm penalty.
    max_iter : int
        ``-M``, iteration cap of L-BFGS.
    """
    schema = ParamSchema('logistic', 'Logistic', (
        Param('R', 'real', 1e-8, grid=(1e-10, 1e-9, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0),
              space=log_range(1e-10, 10.0), low=0.0, help='ridge in the log-likelihood'),
        Param('M', 'int', 200, grid=(10, 25, 50, 100, 500), space=log_range(10, 500), low=1,
              help='maximum number of iterations'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        return cls(ridge=args['R'], max_iter=args['M'])

    def __init__(self, ridge=1e-8, max_iter=200):
        super(Logistic, self).__init__()
        self.ridge = ridge
        self.max_iter = max_iter

    def _fit(self, X, y):
        self.center = X.mean(axis=0)
        scale = X.std(axis=0)
        self.scale = np.where(scale > 0, scale, 1.0)
        inputs = th.as_tensor(add_intercept((X - self.center) / self.scale))
        targets = th.as_tensor(y.astype(np.int64))
        W = th.zeros((X.shape[1] + 1, self.n_classes), dtype=th.float64, requires_grad=True)
        optimizer = th.optim.LBFGS([W], lr=1, max_iter=self.max_iter, tolerance_grad=GRAD_TOL,
                                   tolerance_change=0.0, line_search_fn='strong_wolfe')

        def closure():
            optimizer.zero_grad()
            loss = penalized_nll(W, inputs, targets, self.ridge)
            loss.backward()
            return loss

        optimizer.step(closure)
        with th.no_grad():
            loss = penalized_nll(W, inputs, targets, self.ridge).item()
        if not np.isfinite(loss):
            raise TrainingDivergenceError('logistic regression diverged (loss {})'.format(loss))
        self.weights = W.detach().numpy().copy()

    def decision(self, X):
        return add_intercept((X - self.center) / self.scale) @ self.weights

    def _posterior(self, X):
        z = self.decision(X)
        z -= z.max(axis=1, keepdims=True)
        p = np.exp(z)
        return p / p.sum(axis=1, keepdims=True)

    def _predict(self, X):
        return np.argmax(self.decision(X), axis=1)


def logistic_fit(config, train):
    return fit(config, train)
