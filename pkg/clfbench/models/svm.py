"""Support vector machine trained by sequential minimal optimization.

The binary solver works on ``beta = y * alpha`` with box
``min(0, C y) <= beta <= max(0, C y)``. Each step pairs the maximal violator
with the partner of largest second-order gain, until the violation drops to
the tolerance ``L``. Multiclass problems are decomposed one-vs-one.
"""
from dataclasses import dataclass

import numpy as np

from . import BaseModel, register_model, fit
from .schema import ParamSchema, Param, log_range, linear_range, choice_of
from ..utils.errors import ConvergenceError, DimensionMismatchError

KERNELS = ('poly', 'npoly', 'rbf', 'puk')
MIN_CURVATURE = 1e-12
MIN_ITERATIONS = 1000000
GRADIENT_REFRESH = 1000


@dataclass(frozen=True)
class KernelSpec:
    r"""
    Kernel function and its parameters.

    Attributes
    -----------
    kind : str
        ``poly`` ``(x.y)^E``, ``npoly`` (normalised poly), ``rbf`` ``exp(-G |x-y|^2)``
        or ``puk`` (Pearson VII with width ``sigma`` and shape ``omega``).
    """
    kind: str = 'poly'
    exponent: int = 1
    gamma: float = 0.01
    sigma: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        if self.kind not in KERNELS:
            raise ValueError('unknown kernel {!r}'.format(self.kind))

    def matrix(self, A, B):
        r"""Kernel values between every row of ``A`` and every row of ``B``."""
        A = np.atleast_2d(np.asarray(A, dtype=np.float64))
        B = np.atleast_2d(np.asarray(B, dtype=np.float64))
        if A.shape[1] != B.shape[1]:
            raise DimensionMismatchError('kernel arguments have {} and {} features'.format(A.shape[1], B.shape[1]))
        if self.kind == 'poly':
            return (A @ B.T) ** self.exponent
        if self.kind == 'npoly':
            K = (A @ B.T) ** self.exponent
            diag_a = np.einsum('ij,ij->i', A, A) ** self.exponent
            diag_b = np.einsum('ij,ij->i', B, B) ** self.exponent
            denom = np.sqrt(np.outer(diag_a, diag_b))
            return np.divide(K, denom, out=np.zeros_like(K), where=denom > 0)
        sq = (np.einsum('ij,ij->i', A, A)[:, None] + np.einsum('ij,ij->i', B, B)[None, :] - 2.0 * (A @ B.T))
        sq = np.maximum(sq, 0.0)
        if self.kind == 'rbf':
            return np.exp(-self.gamma * sq)
        scale = 2.0 * np.sqrt(2.0 ** (1.0 / self.omega) - 1.0) / self.sigma
        return 1.0 / (1.0 + scale * scale * sq) ** self.omega


def kernel_eval(spec, x, y):
    r"""Kernel value of two feature vectors."""
    x = np.asarray(x, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if x.shape != y.shape:
        raise DimensionMismatchError('kernel arguments have {} and {} features'.format(x.size, y.size))
    if spec.kind in ('rbf', 'puk'):
        diff = x - y
        sq = float(diff @ diff)
        if spec.kind == 'rbf':
            return float(np.exp(-spec.gamma * sq))
        scale = 2.0 * np.sqrt(2.0 ** (1.0 / spec.omega) - 1.0) / spec.sigma
        return float(1.0 / (1.0 + scale * scale * sq) ** spec.omega)
    return float(spec.matrix(x[None, :], y[None, :])[0, 0])


class BinaryMachine(object):
    r"""
    Solution of one two-class dual problem.

    Attributes
    -----------
    alpha : numpy.ndarray
        Dual coefficients, ``0 <= alpha <= C``.
    y : numpy.ndarray
        Targets in ``{+1, -1}``.
    bias : float
    iterations : int
    """

    def __init__(self, alpha, y, bias, iterations):
        self.alpha = alpha
        self.y = y
        self.bias = bias
        self.iterations = iterations

    def decision(self, K):
        r"""Decision values from kernel rows ``K`` (queries x training instances)."""
        return K @ (self.alpha * self.y) + self.bias


def smo(K, y, C, tol=1e-3, eps=1e-12, max_iter=None):
    r"""
    Solve the soft-margin dual for the kernel matrix ``K`` and targets ``y`` in {+1, -1}.

    The first index of each pair is the maximal violator; the second is the
    partner with the largest guaranteed decrease of the dual objective,
    ``(grad_i - grad_j)^2 / (K_ii + K_jj - 2 K_ij)``. The gradient is rebuilt
    from ``K`` every ``GRADIENT_REFRESH`` steps and before a solution is
    accepted.

    Parameters
    ----------
    K : numpy.ndarray, shape (n, n)
    y : numpy.ndarray, shape (n,)
    C : float
        Upper bound of every ``alpha``.
    tol : float
        Stop once the maximal violation is at most ``tol``.
    eps : float
        A step landing within ``eps`` of a bound snaps onto it.
    max_iter : int
        Iteration cap, ``max(MIN_ITERATIONS, 1000 n)`` by default;
        ``ConvergenceError`` when exceeded.

    Returns
    -------
    BinaryMachine
    """
    n = len(y)
    max_iter = max_iter or max(MIN_ITERATIONS, 1000 * n)
    y = y.astype(np.float64)
    lower = np.minimum(0.0, C * y)
    upper = np.maximum(0.0, C * y)
    beta = np.zeros(n)
    grad = y.copy()
    diag = np.diag(K)
    for iteration in range(max_iter):
        if iteration and iteration % GRADIENT_REFRESH == 0:
            grad = y - K @ beta
        up = np.where(beta < upper, grad, -np.inf)
        down = np.where(beta > lower, grad, np.inf)
        i = int(np.argmax(up))
        if up[i] - down.min() <= tol:
            grad = y - K @ beta
            up = np.where(beta < upper, grad, -np.inf)
            down = np.where(beta > lower, grad, np.inf)
            i = int(np.argmax(up))
            if up[i] - down.min() <= tol:
                bias = 0.5 * (up[i] + down.min())
                return BinaryMachine(np.abs(beta), y, bias, iteration)
        gain = grad[i] - down
        curvature = np.maximum(diag[i] + diag - 2.0 * K[i], MIN_CURVATURE)
        j = int(np.argmax(np.where(gain > 0, gain * gain / curvature, -np.inf)))
        gap = gain[j]
        room_i = upper[i] - beta[i]
        room_j = beta[j] - lower[j]
        step = min(room_i, room_j, gap / curvature[j])
        if room_i - step <= eps or room_j - step <= eps:
            step = min(room_i, room_j)
        beta[i] += step
        beta[j] -= step
        if room_i == step:
            beta[i] = upper[i]
        if room_j == step:
            beta[j] = lower[j]
        grad -= step * (K[i] - K[j])
    grad = y - K @ beta
    worst = float(np.max(np.where(beta < upper, grad, -np.inf)) - np.min(np.where(beta > lower, grad, np.inf)))
    raise ConvergenceError('SMO did not converge in {} iterations (worst KKT violation {:.3e})'.format(
        max_iter, worst), worst_violation=worst)


def kkt_violation(machine, K, C):
    r"""Largest KKT violation of a trained machine on its own training kernel matrix."""
    margin = machine.y * machine.decision(K)
    at_zero = machine.alpha <= 0
    at_bound = machine.alpha >= C
    free = ~at_zero & ~at_bound
    violation = np.zeros_like(margin)
    violation[at_zero] = np.maximum(1.0 - margin[at_zero], 0.0)
    violation[at_bound] = np.maximum(margin[at_bound] - 1.0, 0.0)
    violation[free] = np.abs(margin[free] - 1.0)
    return float(violation.max()) if violation.size else 0.0


@register_model('svm')
class SVM(BaseModel):
    r"""
    One-vs-one support vector machine.

    Features are rescaled to [0, 1] (``-N 0``), standardised (``-N 1``) or left
    untouched (``-N 2``) before the kernel is evaluated. Each class pair is
    solved by :func:`smo` with the lower class index ``a`` as the positive
    target. A machine votes for ``a`` when its decision value is strictly
    positive and for ``b`` otherwise, so a decision value of exactly zero goes
    to the higher index. The prediction is the class with most pairwise votes,
    lowest index on ties.
    """
    schema = ParamSchema('svm', 'SVM', (
        Param('C', 'real', 1.0, grid=(1e-3, 1e-2, 1e-1, 10.0, 100.0, 1000.0), space=log_range(1e-3, 1e3),
              low=0.0, low_open=True, help='complexity constant'),
        Param('L', 'real', 1e-3, grid=(1e-4, 5e-3, 1e-2), space=log_range(1e-4, 1e-2), low=0.0, low_open=True,
              help='tolerance of the KKT conditions'),
        Param('P', 'real', 1e-12, grid=(1e-14, 1e-10, 1e-8), space=log_range(1e-14, 1e-8), low=0.0,
              help='round-off epsilon'),
        Param('N', 'choice', 0, grid=(1, 2), space=choice_of(0, 1, 2), choices=(0, 1, 2),
              help='0 = normalise, 1 = standardise, 2 = neither'),
        Param('kernel', 'choice', 'poly', grid=('npoly', 'rbf', 'puk'), space=choice_of(*KERNELS), choices=KERNELS,
              help='kernel family'),
        Param('E', 'int', 1, grid=(2, 3, 4, 5), space=linear_range(1, 5), low=1,
              requires=(('kernel', ('poly', 'npoly')),), contexts=({'kernel': 'poly'}, {'kernel': 'npoly'}),
              help='exponent of the (normalised) polynomial kernel'),
        Param('G', 'real', 0.01, grid=(0.001, 0.1, 1.0, 10.0), space=log_range(1e-3, 10.0), low=0.0,
              low_open=True, requires=(('kernel', ('rbf',)),), contexts=({'kernel': 'rbf'},),
              help='gamma of the RBF kernel'),
        Param('S', 'real', 1.0, grid=(0.1, 0.5, 2.0, 5.0, 10.0), space=log_range(0.1, 10.0), low=0.0,
              low_open=True, requires=(('kernel', ('puk',)),), contexts=({'kernel': 'puk'},),
              help='sigma of the Puk kernel'),
        Param('O', 'real', 1.0, grid=(0.5, 2.0, 5.0), space=log_range(0.5, 5.0), low=0.0, low_open=True,
              requires=(('kernel', ('puk',)),), contexts=({'kernel': 'puk'},), help='omega of the Puk kernel'),
        Param('V', 'choice', -1, grid=(3, 5, 10), space=choice_of(-1, 3, 5, 10), choices=(-1, 3, 5, 10),
              inert=True, help='folds for calibration models'),
        Param('W', 'int', 1, grid=(2, 3, 4, 5), space=linear_range(1, 5), low=0, inert=True,
              help='random seed'),
    ))

    @classmethod
    def build_model_from_args(cls, args):
        kernel = KernelSpec(args['kernel'], exponent=args['E'], gamma=args['G'], sigma=args['S'], omega=args['O'])
        return cls(kernel, C=args['C'], tol=args['L'], eps=args['P'], scaling=args['N'])

    def __init__(self, kernel=None, C=1.0, tol=1e-3, eps=1e-12, scaling=0):
        super(SVM, self).__init__()
        self.kernel = kernel or KernelSpec()
        self.C = C
        self.tol = tol
        self.eps = eps
        self.scaling = scaling

    def _fit(self, X, y):
        if self.scaling == 0:
            self.offset = X.min(axis=0)
            span = X.max(axis=0) - self.offset
        elif self.scaling == 1:
            self.offset = X.mean(axis=0)
            span = X.std(axis=0)
        else:
            self.offset = np.zeros(X.shape[1])
            span = np.ones(X.shape[1])
        self.span = np.where(span > 0, span, 1.0)
        self.X = self.transform(X)
        K = self.kernel.matrix(self.X, self.X)
        self.machines = {}
        for a in range(self.n_classes):
            for b in range(a + 1, self.n_classes):
                idx = np.flatnonzero((y == a) | (y == b))
                target = np.where(y[idx] == a, 1.0, -1.0)
                machine = smo(K[np.ix_(idx, idx)], target, self.C, self.tol, self.eps)
                self.machines[(a, b)] = (idx, machine)

    def transform(self, X):
        return (X - self.offset) / self.span

    def votes(self, X):
        K = self.kernel.matrix(self.transform(X), self.X)
        counts = np.zeros((X.shape[0], self.n_classes), dtype=np.int64)
        for (a, b), (idx, machine) in self.machines.items():
            positive = machine.decision(K[:, idx]) > 0
            counts[positive, a] += 1
            counts[~positive, b] += 1
        return counts

    def _predict(self, X):
        return np.argmax(self.votes(X), axis=1)


def svm_fit(config, train):
    return fit(config, train)
