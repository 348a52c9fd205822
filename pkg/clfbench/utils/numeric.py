"""Deterministic randomness and the small dense linear algebra used by the
generator and the classifiers.

Streams are built on numpy's Philox bit generator (a counter-based
generator with a published algorithm), keyed by ``SeedSequence`` so that a
child stream is a pure function of ``(seed, label)``.
"""
import hashlib

import numpy as np

from .errors import SymmetryError

MASK64 = (1 << 64) - 1
SYMMETRY_TOL = 1e-12


def label_key(label):
    r"""
    Map a stream label to a non-negative integer usable as a spawn key.

    Integers are used as they are; anything else goes through SHA-256 so the
    result does not depend on ``PYTHONHASHSEED``.
    """
    if isinstance(label, (int, np.integer)) and not isinstance(label, bool) and label >= 0:
        return int(label)
    digest = hashlib.sha256(str(label).encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'little')


class Rng(object):
    r"""
    Deterministic random stream.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed. Larger values are masked.
    key : tuple[int]
        Spawn key of the stream, empty for a root stream.

    Attributes
    -----------
    state : numpy.random.Generator
        Philox-backed generator holding the stream position.
    """

    def __init__(self, seed, key=()):
        self.seed = int(seed) & MASK64
        self.key = tuple(int(k) for k in key)
        seq = np.random.SeedSequence(entropy=self.seed, spawn_key=self.key)
        self.state = np.random.Generator(np.random.Philox(seq))

    def derive(self, label):
        return Rng(self.seed, self.key + (label_key(label),))

    def uniform(self, low=0.0, high=1.0, size=None):
        return self.state.uniform(low, high, size)

    def integers(self, low, high=None, size=None):
        return self.state.integers(low, high, size=size)

    def permutation(self, n):
        return self.state.permutation(n)

    def bootstrap(self, n):
        return self.state.integers(0, n, size=n)

    def seed_int(self, bits=32):
        r"""Draw a seed for a library that wants a plain integer (optuna, torch)."""
        return int(self.state.integers(0, 1 << bits, dtype=np.uint64))

    def __repr__(self):
        return 'Rng(seed={}, key={})'.format(self.seed, self.key)


def derive(seed, label):
    r"""Child stream for ``label`` under ``seed``."""
    return Rng(seed).derive(label)


def standard_normals(rng, n):
    r"""
    Draw ``n`` independent N(0, 1) values with the Box-Muller transform.

    Exactly ``2 * ceil(n / 2)`` uniforms are consumed, so the stream position
    after the call does not depend on the values drawn.
    """
    n = int(n)
    if n < 0:
        raise ValueError('n must be non-negative, got {}'.format(n))
    half = (n + 1) // 2
    u1 = 1.0 - rng.uniform(size=half)
    u2 = rng.uniform(size=half)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    z = np.empty(2 * half, dtype=np.float64)
    z[0::2] = radius * np.cos(angle)
    z[1::2] = radius * np.sin(angle)
    return z[:n]


def gram(G):
    r"""
    Return :math:`G G^T`, exactly symmetric.

    Parameters
    ----------
    G : array-like, shape (F, m)

    Returns
    -------
    numpy.ndarray, shape (F, F)
    """
    G = np.asarray(G, dtype=np.float64)
    if G.ndim != 2 or G.shape[0] < 1 or G.shape[1] < 1:
        raise ValueError('gram expects a non-empty 2-D matrix, got shape {}'.format(G.shape))
    S = G @ G.T
    return 0.5 * (S + S.T)


def check_symmetric(M, tol=SYMMETRY_TOL):
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise SymmetryError('expected a square matrix, got shape {}'.format(M.shape))
    gap = np.max(np.abs(M - M.T)) if M.size else 0.0
    if gap > tol:
        raise SymmetryError('matrix is not symmetric: max |M - M^T| = {:.3e}'.format(gap))
    return M


def sym_eigenvalues(M):
    r"""All eigenvalues of a symmetric matrix, ascending."""
    M = check_symmetric(M)
    return np.linalg.eigvalsh(M)


def sym_eigh(M):
    r"""Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    M = check_symmetric(M)
    return np.linalg.eigh(M)


def min_eigenvalue(M):
    return float(sym_eigenvalues(M)[0])


def assign_folds(labels, k, rng):
    r"""
    Stratified fold id of every instance.

    Each class is shuffled with ``rng``; the classes are then concatenated in
    label order and dealt round-robin over the ``k`` folds, so per-class and
    total fold sizes differ by at most one.
    """
    labels = np.asarray(labels)
    order = np.concatenate([np.flatnonzero(labels == c)[rng.permutation(int((labels == c).sum()))]
                            for c in np.unique(labels)])
    folds = np.empty(len(labels), dtype=np.int64)
    folds[order] = np.arange(len(order)) % k
    return folds
