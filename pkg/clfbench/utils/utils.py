import hashlib
import json
import random

import numpy as np
import torch as th


def set_random_seed(seed):
    r"""
    Seed the global generators of python, numpy and torch.

    clfbench draws all of its own randomness from explicit :class:`Rng`
    streams; this only pins third-party code that reaches for global state.
    """
    random.seed(seed)
    np.random.seed(seed % (1 << 32))
    th.manual_seed(seed)


def stable_hash(obj):
    r"""Hex SHA-256 of the canonical JSON form of ``obj``."""
    text = json.dumps(obj, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def dump_json(obj, path=None):
    r"""Canonical JSON text (sorted keys, 2-space indent, trailing newline)."""
    text = json.dumps(obj, indent=2, sort_keys=True) + '\n'
    if path is not None:
        with open(path, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    return text


def load_json(path):
    with open(path, 'r', encoding='utf-8') as f:
        return json.load(f)


def round_half_up(x):
    return int(np.floor(x + 0.5))
