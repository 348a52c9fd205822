import glob
import os

import numpy as np
import pandas as pd

from ..utils.errors import DatasetFormatError, MissingFamilyError
from ..utils.utils import dump_json, load_json, stable_hash
from .base_dataset import Dataset, DatasetMeta
from .spec import GeneratorSpec

'''
On-disk layout of a family directory:

    DB2F/
        family.json        generator spec + family key
        ds_000.csv         f1,...,fF,label
        ds_000.json        metadata sidecar
        ...
'''

FAMILY_FILE = 'family.json'


def dataset_stem(k):
    return 'ds_{:03d}'.format(k)


def sidecar_path(path):
    root, _ = os.path.splitext(path)
    return root + '.json'


def family_key(spec):
    r"""Stable identifier of the family generated from ``spec``."""
    return stable_hash(spec.to_dict())


def save_dataset(d, path):
    r"""
    Write ``d`` as CSV plus a JSON metadata sidecar next to it.

    Features are written with ``repr`` so every value survives the round trip
    bit for bit.
    """
    columns = ['f{}'.format(i + 1) for i in range(d.n_features)]
    frame = pd.DataFrame({c: [repr(float(v)) for v in d.instances[:, i]] for i, c in enumerate(columns)},
                         columns=columns)
    frame['label'] = [str(int(v)) for v in d.labels]
    frame.to_csv(path, index=False, lineterminator='\n')
    if d.meta is not None:
        dump_json(d.meta.to_dict(), sidecar_path(path))
    return path


def load_dataset(path):
    r"""
    Read a dataset written by :func:`save_dataset`.

    Raises
    ------
    DatasetFormatError
        Naming the first malformed line (1-based, header is line 1).
    """
    if not os.path.exists(path):
        raise FileNotFoundError('no such dataset file: {}'.format(path))
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    except pd.errors.ParserError as e:
        raise DatasetFormatError('{}: {}'.format(path, e))
    except pd.errors.EmptyDataError:
        raise DatasetFormatError('{}: line 1: missing header'.format(path))
    columns = list(frame.columns)
    n_features = len(columns) - 1
    expected = ['f{}'.format(i + 1) for i in range(n_features)] + ['label']
    if n_features < 1 or columns != expected:
        raise DatasetFormatError('{}: line 1: expected header {}, got {}'.format(path, ','.join(expected), ','.join(columns)))

    features = frame[expected[:-1]].apply(pd.to_numeric, errors='coerce').to_numpy(dtype=np.float64)
    labels = pd.to_numeric(frame['label'], errors='coerce').to_numpy(dtype=np.float64)
    bad_rows = ~np.all(np.isfinite(features), axis=1) | ~np.isfinite(labels)
    bad_rows |= np.isfinite(labels) & ((labels < 0) | (labels != np.floor(labels)))
    if bad_rows.any():
        row = int(np.argmax(bad_rows))
        raise DatasetFormatError('{}: line {}: malformed row {!r}'.format(
            path, row + 2, ','.join(frame.iloc[row].tolist())))

    # numpy parses the decimal strings with correct rounding
    instances = frame[expected[:-1]].to_numpy(dtype=str).astype(np.float64)
    meta = None
    if os.path.exists(sidecar_path(path)):
        meta = DatasetMeta.from_dict(load_json(sidecar_path(path)))
    return Dataset(instances.reshape(len(frame), n_features), labels.astype(np.int64), meta)


def save_family(family, directory, run_config=None):
    r"""
    Write every dataset of ``family`` and the ``family.json`` manifest to ``directory``.

    The manifest records the generator spec, the family key, the dataset count
    and, when given, the ``run_config`` of the invocation that produced it.
    """
    os.makedirs(directory, exist_ok=True)
    spec = family[0].meta.spec
    manifest = {'spec': spec.to_dict(), 'family_key': family_key(spec), 'n_datasets': len(family)}
    if run_config is not None:
        manifest['run_config'] = run_config
    dump_json(manifest, os.path.join(directory, FAMILY_FILE))
    for d in family:
        save_dataset(d, os.path.join(directory, dataset_stem(d.index) + '.csv'))
    return directory


def load_family(directory):
    r"""All ``ds_*.csv`` datasets of a family directory, in index order."""
    if not os.path.isdir(directory):
        raise MissingFamilyError('dataset family not found: {}'.format(directory))
    paths = sorted(glob.glob(os.path.join(directory, 'ds_*.csv')))
    if not paths:
        raise MissingFamilyError('no ds_*.csv files in {}'.format(directory))
    return [load_dataset(p) for p in paths]


def load_family_spec(directory):
    path = os.path.join(directory, FAMILY_FILE)
    if not os.path.exists(path):
        return None
    return GeneratorSpec.from_dict(load_json(path)['spec'])
