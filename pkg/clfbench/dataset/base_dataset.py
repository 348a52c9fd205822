from abc import ABC
from dataclasses import dataclass, field

import numpy as np

from ..utils.errors import DataError
from .spec import ClassModel, GeneratorSpec


class BaseDataset(ABC):
    def __init__(self, ):
        super(BaseDataset, self).__init__()
        self.meta = None


@dataclass(frozen=True, eq=False)
class DatasetMeta:
    r"""
    Generation record of one dataset.

    Attributes
    -----------
    spec : GeneratorSpec
    dataset_index : int
        Position ``k`` in the family; the dataset was drawn from stream ``derive(seed, k)``.
    class_models : list[ClassModel]
    realized_moments : dict
        Mean and variance of the off-diagonal correlations pooled over the class models.
    """
    spec: GeneratorSpec
    dataset_index: int
    class_models: list = field(default_factory=list)
    realized_moments: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            'spec': self.spec.to_dict(),
            'dataset_index': self.dataset_index,
            'class_models': [m.to_dict() for m in self.class_models],
            'realized_correlation_moments': dict(self.realized_moments),
        }

    @classmethod
    def from_dict(cls, d):
        return cls(spec=GeneratorSpec.from_dict(d['spec']),
                   dataset_index=int(d['dataset_index']),
                   class_models=[ClassModel.from_dict(m) for m in d['class_models']],
                   realized_moments=dict(d['realized_correlation_moments']))

    def __eq__(self, other):
        if not isinstance(other, DatasetMeta):
            return NotImplemented
        return self.to_dict() == other.to_dict()


class Dataset(BaseDataset):
    r"""
    Labeled instances of one synthetic dataset.

    Attributes
    -----------
    instances : numpy.ndarray, shape (n, F)
    labels : numpy.ndarray of int, shape (n,)
        Class indices ``0 .. C-1``.
    meta : DatasetMeta or None
        ``None`` for ad-hoc datasets (tests, folds).
    """

    def __init__(self, instances, labels, meta=None):
        super(Dataset, self).__init__()
        instances = np.array(instances, dtype=np.float64)
        labels = np.array(labels, dtype=np.int64)
        if instances.ndim != 2:
            raise DataError('instances must be a 2-D array, got shape {}'.format(instances.shape))
        if labels.shape != (instances.shape[0],):
            raise DataError('{} labels for {} instances'.format(labels.shape[0], instances.shape[0]))
        if not np.all(np.isfinite(instances)):
            raise DataError('instances contain non-finite values')
        if labels.size and labels.min() < 0:
            raise DataError('labels must be non-negative class indices')
        instances.setflags(write=False)
        labels.setflags(write=False)
        self.instances = instances
        self.labels = labels
        self.meta = meta

    @property
    def n_instances(self):
        return self.instances.shape[0]

    @property
    def n_features(self):
        return self.instances.shape[1]

    @property
    def n_classes(self):
        if self.meta is not None:
            return self.meta.spec.n_classes
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @property
    def index(self):
        return None if self.meta is None else self.meta.dataset_index

    def class_counts(self):
        return np.bincount(self.labels, minlength=self.n_classes)

    def subset(self, idx):
        r"""Rows ``idx`` as a metadata-free dataset."""
        idx = np.asarray(idx, dtype=np.int64)
        return Dataset(self.instances[idx], self.labels[idx])

    def __len__(self):
        return self.n_instances

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        return (np.array_equal(self.instances, other.instances)
                and np.array_equal(self.labels, other.labels)
                and self.meta == other.meta)

    def __repr__(self):
        return 'Dataset(n={}, F={}, C={}, index={})'.format(
            self.n_instances, self.n_features, self.n_classes, self.index)
