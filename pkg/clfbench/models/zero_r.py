import numpy as np

from . import BaseModel, register_model
from .schema import ParamSchema


@register_model('zero_r')
class ZeroR(BaseModel):
    r"""Majority-class baseline; ties go to the lowest class index."""
    schema = ParamSchema('zero_r', 'ZeroR', ())

    @classmethod
    def build_model_from_args(cls, args):
        return cls()

    def _fit(self, X, y):
        self.prior = np.bincount(y, minlength=self.n_classes) / float(len(y))

    def _predict(self, X):
        return np.full(X.shape[0], int(np.argmax(self.prior)), dtype=np.int64)

    def _posterior(self, X):
        return np.tile(self.prior, (X.shape[0], 1))
