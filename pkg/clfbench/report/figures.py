"""Plot-ready data: histograms of accuracies and deltas, accuracy-vs-features curves."""
import io
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..utils.errors import DataError, ParameterRangeError

DEFAULT_BINS = 20


@dataclass(frozen=True)
class Histogram:
    edges: tuple
    counts: tuple
    total: int

    def __post_init__(self):
        if len(self.edges) != len(self.counts) + 1:
            raise DataError('a histogram needs one more edge than bins')
        if any(b <= a for a, b in zip(self.edges, self.edges[1:])):
            raise DataError('histogram edges must be strictly increasing')
        if sum(self.counts) != self.total:
            raise DataError('histogram counts do not sum to the total')

    def mass_above(self, threshold=0.0):
        r"""Fraction of the values in bins lying entirely above ``threshold``."""
        above = sum(c for lo, c in zip(self.edges, self.counts) if lo >= threshold)
        return above / self.total

    def to_csv(self):
        frame = pd.DataFrame({'bin_lo': self.edges[:-1], 'bin_hi': self.edges[1:], 'count': self.counts})
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False, float_format='%.4f', lineterminator='\n')
        return buffer.getvalue()


def histogram(values, n_bins=DEFAULT_BINS):
    r"""
    Equal-width histogram spanning ``[min, max]``; the last bin is closed on the right.

    Constant input gets a unit-wide range around the value, all of its mass
    in the middle bin.
    """
    values = np.asarray(values, dtype=np.float64).ravel()
    if n_bins < 1:
        raise ParameterRangeError('a histogram needs at least one bin, got {}'.format(n_bins))
    if values.size == 0:
        raise DataError('cannot build a histogram of no values')
    counts, edges = np.histogram(values, bins=n_bins)
    return Histogram(tuple(float(e) for e in edges), tuple(int(c) for c in counts), int(values.size))


def delta_histogram(report, n_bins=DEFAULT_BINS):
    r"""Distribution of random-minus-default accuracy over every trial of a search."""
    return histogram([d for row in report.deltas for d in row], n_bins)


def accuracy_histograms(entries, n_bins=DEFAULT_BINS):
    r"""Distribution of the default accuracies of every benchmarked classifier."""
    return {e.classifier: histogram(e.accuracies, n_bins) for e in entries}


def curve_data(series):
    r"""
    Long-form CSV ``classifier,F,mean_accuracy`` of accuracy-vs-features series.

    Raises
    ------
    DataError
        When the points of a series are not sorted by feature count.
    """
    rows = []
    for s in series:
        features = [f for f, _ in s.points]
        if any(b <= a for a, b in zip(features, features[1:])):
            raise DataError('series of {} is not sorted by feature count'.format(s.classifier))
        rows.extend((s.classifier, int(f), float(m)) for f, m in s.points)
    frame = pd.DataFrame(rows, columns=['classifier', 'F', 'mean_accuracy'])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format='%.2f', lineterminator='\n')
    return buffer.getvalue()
