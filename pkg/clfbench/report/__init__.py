from .tables import Table, render_table, parse_table, benchmark_table, sweep_table, search_table, \
    search_detail_table, ranking_table, FORMATS
from .figures import Histogram, histogram, delta_histogram, accuracy_histograms, curve_data, DEFAULT_BINS

__all__ = [
    'Table', 'render_table', 'parse_table', 'benchmark_table', 'sweep_table', 'search_table',
    'search_detail_table', 'ranking_table', 'FORMATS',
    'Histogram', 'histogram', 'delta_histogram', 'accuracy_histograms', 'curve_data', 'DEFAULT_BINS',
]
