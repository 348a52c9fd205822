import io
import json
from dataclasses import dataclass

import pandas as pd
from tabulate import tabulate

from ..utils.errors import DataError, UnknownFormatError

FORMATS = ('csv', 'json', 'markdown')


@dataclass(frozen=True)
class Table:
    r"""
    A rectangular table of results.

    Attributes
    -----------
    title : str
    headers : tuple[str]
    rows : tuple[tuple]
        Cells are strings, numbers or ``None`` (rendered empty).
    sort_key : str or None
        Header of the column rows are sorted by, highest first, when rendered.
    """
    title: str
    headers: tuple
    rows: tuple
    sort_key: str = None

    def __post_init__(self):
        object.__setattr__(self, 'headers', tuple(self.headers))
        object.__setattr__(self, 'rows', tuple(tuple(r) for r in self.rows))
        for i, row in enumerate(self.rows):
            if len(row) != len(self.headers):
                raise DataError('row {} of table {!r} has {} cells, expected {}'.format(
                    i, self.title, len(row), len(self.headers)))
        if self.sort_key is not None and self.sort_key not in self.headers:
            raise DataError('sort key {!r} is not a column of {!r}'.format(self.sort_key, self.title))

    def sorted_rows(self):
        if self.sort_key is None:
            return list(self.rows)
        j = self.headers.index(self.sort_key)
        return sorted(self.rows, key=lambda r: float('inf') if r[j] is None else -r[j])

    def to_dict(self):
        return {'title': self.title, 'headers': list(self.headers),
                'rows': [list(r) for r in self.rows], 'sort_key': self.sort_key}

    @classmethod
    def from_dict(cls, d):
        return cls(d['title'], d['headers'], d['rows'], d.get('sort_key'))


def format_cell(value):
    if value is None:
        return ''
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return '{:.2f}'.format(value)
    return str(value)


def render_table(table, fmt):
    r"""
    Render ``table`` as ``csv``, ``json`` or ``markdown`` text.

    Percentages are printed with two decimals in csv and markdown; json keeps
    the raw values so that :func:`parse_table` gives back an equal table.
    """
    if fmt == 'json':
        return json.dumps(table.to_dict(), indent=2, sort_keys=True) + '\n'
    if fmt not in FORMATS:
        raise UnknownFormatError('unknown table format {!r}; choose from {}'.format(fmt, ', '.join(FORMATS)))
    cells = [[format_cell(v) for v in row] for row in table.sorted_rows()]
    if fmt == 'csv':
        buffer = io.StringIO()
        pd.DataFrame(cells, columns=list(table.headers)).to_csv(buffer, index=False, lineterminator='\n')
        return buffer.getvalue()
    body = tabulate(cells, headers=list(table.headers), tablefmt='pipe', disable_numparse=True)
    return '### {}\n\n{}\n'.format(table.title, body)


def parse_table(text):
    return Table.from_dict(json.loads(text))


def benchmark_table(entries, title='Default parameters'):
    rows = [(e.name, e.stats.mean, e.stats.deviation, e.stats.best, e.stats.worst) for e in entries]
    return Table(title, ('Classifier', 'Average', 'Deviation', 'Best', 'Worst'), rows, 'Average')


def sweep_table(reports, title='One-dimensional analysis'):
    rows = [(r.label, r.mean_S, r.std_S, r.max_S) for r in reports]
    return Table(title, ('Parameter', '<S>', 'dS', 'max S'), rows)


def search_table(reports, title='Random configurations against the default'):
    rows = []
    for r in reports:
        imp = r.improvement
        if imp is None:
            rows.append((r.name, r.p_value, None, None, None))
        else:
            rows.append((r.name, r.p_value, imp.mean, imp.deviation, imp.maximum))
    return Table(title, ('Classifier', 'p-value', 'Mean', 'Deviation', 'Maximum'), rows, 'p-value')


def search_detail_table(report):
    rows = [(b.dataset, b.default_accuracy, b.accuracy, b.config_index, b.p_value) for b in report.per_dataset]
    return Table('{} per dataset'.format(report.name),
                 ('Dataset', 'Default', 'Best', 'Configuration', 'p-value'), rows)


def ranking_table(ranking, title='Best of the random configurations'):
    rows = [(e.rank, e.name, e.mean, e.deviation) for e in ranking]
    return Table(title, ('Rank', 'Classifier', 'Average', 'Deviation'), rows)
