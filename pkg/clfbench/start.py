import argparse
import json
import os
import sys

from .config import Config
from .dataset import GeneratorSpec, DistributionSpec, gen_family, save_family, load_family, load_family_spec
from .models import all_schemas
from .report import FORMATS, render_table, benchmark_table, sweep_table, search_table, search_detail_table, \
    ranking_table, delta_histogram, accuracy_histograms, curve_data
from .trainerflow import build_flow
from .trainerflow.base_flow import family_fingerprint
from .trainerflow.results import BenchmarkEntry, SweepReport, SearchReport, RankingEntry, CurveSeries
from .utils import set_random_seed, dump_json, load_json, get_logger, set_verbosity
from .utils.errors import ClfBenchError, DatasetFormatError, UsageError

logger = get_logger(__name__)

PROTOCOLS = {
    'bench': 'default_benchmark',
    'sweep': 'sweep',
    'search': 'random_search',
    'curve': 'feature_curve',
}

EXTENSIONS = {'csv': 'csv', 'json': 'json', 'markdown': 'md'}

JOBS_ENV = 'CLFBENCH_JOBS'


def clfbench(args, data):
    r"""Run the protocol ``args.protocol`` on a family (or a dict of families)."""
    set_random_seed(args.seed)
    flow = build_flow(args, args.protocol)
    return flow.train(data)


class ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError('{}: {}'.format(self.prog, message))


def _comma_list(text):
    return [item.strip() for item in text.split(',') if item.strip()]


def _int_list(text):
    try:
        return [int(v) for v in _comma_list(text)]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma-separated integers, got {!r}'.format(text))


def _common(parser):
    parser.add_argument('--config', default=None, help='JSON run-config file; its keys override the flags')
    parser.add_argument('--jobs', '-j', type=int, default=None, help='worker processes (default ${})'.format(JOBS_ENV))
    parser.add_argument('--verbose', '-v', action='count', default=0)


def _evaluation(parser, many=False):
    parser.add_argument('--data', '-d', required=True, nargs='+' if many else None, help='family directory')
    parser.add_argument('--out', '-o', default=None, help='results JSON (standard output when omitted)')
    parser.add_argument('--classifiers', '-c', type=_comma_list, default=None, help='comma-separated classifier ids')
    parser.add_argument('--set', dest='overrides', action='append', default=None, metavar='CLF.PARAM=VALUE')
    parser.add_argument('--folds', type=int, default=None)
    parser.add_argument('--cv-seed', type=int, default=None)
    parser.add_argument('--format', dest='formats', type=_comma_list, default=None,
                        help='tables echoed to standard output: {}'.format(', '.join(FORMATS)))
    parser.add_argument('--progress', action='store_true', default=None, help='progress bars on standard error')
    _common(parser)


def build_parser():
    parser = ArgumentParser(prog='clfbench', description='Classifier comparison on synthetic Gaussian families.')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    gen = sub.add_parser('gen', help='generate a dataset family')
    gen.add_argument('--features', '-F', type=int, required=True)
    gen.add_argument('--classes', type=int, default=None)
    gen.add_argument('--per-class', type=int, default=None)
    gen.add_argument('--alpha', type=float, default=None)
    gen.add_argument('--alpha-preset', default=None, help='low, medium or high')
    gen.add_argument('--count', type=int, default=None, help='datasets in the family')
    gen.add_argument('--seed', type=int, default=None)
    gen.add_argument('--f-sigma', type=DistributionSpec.parse, default=None, metavar='KIND:A,B')
    gen.add_argument('--f-c', type=DistributionSpec.parse, default=None, metavar='KIND:A,B')
    gen.add_argument('--out', '-o', required=True, help='family directory')
    _common(gen)

    bench = sub.add_parser('bench', help='default-parameter benchmark')
    _evaluation(bench)

    sweep = sub.add_parser('sweep', help='one-dimensional parameter analysis')
    _evaluation(sweep)
    sweep.add_argument('--parameter', '-p', default=None, help='parameter to sweep (all when omitted)')
    sweep.add_argument('--context', action='append', default=None, metavar='PARAM=VALUE')

    search = sub.add_parser('search', help='random parameter search and best-of-random ranking')
    _evaluation(search)
    search.add_argument('--configs', dest='n_configs', type=int, default=None)
    search.add_argument('--seed', type=int, default=None)

    curve = sub.add_parser('curve', help='default accuracy against the feature count')
    _evaluation(curve, many=True)
    curve.add_argument('--features', type=_int_list, default=None, help='feature counts that must be present')

    report = sub.add_parser('report', help='re-render a stored results file')
    report.add_argument('--results', '-r', required=True)
    report.add_argument('--out', '-o', default=None, help='directory of rendered files')
    report.add_argument('--format', dest='formats', type=_comma_list, default=None)
    report.add_argument('--bins', type=int, default=None)
    _common(report)

    schemas = sub.add_parser('schemas', help='write the parameter schemas of every classifier')
    schemas.add_argument('--out', '-o', default=None)
    _common(schemas)
    return parser


def _jobs_from_env():
    value = os.environ.get(JOBS_ENV)
    if value is None or value == '':
        return None
    try:
        return int(value)
    except ValueError:
        raise UsageError('{} must be an integer, got {!r}'.format(JOBS_ENV, value))


def _run_file(path):
    if path is None:
        return {}
    try:
        values = load_json(path)
    except json.JSONDecodeError as e:
        raise UsageError('{}: not valid JSON ({})'.format(path, e))
    if not isinstance(values, dict):
        raise UsageError('{}: a run-config file holds one JSON object'.format(path))
    return values


def _parse_context(items):
    context = {}
    for item in items or ():
        name, sep, value = item.partition('=')
        if not sep or not name.strip():
            raise UsageError('cannot parse --context {!r}, expected PARAM=VALUE'.format(item))
        context[name.strip()] = value.strip()
    return context


def make_run_config(args, config):
    r"""ini defaults, then ``CLFBENCH_JOBS``, then flags, then the ``--config`` file."""
    rc = config.run_config(args.command, PROTOCOLS.get(args.command))
    env_jobs = _jobs_from_env()
    if env_jobs is not None:
        rc.jobs = env_jobs
    flags = {}
    for name in ('out', 'classifiers', 'overrides', 'folds', 'cv_seed', 'formats', 'progress', 'jobs',
                 'parameter', 'n_configs', 'seed', 'features', 'bins'):
        value = getattr(args, name, None)
        if value is not None:
            flags[name] = value
    if getattr(args, 'data', None) is not None:
        flags['data'] = args.data if isinstance(args.data, list) else [args.data]
    if getattr(args, 'context', None):
        flags['context'] = _parse_context(args.context)
    flags['verbose'] = args.verbose
    rc.update(flags)
    rc.update(_run_file(args.config))
    for fmt in rc.formats:
        if fmt not in FORMATS:
            raise UsageError('unknown table format {!r}; choose from {}'.format(fmt, ', '.join(FORMATS)))
    return rc


def _document(rc, generator, family, results):
    return {
        'protocol': rc.protocol,
        'run_config': rc.to_dict(),
        'generator': generator,
        'family': family,
        'cv': {'k': rc.folds, 'seed': rc.cv_seed},
        'results': results,
    }


def _spec_dict(directory):
    spec = load_family_spec(directory)
    return None if spec is None else spec.to_dict()


def _emit(rc, doc):
    if rc.out is None:
        sys.stdout.write(dump_json(doc))
        return
    dump_json(doc, rc.out)
    logger.info('results written to %s', rc.out)
    for name, text in render_document(doc, rc.formats, rc.bins).items():
        if not name.startswith('hist_') and not name.endswith('.json'):
            sys.stdout.write(text + '\n')


def cmd_gen(args, config):
    rc = make_run_config(args, config)
    alpha = args.alpha
    if args.alpha_preset is not None:
        if alpha is not None:
            raise UsageError('--alpha and --alpha-preset are mutually exclusive')
        alpha = config.alpha_preset(args.alpha_preset)
    spec = config.generator_spec(args.features, n_classes=args.classes, per_class=args.per_class, alpha=alpha,
                                 f_sigma=args.f_sigma, f_c=args.f_c, n_datasets=args.count, seed=args.seed)
    rc.generator = spec.to_dict()
    rc.update(_run_file(args.config))
    spec = GeneratorSpec.from_dict(rc.generator).validate()
    family = gen_family(spec, rc.jobs)
    save_family(family, rc.out, run_config=rc.to_dict())
    logger.info('%s written to %s', spec.family_name, rc.out)
    return 0


def cmd_bench(args, config):
    rc = make_run_config(args, config)
    family = load_family(rc.data[0])
    entries = clfbench(rc, family)
    _emit(rc, _document(rc, _spec_dict(rc.data[0]), family_fingerprint(family),
                        {'entries': [e.to_dict() for e in entries]}))
    return 0


def cmd_sweep(args, config):
    rc = make_run_config(args, config)
    family = load_family(rc.data[0])
    reports = clfbench(rc, family)
    _emit(rc, _document(rc, _spec_dict(rc.data[0]), family_fingerprint(family),
                        {'reports': [r.to_dict() for r in reports]}))
    return 0


def cmd_search(args, config):
    rc = make_run_config(args, config)
    family = load_family(rc.data[0])
    reports, ranking = clfbench(rc, family)
    _emit(rc, _document(rc, _spec_dict(rc.data[0]), family_fingerprint(family),
                        {'reports': [r.to_dict() for r in reports], 'ranking': [e.to_dict() for e in ranking]}))
    return 0


def cmd_curve(args, config):
    rc = make_run_config(args, config)
    families, generators, fingerprints = {}, {}, {}
    for directory in rc.data:
        family = load_family(directory)
        n_features = family[0].n_features
        if n_features in families:
            raise UsageError('two families with {} features: {}'.format(n_features, directory))
        families[n_features] = family
        generators[str(n_features)] = _spec_dict(directory)
        fingerprints[str(n_features)] = family_fingerprint(family)
    series = clfbench(rc, families)
    _emit(rc, _document(rc, generators, fingerprints, {'series': [s.to_dict() for s in series]}))
    return 0


def _records(results, key, record_cls):
    r"""``results[key]`` parsed into ``record_cls`` instances; a malformed section is a data error."""
    section = results.get(key)
    if not isinstance(section, list):
        raise DatasetFormatError('results document has no {!r} list'.format(key))
    try:
        return [record_cls.from_dict(record) for record in section]
    except ClfBenchError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise DatasetFormatError('malformed {!r} record in results document ({!r})'.format(key, e))


def render_document(doc, formats=('markdown',), bins=20):
    r"""
    Every table and figure of a results document, as ``{file name: text}``.

    The protocol recorded in the document decides what is rendered. A document
    whose results section does not match its protocol raises
    :class:`DatasetFormatError`.
    """
    if not isinstance(doc, dict):
        raise DatasetFormatError('results document is not a JSON object')
    protocol = doc.get('protocol')
    results = doc.get('results')
    if protocol in PROTOCOLS.values() and not isinstance(results, dict):
        raise DatasetFormatError('results document has no results object')
    tables = {}
    figures = {}
    if protocol == 'default_benchmark':
        entries = _records(results, 'entries', BenchmarkEntry)
        tables['benchmark'] = benchmark_table(entries)
        for classifier, h in accuracy_histograms(entries, bins).items():
            figures['hist_accuracy_{}.csv'.format(classifier)] = h.to_csv()
    elif protocol == 'sweep':
        tables['sweep'] = sweep_table(_records(results, 'reports', SweepReport))
    elif protocol == 'random_search':
        reports = _records(results, 'reports', SearchReport)
        tables['search'] = search_table(reports)
        tables['ranking'] = ranking_table(_records(results, 'ranking', RankingEntry))
        for report in reports:
            tables['search_{}'.format(report.classifier)] = search_detail_table(report)
            figures['hist_delta_{}.csv'.format(report.classifier)] = delta_histogram(report, bins).to_csv()
    elif protocol == 'feature_curve':
        figures['curve.csv'] = curve_data(_records(results, 'series', CurveSeries))
    else:
        raise UsageError('results file has unknown protocol {!r}'.format(protocol))
    rendered = {}
    for name, table in tables.items():
        for fmt in formats:
            rendered['{}.{}'.format(name, EXTENSIONS[fmt])] = render_table(table, fmt)
    rendered.update(figures)
    return rendered


def cmd_report(args, config):
    rc = make_run_config(args, config)
    try:
        doc = load_json(args.results)
    except json.JSONDecodeError as e:
        raise UsageError('{}: not valid JSON ({})'.format(args.results, e))
    rendered = render_document(doc, rc.formats, rc.bins)
    if rc.out is None:
        for name, text in rendered.items():
            if not name.startswith('hist_'):
                sys.stdout.write(text + '\n')
        return 0
    os.makedirs(rc.out, exist_ok=True)
    for name, text in rendered.items():
        with open(os.path.join(rc.out, name), 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
    logger.info('%d files written to %s', len(rendered), rc.out)
    return 0


def cmd_schemas(args, config):
    doc = {'schemas': [s.to_dict() for s in all_schemas()]}
    if args.out is None:
        sys.stdout.write(dump_json(doc))
    else:
        dump_json(doc, args.out)
    return 0


COMMANDS = {
    'gen': cmd_gen,
    'bench': cmd_bench,
    'sweep': cmd_sweep,
    'search': cmd_search,
    'curve': cmd_curve,
    'report': cmd_report,
    'schemas': cmd_schemas,
}


def run(argv=None, config_file=None):
    r"""
    Execute one command line and return its exit code.

    0 on success, 1 on a usage error, 2 on a data or I/O error and 3 on a
    numerical failure; failures print one diagnostic line on standard error.
    """
    try:
        args = build_parser().parse_args(argv)
        set_verbosity(args.verbose)
        return COMMANDS[args.command](args, Config(config_file))
    except ClfBenchError as e:
        sys.stderr.write('clfbench: error: {}\n'.format(e))
        return e.exit_code
    except OSError as e:
        sys.stderr.write('clfbench: error: {}\n'.format(e))
        return 2
    except SystemExit as e:
        return 0 if e.code is None else e.code


def main():
    sys.exit(run())
