import json
import os

import pytest

from clfbench.start import run


@pytest.fixture(scope='module')
def family_dirs(tmp_path_factory):
    root = tmp_path_factory.mktemp('families')
    dirs = {}
    for n_features in (2, 3):
        out = str(root / 'DB{}F'.format(n_features))
        code = run(['gen', '-F', str(n_features), '--classes', '3', '--per-class', '10', '--count', '2',
                    '--alpha', '3', '--seed', '1', '--out', out])
        assert code == 0
        dirs[n_features] = out
    return dirs


def read(path):
    with open(path, 'rb') as f:
        return f.read()


def test_gen_writes_family(family_dirs):
    names = sorted(os.listdir(family_dirs[2]))
    assert 'ds_000.csv' in names and 'ds_001.csv' in names
    with open(os.path.join(family_dirs[2], 'ds_000.csv')) as f:
        lines = f.read().splitlines()
    assert lines[0] == 'f1,f2,label' and len(lines) == 31
    manifest = json.loads(read(os.path.join(family_dirs[2], 'family.json')))
    assert manifest['n_datasets'] == 2
    assert manifest['run_config']['command'] == 'gen'
    assert manifest['run_config']['generator']['seed'] == manifest['spec']['seed'] == 1
    assert 'jobs' not in manifest['run_config']


def test_gen_alpha_preset_conflict(tmp_path):
    assert run(['gen', '-F', '2', '--alpha', '2', '--alpha-preset', 'high', '--out', str(tmp_path / 'x')]) == 1
    assert run(['gen', '-F', '2', '--alpha-preset', 'huge', '--out', str(tmp_path / 'x')]) == 1


def test_gen_invalid_spec(tmp_path):
    assert run(['gen', '-F', '1', '--out', str(tmp_path / 'x')]) == 2


def test_bench_to_stdout(family_dirs, capsys):
    code = run(['bench', '--data', family_dirs[2], '--classifiers', 'knn,zero_r', '--folds', '2'])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['protocol'] == 'default_benchmark'
    assert doc['cv'] == {'k': 2, 'seed': 0}
    assert doc['generator']['n_features'] == 2
    assert len(doc['family']) == 64
    entries = doc['results']['entries']
    assert [e['classifier'] for e in entries] == ['knn', 'zero_r']
    means = [e['stats']['mean'] for e in entries]
    assert means == sorted(means, reverse=True)


def test_bench_writes_file_and_echoes_table(family_dirs, tmp_path, capsys):
    out = str(tmp_path / 'bench.json')
    code = run(['bench', '--data', family_dirs[2], '--classifiers', 'knn,zero_r', '--folds', '2',
                '--format', 'csv', '--set', 'knn.K=3', '--out', out])
    assert code == 0
    stdout = capsys.readouterr().out
    assert stdout.startswith('Classifier,Average,Deviation,Best,Worst\n')
    doc = json.loads(read(out))
    knn = next(e for e in doc['results']['entries'] if e['classifier'] == 'knn')
    assert knn['params']['K'] == 3
    assert doc['run_config']['overrides'] == ['knn.K=3']
    assert 'jobs' not in doc['run_config']


def test_reruns_are_byte_identical(family_dirs, tmp_path, monkeypatch):
    out = str(tmp_path / 'bench.json')
    argv = ['bench', '--data', family_dirs[2], '--classifiers', 'knn,naive_bayes', '--folds', '2', '--out', out]
    assert run(argv) == 0
    first = read(out)
    monkeypatch.setenv('CLFBENCH_JOBS', '2')
    assert run(argv) == 0
    assert read(out) == first


def test_bad_jobs_variable(family_dirs, monkeypatch):
    monkeypatch.setenv('CLFBENCH_JOBS', 'many')
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn']) == 1


def test_exit_codes(family_dirs, tmp_path):
    assert run(['bench', '--data', str(tmp_path / 'missing'), '--classifiers', 'knn']) == 2
    assert run(['bench', '--data', family_dirs[2], '--bogus']) == 1
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'bayesnet']) == 1
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn', '--folds', '1']) == 1
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn', '--folds', '20']) == 2
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn', '--set', 'svm.C=2']) == 1
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn', '--format', 'xlsx']) == 1
    assert run(['frobnicate']) == 1
    assert run([]) == 1


def test_help_exits_cleanly(capsys):
    assert run(['--help']) == 0
    assert 'bench' in capsys.readouterr().out


def test_run_config_file_overrides_flags(family_dirs, tmp_path, capsys):
    rc = tmp_path / 'run.json'
    rc.write_text(json.dumps({'folds': 3, 'classifiers': ['zero_r']}))
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn', '--folds', '2', '--config', str(rc)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc['cv']['k'] == 3
    assert [e['classifier'] for e in doc['results']['entries']] == ['zero_r']
    rc.write_text(json.dumps({'unknown_key': 1}))
    assert run(['bench', '--data', family_dirs[2], '--config', str(rc)]) == 1


def test_sweep_command(family_dirs, capsys):
    code = run(['sweep', '--data', family_dirs[2], '--classifiers', 'svm', '--folds', '2', '-p', 'G',
                '--context', 'kernel=rbf'])
    assert code == 0
    reports = json.loads(capsys.readouterr().out)['results']['reports']
    assert len(reports) == 1
    assert reports[0]['parameter'] == 'G' and reports[0]['context'] == {'kernel': 'rbf'}


def test_search_command(family_dirs, tmp_path, capsys):
    out = str(tmp_path / 'search.json')
    code = run(['search', '--data', family_dirs[2], '--classifiers', 'knn,naive_bayes', '--folds', '2',
                '--configs', '3', '--seed', '5', '--out', out, '--format', 'markdown'])
    assert code == 0
    assert '### Best of the random configurations' in capsys.readouterr().out
    doc = json.loads(read(out))
    assert [r['rank'] for r in doc['results']['ranking']] == [1, 2]
    assert all(r['n_configs'] == 3 for r in doc['results']['reports'])


def test_search_zero_r_is_usage_error(family_dirs):
    assert run(['search', '--data', family_dirs[2], '--classifiers', 'zero_r', '--folds', '2',
                '--configs', '2']) == 1


def test_curve_command(family_dirs, capsys):
    code = run(['curve', '--data', family_dirs[2], family_dirs[3], '--classifiers', 'knn,zero_r', '--folds', '2'])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc['family']) == {'2', '3'}
    series = doc['results']['series']
    assert [p['F'] for p in series[0]['points']] == [2, 3]


def test_curve_missing_feature_count(family_dirs):
    assert run(['curve', '--data', family_dirs[2], '--classifiers', 'knn', '--folds', '2',
                '--features', '2,5']) == 2


def test_report_command(family_dirs, tmp_path):
    results = str(tmp_path / 'bench.json')
    assert run(['bench', '--data', family_dirs[2], '--classifiers', 'knn,zero_r', '--folds', '2',
                '--out', results]) == 0
    rendered = tmp_path / 'rendered'
    assert run(['report', '--results', results, '--out', str(rendered), '--format', 'csv,markdown,json',
                '--bins', '4']) == 0
    names = set(os.listdir(str(rendered)))
    assert {'benchmark.csv', 'benchmark.md', 'benchmark.json', 'hist_accuracy_knn.csv',
            'hist_accuracy_zero_r.csv'} <= names
    hist = (rendered / 'hist_accuracy_knn.csv').read_text().splitlines()
    assert hist[0] == 'bin_lo,bin_hi,count' and len(hist) == 5


def test_report_rejects_unknown_protocol(tmp_path):
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps({'protocol': 'grid', 'results': {}}))
    assert run(['report', '--results', str(bad)]) == 1
    bad.write_text('{not json')
    assert run(['report', '--results', str(bad)]) == 1


@pytest.mark.parametrize('doc', [
    {'protocol': 'default_benchmark', 'results': {}},
    {'protocol': 'default_benchmark'},
    {'protocol': 'sweep', 'results': {'reports': 'none'}},
    {'protocol': 'random_search', 'results': {'reports': []}},
    {'protocol': 'feature_curve', 'results': {'series': [{'classifier': 'knn'}]}},
    ['default_benchmark'],
])
def test_report_rejects_malformed_results(doc, tmp_path):
    bad = tmp_path / 'bad.json'
    bad.write_text(json.dumps(doc))
    assert run(['report', '--results', str(bad)]) == 2


def test_schemas_command(capsys):
    assert run(['schemas']) == 0
    doc = json.loads(capsys.readouterr().out)
    assert {s['classifier'] for s in doc['schemas']} == {
        'knn', 'naive_bayes', 'logistic', 'c45', 'cart', 'random_forest', 'svm', 'mlp', 'zero_r'}
