import json
import numpy as np
import pytest

from tumorage.cli import main
from tumorage.data.rdt_io import write_rdt_csv
from tumorage.models.rdt_mixture_model import default_model
from tumorage.utils import yaml_load


def _read(path):
    with open(path, 'r') as f:
        return f.read()


def test_fit(tmp_path, capsys):
    """Test cli: fit recovers the parameters of synthetic data"""
    samples = default_model().sample(np.random.default_rng(0), 5000)
    data = tmp_path / 'rdt.csv'
    write_rdt_csv(str(data), samples)
    out = tmp_path / 'fit'
    assert main(['fit', str(data), '--out', str(out)]) == 0

    result = json.loads(capsys.readouterr().out)
    assert result['p_negative'] == pytest.approx(0.35, abs=0.03)
    assert result['lambda_pos'] == pytest.approx(0.79, rel=0.08)
    assert result['lambda_neg'] == pytest.approx(5.0, rel=0.1)
    assert result['ks_distance'] < 0.03
    assert result['n'] == 5000
    assert json.loads(_read(out / 'fit.json')) == result
    assert _read(out / 'cdf.csv').startswith('rdt,model_cdf,empirical_cdf\n')
    manifest = yaml_load(str(out / 'manifest.yml'))['manifest']
    assert manifest['command'] == 'fit'
    assert set(manifest['outputs']) == {'fit.json', 'cdf.csv'}


def test_fit_errors(tmp_path):
    """Test cli: fit exit codes for unusable input"""
    data = tmp_path / 'rdt.csv'
    data.write_text('')
    assert main(['fit', str(data), '--out', str(tmp_path / 'a')]) == 2
    data.write_text('rdt\n')
    assert main(['fit', str(data), '--out', str(tmp_path / 'b')]) == 4
    data.write_text('rdt\n1.0\nx\n')
    assert main(['fit', str(data), '--out', str(tmp_path / 'c')]) == 4
    data.write_bytes(b'\xff\xferdt\n1.0\n')
    assert main(['fit', str(data), '--out', str(tmp_path / 'f')]) == 4
    assert main(['fit', str(tmp_path / 'missing.csv'), '--out', str(tmp_path / 'g')]) == 4
    data.write_text('rdt\n-1.0\n1.0\n2.0\n')
    assert main(['fit', str(data), '--out', str(tmp_path / 'd')]) == 4
    assert main(['fit', str(data), '--out', str(tmp_path / 'e'), '--force_yml', 'fit:min_per_side=1']) == 0


def test_table_reproducible(tmp_path):
    """Test cli: same seed, same table for any thread count and from the manifest"""
    args = ['table', '--seed', '42', '--n', '300']
    assert main(args + ['--out', str(tmp_path / 'a')]) == 0
    assert main(args + ['--out', str(tmp_path / 'b')]) == 0
    assert main(args + ['--out', str(tmp_path / 'c'), '--threads', '4']) == 0
    table = _read(tmp_path / 'a' / 'table.csv')
    assert table == _read(tmp_path / 'b' / 'table.csv')
    assert table == _read(tmp_path / 'c' / 'table.csv')

    lines = table.splitlines()
    assert lines[0] == 'diameter_cm,p5,p25,p50,p75,p95,n_crossings'
    assert len(lines) == 15
    assert [line.split(',')[0] for line in lines[1:4]] == ['0.3', '0.4', '0.5']

    assert main(['table', '-opt', str(tmp_path / 'a' / 'manifest.yml'), '--out', str(tmp_path / 'd')]) == 0
    assert _read(tmp_path / 'd' / 'table.csv') == table

    assert main(['table', '--seed', '43', '--n', '300', '--out', str(tmp_path / 'e')]) == 0
    assert _read(tmp_path / 'e' / 'table.csv') != table


def test_table_compare(tmp_path):
    """Test cli: table --compare writes the comparison with the published table"""
    out = tmp_path / 'run'
    assert main(['table', '--n', '100', '--compare', '--out', str(out)]) == 0
    lines = _read(out / 'comparison.csv').splitlines()
    assert len(lines) == 15
    assert 'delta_p50' in lines[0]
    assert 'comparison.csv' in yaml_load(str(out / 'manifest.yml'))['manifest']['outputs']


def test_query(tmp_path, capsys):
    """Test cli: query a saved table"""
    out = tmp_path / 'run'
    assert main(['table', '--n', '300', '--out', str(out)]) == 0
    table = json.loads(_read(out / 'table.json'))
    row = [r for r in table['rows'] if r['diameter_cm'] == 2.5][0]
    capsys.readouterr()

    assert main(['query', '2.5', '--table', str(out / 'table.json')]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['median'] == row['p50']
    assert result['iqr'] == [row['p25'], row['p75']]
    assert result['ci90'] == [row['p5'], row['p95']]

    assert main(['query', '2.5', '3.0', '--table', str(out / 'table.json')]) == 0
    results = json.loads(capsys.readouterr().out)
    assert [r['diameter_cm'] for r in results] == [2.5, 3.0]

    # no diameter given: query:diameters of the options
    assert main(['query', '--table', str(out / 'table.json')]) == 0
    assert json.loads(capsys.readouterr().out)['diameter_cm'] == 5.0

    assert main(['query', '25', '--table', str(out / 'table.json')]) == 3
    assert main(['query', '2.5', '--table', str(out / 'table.json'), '--seed', '1']) == 2
    with pytest.raises(SystemExit) as excinfo:
        main(['query', '-1', '--table', str(out / 'table.json')])
    assert excinfo.value.code == 2

    # unreadable tables are input errors
    assert main(['query', '2.5', '--table', str(tmp_path / 'missing.json')]) == 4
    corrupt = tmp_path / 'corrupt.json'
    corrupt.write_text('{"rows": [')
    assert main(['query', '2.5', '--table', str(corrupt)]) == 4
    corrupt.write_bytes(b'\xff\xfe')
    assert main(['query', '2.5', '--table', str(corrupt)]) == 4


def test_query_simulates(tmp_path, capsys):
    """Test cli: query without a table simulates one"""
    assert main(['query', '2.5', '--n', '100', '--grid', '1,2.5,6', '--out', str(tmp_path / 'run')]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result['ci90'][0] <= result['median'] <= result['ci90'][1]


def test_sensitivity(tmp_path):
    """Test cli: sensitivity sweep with only the baseline"""
    out = tmp_path / 'run'
    args = ['sensitivity', '--rhos', '0', '--n', '100', '--grid', '1,2.5']
    assert main(args + ['--force_yml', 'sensitivity:reference_diameters=[1.0, 2.5]', '--out', str(out)]) == 0
    lines = _read(out / 'sensitivity.csv').splitlines()
    assert len(lines) == 3
    for line in lines[1:]:
        cells = line.split(',')
        assert cells[1] == '0'
        assert float(cells[4]) == 0.0 and float(cells[5]) == 0.0
    assert json.loads(_read(out / 'sensitivity.json'))['rhos'] == [0.0]

    # default reference diameters, only 2.5 cm lies on this grid
    assert main(args + ['--out', str(tmp_path / 'default')]) == 0
    assert len(_read(tmp_path / 'default' / 'sensitivity.csv').splitlines()) == 2
    assert main(args + ['--force_yml', 'sensitivity:reference_diameters=[3.0]', '--out', str(tmp_path / 'off')]) == 2

    with pytest.raises(SystemExit) as excinfo:
        main(['sensitivity', '--rhos', '1.5', '--out', str(tmp_path / 'bad')])
    assert excinfo.value.code == 2


def test_simulate(tmp_path):
    """Test cli: simulate exports trajectories and sizes at fixed ages"""
    out = tmp_path / 'run'
    assert main(['simulate', '--n', '20', '--export-n', '5', '--ages', '1,5', '--out', str(out)]) == 0
    lines = _read(out / 'ensemble.csv').splitlines()
    assert lines[0] == 'history_id,t_years,volume_ml,diameter_cm'
    assert {int(line.split(',')[0]) for line in lines[1:]} == set(range(5))
    assert len(_read(out / 'size_given_age.csv').splitlines()) == 3


def test_invalid_configuration(tmp_path):
    """Test cli: invalid settings exit with 2"""
    assert main(['table', '--v0', '5000', '--out', str(tmp_path / 'a')]) == 2
    assert main(['table', '--grid', '0.1,1', '--out', str(tmp_path / 'b')]) == 2
    assert main(['table', '--force_yml', 'simulation:unknown=1', '--out', str(tmp_path / 'c')]) == 2
    with pytest.raises(SystemExit) as excinfo:
        main(['table', '--rho', '1'])
    assert excinfo.value.code == 2


def test_output_dir_from_environment(tmp_path, monkeypatch):
    """Test cli: default output directory under TUMORAGE_OUTPUT_DIR"""
    monkeypatch.setenv('TUMORAGE_OUTPUT_DIR', str(tmp_path))
    assert main(['table', '--n', '50', '--grid', '1,2']) == 0
    assert (tmp_path / 'tumorage_table' / 'table.csv').exists()


@pytest.mark.slow
def test_default_table_independent_of_threads(tmp_path):
    """Test cli: default size table with seed 42 is byte-identical on 1 and 8 threads"""
    assert main(['table', '--seed', '42', '--threads', '1', '--out', str(tmp_path / 'one')]) == 0
    assert main(['table', '--seed', '42', '--threads', '8', '--out', str(tmp_path / 'eight')]) == 0
    table = _read(tmp_path / 'one' / 'table.csv')
    assert table == _read(tmp_path / 'eight' / 'table.csv')
    assert len(table.splitlines()) == 15
    manifest = yaml_load(str(tmp_path / 'one' / 'manifest.yml'))
    assert manifest['simulation']['n_histories'] == 10000
