import csv
import json

import pytest

from twophoton import __version__
from twophoton.__main__ import cli, format_value


def read_output(path):
    with open(path) as stream:
        lines = stream.read().splitlines()
    return lines[0], lines[1:]


def test_format_value():
    assert format_value(0.1) == '0.10000000000000001'
    assert format_value(3) == '3'
    assert format_value(None) == ''
    assert format_value(('a', 'b')) == 'a;b'


def test_baselines_csv(tmp_path):
    out = tmp_path / 'baselines.csv'
    code = cli(['baselines', '--g', '0.3', '--q', '1/4', '--e-max', '3.2', '--out', str(out)])
    assert code == 0
    meta, body = read_output(out)
    assert meta.startswith('# twophoton %s config=' % __version__)
    rows = list(csv.DictReader(body))
    # poles at 1.6 (n + 1/4) - 1/2 up to 3.2
    assert [row['n'] for row in rows] == ['0', '1', '2']
    assert float(rows[0]['pole_energy']) == pytest.approx(-0.1)
    assert rows[0]['is_baseline'] == 'True'


def test_metadata_line_carries_config(tmp_path):
    out = tmp_path / 'variational.csv'
    assert cli(['variational', '--g', '0.2', '--out', str(out)]) == 0
    meta, _ = read_output(out)
    _, _, _, digest, payload = meta.split(' ', 4)
    assert digest.startswith('config=') and len(digest) == len('config=') + 16
    assert json.loads(payload)['g'] == 0.2


def test_empty_window_gives_header_only(tmp_path):
    out = tmp_path / 'gcurve.csv'
    code = cli(['gcurve', '--g', '0.2', '--e-min', '1', '--e-max', '1', '--out', str(out)])
    assert code == 0
    _, body = read_output(out)
    assert body == ['g,q,E,nearest_pole,G_plus,G_minus,converged']


def test_gcurve_marks_poles(tmp_path):
    out = tmp_path / 'gcurve.csv'
    # g = 0: poles at E = 0, 2, 4 for q = 1/4, so the grid hits one
    code = cli(['gcurve', '--g', '0', '--q', '1/4', '--e-min', '-1', '--e-max', '1',
                '--points', '4', '--out', str(out)])
    assert code == 0
    _, body = read_output(out)
    rows = list(csv.DictReader(body))
    assert [float(row['E']) for row in rows] == [-1.0, -0.5, 0.0, 0.5, 1.0]
    at_pole = rows[2]
    assert at_pole['converged'] == 'False'
    assert at_pole['G_plus'] == 'nan'
    assert float(rows[1]['G_minus']) == 0.0


def test_approx_json_to_stdout(capsys):
    code = cli(['approx', '--g', '0', '--q', '1/4', '--parity', '-1', '--order', '2',
                '--format', 'json'])
    assert code == 0
    output = capsys.readouterr().out
    meta, payload = output.split('\n', 1)
    assert meta.startswith('# twophoton')
    rows = json.loads(payload)
    assert [row['energy'] for row in rows] == pytest.approx([-0.5, 2.5, 3.5])
    assert {row['source'] for row in rows} == {'approx-2'}


def test_invalid_coupling_exit_code(tmp_path):
    out = tmp_path / 'bad.csv'
    assert cli(['baselines', '--g', '0.5', '--out', str(out)]) == 1
    _, body = read_output(out)
    assert body == ['g,q,beta,n,pole_energy,is_baseline']


def test_invalid_config_exit_code():
    assert cli(['spectrum', '--g-steps', '0']) == 1


def test_compare_row():
    code = cli(['compare', '--g', '0', '--order', '0', '--order', '4'])
    assert code == 0


def test_unknown_command():
    with pytest.raises(SystemExit):
        cli(['plot'])
