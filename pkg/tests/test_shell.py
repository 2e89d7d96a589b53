import io
import json

import pytest

from sumfree_explorer.commands import EXIT_OK, EXIT_USAGE
from sumfree_explorer.shell import SumFreeXShell


@pytest.fixture
def shell(tmp_path, monkeypatch):
    monkeypatch.setenv('SUMFREEX_DATA_DIR', str(tmp_path))
    app = SumFreeXShell()
    app.stdout = io.StringIO()
    return app


def test_run_command(shell):
    assert shell.run_command('partitions', '5 --format json') == EXIT_OK
    assert json.loads(shell.stdout.getvalue())['count'] == 8


def test_do_methods(shell):
    shell.do_modulus('5 --format json')
    assert json.loads(shell.stdout.getvalue())['n'] == 5


def test_seed_setting(shell):
    assert shell._arguments('search', '5 2')[-2:] == ['--seed', '0']
    shell.seed = 7
    assert shell._arguments('search', '5 2')[-2:] == ['--seed', '7']
    assert shell._arguments('search', '5 2 --seed 3') == \
        ['search', '5', '2', '--seed', '3']


def test_usage_error_keeps_running(shell, capsys):
    assert shell.run_command('census', '') == EXIT_USAGE
    assert 'UsageError' in capsys.readouterr().err


def test_failing_command_reports_exit_code(shell, capsys):
    assert shell.run_command('census', '20 2') == 2
    captured = capsys.readouterr()
    assert 'LimitExceeded' in captured.err
