#!/usr/bin/env python3
"""
Test suite for settings, error codes, worker distribution and table emission
"""

import json
import os
import sys
from unittest.mock import patch

import pytest

# Add the project root to the path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from quadzeros import errors
from quadzeros.config import Settings, load_settings
from quadzeros.emit import parse_csv, render
from quadzeros.parallel import ordered_map, worker_count


def _square(x):
    return x * x


class TestSettings:
    """QUADZEROS_* environment handling"""

    def test_defaults(self):
        with patch.dict(os.environ, {}, clear=True):
            settings = load_settings()
        assert settings == Settings()
        assert settings.m_cap == 60
        assert settings.m_max_cap == 512

    def test_environment_overrides(self):
        env = {'QUADZEROS_THREADS': '4', 'QUADZEROS_TOL': '1e-12', 'QUADZEROS_LOG_FILE': ''}
        with patch.dict(os.environ, env):
            settings = load_settings()
        assert settings.threads == 4
        assert settings.tol == 1e-12
        assert settings.log_file is None

    def test_invalid_environment(self):
        with patch.dict(os.environ, {'QUADZEROS_GRID': '1'}):
            with pytest.raises(errors.InvalidParams):
                load_settings()
        with patch.dict(os.environ, {'QUADZEROS_THREADS': 'many'}):
            with pytest.raises(errors.InvalidParams):
                load_settings()


class TestErrors:
    """Exit codes carried by the exception hierarchy"""

    def test_exit_codes(self):
        assert errors.InvalidParams("x").exit_code == 2
        assert errors.ConditionViolated("x").exit_code == 2
        assert errors.PreconditionFailed("x").exit_code == 2
        assert errors.BranchAmbiguity("x").exit_code == 4
        assert errors.RootAccuracyError("x").exit_code == 4

    def test_hierarchy(self):
        for cls in (errors.ZeroPolynomial, errors.NotIsolating, errors.FactorizationMismatch, errors.WitnessSearchFailed):
            assert issubclass(cls, errors.QuadZerosError)
            assert not issubclass(cls, errors.InvalidParams)


class TestOrderedMap:
    """Results keep input order"""

    def test_serial(self):
        assert ordered_map(_square, range(5), workers=1) == [0, 1, 4, 9, 16]

    def test_processes(self):
        items = list(range(50))
        assert ordered_map(_square, items, workers=2) == [x * x for x in items]

    def test_worker_count(self):
        assert worker_count(3) == 3
        assert worker_count(0) == 1
        with patch.dict(os.environ, {'QUADZEROS_THREADS': '2'}):
            assert worker_count() == 2


class TestEmit:
    """CSV and JSON tables"""

    def setup_method(self):
        self.rows = [{'m': 1, 'z': 0.1}, {'m': 2, 'z': -1 / 3}]

    def test_csv_header_and_summary(self):
        text = render('interval', self.rows, 'csv', summary={'endpoint': '-0.1'})
        lines = text.splitlines()
        assert lines[0] == "# quadzeros-v1 interval"
        assert lines[1] == "# endpoint=-0.1"
        assert lines[2] == "m,z"

    def test_csv_floats_round_trip(self):
        command, summary, frame = parse_csv(render('density', self.rows, 'csv', summary={'max_gap': 1}))
        assert command == 'density'
        assert summary == {'max_gap': '1'}
        assert frame['z'][1] == -1 / 3

    def test_json(self):
        payload = json.loads(render('witness', [{'w': 1 + 2j}], 'json', config={'a': '-3'}))
        assert payload['rows'][0]['w'] == [1.0, 2.0]
        assert payload['config'] == {'a': '-3'}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render('gen', self.rows, 'xml')

    def test_missing_header(self):
        with pytest.raises(ValueError):
            parse_csv("m,z\n1,2\n")
