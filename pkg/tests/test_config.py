"""
Unit tests for config module.
"""

import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

from src.config import (CONFIG_ENV_VAR, AtpConfig, ConfigError, EngineConfig,
                        load_config)


class TestLoadConfig(unittest.TestCase):
    """Test cases for load_config."""

    def setUp(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test files."""
        shutil.rmtree(self.temp_dir)

    def _write(self, name, content):
        filepath = os.path.join(self.temp_dir, name)
        with open(filepath, 'w') as f:
            f.write(content if isinstance(content, str) else json.dumps(content))
        return filepath

    def test_default_file(self):
        """Test loading the shipped configuration."""
        with mock.patch.dict(os.environ, {}, clear=False):
            os.environ.pop(CONFIG_ENV_VAR, None)
            config = load_config()
        self.assertEqual(config.atp.prover_name, 'leo2')
        self.assertIsNone(config.atp.executable)
        self.assertEqual(config.search.max_states, 10_000)

    def test_explicit_file(self):
        """Test loading an explicit file with partial settings."""
        filepath = self._write('engine.json', {'search': {'max_states': 250}})
        config = load_config(filepath)
        self.assertEqual(config.search.max_states, 250)
        self.assertEqual(config.search.size_factor, 4)
        self.assertEqual(config.atp.args, ['{problem}'])

    def test_missing_explicit_file(self):
        """Test that a missing explicit path is an error."""
        with self.assertRaises(ConfigError):
            load_config(os.path.join(self.temp_dir, 'missing.json'))

    def test_missing_env_file_uses_defaults(self):
        """Test that a missing file named by the environment gives defaults."""
        missing = os.path.join(self.temp_dir, 'missing.json')
        with mock.patch.dict(os.environ, {CONFIG_ENV_VAR: missing}):
            config = load_config()
        self.assertEqual(config, EngineConfig())

    def test_env_var(self):
        """Test that the environment variable selects the file."""
        filepath = self._write('env.json', {'atp': {'prover_name': 'eprover'}})
        with mock.patch.dict(os.environ, {CONFIG_ENV_VAR: filepath}):
            config = load_config()
        self.assertEqual(config.atp.prover_name, 'eprover')

    def test_invalid_json(self):
        """Test that malformed JSON raises ConfigError."""
        filepath = self._write('broken.json', '{"atp": ')
        with self.assertRaises(ConfigError):
            load_config(filepath)

    def test_args_need_placeholder(self):
        """Test that prover arguments must mention the problem file."""
        filepath = self._write('args.json', {'atp': {'args': ['--auto']}})
        with self.assertRaises(ConfigError) as ctx:
            load_config(filepath)
        self.assertIn('{problem}', str(ctx.exception))

    def test_timeout_range(self):
        """Test that the timeout is bounded."""
        filepath = self._write('timeout.json', {'atp': {'timeout': 0}})
        with self.assertRaises(ConfigError):
            load_config(filepath)

    def test_negative_search_limit(self):
        """Test that search limits must be positive."""
        filepath = self._write('search.json', {'search': {'size_factor': 0}})
        with self.assertRaises(ConfigError):
            load_config(filepath)


class TestAtpConfig(unittest.TestCase):
    """Test cases for AtpConfig."""

    def test_defaults(self):
        """Test default prover settings."""
        config = AtpConfig()
        self.assertIsNone(config.executable)
        self.assertEqual(config.timeout, 60)


if __name__ == '__main__':
    unittest.main()
