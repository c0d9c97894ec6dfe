"""Tests for configuration loading and validation."""

import os
import pytest
from unittest.mock import patch


class TestConfigValidation:
    """Test configuration validation logic."""

    def test_env_or_default_treats_blank_values_as_unset(self):
        """Test blank env vars fall back to their defaults."""
        from src.config import _env_or_default

        with patch.dict(os.environ, {"CHASEGATE_EMPTY": "   "}, clear=False):
            assert _env_or_default("CHASEGATE_EMPTY", "x") == "x"

        with patch.dict(os.environ, {"CHASEGATE_SET": " y "}, clear=False):
            assert _env_or_default("CHASEGATE_SET", "x") == "y"

    def test_env_int_accepts_underscores(self):
        """Test integer env vars may use digit separators."""
        from src.config import _env_int

        with patch.dict(os.environ, {"CHASEGATE_N": "1_000"}, clear=False):
            assert _env_int("CHASEGATE_N", 5) == 1000
        with patch.dict(os.environ, {"CHASEGATE_N": ""}, clear=False):
            assert _env_int("CHASEGATE_N", None) is None

    def test_env_int_rejects_garbage(self):
        """Test a non-integer value names the variable."""
        from src.config import _env_int

        with patch.dict(os.environ, {"CHASEGATE_N": "lots"}, clear=False):
            with pytest.raises(ValueError, match="CHASEGATE_N"):
                _env_int("CHASEGATE_N", 5)

    def test_validate_caps_defaults(self):
        """Test the shipped defaults are valid."""
        from src.config import Config

        assert Config.validate_caps() is True

    @pytest.mark.parametrize("name", ["MAX_ATOMS", "TYPE_BUDGET", "BOUND_CEILING", "MAX_STEPS"])
    def test_validate_caps_rejects_non_positive(self, name):
        """Test a zero cap or budget is reported by name."""
        from src.config import Config

        with patch.object(Config, name, 0):
            with pytest.raises(ValueError, match=name):
                Config.validate_caps()

    def test_chase_caps_follow_config(self):
        """Test default caps come from MAX_ATOMS and MAX_STEPS."""
        from src.config import Config

        with patch.object(Config, "MAX_ATOMS", 40), patch.object(Config, "MAX_STEPS", None):
            caps = Config.chase_caps()
        assert (caps.max_atoms, caps.max_steps) == (40, 400)

    def test_ensure_data_dir(self, tmp_path):
        """Test the data directory is created on demand."""
        from src.config import Config

        target = tmp_path / "nested" / "data"
        with patch.object(Config, "DATA_DIR", target):
            Config.ensure_data_dir()
        assert target.is_dir()
