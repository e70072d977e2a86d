import os
import sys
import tempfile

import pytest

# settings must not touch the real configuration directory
os.environ['TORUSFILL_CONF_DIR'] = tempfile.mkdtemp(prefix = 'torusfill-')
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from torusfill import conf


@pytest.fixture
def settings_file (tmp_path):
    return str(tmp_path / 'conf')


@pytest.fixture
def fresh_settings (monkeypatch, settings_file):
    """Replace the shared settings with an empty store in a temporary file."""
    s = conf._SettingsManager(settings_file, conf._defaults)
    monkeypatch.setattr(conf, 'settings', s)
    from torusfill import cli
    monkeypatch.setattr(cli, 'settings', s)
    return s
