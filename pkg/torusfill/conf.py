"""torusfill configuration module.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

    FUNCTIONS

setup_logging
parse_setting

    DATA

settings: dict-like object to handle settings.

"""

from platform import system
import os
from os.path import join as join_path
import json
import logging

IDENTIFIER = 'torusfill'

if 'TORUSFILL_CONF_DIR' in os.environ:
    CONF_DIR = os.environ['TORUSFILL_CONF_DIR']
elif system() == 'Windows':
    CONF_DIR = join_path(os.environ['APPDATA'], IDENTIFIER)
else:
    CONF_DIR = join_path(os.path.expanduser('~'), '.config', IDENTIFIER)
CONF = join_path(CONF_DIR, 'conf')

APPLICATION = 'torusfill'
VERSION = '0.1.0'
LOG_LEVELS = ('debug', 'info', 'warning', 'error')
OUTPUT_FORMATS = ('text', 'json')

log = logging.getLogger(__name__)

_defaults = {
    # searches
    'conjugator_bound': 50,
    'seq_budget': 30,
    # output
    'output_format': 'text',
    'log_level': 'warning',
    # mcgwords
    'moves_file': ''
}

_types = {
    # searches
    'conjugator_bound': int,
    'seq_budget': int,
    # output
    'output_format': str,
    'log_level': str,
    # mcgwords
    'moves_file': str
}

# extra checks on top of the type conversion
_valid = {
    'conjugator_bound': lambda v: v > 0,
    'seq_budget': lambda v: v > 0,
    'output_format': lambda v: v in OUTPUT_FORMATS,
    'log_level': lambda v: v in LOG_LEVELS
}


class _Formatter (logging.Formatter):
    """Formats records as 'level: message', like 'warning: can't ...'."""

    def format (self, record):
        return '{}: {}'.format(record.levelname.lower(), record.getMessage())


def setup_logging (level = None):
    """Install the console handler on the package logger.

setup_logging([level])

level: one of LOG_LEVELS; defaults to the 'log_level' setting.

Calling this more than once only changes the level.

"""
    if level is None:
        level = settings['log_level']
    root = logging.getLogger(IDENTIFIER)
    if not any(getattr(h, '_torusfill', False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(_Formatter())
        handler._torusfill = True
        root.addHandler(handler)
    root.setLevel(getattr(logging, level.upper()))


def parse_setting (k, s):
    """Convert a string to a value for the given setting.

Raises KeyError for unknown settings and ValueError for invalid values.

"""
    t = _types[k]
    v = t(s)
    if k in _valid and not _valid[k](v):
        raise ValueError('invalid value for {}: {!r}'.format(k, s))
    return v


class _SettingsManager (dict):
    """A dict subclass for handling settings.

Takes file to store settings in and a dict of default values for settings.  All
possible settings are assumed to be in this dict.  Setting a value may raise
TypeError or ValueError if the value is invalid.

To restore a setting to its default value, set it to None.

"""

    def __init__ (self, fn, defaults):
        self.fn = fn
        self.defaults = defaults
        settings = {}
        try:
            with open(self.fn) as f:
                settings = json.load(f)
        except IOError:
            pass
        except ValueError:
            log.warning('invalid settings file: \'%s\'', self.fn)
        if not isinstance(settings, dict):
            log.warning('invalid settings file: \'%s\'', self.fn)
            settings = {}
        settings = dict((k, settings.get(k, v)) for k, v in defaults.items())
        dict.__init__(self, settings)

    def __getitem__ (self, k):
        v = dict.__getitem__(self, k)
        try:
            v = _types[k](v)
            if k in _valid and not _valid[k](v):
                raise ValueError(v)
        except (KeyError, TypeError, ValueError):
            v = self.defaults[k]
        return v

    def __setitem__ (self, k, v):
        # restore to default if None
        if v is None:
            v = self.defaults[k]
        else:
            v = _types[k](v)
            if k in _valid and not _valid[k](v):
                raise ValueError('invalid value for {}: {!r}'.format(k, v))
            if v == self[k]:
                # no change
                return
        log.info('saving setting: \'%s\'', k)
        dict.__setitem__(self, k, v)
        try:
            os.makedirs(os.path.dirname(self.fn), exist_ok = True)
            with open(self.fn, 'w') as f:
                json.dump(self, f, indent = 4, sort_keys = True)
        except (IOError, OSError):
            log.warning('can\'t write to file: \'%s\'', self.fn)

    def items (self):
        return [(k, self[k]) for k in sorted(self)]


settings = _SettingsManager(CONF, _defaults)
