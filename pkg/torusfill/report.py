"""torusfill report module: the results the command line prints.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

A report holds plain data only (dicts, lists, strings, ints, bools, None), in a
fixed key order, so the same request always gives byte-identical output.

    CLASSES

Report
MissingCitation

    FUNCTIONS

plain
make_report
has_unknown
to_json
from_json
to_text

    DATA

SCHEMA: path of the JSON schema of to_json's output.

"""

from collections import namedtuple
from os.path import join as join_path
import json

from . import data_dir
from .sl2z import Answer, Mat2, format_matrix

SCHEMA = join_path(data_dir, 'report.schema.json')


class MissingCitation (ValueError):
    """Raised for a report with a Yes or No but no citation."""
    pass


Report = namedtuple('Report', 'command result citations warnings')


def plain (value):
    """Convert results to JSON-compatible data, keeping field order."""
    if isinstance(value, Mat2):
        return format_matrix(value)
    if hasattr(value, '_asdict'):
        return dict((k, plain(v)) for k, v in value._asdict().items())
    if isinstance(value, dict):
        return dict((str(k), plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple, set, frozenset)):
        return [plain(v) for v in value]
    return value


def _answers (value):
    if isinstance(value, str):
        if value in (Answer.YES, Answer.NO, Answer.UNKNOWN):
            yield value
    elif isinstance(value, dict):
        for v in value.values():
            yield from _answers(v)
    elif isinstance(value, list):
        for v in value:
            yield from _answers(v)


def make_report (command, result, citations = (), warnings = ()):
    """Build a Report.

make_report(command, result, citations = (), warnings = ()) -> Report

Raises MissingCitation if result claims Yes or No without citations.

"""
    result = plain(result)
    citations = list(citations)
    if not citations and any(a != Answer.UNKNOWN for a in _answers(result)):
        raise MissingCitation('{}: Yes/No without a citation'.format(command))
    return Report(command, result, citations, list(warnings))


def has_unknown (report):
    return Answer.UNKNOWN in _answers(report.result)


def to_json (report):
    s = json.dumps(report._asdict(), indent = 2, ensure_ascii = False)
    return s + '\n'


def from_json (text):
    data = json.loads(text)
    return Report(data['command'], data['result'], data['citations'],
                  data['warnings'])


def _text_lines (prefix, value):
    if isinstance(value, dict):
        for k, v in value.items():
            yield from _text_lines('{}.{}'.format(prefix, k) if prefix else k,
                                   v)
    elif isinstance(value, list) and any(isinstance(v, (dict, list))
                                         for v in value):
        for i, v in enumerate(value, 1):
            yield from _text_lines('{}[{}]'.format(prefix, i), v)
    elif isinstance(value, list):
        yield '{}: {}'.format(prefix, ','.join(str(v) for v in value))
    else:
        yield '{}: {}'.format(prefix, '-' if value is None else value)


def to_text (report):
    """Render as 'key: value' lines, then citations and warnings."""
    lines = list(_text_lines('', report.result))
    lines.extend('citation: {}'.format(c) for c in report.citations)
    lines.extend('warning: {}'.format(w) for w in report.warnings)
    return '\n'.join(lines) + '\n'
