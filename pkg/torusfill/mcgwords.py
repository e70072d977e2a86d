"""torusfill Dehn twist word module: words in Dehn twists on the genus one
surface with two boundary components, and checked rewrites between them.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

The curves are a1, a2 and e, with e meeting each of a1 and a2 once, and the
boundary parallel curves d1 and d2.  A word is a tuple of Letters, read left to
right; positions in words and moves count from 1.

Words are written as whitespace-separated letters like 'a1^-6 e d1'.  Move
scripts are line-based: blank lines and anything after '#' are ignored, a line
'= <word>' is a checkpoint (the first one is the start word), and any other
line holds moves 'KIND@POS' or 'INSERT@POS:LETTER', where KIND is one of
COMMUTE, BRAID, EXPAND, CONTRACT, CENTRAL, REDUCE, INSERT.

    CLASSES

Letter
Move
MoveKind
Script
Verification
Positive
InvalidMove
WordFormatError
ScriptFormatError

    FUNCTIONS

intersection
parse_word
format_word
invert
free_reduce
apply_move
parse_script
format_script
load_script
load_shipped_script
verify_derivation
is_positive_factorization
homological_shadow

    DATA

CURVES: the curve names.
CHAIN: (a1 e a2)^4, the word the chain relation equates with d1 d2.

"""

from collections import namedtuple
from os.path import join as join_path
import logging
import re

from . import data_dir
from .ext import intmat

log = logging.getLogger(__name__)

SHIPPED_SCRIPT = join_path(data_dir, 'psi_minus4.moves')


class InvalidMove (ValueError):
    """Raised when a move doesn't apply.

Takes the move position and the reason, kept as attributes.

"""

    def __init__ (self, position, reason):
        self.position = position
        self.reason = reason
        ValueError.__init__(self, 'at {}: {}'.format(position, reason))


class WordFormatError (ValueError):
    pass


class ScriptFormatError (ValueError):
    pass


class MoveKind:
    COMMUTE = 'COMMUTE'
    BRAID = 'BRAID'
    EXPAND = 'EXPAND'
    CONTRACT = 'CONTRACT'
    CENTRAL = 'CENTRAL'
    REDUCE = 'REDUCE'
    INSERT = 'INSERT'
    ALL = (COMMUTE, BRAID, EXPAND, CONTRACT, CENTRAL, REDUCE, INSERT)


Letter = namedtuple('Letter', 'curve exp')
Move = namedtuple('Move', 'kind position arg', defaults = (None,))
Script = namedtuple('Script', 'start moves checkpoints marks')
Verification = namedtuple('Verification', 'verified step reason')
Positive = namedtuple('Positive', 'blocks')

CURVES = ('a1', 'a2', 'e', 'd1', 'd2')
CENTRAL_CURVES = ('d1', 'd2')
_meeting = {frozenset(('a1', 'e')), frozenset(('a2', 'e'))}

CHAIN = tuple(Letter(c, 1) for c in ('a1', 'e', 'a2') * 4)
CENTRAL_PAIR = (Letter('d1', 1), Letter('d2', 1))

# homology classes in the basis (a, b, d), with <a, b> = 1 and d central
_classes = {
    'a1': (1, 0, 0),
    'e': (0, 1, 0),
    'a2': (1, 0, 1),
    'd1': (0, 0, 1),
    'd2': (0, 0, -1)
}
_pairing = ((0, 1, 0), (-1, 0, 0), (0, 0, 0))

_letter_re = re.compile(r'^({})(?:\^([-+]?\d+))?$'.format('|'.join(CURVES)))
_move_re = re.compile(r'^([A-Z]+)@(\d+)(?::(\S+))?$')


def intersection (c1, c2):
    """Geometric intersection number of two of the curves."""
    for c in (c1, c2):
        if c not in CURVES:
            raise ValueError('unknown curve: {!r}'.format(c))
    return 1 if frozenset((c1, c2)) in _meeting else 0


def parse_word (text):
    """Parse a word like 'a1^-2 e d1'; powers are expanded to letters."""
    word = []
    for token in text.split():
        match = _letter_re.match(token.replace('−', '-'))
        if match is None:
            raise WordFormatError('unknown letter: {!r}'.format(token))
        curve, power = match.groups()
        k = 1 if power is None else int(power)
        word.extend([Letter(curve, 1 if k > 0 else -1)] * abs(k))
    return tuple(word)


def format_word (w):
    """Write a word with runs of a letter as powers."""
    if not w:
        return '1'
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = (j - i) * w[i].exp
        parts.append(w[i].curve if k == 1 else '{}^{}'.format(w[i].curve, k))
        i = j
    return ' '.join(parts)


def invert (w):
    return tuple(Letter(l.curve, -l.exp) for l in reversed(w))


def _check_span (w, p, n):
    if p < 1 or p + n - 1 > len(w):
        raise InvalidMove(p, 'needs {} letters from position {} in a word of '
                             'length {}'.format(n, p, len(w)))


def apply_move (w, mv):
    """Apply a rewrite move.

apply_move(w, mv) -> word

COMMUTE: swap the letters at p, p + 1, on curves that don't meet.
BRAID: x y x -> y x y at p for curves meeting once, all exponents of one sign.
EXPAND: d1 d2 at p -> (a1 e a2)^4, or the inverses.
CONTRACT: the reverse of EXPAND.
CENTRAL: swap the letters at p, p + 1 where one is on d1 or d2.
REDUCE: delete c^k c^-k at p.
INSERT: insert the letter mv.arg and its inverse before position p (p may be
        len(w) + 1).

Raises InvalidMove.

"""
    w = tuple(w)
    p = mv.position
    i = p - 1
    kind = mv.kind
    if kind == MoveKind.COMMUTE:
        _check_span(w, p, 2)
        x, y = w[i:i + 2]
        if intersection(x.curve, y.curve):
            raise InvalidMove(p, '{} and {} meet'.format(x.curve, y.curve))
        return w[:i] + (y, x) + w[i + 2:]
    elif kind == MoveKind.CENTRAL:
        _check_span(w, p, 2)
        x, y = w[i:i + 2]
        if x.curve not in CENTRAL_CURVES and y.curve not in CENTRAL_CURVES:
            raise InvalidMove(p, 'neither {} nor {} is central'.format(
                x.curve, y.curve))
        return w[:i] + (y, x) + w[i + 2:]
    elif kind == MoveKind.BRAID:
        _check_span(w, p, 3)
        x, y, z = w[i:i + 3]
        if x != z:
            raise InvalidMove(p, 'not of the form x y x')
        if intersection(x.curve, y.curve) != 1:
            raise InvalidMove(p, '{} and {} don\'t meet once'.format(
                x.curve, y.curve))
        if x.exp != y.exp:
            raise InvalidMove(p, 'exponents of different signs')
        return w[:i] + (y, x, y) + w[i + 3:]
    elif kind == MoveKind.EXPAND:
        _check_span(w, p, 2)
        pair = w[i:i + 2]
        if pair == CENTRAL_PAIR:
            chain = CHAIN
        elif pair == invert(CENTRAL_PAIR)[::-1]:
            chain = invert(CHAIN)
        else:
            raise InvalidMove(p, 'not d1 d2 or d1^-1 d2^-1')
        return w[:i] + chain + w[i + 2:]
    elif kind == MoveKind.CONTRACT:
        _check_span(w, p, len(CHAIN))
        chain = w[i:i + len(CHAIN)]
        if chain == CHAIN:
            pair = CENTRAL_PAIR
        elif chain == invert(CHAIN):
            pair = invert(CENTRAL_PAIR)[::-1]
        else:
            raise InvalidMove(p, 'not (a1 e a2)^4 or its inverse')
        return w[:i] + pair + w[i + len(CHAIN):]
    elif kind == MoveKind.REDUCE:
        _check_span(w, p, 2)
        x, y = w[i:i + 2]
        if x.curve != y.curve or x.exp != -y.exp:
            raise InvalidMove(p, 'not a letter and its inverse')
        return w[:i] + w[i + 2:]
    elif kind == MoveKind.INSERT:
        if not 1 <= p <= len(w) + 1:
            raise InvalidMove(p, 'position not in 1..{}'.format(len(w) + 1))
        try:
            letter = parse_word(mv.arg or '')
        except WordFormatError as e:
            raise InvalidMove(p, str(e))
        if len(letter) != 1:
            raise InvalidMove(p, 'INSERT needs a single letter')
        return w[:i] + letter + invert(letter) + w[i:]
    else:
        raise InvalidMove(p, 'unknown move: {!r}'.format(kind))


def _format_move (mv):
    s = '{}@{}'.format(mv.kind, mv.position)
    return s if mv.arg is None else '{}:{}'.format(s, mv.arg)


def parse_script (text):
    """Parse a move script.

parse_script(text) -> Script

Script.start: the first checkpoint.
Script.moves: the moves, in order.
Script.checkpoints: every checkpoint word, the start included.
Script.marks: for each checkpoint, the number of moves before it.

Raises ScriptFormatError.

"""
    moves = []
    checkpoints = []
    marks = []
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if line.startswith('='):
            try:
                checkpoints.append(parse_word(line[1:]))
            except WordFormatError as e:
                raise ScriptFormatError('line {}: {}'.format(n, e))
            marks.append(len(moves))
            continue
        if not checkpoints:
            raise ScriptFormatError('line {}: moves before the start word'
                                    .format(n))
        for token in line.split():
            match = _move_re.match(token)
            if match is None or match.group(1) not in MoveKind.ALL:
                raise ScriptFormatError('line {}: bad move {!r}'.format(
                    n, token))
            kind, pos, arg = match.groups()
            moves.append(Move(kind, int(pos), arg))
    if not checkpoints:
        raise ScriptFormatError('no start word')
    return Script(checkpoints[0], tuple(moves), tuple(checkpoints),
                  tuple(marks))


def format_script (script):
    """Write a Script in the format parse_script reads, one move a line."""
    lines = []
    marks = list(zip(script.marks, script.checkpoints))
    for i in range(len(script.moves) + 1):
        while marks and marks[0][0] == i:
            lines.append('= ' + format_word(marks.pop(0)[1]))
        if i < len(script.moves):
            lines.append(_format_move(script.moves[i]))
    return '\n'.join(lines) + '\n'


def load_script (fn):
    """Read a Script from a file."""
    with open(fn) as f:
        return parse_script(f.read())


def load_shipped_script ():
    """The rewrite of psi_-4 = d1 d2 a1^-6 a2^-2 into a positive word."""
    return load_script(SHIPPED_SCRIPT)


def verify_derivation (start, script, checkpoints):
    """Replay moves, checking the words passed through.

verify_derivation(start, script, checkpoints) -> Verification

script: sequence of Move.
checkpoints: words that must appear, in this order, among start and the words
             after each move.

Verification.verified is a bool; otherwise Verification.step is the 1-based
number of the move that failed (or None if only checkpoints were missed) and
Verification.reason says why.

"""
    checkpoints = [tuple(c) for c in checkpoints]
    w = tuple(start)
    reached = 0

    def reach (w, reached):
        if reached < len(checkpoints) and w == checkpoints[reached]:
            log.debug('checkpoint %d: %s', reached + 1, format_word(w))
            return reached + 1
        return reached

    reached = reach(w, reached)
    for step, mv in enumerate(script, 1):
        try:
            w = apply_move(w, mv)
        except InvalidMove as e:
            return Verification(False, step, '{}: {}'.format(
                _format_move(mv), e.reason))
        reached = reach(w, reached)
    if reached < len(checkpoints):
        return Verification(False, None, 'checkpoint {} not reached: {}'
                            .format(reached + 1,
                                    format_word(checkpoints[reached])))
    return Verification(True, None, None)


def free_reduce (w):
    """Cancel adjacent c^k c^-k pairs until none are left."""
    reduced = []
    for letter in w:
        if (reduced and reduced[-1].curve == letter.curve and
                reduced[-1].exp == -letter.exp):
            reduced.pop()
        else:
            reduced.append(letter)
    return tuple(reduced)


def _block_at (w, i, length):
    """Whether w[i:i + length] is freely u c u^-1, c a right-handed twist."""
    r = free_reduce(w[i:i + length])
    if len(r) % 2 == 0:
        return False
    j = len(r) // 2
    return r[j].exp == 1 and r[j + 1:] == invert(r[:j])


def is_positive_factorization (w):
    """Split a word into conjugates of right-handed twists.

is_positive_factorization(w) -> Positive

Positive.blocks: subwords of w, each freely equal to some u c u^-1, one per
                 twist, which multiply to w; preferring the longest block
                 first at each point.  Returns None if there
                 is no such split; the group element may still be positive.

"""
    w = tuple(w)
    failed = set()

    def split (i):
        if i == len(w):
            return []
        if i in failed:
            return None
        for length in range(len(w) - i - (len(w) - i + 1) % 2, 0, -2):
            if _block_at(w, i, length):
                rest = split(i + length)
                if rest is not None:
                    return [w[i:i + length]] + rest
        failed.add(i)
        return None

    blocks = split(0)
    if blocks is None:
        return None
    return Positive(tuple(blocks))


def _twist_matrix (letter):
    # x -> x - exp <x, c> c
    c = _classes[letter.curve]
    oc = [sum(_pairing[r][k] * c[k] for k in range(3)) for r in range(3)]
    return [[int(r == s) - letter.exp * c[r] * oc[s] for s in range(3)]
            for r in range(3)]


def homological_shadow (w):
    """Action on H_1 of the letters of w, multiplied in written order.

homological_shadow(w) -> 3 x 3 matrix, on the basis (a, b, d)

Equal group elements have equal shadows; the converse fails.

"""
    m = intmat.identity(3)
    for letter in w:
        m = intmat.mat_mul(m, _twist_matrix(letter))
    return m
