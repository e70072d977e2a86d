import itertools
import random

import pytest

from torusfill import mcgwords
from torusfill.ext import intmat
from torusfill.mcgwords import (CHAIN, InvalidMove, Letter, Move, MoveKind,
                                Verification, apply_move, format_word,
                                homological_shadow, parse_word)

SIMPLE_SCRIPT = """
= a1 a2 e
COMMUTE@1
= a2 a1 e
"""


def w (text):
    return parse_word(text)


def test_parse_word ():
    assert w('a1^-2 e d1') == (Letter('a1', -1), Letter('a1', -1),
                               Letter('e', 1), Letter('d1', 1))
    assert w('a2^0') == ()
    assert w('a1^−1') == (Letter('a1', -1),)
    with pytest.raises(mcgwords.WordFormatError):
        w('b1')
    with pytest.raises(mcgwords.WordFormatError):
        w('a1^x')


def test_format_word ():
    assert format_word(()) == '1'
    assert format_word(w('a1 a1 a1^-1 e')) == 'a1^2 a1^-1 e'
    text = 'd1 d2 a1^-6 a2^-2'
    assert format_word(w(text)) == text


def test_intersection ():
    assert mcgwords.intersection('a1', 'e') == 1
    assert mcgwords.intersection('e', 'a2') == 1
    assert mcgwords.intersection('a1', 'a2') == 0
    assert mcgwords.intersection('d1', 'e') == 0
    with pytest.raises(ValueError):
        mcgwords.intersection('a3', 'e')


def test_invert ():
    assert mcgwords.invert(w('a1 e^-1 d2')) == w('d2^-1 e a1^-1')


@pytest.mark.parametrize('before, move, after', [
    ('a1 a2 e', Move(MoveKind.COMMUTE, 1), 'a2 a1 e'),
    ('e a1 e', Move(MoveKind.BRAID, 1), 'a1 e a1'),
    ('a2^-1 e^-1 a2^-1', Move(MoveKind.BRAID, 1), 'e^-1 a2^-1 e^-1'),
    ('e d1 d2', Move(MoveKind.EXPAND, 2), 'e ' + format_word(CHAIN)),
    ('d1^-1 d2^-1', Move(MoveKind.EXPAND, 1),
     format_word(mcgwords.invert(CHAIN))),
    (format_word(CHAIN), Move(MoveKind.CONTRACT, 1), 'd1 d2'),
    ('a1 d2', Move(MoveKind.CENTRAL, 1), 'd2 a1'),
    ('e a1 a1^-1', Move(MoveKind.REDUCE, 2), 'e'),
    ('a1', Move(MoveKind.INSERT, 2, 'e'), 'a1 e e^-1'),
    ('', Move(MoveKind.INSERT, 1, 'd1^-1'), 'd1^-1 d1'),
])
def test_apply_move (before, move, after):
    assert apply_move(w(before), move) == w(after)


@pytest.mark.parametrize('before, move', [
    ('a1 e', Move(MoveKind.COMMUTE, 1)),
    ('a1 a2 a1', Move(MoveKind.BRAID, 1)),
    ('a1 e^-1 a1', Move(MoveKind.BRAID, 1)),
    ('a1 e a2', Move(MoveKind.BRAID, 1)),
    ('d2 d1', Move(MoveKind.EXPAND, 1)),
    ('a1 e', Move(MoveKind.CENTRAL, 1)),
    ('a1 a1', Move(MoveKind.REDUCE, 1)),
    ('a1', Move(MoveKind.INSERT, 3, 'e')),
    ('a1', Move(MoveKind.INSERT, 1, 'e a1')),
    ('a1 a2', Move(MoveKind.COMMUTE, 2)),
    ('a1 a2', Move('SWAP', 1)),
])
def test_apply_move_invalid (before, move):
    with pytest.raises(InvalidMove) as info:
        apply_move(w(before), move)
    assert info.value.position == move.position


_LETTERS = [Letter(c, e) for c in mcgwords.CURVES for e in (1, -1)]


def _random_word (rng):
    chunks = [CHAIN, mcgwords.invert(CHAIN), mcgwords.CENTRAL_PAIR,
              w('a1 e a1'), w('e^-1 a2^-1 e^-1')]
    word = ()
    for i in range(rng.randint(1, 6)):
        if rng.random() < .25:
            word += rng.choice(chunks)
        else:
            letter = rng.choice(_LETTERS)
            word += (letter,) if rng.random() < .8 else (
                letter, Letter(letter.curve, -letter.exp))
    return word


def _all_moves (word):
    for p in range(1, len(word) + 2):
        for kind in MoveKind.ALL:
            if kind == MoveKind.INSERT:
                for c in mcgwords.CURVES:
                    yield Move(kind, p, c)
            else:
                yield Move(kind, p)


def test_moves_keep_shadow ():
    cases = [
        ('a1 e a1', Move(MoveKind.BRAID, 1)),
        ('a1^-1 e^-1 a1^-1', Move(MoveKind.BRAID, 1)),
        ('a1 a2', Move(MoveKind.COMMUTE, 1)),
        ('d1 d2', Move(MoveKind.EXPAND, 1)),
        ('d1 e', Move(MoveKind.CENTRAL, 1)),
        ('a2 e', Move(MoveKind.INSERT, 2, 'a1')),
    ]
    for before, move in cases:
        start = w(before)
        assert (homological_shadow(apply_move(start, move)) ==
                homological_shadow(start))


def test_shadow ():
    assert homological_shadow(()) == intmat.identity(3)
    assert homological_shadow(CHAIN) == intmat.identity(3)
    assert homological_shadow(w('d1 d2')) == intmat.identity(3)
    assert homological_shadow(w('a1')) != intmat.identity(3)
    shadow = homological_shadow(w('a1 e a1^-1'))
    assert intmat.det(shadow) == 1


def test_shipped_script ():
    script = mcgwords.load_shipped_script()
    assert script.start == w('d1 d2 a1^-6 a2^-2')
    assert len(script.checkpoints) == 4
    assert script.marks == (0, 11, 14, 20)
    v = mcgwords.verify_derivation(script.start, script.moves,
                                   script.checkpoints)
    assert v == Verification(True, None, None)


def test_shipped_script_final_word_positive ():
    script = mcgwords.load_shipped_script()
    final = script.start
    for mv in script.moves:
        final = apply_move(final, mv)
    assert final == script.checkpoints[-1]
    pos = mcgwords.is_positive_factorization(final)
    assert [format_word(b) for b in pos.blocks] == [
        'a1^-2 e a1^2', 'a2', 'e', 'a1 a2 a1 e a1^-1 a2^-1 a1^-1']
    product = tuple(l for b in pos.blocks for l in b)
    assert product == final
    shadows = [homological_shadow(c) for c in script.checkpoints]
    assert all(s == shadows[0] for s in shadows)


def test_verify_reports_failed_step ():
    script = mcgwords.load_shipped_script()
    moves = list(script.moves)
    moves[8] = Move(MoveKind.EXPAND, 1)
    v = mcgwords.verify_derivation(script.start, moves, script.checkpoints)
    assert not v.verified
    assert v.step == 9
    assert v.reason.startswith('EXPAND@1')


def test_verify_missing_checkpoint ():
    v = mcgwords.verify_derivation(w('a1 a2'), [Move(MoveKind.COMMUTE, 1)],
                                   [w('a1 a2'), w('a1 a2')])
    assert v.verified is False
    assert v.step is None
    assert v.reason == 'checkpoint 2 not reached: a1 a2'


def test_verify_empty ():
    assert mcgwords.verify_derivation(w('e'), [], [w('e')]).verified


def test_positive_factorization ():
    assert mcgwords.is_positive_factorization(()) == mcgwords.Positive(())
    assert mcgwords.is_positive_factorization(w('d1 d2 a1^-6 a2^-2')) is None
    pos = mcgwords.is_positive_factorization(w('e a1 a2 a1^-1 e'))
    assert [format_word(b) for b in pos.blocks] == ['e', 'a1 a2 a1^-1', 'e']
    assert mcgwords.is_positive_factorization(w('a1 e^-1')) is None


def test_parse_script ():
    script = mcgwords.parse_script(SIMPLE_SCRIPT + 'INSERT@1:e  # note\n')
    assert script.start == w('a1 a2 e')
    assert script.moves == (Move(MoveKind.COMMUTE, 1, None),
                            Move(MoveKind.INSERT, 1, 'e'))
    assert script.marks == (0, 1)
    again = mcgwords.parse_script(mcgwords.format_script(script))
    assert again == script


def test_load_script (tmp_path):
    fn = tmp_path / 'steps.moves'
    fn.write_text(SIMPLE_SCRIPT)
    script = mcgwords.load_script(str(fn))
    v = mcgwords.verify_derivation(script.start, script.moves,
                                   script.checkpoints)
    assert v.verified


@pytest.mark.parametrize('text', [
    'COMMUTE@1\n= a1 a2',
    '= a1 a2\nSWAP@1',
    '= a1 a2\nCOMMUTE@x',
    '= a1 b2',
    '# nothing\n',
])
def test_parse_script_bad (text):
    with pytest.raises(mcgwords.ScriptFormatError):
        mcgwords.parse_script(text)


def test_every_valid_move_keeps_shadow ():
    rng = random.Random(77)
    applied = set()
    for i in range(200):
        word = _random_word(rng)
        shadow = homological_shadow(word)
        for mv in _all_moves(word):
            try:
                after = apply_move(word, mv)
            except InvalidMove:
                continue
            applied.add(mv.kind)
            assert homological_shadow(after) == shadow, (word, mv)
    assert applied == set(MoveKind.ALL)


@pytest.mark.parametrize('x, y', [
    (x, y) for x, y in itertools.permutations(mcgwords.CURVES, 2)
    if mcgwords.intersection(x, y) == 1
])
@pytest.mark.parametrize('exp', [1, -1])
def test_braid_keeps_shadow (x, y, exp):
    word = (Letter(x, exp), Letter(y, exp), Letter(x, exp))
    after = apply_move(word, Move(MoveKind.BRAID, 1))
    assert after == (Letter(y, exp), Letter(x, exp), Letter(y, exp))
    assert homological_shadow(after) == homological_shadow(word)


def test_free_reduce ():
    assert mcgwords.free_reduce(w('a1 e e^-1 a1^-1 d1')) == w('d1')
    assert mcgwords.free_reduce(w('a1 a1')) == w('a1 a1')
    assert mcgwords.free_reduce(()) == ()


def _final_word ():
    script = mcgwords.load_shipped_script()
    return script.checkpoints[-1]


def _prefix_positions (blocks):
    # 1-based positions inside each block's conjugating prefix, the slot just
    # before the twist included
    start = 0
    for block in blocks:
        j = (len(block) - 1) // 2
        for p in range(start + 1, start + j + 2):
            yield p
        start += len(block)


def test_positive_factorization_ignores_insert_in_prefix ():
    final = _final_word()
    blocks = mcgwords.is_positive_factorization(final).blocks
    positions = list(_prefix_positions(blocks))
    assert positions
    for p in positions:
        for c in mcgwords.CURVES:
            for letter in (c, c + '^-1'):
                word = apply_move(final, Move(MoveKind.INSERT, p, letter))
                pos = mcgwords.is_positive_factorization(word)
                assert pos is not None, (p, letter)
                assert len(pos.blocks) == len(blocks)
                assert tuple(l for b in pos.blocks for l in b) == word


def test_positive_factorization_ignores_reduce_in_prefix ():
    final = _final_word()
    blocks = mcgwords.is_positive_factorization(final).blocks
    for p in _prefix_positions(blocks):
        # x y y^-1 x^-1 in the prefix, then cancel the inner pair
        word = apply_move(final, Move(MoveKind.INSERT, p, 'e'))
        word = apply_move(word, Move(MoveKind.INSERT, p + 1, 'a2'))
        assert len(mcgwords.is_positive_factorization(word).blocks) == 4
        word = apply_move(word, Move(MoveKind.REDUCE, p + 1))
        assert len(mcgwords.is_positive_factorization(word).blocks) == 4
        word = apply_move(word, Move(MoveKind.REDUCE, p))
        assert word == final


def test_positive_factorization_unreduced_prefix ():
    pos = mcgwords.is_positive_factorization(w('a1 e e^-1 a2 a1^-1'))
    assert [format_word(b) for b in pos.blocks] == ['a1 e e^-1 a2 a1^-1']
    assert mcgwords.is_positive_factorization(w('a1 e e^-1 a1^-1')) is None
