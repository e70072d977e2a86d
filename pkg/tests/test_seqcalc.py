import itertools
import random

import pytest

from torusfill import seqcalc, sl2z
from torusfill.seqcalc import BlockForm, BlowupWitness
from torusfill.sl2z import I, Mat2, S, T


def _sequences (max_sum, canonical = True):
    """Sequences of hyperbolic shape with sum at most max_sum."""
    for total in range(3, max_sum + 1):
        for d in seqcalc._compositions(total):
            if not seqcalc.is_hyperbolic_shape(d):
                continue
            if canonical and d != seqcalc.canonical_rotation(d):
                continue
            yield d


@pytest.fixture
def rng ():
    return random.Random(77)


def test_parse_seq ():
    assert seqcalc.parse_seq('5,2,2,3') == (5, 2, 2, 3)
    assert seqcalc.parse_seq('−1,0') == (-1, 0)
    with pytest.raises(seqcalc.SequenceFormatError):
        seqcalc.parse_seq('5,x')
    assert seqcalc.format_seq((3, 2, 2)) == '3,2,2'


def test_eval_A ():
    assert seqcalc.eval_A(()) == I
    assert seqcalc.eval_A((3,)) == Mat2(3, 1, -1, 0)
    assert seqcalc.eval_A((3, 2)) == Mat2(5, 2, -3, -1)
    assert seqcalc.eval_A((0, 0)) == -I
    assert seqcalc.eval_A((5,)) == sl2z.power(T, -5) * S


def test_hyperbolic_shape ():
    assert seqcalc.is_hyperbolic_shape((3, 2))
    assert not seqcalc.is_hyperbolic_shape((2, 2, 2))
    assert not seqcalc.is_hyperbolic_shape((3, 1))
    assert not seqcalc.is_hyperbolic_shape(())


def test_trace_of_hyperbolic_shape ():
    for d in _sequences(12, canonical = False):
        assert seqcalc.eval_A(d).trace() >= 3


def test_rotations ():
    assert seqcalc.rotate((1, 2, 3), 1) == (2, 3, 1)
    assert seqcalc.rotate((1, 2, 3), -1) == (3, 1, 2)
    assert seqcalc.cyclic_equivalent((3, 2, 2), (2, 3, 2))
    assert seqcalc.cyclic_equivalent((3, 2, 2), (2, 2, 3))
    assert not seqcalc.cyclic_equivalent((3, 2), (3, 2, 2))
    assert not seqcalc.cyclic_equivalent((3, 2, 4), (4, 2, 3))
    assert seqcalc.canonical_rotation((2, 3, 2, 4)) == (3, 2, 4, 2)
    with pytest.raises(seqcalc.NotHyperbolicShape):
        seqcalc.canonical_rotation((2, 2))


def test_rotation_is_conjugation ():
    for d in _sequences(10):
        A = seqcalc.eval_A(d)
        for r in range(len(d)):
            B = seqcalc.eval_A(seqcalc.rotate(d, r))
            X = seqcalc.eval_A(d[:r]).inverse()
            assert X * B == A * X


@pytest.mark.parametrize('d, blocks, text', [
    ((5, 2, 2, 3), ((2, 2), (0, 0)), '5,2×2,3'),
    ((3,), ((0, 0),), '3'),
    ((2, 3), ((0, 1),), '3,2'),
    ((4, 2, 3, 2, 2), ((1, 1), (0, 2)), '4,2,3,2×2'),
])
def test_parse_blocks (d, blocks, text):
    form = seqcalc.parse_blocks(d)
    assert form == BlockForm(blocks)
    assert form.s == len(blocks)
    assert seqcalc.format_blocks(form) == text
    assert seqcalc.cyclic_equivalent(form.sequence(), d)


def test_parse_blocks_bad ():
    with pytest.raises(seqcalc.NotHyperbolicShape):
        seqcalc.parse_blocks((2, 2))
    with pytest.raises(seqcalc.NotHyperbolicShape):
        seqcalc.parse_blocks((3, 1))


@pytest.mark.parametrize('d, expected', [
    ((5,), (3, 2, 2)),
    ((8,), (3, 2, 2, 2, 2, 2)),
    ((3,), (3,)),
    ((3, 2), (4,)),
    ((5, 2, 2, 3), (3, 5, 2, 2)),
    ((4, 3), (3, 2, 3)),
])
def test_rho (d, expected):
    assert seqcalc.rho(d) == expected


def test_rho_involution ():
    for d in _sequences(12):
        assert seqcalc.cyclic_equivalent(seqcalc.rho(seqcalc.rho(d)), d)


def test_rho_is_inverse_class ():
    # M_{-A(rho(d))} is M_{-A(d)} with its orientation reversed, and reversing
    # the base direction takes the monodromy to its inverse
    for d in _sequences(12):
        A = -seqcalc.eval_A(d)
        B = -seqcalc.eval_A(seqcalc.rho(d))
        X = sl2z.conjugacy_witness_search(A.inverse(), B, 50)
        assert X is not None, seqcalc.format_seq(d)
        assert X * A.inverse() == B * X


def test_j_twist_does_not_reverse_orientation ():
    # J B^-1 J^-1 is an orientation-preserving change of fibre coordinates, so
    # it can't stand for the reversed bundle: for d = (5) it fixes -A(5)
    A = -seqcalc.eval_A((5,))
    assert sl2z.J_twist(A) == A
    B = -seqcalc.eval_A(seqcalc.rho((5,)))
    assert sl2z.conjugacy_witness_search(A, B, 50) is None
    assert sl2z.bundles_diffeomorphic(A, B).answer == sl2z.Answer.NO


def _reverse_is_rho (d):
    return seqcalc.canonical_rotation(tuple(reversed(d))) == seqcalc.rho(d)


def test_j_twist_misses_reversal ():
    # every d with entry sum <= 12 where -A(rho(d)) is not conjugate to
    # J (-A(d))^-1 J^-1 = -A(reversed d)
    failing = []
    for d in _sequences(12):
        A = -seqcalc.eval_A(seqcalc.rho(d))
        B = sl2z.J_twist(-seqcalc.eval_A(d))
        X = sl2z.conjugacy_witness_search(B, A, 50)
        if _reverse_is_rho(d):
            assert X is not None, seqcalc.format_seq(d)
        else:
            assert X is None, seqcalc.format_seq(d)
            failing.append(d)
    assert [d for d in failing if sum(d) <= 7] == [
        (4,), (3, 2), (5,), (6,), (3, 2, 2), (3, 4), (5, 2), (7,)]
    assert (3,) not in failing
    assert (4, 2) not in failing
    assert (3, 3) not in failing


def test_j_twist_reverses_sequence ():
    for d in _sequences(10):
        A = -seqcalc.eval_A(d)
        assert sl2z.J_twist(A) == -seqcalc.eval_A(tuple(reversed(d)))


def test_blowup ():
    assert seqcalc.blowup((0, 0), 1) == (1, 1, 1)
    assert seqcalc.blowup((0, 0), 2) == (1, 1, 1)
    assert seqcalc.blowup((2, 1, 2, 1), 1) == (3, 1, 2, 2, 1)
    assert seqcalc.blowup((3, 4, 5), 2) == (3, 5, 1, 6)
    assert seqcalc.blowup((3, 4, 5), 3) == (4, 4, 6, 1)
    with pytest.raises(seqcalc.IndexOutOfRange):
        seqcalc.blowup((0, 0), 3)
    with pytest.raises(ValueError):
        seqcalc.blowup((5,), 1)


def test_blowdown ():
    assert seqcalc.blowdown((3, 1, 2, 2, 1), 2) == (2, 1, 2, 1)
    assert seqcalc.blowdown((1, 1, 1), 3) == (0, 0)
    assert seqcalc.blowdown((4, 4, 6, 1), 4) == (3, 4, 5)
    with pytest.raises(ValueError):
        seqcalc.blowdown((3, 2, 2), 1)
    with pytest.raises(ValueError):
        seqcalc.blowdown((1, 1), 1)
    with pytest.raises(seqcalc.IndexOutOfRange):
        seqcalc.blowdown((1, 1, 1), 4)


def test_blowups_keep_monodromy (rng):
    # blowups of (0, 0) all evaluate to A(0, 0) = -I
    for i in range(50):
        d = (0, 0)
        for j in range(rng.randint(1, 8)):
            edge = rng.randint(1, len(d))
            new = seqcalc.blowup(d, edge)
            assert seqcalc.blowdown(new, edge + 1 if edge < len(d)
                                    else len(new)) == d
            d = new
        assert seqcalc.eval_A(d) == -I
        assert sum(d) == 3 * (len(d) - 2)


@pytest.mark.parametrize('n', range(3, 9))
def test_blowup_chain (n):
    d = (0, 0)
    for i in range(n - 1):
        d = seqcalc.blowup(d, 1)
    expected = (n - 1, 1) + (2,) * (n - 2) + (1,)
    assert d == expected
    w = seqcalc.blowup_reachable_search(len(expected), expected)
    assert w is not None
    assert len(w.edges) == n - 1
    assert seqcalc.leq_cyclic(w.sequence, expected) == w.rotation


def test_leq_cyclic ():
    assert seqcalc.leq_cyclic((3, 1), (2, 5)) == 1
    assert seqcalc.leq_cyclic((0, 0), (5, 2)) == 0
    assert seqcalc.leq_cyclic((3, 3), (2, 5)) is None
    assert seqcalc.leq_cyclic((1, 2), (2,)) is None


@pytest.mark.parametrize('m', range(0, 9))
def test_first_block_fits (m):
    assert seqcalc.leq_cyclic((0, 0), (m + 3, 2)) == 0


@pytest.mark.parametrize('bound, expected', [
    ((5, 2, 2), BlowupWitness((1,), (1, 1, 1), 0)),
    ((4, 2, 2, 2, 2), BlowupWitness((1, 1, 1), (3, 1, 2, 2, 1), 0)),
    ((3, 2, 2, 2, 2, 2), None),
    ((1, 1, 1, 1), None),
])
def test_blowup_reachable_search (bound, expected):
    assert seqcalc.blowup_reachable_search(len(bound), bound) == expected


def test_blowup_reachable_search_bad_length ():
    with pytest.raises(ValueError):
        seqcalc.blowup_reachable_search(4, (5, 2, 2))


@pytest.mark.parametrize('sign', (1, -1))
@pytest.mark.parametrize('n', (-5, -2, -1, 1, 3, 7))
def test_parabolic_normal_form (rng, sign, n):
    target = sl2z.power(T, n)
    if sign < 0:
        target = -target
    for i in range(10):
        X = sl2z.word_eval([(rng.choice('ST'), rng.randint(-3, 3))
                            for j in range(4)])
        A = X * target * X.inverse()
        nf = seqcalc.parabolic_normal_form(A)
        assert (nf.sign, nf.n) == (sign, n)
        assert nf.conjugator * A == target * nf.conjugator


def test_parabolic_normal_form_scalar ():
    assert seqcalc.parabolic_normal_form(-I) == (-1, 0, I)
    assert seqcalc.parabolic_normal_form(I) == (1, 0, I)
    assert seqcalc.parabolic_normal_form(sl2z.neg_T(3)) == (-1, 3, I)
    with pytest.raises(seqcalc.NotParabolic):
        seqcalc.parabolic_normal_form(S)


def test_decompose_exact ():
    for d in _sequences(12, canonical = False):
        A = -seqcalc.eval_A(d)
        dec = seqcalc.decompose_negative_hyperbolic(A, 30)
        assert dec is not None
        assert seqcalc.cyclic_equivalent(dec.seq, d)
        assert dec.seq == seqcalc.canonical_rotation(d)
        assert dec.conjugator * A == -seqcalc.eval_A(dec.seq) * dec.conjugator


def test_decompose_conjugated ():
    X = T * S * T
    A = X * -seqcalc.eval_A((3, 2)) * X.inverse()
    assert A == Mat2(-3, -2, -1, -1)
    dec = seqcalc.decompose_negative_hyperbolic(A, 30)
    assert dec.seq == (3, 2)
    assert dec.conjugator * A == -seqcalc.eval_A((3, 2)) * dec.conjugator
    assert seqcalc.decompose_negative_hyperbolic(A, 3) is None


def test_decompose_random_conjugates (rng):
    for d in ((3,), (4, 2), (3, 3), (5, 2, 3)):
        for i in range(5):
            X = sl2z.word_eval([(rng.choice('ST'), rng.randint(-2, 2))
                                for j in range(3)])
            A = X * -seqcalc.eval_A(d) * X.inverse()
            dec = seqcalc.decompose_negative_hyperbolic(A, 30)
            assert dec is not None
            assert seqcalc.cyclic_equivalent(dec.seq, d)


def test_decompose_not_negative_hyperbolic ():
    with pytest.raises(seqcalc.NotNegativeHyperbolic):
        seqcalc.decompose_negative_hyperbolic(sl2z.neg_T(2), 30)
    with pytest.raises(seqcalc.NotNegativeHyperbolic):
        seqcalc.decompose_negative_hyperbolic(seqcalc.eval_A((3,)), 30)


def test_decompose_short_sequences ():
    for k in range(1, 5):
        for d in itertools.product(range(2, 6), repeat = k):
            if not seqcalc.is_hyperbolic_shape(d):
                continue
            A = -seqcalc.eval_A(d)
            dec = seqcalc.decompose_negative_hyperbolic(A, 30)
            assert seqcalc.cyclic_equivalent(dec.seq, d)
            assert (dec.conjugator * A ==
                    -seqcalc.eval_A(dec.seq) * dec.conjugator)


def test_rho_involution_random_blocks (rng):
    for i in range(500):
        blocks = tuple((rng.randint(0, 4), rng.randint(0, 4))
                       for j in range(rng.randint(1, 4)))
        d = BlockForm(blocks).sequence()
        assert seqcalc.cyclic_equivalent(seqcalc.rho(seqcalc.rho(d)), d)
