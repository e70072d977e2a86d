"""torusfill homology module: exact homological invariants of torus bundles
and of the cobordisms built on them.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

    CLASSES

AbelianGroup
BettiLedger
OutOfRange
HypothesisFailed
UnsupportedLength

    FUNCTIONS

smith_normal_form
inertia
h1_torus_bundle
format_group
torsion_annihilator
self_intersection_S
w_ledger_parabolic
wprime_ledger_hyperbolic
circular_intersection_matrix
ledger_combine

"""

from collections import namedtuple
import logging

from .ext import intmat
from .sl2z import LAMBDA, check_sl2, dehn_twist_matrix

log = logging.getLogger(__name__)

LEMMA_2_2 = ('Lemma 2.2: b2+(X) >= b2+(X1) + b2+(X2) for X glued from X1 '
             'and X2 (lower bound)')
LEMMA_3_4 = 'Lemma 3.4: b2-(W) = -n-4 and b2+(W) = 0'
LEMMA_3_5 = 'Lemma 3.5: b2+(W\') = 0 and b2-(W\') = 1'
LEMMA_3_6 = 'Lemma 3.6: [S].[S] = -(2-x-w)(2-x-w+y)'


class OutOfRange (ValueError):
    pass


class HypothesisFailed (ValueError):
    """Raised when the hypotheses of a result don't hold.

Takes the list of failed hypotheses, kept as the hypotheses attribute.

"""

    def __init__ (self, hypotheses):
        self.hypotheses = list(hypotheses)
        ValueError.__init__(self, '; '.join(self.hypotheses))


class UnsupportedLength (ValueError):
    pass


AbelianGroup = namedtuple('AbelianGroup', 'betti torsion')

BettiLedger = namedtuple('BettiLedger', 'b2plus b2minus provenance form',
                         defaults = (None,))
BettiLedger.__doc__ = """b2+ and b2- of a 4-manifold, with where they came from.

form: the intersection form they were read off, or None.

"""


def smith_normal_form (M):
    """smith_normal_form(M) -> (diagonal, U, V), with U M V diagonal."""
    return intmat.smith_normal_form(M)


def inertia (form):
    """inertia(form) -> (b+, b-, nullity) of a symmetric integer matrix."""
    return intmat.inertia(form)


def h1_torus_bundle (A):
    """First homology of M_A, Z + coker(A - I).

h1_torus_bundle(A) -> AbelianGroup

"""
    check_sl2(A)
    M = A.rows()
    M[0][0] -= 1
    M[1][1] -= 1
    diagonal, U, V = smith_normal_form(M)
    return AbelianGroup(1 + diagonal.count(0),
                        tuple(x for x in diagonal if x >= 2))


def format_group (G):
    """Render like 'Z ⊕ Z_4' or 'Z^2'."""
    parts = []
    if G.betti == 1:
        parts.append('Z')
    elif G.betti > 1:
        parts.append('Z^{}'.format(G.betti))
    parts.extend('Z_{}'.format(t) for t in G.torsion)
    return ' ⊕ '.join(parts) if parts else '0'


def torsion_annihilator (A):
    """2 - tr A, which is det(A - I); it kills the torsion of H_1(M_A)."""
    check_sl2(A)
    return 2 - A.trace()


def _wprime_hypotheses (A):
    failed = []
    t = A.trace()
    t_prime = (A * dehn_twist_matrix(LAMBDA)).trace()
    if t > -3:
        failed.append('tr(A) = {} > -3'.format(t))
    if t_prime > -3:
        failed.append('tr(A T_lambda) = {} > -3'.format(t_prime))
    return failed


def self_intersection_S (A):
    """[S].[S] for the surface S in the cobordism W' on M_A.

self_intersection_S(A) -> int

For A = [[x, y], [z, w]] this is -(2 - x - w)(2 - x - w + y), which is
-(2 - tr A)(2 - tr(A T_lambda)).  Evaluated for any A, with a warning if
tr A <= -3 and tr(A T_lambda) <= -3 fail.

"""
    check_sl2(A)
    for h in _wprime_hypotheses(A):
        log.warning('[S].[S] outside its hypotheses: %s', h)
    x, y, z, w = A
    return -(2 - x - w) * (2 - x - w + y)


def w_ledger_parabolic (n):
    """b2 of the Stein cobordism from M_n to M_-4, for n <= -5.

w_ledger_parabolic(n) -> BettiLedger

The -n-4 handles give spheres S_i with [S_i].[S_j] = -4 if i = j and 0
otherwise.  Raises OutOfRange for n > -5.

"""
    if n > -5:
        raise OutOfRange('n = {} > -5'.format(n))
    k = -n - 4
    form = [[-4 if i == j else 0 for j in range(k)] for i in range(k)]
    plus, minus, null = inertia(form)
    return BettiLedger(plus, minus, [LEMMA_3_4], form)


def wprime_ledger_hyperbolic (A):
    """b2 of the one-handle cobordism W' on a negative hyperbolic M_A.

wprime_ledger_hyperbolic(A) -> BettiLedger

Raises HypothesisFailed unless tr A <= -3 and tr(A T_lambda) <= -3.

"""
    check_sl2(A)
    failed = _wprime_hypotheses(A)
    if failed:
        raise HypothesisFailed(failed)
    form = [[self_intersection_S(A)]]
    plus, minus, null = inertia(form)
    return BettiLedger(plus, minus, [LEMMA_3_5, LEMMA_3_6], form)


def circular_intersection_matrix (e):
    """Intersection matrix of a circular divisor with self-intersections e.

Neighbours meet once, except that the two curves of a length-2 cycle meet
twice.  Raises UnsupportedLength for fewer than 2 curves.

"""
    l = len(e)
    if l < 2:
        raise UnsupportedLength('circular divisor of length {}'.format(l))
    Q = [[0] * l for i in range(l)]
    for i in range(l):
        Q[i][i] = e[i]
        j = (i + 1) % l
        if l == 2:
            Q[i][j] = 2
        else:
            Q[i][j] = Q[j][i] = 1
    return Q


def _block_diagonal (a, b):
    n, m = len(a), len(b)
    rows = [list(row) + [0] * m for row in a]
    rows.extend([0] * n + list(row) for row in b)
    return rows


def ledger_combine (x, y):
    """Ledger of two pieces glued together.

ledger_combine(x, y) -> BettiLedger

The entries are summed; the result is a LOWER bound for the glued manifold, not
its value.  The form is block diagonal when both pieces have one.

"""
    provenance = list(dict.fromkeys(list(x.provenance) + list(y.provenance) +
                                    [LEMMA_2_2]))
    if x.form is None or y.form is None:
        form = None
    else:
        form = _block_diagonal(x.form, y.form)
    return BettiLedger(x.b2plus + y.b2plus, x.b2minus + y.b2minus, provenance,
                       form)
