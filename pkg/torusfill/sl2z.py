"""torusfill SL(2,Z) module: exact 2x2 integer matrices and torus bundle
monodromies.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

The bundle M_A is T^2 x [0,1] with (x, 1) glued to (Ax, 0).  Dehn twists act on
H_1(T^2) = Z^2 with mu = (1, 0) and lambda = (0, 1).

    CLASSES

Mat2
PrimitiveSlope
BundleClass
Surgery
Diffeo
Kind
Sign
Answer
NotSL2
NotPrimitive
MatrixFormatError

    FUNCTIONS

parse_matrix
format_matrix
check_sl2
classify
word_eval
power
neg_T
J_twist
dehn_twist_matrix
legendrian_surgery_monodromy
cover_monodromy
conjugacy_witness_search
bundles_diffeomorphic

    DATA

I, S, T, J: the identity, S = [[0,1],[-1,0]], T = [[1,1],[0,1]] and
            J = [[0,1],[1,0]] (determinant -1).
MU, LAMBDA: the slopes (1, 0) and (0, 1).

"""

from collections import namedtuple
import logging
import re

from sympy import igcd

log = logging.getLogger(__name__)


class NotSL2 (ValueError):
    """Raised for matrices with the wrong determinant."""
    pass


class NotPrimitive (ValueError):
    """Raised for slopes that are not primitive vectors."""
    pass


class MatrixFormatError (ValueError):
    """Raised when matrix text can't be parsed."""
    pass


class Kind:
    ELLIPTIC = 'Elliptic'
    PARABOLIC = 'Parabolic'
    HYPERBOLIC = 'Hyperbolic'


class Sign:
    POSITIVE = 'Positive'
    NEGATIVE = 'Negative'
    ZERO_TRACE = 'ZeroTrace'


class Answer:
    YES = 'Yes'
    NO = 'No'
    UNKNOWN = 'Unknown'


class Mat2 (namedtuple('Mat2', 'a b c d')):
    """A 2x2 integer matrix [[a, b], [c, d]] with determinant +1 or -1.

Construct as Mat2(a, b, c, d); raises NotSL2 for any other determinant.
Multiplication is matrix multiplication; unary minus negates.

"""

    __slots__ = ()

    def __new__ (cls, a, b, c, d):
        self = super().__new__(cls, int(a), int(b), int(c), int(d))
        if abs(self.det()) != 1:
            raise NotSL2('determinant {} is not +1 or -1'.format(self.det()))
        return self

    def det (self):
        return self.a * self.d - self.b * self.c

    def trace (self):
        return self.a + self.d

    def rows (self):
        return [[self.a, self.b], [self.c, self.d]]

    def is_scalar (self):
        return self.b == 0 and self.c == 0 and self.a == self.d

    def inverse (self):
        # exact: the determinant is a unit
        e = self.det()
        return Mat2(e * self.d, -e * self.b, -e * self.c, e * self.a)

    def apply (self, v):
        """Image of the column vector v = (x, y)."""
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __mul__ (self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        a, b, c, d = self
        p, q, r, s = other
        return Mat2(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def __neg__ (self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def __str__ (self):
        return format_matrix(self)


PrimitiveSlope = namedtuple('PrimitiveSlope', 'p q')
BundleClass = namedtuple('BundleClass', 'kind sign trace')
Surgery = namedtuple('Surgery', 'monodromy warnings')
Diffeo = namedtuple('Diffeo', 'answer reason')

I = Mat2(1, 0, 0, 1)
S = Mat2(0, 1, -1, 0)
T = Mat2(1, 1, 0, 1)
J = Mat2(0, 1, 1, 0)
MU = PrimitiveSlope(1, 0)
LAMBDA = PrimitiveSlope(0, 1)

_int = r'\s*([-+]?\d+)\s*'
_flat_re = re.compile(r'^{0},{0};{0},{0}$'.format(_int))
_nested_re = re.compile(r'^\s*\[\s*\[{0},{0}\]\s*,\s*\[{0},{0}\]\s*\]\s*$'
                        .format(_int))


def parse_matrix (text):
    """Parse 'a,b;c,d' or '[[a,b],[c,d]]' into a Mat2.

Raises MatrixFormatError for text in neither format and NotSL2 if the
determinant is not +1 or -1.

"""
    text = text.replace('−', '-')
    match = _flat_re.match(text) or _nested_re.match(text)
    if match is None:
        raise MatrixFormatError('can\'t parse matrix: {!r}'.format(text))
    return Mat2(*(int(x) for x in match.groups()))


def format_matrix (A):
    """Canonical text form '[[a,b],[c,d]]'."""
    return '[[{},{}],[{},{}]]'.format(*A)


def check_sl2 (A):
    """Raise NotSL2 unless A has determinant +1."""
    if A.det() != 1:
        raise NotSL2('{} has determinant {}, not 1'.format(A, A.det()))


def classify (A):
    """Classify a monodromy by its trace.

classify(A) -> BundleClass

Raises NotSL2 if det(A) != 1.

"""
    check_sl2(A)
    t = A.trace()
    if abs(t) < 2:
        kind = Kind.ELLIPTIC
    elif abs(t) == 2:
        kind = Kind.PARABOLIC
    else:
        kind = Kind.HYPERBOLIC
    if t > 0:
        sign = Sign.POSITIVE
    elif t < 0:
        sign = Sign.NEGATIVE
    else:
        sign = Sign.ZERO_TRACE
    return BundleClass(kind, sign, t)


def is_negative_monodromy (A):
    """Whether A is negative parabolic or negative hyperbolic."""
    return A.det() == 1 and A.trace() <= -2


def power (A, k):
    """A^k for any integer k, by repeated squaring."""
    if k < 0:
        A = A.inverse()
        k = -k
    result = I
    while k:
        if k & 1:
            result = result * A
        A = A * A
        k >>= 1
    return result


def neg_T (n):
    """-T^n, the monodromy of M_n."""
    return Mat2(-1, -n, 0, -1)


def J_twist (B):
    """J B^-1 J^-1, the same bundle as B in mirrored fibre coordinates.

M_B and M_{J B^-1 J^-1} are orientation-preservingly diffeomorphic.  For
B = -A(d) this is -A of d reversed.

"""
    return J * B.inverse() * J


def word_eval (word):
    """Evaluate a word in S and T.

word_eval(word) -> Mat2

word: sequence of (letter, exponent) pairs, letter 'S' or 'T'; multiplied in
      the written left-to-right order.

"""
    gens = {'S': S, 'T': T}
    result = I
    for letter, e in word:
        try:
            g = gens[letter]
        except KeyError:
            raise ValueError('unknown generator: {!r}'.format(letter))
        result = result * power(g, e)
    return result


def dehn_twist_matrix (L):
    """Right-handed Dehn twist along a linear curve in T^2.

dehn_twist_matrix(L) -> Mat2

L: a PrimitiveSlope or (p, q) pair.

The twist is x -> x - <x, v> v with <u, v> = u_x v_y - u_y v_x.  Raises
NotPrimitive unless gcd(p, q) = 1.

"""
    p, q = L
    if igcd(p, q) != 1:
        raise NotPrimitive('({}, {}) is not primitive'.format(p, q))
    return Mat2(1 - p * q, p * p, -q * q, 1 + p * q)


def legendrian_surgery_monodromy (A, L):
    """Monodromy after Legendrian surgery along a linear curve in a fiber.

legendrian_surgery_monodromy(A, L) -> Surgery

Surgery.monodromy is A T_L.  Surgery.warnings lists violated hypotheses: A
should be negative parabolic or negative hyperbolic, and the result only
describes the surgered contact manifold if it is as well.

"""
    check_sl2(A)
    result = A * dehn_twist_matrix(L)
    warnings = []
    if not is_negative_monodromy(A):
        warnings.append('{} is not negative parabolic or negative hyperbolic'
                        .format(A))
    if not is_negative_monodromy(result):
        warnings.append('the surgered monodromy {} is not negative parabolic '
                        'or negative hyperbolic: no contact meaning'
                        .format(result))
    for w in warnings:
        log.warning(w)
    return Surgery(result, warnings)


def cover_monodromy (A, k):
    """Monodromy of the pullback along the degree-k cover of the base."""
    if k < 1:
        raise ValueError('cover degree must be positive, not {}'.format(k))
    return power(A, k)


def _witness_key (X):
    # smallest entries first; among equal sizes, prefer positive entries
    return (sum(abs(x) for x in X),) + tuple(-x for x in X)


def _free_pair (K):
    """Find rows (r1, r2) and columns (k, l) of K with a non-zero minor.

Returns (r1, r2, k, l, minor, i, j) where i, j are the other two columns, or
None if K has rank < 2.

"""
    for r1 in range(4):
        for r2 in range(r1 + 1, 4):
            for k in range(4):
                for l in range(k + 1, 4):
                    minor = K[r1][k] * K[r2][l] - K[r1][l] * K[r2][k]
                    if minor:
                        i, j = (c for c in range(4) if c not in (k, l))
                        return (r1, r2, k, l, minor, i, j)
    return None


def conjugacy_witness_search (A, B, bound):
    """Find X in SL(2,Z) with X A X^-1 = B and entries bounded by bound.

conjugacy_witness_search(A, B, bound) -> X

X: the least witness, ordering by the sum of absolute entries and then
   preferring larger entries in the order a, b, c, d (so the identity wins
   over -I); or None if there is no witness with all |entries| <= bound.  None
   does not mean A and B are not conjugate.

XA = BX is a linear system in the entries of X of rank 2 when A is not
scalar, so two entries are enumerated and the other two solved for exactly.

"""
    check_sl2(A)
    check_sl2(B)
    if bound < 1:
        raise ValueError('bound must be positive, not {}'.format(bound))
    if A.trace() != B.trace():
        return None
    if A.is_scalar() or B.is_scalar():
        return I if A == B else None
    a, b, c, d = A
    p, q, r, s = B
    # rows: the entries of XA - BX; columns: the entries of X
    K = ((a - p, c, -q, 0),
         (b, d - p, 0, -q),
         (-r, 0, a - s, c),
         (0, -r, b, d - s))
    pair = _free_pair(K)
    if pair is None:
        return None
    r1, r2, k, l, minor, i, j = pair
    best = None
    rng = range(-bound, bound + 1)
    for xi in rng:
        for xj in rng:
            u = -(K[r1][i] * xi + K[r1][j] * xj)
            v = -(K[r2][i] * xi + K[r2][j] * xj)
            xk, rk = divmod(u * K[r2][l] - K[r1][l] * v, minor)
            xl, rl = divmod(K[r1][k] * v - u * K[r2][k], minor)
            if rk or rl or abs(xk) > bound or abs(xl) > bound:
                continue
            x = [0] * 4
            x[i], x[j], x[k], x[l] = xi, xj, xk, xl
            if x[0] * x[3] - x[1] * x[2] != 1:
                continue
            X = Mat2(*x)
            if X * A != B * X:
                continue
            if best is None or _witness_key(X) < _witness_key(best):
                best = X
    return best


def bundles_diffeomorphic (A, B, bound = 50, budget = 30):
    """Decide whether M_A and M_B are orientation-preserving diffeomorphic.

bundles_diffeomorphic(A, B, bound = 50, budget = 30) -> Diffeo

That is, whether A is conjugate to B or to J B^-1 J^-1.

bound: entry bound for conjugator searches.
budget: sum bound for hyperbolic normal form searches.

Diffeo.answer is Answer.YES, Answer.NO or Answer.UNKNOWN; Diffeo.reason says
how it was decided.  Parabolic matrices are decided by their normal forms,
hyperbolic ones by their cyclic sequences (when the search finds them), and
anything else only positively, by a witness.

"""
    # seqcalc builds on this module
    from . import seqcalc
    check_sl2(A)
    check_sl2(B)
    B_rev = J_twist(B)
    if A.trace() != B.trace():
        return Diffeo(Answer.NO, 'traces differ: {} and {}'.format(
            A.trace(), B.trace()))
    kind = classify(A).kind
    if kind == Kind.PARABOLIC:
        forms = [seqcalc.parabolic_normal_form(X) for X in (A, B, B_rev)]
        inv = [(f.sign, f.n) for f in forms]
        if inv[0] == inv[1]:
            return Diffeo(Answer.YES, 'A and B have parabolic normal form '
                          '{}T^{}'.format('-' if inv[0][0] < 0 else '',
                                          inv[0][1]))
        if inv[0] == inv[2]:
            return Diffeo(Answer.YES, 'A and J B^-1 J^-1 have parabolic '
                          'normal form {}T^{}'.format(
                              '-' if inv[0][0] < 0 else '', inv[0][1]))
        return Diffeo(Answer.NO, 'parabolic normal forms differ: {}, {} and '
                      '{}'.format(*inv))
    if kind == Kind.HYPERBOLIC:
        # conjugacy of A and B is conjugacy of -A and -B
        e = 1 if A.trace() < 0 else -1
        decs = [seqcalc.decompose_negative_hyperbolic(
                    Mat2(*(e * x for x in X)), budget, bound)
                for X in (A, B, B_rev)]
        if None not in decs:
            seqs = [seqcalc.format_seq(dec.seq) for dec in decs]
            if seqcalc.cyclic_equivalent(decs[0].seq, decs[1].seq):
                return Diffeo(Answer.YES, 'A and B have cyclic sequence {}'
                              .format(seqs[0]))
            if seqcalc.cyclic_equivalent(decs[0].seq, decs[2].seq):
                return Diffeo(Answer.YES, 'A and J B^-1 J^-1 have cyclic '
                              'sequence {}'.format(seqs[0]))
            return Diffeo(Answer.NO, 'cyclic sequences differ: {}, {} and {}'
                          .format(*seqs))
    X = conjugacy_witness_search(A, B, bound)
    if X is not None:
        return Diffeo(Answer.YES, 'X A X^-1 = B for X = {}'.format(X))
    X = conjugacy_witness_search(A, B_rev, bound)
    if X is not None:
        return Diffeo(Answer.YES, 'X A X^-1 = J B^-1 J^-1 for X = {}'
                      .format(X))
    return Diffeo(Answer.UNKNOWN, 'no conjugator with entries up to {}'
                  .format(bound))
