"""torusfill sequence calculus module: circular integer sequences and the
normal forms of negative monodromies.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

Sequences are tuples of ints read circularly.  A(d_1, ..., d_k) is
T^-d_k S ... T^-d_1 S, and a negative hyperbolic monodromy is conjugate to
-A(d) for a sequence with every entry >= 2 and some entry >= 3, unique up to
rotation.  Blowup positions (edges) and blowdown indices count from 1.

    CLASSES

BlockForm
ParabolicNF
Decomposition
BlowupWitness
NotHyperbolicShape
NotParabolic
NotNegativeHyperbolic
IndexOutOfRange
SequenceFormatError

    FUNCTIONS

parse_seq
format_seq
format_blocks
is_hyperbolic_shape
eval_A
rotate
cyclic_equivalent
canonical_rotation
parse_blocks
rho
blowup
blowdown
leq_cyclic
blowup_reachable_search
parabolic_normal_form
decompose_negative_hyperbolic

"""

from collections import namedtuple
import logging

from sympy import igcd, integer_nthroot
from sympy.core.intfunc import igcdex

from .sl2z import Mat2, I, T, check_sl2, conjugacy_witness_search, power

log = logging.getLogger(__name__)


class NotHyperbolicShape (ValueError):
    """Raised for sequences with an entry < 2 or no entry >= 3."""
    pass


class NotParabolic (ValueError):
    pass


class NotNegativeHyperbolic (ValueError):
    pass


class IndexOutOfRange (IndexError):
    pass


class SequenceFormatError (ValueError):
    pass


class BlockForm (namedtuple('BlockForm', 'blocks')):
    """Block decomposition (n_1 + 3, 2^m_1, ..., n_s + 3, 2^m_s).

blocks: tuple of (n, m) pairs.

"""

    __slots__ = ()

    @property
    def s (self):
        return len(self.blocks)

    def sequence (self):
        d = []
        for n, m in self.blocks:
            d.append(n + 3)
            d.extend([2] * m)
        return tuple(d)


ParabolicNF = namedtuple('ParabolicNF', 'sign n conjugator')
Decomposition = namedtuple('Decomposition', 'seq conjugator')
BlowupWitness = namedtuple('BlowupWitness', 'edges sequence rotation')


def parse_seq (text):
    """Parse comma-separated integers like '5,2,2,3' into a sequence."""
    parts = text.replace('−', '-').split(',')
    try:
        d = tuple(int(x) for x in parts)
    except ValueError:
        raise SequenceFormatError('can\'t parse sequence: {!r}'.format(text))
    return d


def format_seq (d):
    return ','.join(str(x) for x in d)


def format_blocks (form):
    """Render a BlockForm like '5,2×2,3'."""
    parts = []
    for n, m in form.blocks:
        if m > 1:
            parts.append('{},2×{}'.format(n + 3, m))
        else:
            parts.append('{},2'.format(n + 3) if m else str(n + 3))
    return ','.join(parts)


def is_hyperbolic_shape (d):
    """Whether every entry is >= 2 and some entry is >= 3."""
    return bool(d) and min(d) >= 2 and max(d) >= 3


def _block (x):
    # T^-x S
    return Mat2(x, 1, -1, 0)


def eval_A (d):
    """A(d) = T^-d_k S ... T^-d_1 S."""
    result = I
    for x in d:
        result = _block(x) * result
    return result


def rotate (d, r):
    """d rotated left by r places."""
    d = tuple(d)
    if not d:
        return d
    r %= len(d)
    return d[r:] + d[:r]


def cyclic_equivalent (d1, d2):
    """Whether d1 and d2 are equal after some rotation."""
    d1 = tuple(d1)
    d2 = tuple(d2)
    if len(d1) != len(d2):
        return False
    return any(rotate(d1, r) == d2 for r in range(max(len(d1), 1)))


def canonical_rotation (d):
    """The lexicographically least rotation starting with an entry >= 3.

Raises NotHyperbolicShape.

"""
    if not is_hyperbolic_shape(d):
        raise NotHyperbolicShape('{} needs every entry >= 2 and some entry '
                                 '>= 3'.format(format_seq(d)))
    return min(rotate(d, r) for r in range(len(d)) if d[r] >= 3)


def parse_blocks (d):
    """Split a sequence into blocks (n + 3, 2^m).

parse_blocks(d) -> BlockForm

d is read in the given rotation if it starts with an entry >= 3, and in its
canonical rotation otherwise.  Raises NotHyperbolicShape.

"""
    d = tuple(d)
    if not is_hyperbolic_shape(d):
        raise NotHyperbolicShape('{} needs every entry >= 2 and some entry '
                                 '>= 3'.format(format_seq(d)))
    if d[0] < 3:
        d = canonical_rotation(d)
    blocks = []
    for x in d:
        if x >= 3:
            blocks.append([x - 3, 0])
        else:
            blocks[-1][1] += 1
    return BlockForm(tuple(tuple(b) for b in blocks))


def rho (d):
    """The sequence of the orientation reversal of M_{-A(d)}.

rho(d) -> (m_s + 3, 2^n_s, ..., m_1 + 3, 2^n_1), canonically rotated

"""
    form = parse_blocks(d)
    swapped = BlockForm(tuple((m, n) for n, m in reversed(form.blocks)))
    return canonical_rotation(swapped.sequence())


def blowup (d, edge):
    """Blow up the circular edge between entries edge and edge + 1.

blowup(d, edge) -> sequence

(d_i, d_i+1) becomes (d_i + 1, 1, d_i+1 + 1).  The last edge wraps around,
with the new 1 appended at the end.  Raises IndexOutOfRange.

"""
    d = tuple(d)
    k = len(d)
    if k < 2:
        raise ValueError('can\'t blow up a sequence of length {}'.format(k))
    if not 1 <= edge <= k:
        raise IndexOutOfRange('edge {} not in 1..{}'.format(edge, k))
    if edge < k:
        i = edge - 1
        return d[:i] + (d[i] + 1, 1, d[i + 1] + 1) + d[i + 2:]
    return (d[0] + 1,) + d[1:-1] + (d[-1] + 1, 1)


def blowdown (d, index):
    """Remove the entry 1 at index and decrement both neighbours.

Undoes blowup.  Raises IndexOutOfRange, and ValueError if the entry is not 1
or the sequence is shorter than 3.

"""
    d = list(d)
    k = len(d)
    if k < 3:
        raise ValueError('can\'t blow down a sequence of length {}'.format(k))
    if not 1 <= index <= k:
        raise IndexOutOfRange('index {} not in 1..{}'.format(index, k))
    i = index - 1
    if d[i] != 1:
        raise ValueError('entry {} is {}, not 1'.format(index, d[i]))
    d[(i - 1) % k] -= 1
    d[(i + 1) % k] -= 1
    del d[i]
    return tuple(d)


def leq_cyclic (b, e):
    """Smallest r with b <= rotate(e, r) entrywise.

leq_cyclic(b, e) -> r

r: int, or None if there is no such rotation (always for different lengths).
Reflections are not tried.

"""
    b = tuple(b)
    e = tuple(e)
    if len(b) != len(e):
        return None
    for r in range(len(e)):
        if all(x <= y for x, y in zip(b, rotate(e, r))):
            return r
    return None


def _class_key (d):
    return min(rotate(d, r) for r in range(len(d)))


def blowup_reachable_search (target_len, bound):
    """Find blowups of (0, 0) that fit under a sequence.

blowup_reachable_search(target_len, bound) -> witness

target_len: must equal len(bound), at least 2.
bound: the sequence to fit under, up to rotation.

witness: BlowupWitness(edges, sequence, rotation) for the lexicographically
         least edge script of target_len - 2 blowups from (0, 0) whose result
         b has leq_cyclic(b, bound) == rotation; None if there is none.  The
         search is exhaustive, so None is definitive.

Blowups never decrease an entry and add 3 to the sum, so branches with an
entry above max(bound) are pruned and a sum above sum(bound) is ruled out
outright.  Sequences are deduplicated up to rotation, keeping the first found.

"""
    bound = tuple(bound)
    if target_len != len(bound) or target_len < 2:
        raise ValueError('target length {} must be len(bound) = {} and at '
                         'least 2'.format(target_len, len(bound)))
    steps = target_len - 2
    if 3 * steps > sum(bound):
        log.debug('blowups of (0,0) of length %d have sum %d > %d',
                  target_len, 3 * steps, sum(bound))
        return None
    top = max(bound)
    # level entries: (edges, sequence), in lexicographic order of edges
    level = [((), (0, 0))]
    for step in range(steps):
        seen = set()
        next_level = []
        for edges, d in level:
            for edge in range(1, len(d) + 1):
                new = blowup(d, edge)
                if max(new) > top:
                    continue
                key = _class_key(new)
                if key in seen:
                    continue
                seen.add(key)
                next_level.append((edges + (edge,), new))
        level = next_level
        log.debug('blowup search: %d classes of length %d', len(level),
                  step + 3)
    for edges, d in level:
        r = leq_cyclic(d, bound)
        if r is not None:
            return BlowupWitness(edges, d, r)
    return None


def _isqrt (x):
    root, exact = integer_nthroot(x, 2)
    if not exact:
        raise RuntimeError('{} is not a square'.format(x))
    return int(root)


def parabolic_normal_form (A):
    """Conjugate a parabolic matrix to +-T^n.

parabolic_normal_form(A) -> ParabolicNF

ParabolicNF.conjugator X satisfies X A X^-1 = sign T^n; (sign, n) is a
complete conjugacy invariant.  +-I give n = 0 and X = I.  Raises NotParabolic
if |tr A| != 2.

"""
    check_sl2(A)
    if abs(A.trace()) != 2:
        raise NotParabolic('{} has trace {}'.format(A, A.trace()))
    sign = 1 if A.trace() > 0 else -1
    # sign A - I = X^-1 (T^n - I) X = n [[-pq, p^2], [-q^2, pq]]
    # for X = [[s, t], [-q, p]]
    n11 = sign * A.a - 1
    n12 = sign * A.b
    n21 = sign * A.c
    g = igcd(igcd(n11, n12), n21)
    if g == 0:
        return ParabolicNF(sign, 0, I)
    if n12:
        n = g if n12 > 0 else -g
    else:
        n = -g if n21 > 0 else g
    p = _isqrt(n12 // n)
    q = _isqrt(-n21 // n)
    if -n11 // n < 0:
        q = -q
    s, t, h = igcdex(p, q)
    X = Mat2(s, t, -q, p)
    target = power(T, n)
    if sign < 0:
        target = -target
    if h != 1 or X * A != target * X:
        raise RuntimeError('parabolic normal form failed for {}'.format(A))
    return ParabolicNF(sign, n, X)


def _compositions (total):
    """Ordered sequences of parts >= 2 summing to total."""
    if total == 0:
        yield ()
        return
    for first in range(2, total + 1):
        for rest in _compositions(total - first):
            yield (first,) + rest


def _candidates (trace, budget):
    """Canonical sequences with tr A(d) = trace, by increasing sum."""
    for total in range(3, budget + 1):
        for d in _compositions(total):
            if (d[0] >= 3 and max(d) >= 3 and d == canonical_rotation(d) and
                    eval_A(d).trace() == trace):
                yield d


def decompose_negative_hyperbolic (A, budget, bound = 50):
    """Find d with A conjugate to -A(d).

decompose_negative_hyperbolic(A, budget[, bound]) -> Decomposition

budget: largest sum of entries to try.
bound: entry bound for conjugator searches.

Decomposition.seq is in canonical rotation and Decomposition.conjugator is X
with X A X^-1 = -A(seq).  Returns None if nothing within budget is found.
Raises NotNegativeHyperbolic unless tr A <= -3.

"""
    check_sl2(A)
    if A.trace() > -3:
        raise NotNegativeHyperbolic('{} has trace {}'.format(A, A.trace()))
    d = _expand_first_column(-A)
    if d is not None:
        X = _rotation_conjugator(A, canonical_rotation(d))
        if X is not None:
            return Decomposition(canonical_rotation(d), X)
    for d in _candidates(-A.trace(), budget):
        X = _rotation_conjugator(A, d)
        if X is not None:
            return Decomposition(d, X)
        X = conjugacy_witness_search(A, -eval_A(d), bound)
        if X is not None:
            return Decomposition(d, X)
    log.info('no sequence with sum <= %d is conjugate to %s', budget, A)
    return None


def _expand_first_column (B):
    """Read d off B = A(d) exactly, or return None.

The first column (p, -q) of A(d) has p / q = d_k - 1 / (d_k-1 - ...).

"""
    p, q = B.a, -B.c
    if not p > q > 0:
        return None
    digits = []
    while q:
        x = -(-p // q)
        digits.append(x)
        p, q = q, x * q - p
    d = tuple(reversed(digits))
    if not is_hyperbolic_shape(d) or eval_A(d) != B:
        return None
    return d


def _rotation_conjugator (A, d):
    """X with X A X^-1 = -A(d) if A is -A of a rotation of d, else None."""
    target = -eval_A(d)
    # A = -A(rotate(d, r)) is conjugated to -A(d) by A(d_1, ..., d_r)^-1
    for r in range(len(d)):
        if A == -eval_A(rotate(d, r)):
            X = eval_A(d[:r]).inverse()
            if X * A == target * X:
                return X
    return None
