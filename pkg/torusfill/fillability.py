"""torusfill fillability module: fillability verdicts for contact torus
bundles.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

Every Yes and No in a verdict comes with the citation it rests on.

    CLASSES

Structure
ContactDescriptor
Verdict
Theorem14Ledger
CobordismStep
Reduction
ParabolicCobordism
RuleS1
DivisorReport
CoverReport
InvalidDescriptor
InconsistentVerdict

    FUNCTIONS

xi_A
xi_prime
eta
validate
verdict
theorem14_ledger
cobordism_reduce
parabolic_cobordism
embeddable_sufficient
universally_tight_divisor_report
double_cover_report

"""

from collections import namedtuple
import logging

from .sl2z import (Answer, Kind, LAMBDA, MU, classify, cover_monodromy,
                   is_negative_monodromy, legendrian_surgery_monodromy, neg_T)
from . import seqcalc
from .seqcalc import (BlockForm, eval_A, parse_blocks, rho,
                      blowup_reachable_search, format_seq)
from .homology import (BettiLedger, HypothesisFailed, OutOfRange,
                       circular_intersection_matrix, h1_torus_bundle, inertia,
                       ledger_combine, w_ledger_parabolic,
                       wprime_ledger_hyperbolic)
from .ext import intmat

log = logging.getLogger(__name__)

YES = Answer.YES
NO = Answer.NO
UNKNOWN = Answer.UNKNOWN

WEAK_ZETA = ('[DG, Theorem 1]: "ζ(φ) is weakly symplectically fillable" '
             '(every ξ_A and η_n)')
GIROUX_TWISTING = ('[Ga3, Corollary 3]: with twisting m >= 3, ζ(φ) "has '
                   'positive Giroux torsion and is not strongly symplectically '
                   'fillable"')
THEOREM_1_1 = ('Theorem 1.1: "If n <= -5, then ξ_n is not strongly '
               'symplectically fillable"')
PROPOSITION_3_2 = ('Proposition 3.2: ξ_n on M_n is Stein fillable for '
                   '-4 <= n <= -1')
STEIN_V = '[V]: "When n >= -3, ξ_n is Stein fillable"'
PROPOSITION_1_3 = 'Proposition 1.3: "If n < 0, then ξ\'_n is Stein fillable"'
REMARK_2_STEIN = ('Remark 2: "If n >= 0, then η_n is Stein fillable since it '
                  'can be obtained from η_0 by Legendrian surgery"')
REMARK_2_TORSION = ('Remark 2: "If n < 0, then η_n is not strongly '
                    'symplectically fillable since it has positive Giroux '
                    'torsion"')
THEOREM_1_4 = ('Theorem 1.4: "If ξ_{-A(d)} is strongly symplectically '
               'fillable, then n_1+n_2+...+n_s <= m_1+m_2+...+m_s+4"')
PROPOSITION_1_5 = ('Proposition 1.5: for d = (n_1+3, 2^m_1), ξ_{-A(d)} "is '
                   'strongly symplectically fillable if and only if n_1 <= '
                   'm_1+4"')
EMBEDDABLE = ('[GoLi1, Theorems 1.2 and 2.5]: "If d is embeddable, then '
              'ξ_{-A(d)} is strongly symplectically fillable"')
OPEN_REGION = ('open region: d passes the necessary condition of Theorem 1.4 '
               'but no embeddability witness was found')
NO_SEQUENCE = 'no sequence d with -A(d) conjugate to A within the search budget'
STEIN_OPEN = ('Stein fillability of the strongly fillable ξ_{-A(d)} is not '
              'known')
RULE_S1 = ('[GoLi1, Theorems 1.2 and 2.5(iv)]: "If n_1 = 0, then ρ(d) = '
           '(m_1+3)", covered directly')
PROPOSITION_1_6 = ('Proposition 1.6: "any contact structure induced on the '
                   'boundary of a concave neighbourhood of D is universally '
                   'tight"')


class InvalidDescriptor (ValueError):
    pass


class InconsistentVerdict (ValueError):
    """Raised when a verdict would break Stein => strong => weak."""
    pass


class Structure:
    XI = 'xi'
    XI_PRIME = 'xi-prime'
    ETA = 'eta'


ContactDescriptor = namedtuple('ContactDescriptor', 'structure A m n')


def xi_A (A, m = 1):
    """ξ_A, or the structure with twisting m >= 3 on M_A."""
    return validate(ContactDescriptor(Structure.XI, A, m, None))


def xi_prime (n):
    """ξ'_n, the virtually overtwisted structure on M_n."""
    return validate(ContactDescriptor(Structure.XI_PRIME, None, None, n))


def eta (n):
    """η_n on the positive parabolic bundle P_n."""
    return validate(ContactDescriptor(Structure.ETA, None, None, n))


def validate (desc):
    """Return desc, or raise InvalidDescriptor."""
    if desc.structure == Structure.XI:
        if desc.A is None or not is_negative_monodromy(desc.A):
            raise InvalidDescriptor('ξ_A needs A negative parabolic or '
                                    'negative hyperbolic, not {}'
                                    .format(desc.A))
        if desc.m is None or desc.m < 1 or desc.m % 2 == 0:
            raise InvalidDescriptor('twisting m must be a positive odd '
                                    'number, not {}'.format(desc.m))
    elif desc.structure == Structure.XI_PRIME:
        if desc.n is None or desc.n >= 0:
            raise InvalidDescriptor('ξ\'_n needs n < 0, not {}'
                                    .format(desc.n))
    elif desc.structure == Structure.ETA:
        if desc.n is None:
            raise InvalidDescriptor('η_n needs n')
    else:
        raise InvalidDescriptor('unknown structure: {!r}'
                                .format(desc.structure))
    return desc


def _up (answer, what):
    if answer == NO:
        raise InconsistentVerdict('{} is No but a stronger filling exists'
                                  .format(what))
    return YES


def _down (answer, what):
    if answer == YES:
        raise InconsistentVerdict('{} is Yes but a weaker filling does not '
                                  'exist'.format(what))
    return NO


class Verdict (namedtuple('Verdict', 'weak strong stein citations witness')):
    """Weak, strong and Stein fillability answers.

Verdict(weak = UNKNOWN, strong = UNKNOWN, stein = UNKNOWN, citations = (),
        witness = None)

Answers implied by others are filled in (Stein Yes gives strong and weak Yes,
weak No gives strong and Stein No); contradictions raise InconsistentVerdict.

"""

    __slots__ = ()

    def __new__ (cls, weak = UNKNOWN, strong = UNKNOWN, stein = UNKNOWN,
                 citations = (), witness = None):
        if stein == YES:
            strong = _up(strong, 'strong')
        if strong == YES:
            weak = _up(weak, 'weak')
        if weak == NO:
            strong = _down(strong, 'strong')
        if strong == NO:
            stein = _down(stein, 'stein')
        return super().__new__(cls, weak, strong, stein, tuple(citations),
                               witness)

    def answers (self):
        return (self.weak, self.strong, self.stein)


Theorem14Ledger = namedtuple('Theorem14Ledger',
                             'handles d0 c lower upper passes')
CobordismStep = namedtuple('CobordismStep', 'sequence handles')
Reduction = namedtuple('Reduction', 'steps final handles ledger')
ParabolicCobordism = namedtuple('ParabolicCobordism',
                                'n handles convex_end ledger')
RuleS1 = namedtuple('RuleS1', 'citation')
DivisorReport = namedtuple('DivisorReport', (
    'e', 'intersection_matrix', 'det', 'inertia', 'monodromy', 'trace',
    'branch', 'bridge', 'b1', 'normal_form', 'verdict', 'citations',
    'warnings'))
CoverReport = namedtuple('CoverReport', 'n k monodromy cover h1 h1_cover')


def theorem14_ledger (d):
    """Handle count and the necessary inequality for ξ_{-A(d)}.

theorem14_ledger(d) -> Theorem14Ledger

handles = sum(n) + s - 1 Weinstein handles reduce d to
d0 = (3, 2^(sum(m) + s - 1)); with c = sum(m) + s + 2, the check is
handles <= c + 1.  Raises NotHyperbolicShape.

"""
    form = parse_blocks(d)
    s = form.s
    sum_n = sum(n for n, m in form.blocks)
    sum_m = sum(m for n, m in form.blocks)
    handles = sum_n + s - 1
    c = sum_m + s + 2
    d0 = (3,) + (2,) * (sum_m + s - 1)
    return Theorem14Ledger(handles, d0, c, handles, c + 1, handles <= c + 1)


def cobordism_reduce (d):
    """Attach Weinstein handles to M_{-A(d)} until d is (3, 2, ..., 2).

cobordism_reduce(d) -> Reduction

Reduction.steps: one CobordismStep per block, giving the sequence before the
                 block is consumed and the handles it takes.
Reduction.final: the resulting sequence, theorem14_ledger(d).d0.
Reduction.handles: total handle count.
Reduction.ledger: the combined ledger of one W' per handle; a lower bound for
                  b2 of the whole cobordism.

Each handle is Legendrian surgery along lambda, lowering the first entry by
one; a block (n + 3, 2^m) followed by more blocks takes n + 1 handles and
leaves 2^(m + 1) to join the last block, and the last block takes n.  Raises
NotHyperbolicShape.

"""
    form = parse_blocks(d)
    blocks = [list(b) for b in form.blocks]
    current = form.sequence()
    steps = []
    total = 0
    ledger = BettiLedger(0, 0, [], [])
    while True:
        n, m = blocks[0]
        last = len(blocks) == 1
        count = n if last else n + 1
        A = -eval_A(current)
        seq = list(current)
        for i in range(count):
            ledger = ledger_combine(ledger, wprime_ledger_hyperbolic(A))
            A = legendrian_surgery_monodromy(A, LAMBDA).monodromy
            seq[0] -= 1
            if A != -eval_A(seq):
                raise RuntimeError('surgery on {} doesn\'t give -A({})'
                                   .format(format_seq(current),
                                           format_seq(seq)))
        steps.append(CobordismStep(current, count))
        total += count
        log.debug('%s: %d handles', format_seq(current), count)
        if last:
            current = tuple(seq)
            break
        blocks.pop(0)
        blocks[-1][1] += m + 1
        current = BlockForm(tuple(tuple(b) for b in blocks)).sequence()
        if not seqcalc.cyclic_equivalent(seq, current):
            raise RuntimeError('{} is not a rotation of {}'.format(
                format_seq(seq), format_seq(current)))
    expected = theorem14_ledger(d)
    if total != expected.handles or current != expected.d0:
        raise RuntimeError('reduction of {} disagrees with its ledger'
                           .format(format_seq(d)))
    return Reduction(tuple(steps), current, total, ledger)


def parabolic_cobordism (n):
    """The Stein cobordism from M_n to M_-4 by surgery along mu, for n <= -5.

parabolic_cobordism(n) -> ParabolicCobordism

Raises OutOfRange for n > -5.

"""
    if n > -5:
        raise OutOfRange('n = {} > -5'.format(n))
    A = neg_T(n)
    handles = -n - 4
    for i in range(handles):
        A = legendrian_surgery_monodromy(A, MU).monodromy
    if A != neg_T(-4):
        raise RuntimeError('surgery on -T^{} ended at {}'.format(n, A))
    return ParabolicCobordism(n, handles, A, w_ledger_parabolic(n))


def embeddable_sufficient (d):
    """Look for a proof that d is embeddable.

embeddable_sufficient(d) -> result

result: RuleS1 when d is the single block (3, 2^m); otherwise the
        BlowupWitness of a blowup of (0, 0) below rho(d), or None.  None
        only means this test failed.

Raises NotHyperbolicShape.

"""
    form = parse_blocks(d)
    if form.s == 1 and form.blocks[0][0] == 0:
        return RuleS1(RULE_S1)
    target = rho(d)
    return blowup_reachable_search(len(target), target)


def _verdict_parabolic (desc, n):
    citations = [WEAK_ZETA]
    if n >= -4:
        if -4 <= n <= -1:
            citations.append(PROPOSITION_3_2)
        if n >= -3:
            citations.append(STEIN_V)
        return Verdict(YES, YES, YES, citations)
    citations.append(THEOREM_1_1)
    return Verdict(YES, NO, NO, citations, parabolic_cobordism(n))


def _verdict_hyperbolic (desc, budget, bound):
    citations = [WEAK_ZETA]
    dec = seqcalc.decompose_negative_hyperbolic(desc.A, budget, bound)
    if dec is None:
        citations.append(NO_SEQUENCE)
        return Verdict(YES, UNKNOWN, UNKNOWN, citations)
    ledger = theorem14_ledger(dec.seq)
    if not ledger.passes:
        citations.append(THEOREM_1_4)
        return Verdict(YES, NO, NO, citations, ledger)
    form = parse_blocks(dec.seq)
    witness = embeddable_sufficient(dec.seq)
    if form.s == 1:
        citations.extend([PROPOSITION_1_5, STEIN_OPEN])
        return Verdict(YES, YES, UNKNOWN, citations, witness)
    if witness is not None:
        citations.extend([EMBEDDABLE, STEIN_OPEN])
        return Verdict(YES, YES, UNKNOWN, citations, witness)
    citations.extend([THEOREM_1_4, OPEN_REGION])
    return Verdict(YES, UNKNOWN, UNKNOWN, citations, ledger)


def verdict (desc, budget = 30, bound = 50):
    """Decide the fillability of a contact torus bundle.

verdict(desc, budget = 30, bound = 50) -> Verdict

desc: a ContactDescriptor, from xi_A, xi_prime or eta.
budget, bound: search limits for the normal form of a hyperbolic monodromy.

Raises InvalidDescriptor.

"""
    validate(desc)
    if desc.structure == Structure.XI_PRIME:
        return Verdict(YES, YES, YES, [PROPOSITION_1_3])
    if desc.structure == Structure.ETA:
        if desc.n >= 0:
            return Verdict(YES, YES, YES, [WEAK_ZETA, REMARK_2_STEIN])
        return Verdict(YES, NO, NO, [WEAK_ZETA, REMARK_2_TORSION])
    if desc.m >= 3:
        return Verdict(YES, NO, NO, [WEAK_ZETA, GIROUX_TWISTING])
    if classify(desc.A).kind == Kind.PARABOLIC:
        nf = seqcalc.parabolic_normal_form(desc.A)
        return _verdict_parabolic(desc, nf.n)
    return _verdict_hyperbolic(desc, budget, bound)


def _branch (A):
    t = A.trace()
    if abs(t) < 2:
        return 'elliptic'
    if t > 2:
        return 'hyperbolic, tr(A) > 2'
    if t < -2:
        return 'hyperbolic, tr(A) < -2'
    if t == -2:
        return 'parabolic, tr(A) = -2'
    return 'parabolic, tr(A) = 2'


def _normal_form (A, budget, bound):
    kind = classify(A).kind
    if kind == Kind.PARABOLIC:
        nf = seqcalc.parabolic_normal_form(A)
        return '{}T^{}'.format('-' if nf.sign < 0 else '', nf.n)
    if kind == Kind.HYPERBOLIC:
        if A.trace() < 0:
            dec = seqcalc.decompose_negative_hyperbolic(A, budget, bound)
            sign = '-'
        else:
            dec = seqcalc.decompose_negative_hyperbolic(-A, budget, bound)
            sign = ''
        if dec is not None:
            return '{}A({})'.format(sign, format_seq(dec.seq))
    return None


def universally_tight_divisor_report (e, budget = 30, bound = 50):
    """Check the hypotheses on a circular divisor and describe its boundary.

universally_tight_divisor_report(e, budget = 30, bound = 50) -> DivisorReport

e: the self-intersections of the curves, at least 2 of them.

The boundary of a concave neighbourhood is M_A with A = A(-e_1, ..., -e_l).
Raises HypothesisFailed naming each hypothesis that fails: some e_i in {0, 1},
and a nonsingular intersection matrix.

"""
    e = tuple(e)
    Q = circular_intersection_matrix(e)
    det = intmat.det(Q)
    failed = []
    if not any(x in (0, 1) for x in e):
        failed.append('no e_i in {0, 1}')
    if det == 0:
        failed.append('the intersection matrix is singular')
    if failed:
        raise HypothesisFailed(failed)
    warnings = []
    A = eval_A(tuple(-x for x in e))
    t = A.trace()
    bridge = abs(det) == abs(2 - t)
    if not bridge:
        warnings.append('|det Q| = {} but |2 - tr A| = {}'.format(
            abs(det), abs(2 - t)))
    form_inertia = inertia(Q)
    if form_inertia[0] == 0:
        warnings.append('the intersection matrix is negative definite')
    if t == 2:
        warnings.append('tr(A) = 2 although the intersection matrix is '
                        'nonsingular')
    for w in warnings:
        log.warning(w)
    b1 = h1_torus_bundle(A).betti
    nf = _normal_form(A, budget, bound)
    return DivisorReport(e, Q, det, form_inertia, A, t, _branch(A), bridge,
                         b1, nf, 'universally tight', [PROPOSITION_1_6],
                         warnings)


def double_cover_report (n, k = 2):
    """H_1 of M_n and of its k-fold cover along the base.

double_cover_report(n, k = 2) -> CoverReport

The cover has monodromy (-T^n)^k; for the default k = 2 that is T^2n.

"""
    A = neg_T(n)
    cover = cover_monodromy(A, k)
    return CoverReport(n, k, A, cover, h1_torus_bundle(A),
                       h1_torus_bundle(cover))
