"""torusfill command line module.

This program is free software: you can redistribute it and/or modify it under
the terms of the GNU General Public License as published by the Free Software
Foundation, either version 3 of the License, or (at your option) any later
version.

Usage: torusfill COMMAND [options]; 'torusfill COMMAND --help' lists a
command's options.  Values starting with '-' other than plain negative numbers
must be attached with '=', as in --e=-2,-2 or --matrix=-1,0;0,-1.

Exit codes: 0 for definite answers, 1 when a computation's hypotheses fail, 2
for usage errors and 3 when any answer is Unknown.

    CLASSES

Request
UsageError

    FUNCTIONS

build_parser
parse_request
run
main

"""

from collections import namedtuple
import argparse
import logging
import sys

from . import conf, fillability, homology, mcgwords, report, seqcalc, sl2z
from .conf import settings
from .sl2z import Answer

log = logging.getLogger(__name__)

COMMANDS = ('classify', 'h1', 'normal-form', 'rho', 'reduce', 'ledger',
            'verdict', 'embed-search', 'divisor', 'mcg-verify', 'cover',
            'config')
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3

Request = namedtuple('Request', 'command payload format budget bound')


class UsageError (Exception):
    """Raised for bad command lines.

Takes the message and the usage text, kept as attributes.

"""

    def __init__ (self, message, usage = ''):
        self.message = message
        self.usage = usage
        Exception.__init__(self, message)


class _Parser (argparse.ArgumentParser):
    def error (self, message):
        raise UsageError(message, self.format_usage())


def _arg_type (parse):
    def convert (text):
        try:
            return parse(text)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e))
    convert.__name__ = parse.__name__
    return convert


_matrix = _arg_type(sl2z.parse_matrix)
_seq = _arg_type(seqcalc.parse_seq)


def _add_monodromy (p, required = True):
    group = p.add_mutually_exclusive_group(required = required)
    group.add_argument('--matrix', type = _matrix,
                       help = 'monodromy as a,b;c,d or [[a,b],[c,d]]')
    group.add_argument('--n', type = int, help = 'monodromy -T^n')
    group.add_argument('--seq', type = _seq, help = 'monodromy -A(d)')


def build_parser ():
    """Build the argument parser; its errors raise UsageError."""
    common = _Parser(add_help = False)
    common.add_argument('--json', action = 'store_true',
                        help = 'print a JSON report')
    common.add_argument('--budget', type = int,
                        help = 'largest sequence sum to search')
    common.add_argument('--bound', type = int,
                        help = 'largest conjugator entry to search')

    parser = _Parser(prog = conf.IDENTIFIER, description = 'Fillability of '
                     'contact structures on torus bundles.')
    parser.add_argument('--version', action = 'version',
                        version = '{} {}'.format(conf.APPLICATION,
                                                 conf.VERSION))
    sub = parser.add_subparsers(dest = 'command', metavar = 'COMMAND')
    sub.required = True

    p = sub.add_parser('classify', parents = [common],
                       help = 'trace class of a monodromy')
    _add_monodromy(p)
    p.add_argument('--against', type = _matrix,
                   help = 'decide whether the bundles are diffeomorphic')
    p = sub.add_parser('h1', parents = [common],
                       help = 'first homology of a torus bundle')
    _add_monodromy(p)
    p = sub.add_parser('normal-form', parents = [common],
                       help = 'normal form of a parabolic or hyperbolic '
                              'monodromy')
    _add_monodromy(p)
    for name, h in (('rho', 'the sequence of the reversed bundle'),
                    ('reduce', 'handle reduction of -A(d) to (3,2,...,2)'),
                    ('embed-search', 'look for an embeddability witness')):
        p = sub.add_parser(name, parents = [common], help = h)
        p.add_argument('--seq', type = _seq, required = True)
    p = sub.add_parser('ledger', parents = [common],
                       help = 'handle and b2 ledgers')
    _add_monodromy(p)
    p = sub.add_parser('verdict', parents = [common],
                       help = 'fillability of a contact structure')
    p.add_argument('--structure', choices = ('xi', 'xi-prime', 'eta'),
                   required = True)
    _add_monodromy(p, required = False)
    p.add_argument('--m', type = int, default = 1,
                   help = 'twisting, a positive odd number (default 1)')
    p = sub.add_parser('divisor', parents = [common],
                       help = 'check a circular divisor\'s boundary')
    p.add_argument('--e', type = _seq, required = True,
                   help = 'self-intersections, e.g. --e=0,0')
    p = sub.add_parser('mcg-verify', parents = [common],
                       help = 'replay a Dehn twist move script')
    p.add_argument('--script', help = 'move script (default: the shipped '
                                      'psi_-4 derivation)')
    p = sub.add_parser('cover', parents = [common],
                       help = 'homology of a cover of M_n')
    p.add_argument('--n', type = int, required = True)
    p.add_argument('--k', type = int, default = 2, help = 'cover degree')
    p = sub.add_parser('config', parents = [common], help = 'show or change '
                       'settings')
    p.add_argument('--set', metavar = 'KEY=VALUE')
    return parser


def _monodromy (args):
    if args.matrix is not None:
        return args.matrix
    if args.n is not None:
        return sl2z.neg_T(args.n)
    if args.seq is not None:
        return -seqcalc.eval_A(args.seq)
    return None


def _payload (args, usage):
    cmd = args.command
    if cmd == 'classify':
        return (_monodromy(args), args.against)
    if cmd in ('h1', 'normal-form'):
        return _monodromy(args)
    if cmd in ('rho', 'reduce', 'embed-search'):
        if not seqcalc.is_hyperbolic_shape(args.seq):
            raise UsageError('--seq needs every entry >= 2 and some entry '
                             '>= 3', usage)
        return args.seq
    if cmd == 'ledger':
        if args.seq is not None:
            if not seqcalc.is_hyperbolic_shape(args.seq):
                raise UsageError('--seq needs every entry >= 2 and some '
                                 'entry >= 3', usage)
            return ('seq', args.seq)
        if args.n is not None:
            return ('n', args.n)
        return ('matrix', args.matrix)
    if cmd == 'verdict':
        try:
            if args.structure == 'xi':
                if args.m < 1 or args.m % 2 == 0:
                    raise UsageError('m must be odd and positive, not {}'
                                     .format(args.m), usage)
                A = _monodromy(args)
                if A is None:
                    raise UsageError('xi needs --matrix, --n or --seq', usage)
                return fillability.xi_A(A, args.m)
            if args.n is None:
                raise UsageError('{} needs --n'.format(args.structure), usage)
            if args.structure == 'xi-prime':
                return fillability.xi_prime(args.n)
            return fillability.eta(args.n)
        except fillability.InvalidDescriptor as e:
            raise UsageError(str(e), usage)
    if cmd == 'divisor':
        return args.e
    if cmd == 'mcg-verify':
        return args.script or settings['moves_file'] or None
    if cmd == 'cover':
        if args.k < 1:
            raise UsageError('--k must be positive', usage)
        return (args.n, args.k)
    if cmd == 'config':
        if args.set is None:
            return None
        key, sep, value = args.set.partition('=')
        try:
            return (key, conf.parse_setting(key, value))
        except KeyError:
            raise UsageError('unknown setting: {!r}'.format(key), usage)
        except ValueError as e:
            raise UsageError(str(e), usage)


def parse_request (argv):
    """Parse command line arguments (without the program name).

parse_request(argv) -> Request

Raises UsageError.

"""
    parser = build_parser()
    args = parser.parse_args(argv)
    usage = parser.format_usage()
    budget = settings['seq_budget'] if args.budget is None else args.budget
    bound = settings['conjugator_bound'] if args.bound is None else args.bound
    if budget < 1 or bound < 1:
        raise UsageError('--budget and --bound must be positive', usage)
    fmt = 'json' if args.json else settings['output_format']
    return Request(args.command, _payload(args, usage), fmt, budget, bound)


def _classify (req):
    A, B = req.payload
    bc = sl2z.classify(A)
    result = {'matrix': A, 'kind': bc.kind, 'sign': bc.sign,
              'trace': bc.trace}
    citations = []
    if B is not None:
        d = sl2z.bundles_diffeomorphic(A, B, req.bound, req.budget)
        result['against'] = B
        result['diffeomorphic'] = d.answer
        citations.append(d.reason)
    return report.make_report(req.command, result, citations)


def _h1 (req):
    A = req.payload
    G = homology.h1_torus_bundle(A)
    return report.make_report(req.command, {
        'matrix': A, 'group': homology.format_group(G), 'betti': G.betti,
        'torsion': G.torsion,
        'annihilator': homology.torsion_annihilator(A)
    })


def _normal_form (req):
    A = req.payload
    bc = sl2z.classify(A)
    result = {'matrix': A, 'kind': bc.kind}
    if bc.kind == sl2z.Kind.PARABOLIC:
        nf = seqcalc.parabolic_normal_form(A)
        result['form'] = '{}T^{}'.format('-' if nf.sign < 0 else '', nf.n)
        result['n'] = nf.n
        result['conjugator'] = nf.conjugator
    elif bc.kind == sl2z.Kind.HYPERBOLIC:
        negative = bc.trace < 0
        dec = seqcalc.decompose_negative_hyperbolic(A if negative else -A,
                                                    req.budget, req.bound)
        if dec is None:
            result['form'] = Answer.UNKNOWN
        else:
            result['form'] = '{}A({})'.format('-' if negative else '',
                                              seqcalc.format_seq(dec.seq))
            result['sequence'] = dec.seq
            result['blocks'] = seqcalc.format_blocks(
                seqcalc.parse_blocks(dec.seq))
            result['conjugator'] = dec.conjugator
    else:
        raise UsageError('elliptic matrices have no normal form here')
    return report.make_report(req.command, result)


def _rho (req):
    d = req.payload
    r = seqcalc.rho(d)
    return report.make_report(req.command, {
        'sequence': d,
        'blocks': seqcalc.format_blocks(seqcalc.parse_blocks(d)),
        'rho': r,
        'rho_blocks': seqcalc.format_blocks(seqcalc.parse_blocks(r))
    })


def _reduce (req):
    d = req.payload
    red = fillability.cobordism_reduce(d)
    return report.make_report(req.command, {
        'sequence': d,
        'steps': [{'sequence': seqcalc.format_seq(step.sequence),
                   'handles': step.handles} for step in red.steps],
        'final': red.final,
        'handles': red.handles,
        'b2plus': red.ledger.b2plus,
        'b2minus_lower_bound': red.ledger.b2minus
    }, red.ledger.provenance)


def _ledger (req):
    what, value = req.payload
    if what == 'seq':
        return report.make_report(req.command,
                                  fillability.theorem14_ledger(value),
                                  [fillability.THEOREM_1_4])
    if what == 'n':
        ledger = homology.w_ledger_parabolic(value)
        return report.make_report(req.command, {
            'n': value, 'b2plus': ledger.b2plus, 'b2minus': ledger.b2minus,
            'form': ledger.form
        }, ledger.provenance)
    ledger = homology.wprime_ledger_hyperbolic(value)
    return report.make_report(req.command, {
        'matrix': value, 'self_intersection': ledger.form[0][0],
        'b2plus': ledger.b2plus, 'b2minus': ledger.b2minus
    }, ledger.provenance)


def _verdict (req):
    desc = req.payload
    v = fillability.verdict(desc, req.budget, req.bound)
    result = {'structure': desc.structure}
    if desc.structure == fillability.Structure.XI:
        result['matrix'] = desc.A
        result['m'] = desc.m
    else:
        result['n'] = desc.n
    result.update(weak = v.weak, strong = v.strong, stein = v.stein,
                  witness = v.witness)
    return report.make_report(req.command, result, v.citations)


def _embed_search (req):
    d = req.payload
    found = fillability.embeddable_sufficient(d)
    result = {'sequence': d, 'rho': seqcalc.rho(d)}
    citations = []
    warnings = []
    if isinstance(found, fillability.RuleS1):
        result['embeddable'] = Answer.YES
        result['rule'] = 'S1'
        citations.append(found.citation)
    else:
        warnings.append('rotations of rho(d) were tried, reflections were '
                        'not')
        if found is None:
            result['embeddable'] = Answer.UNKNOWN
        else:
            result['embeddable'] = Answer.YES
            result['edges'] = found.edges
            result['blowup'] = found.sequence
            result['rotation'] = found.rotation
            citations.append('{} is a blowup of (0,0) and {} <= rho(d) '
                             'rotated by {}'.format(
                                 seqcalc.format_seq(found.sequence),
                                 seqcalc.format_seq(found.sequence),
                                 found.rotation))
    return report.make_report(req.command, result, citations, warnings)


def _divisor (req):
    r = fillability.universally_tight_divisor_report(req.payload, req.budget,
                                                     req.bound)
    result = r._asdict()
    del result['citations'], result['warnings']
    result['universally_tight'] = Answer.YES
    return report.make_report(req.command, result, r.citations, r.warnings)


def _mcg_verify (req):
    fn = req.payload or mcgwords.SHIPPED_SCRIPT
    script = mcgwords.load_script(fn)
    v = mcgwords.verify_derivation(script.start, script.moves,
                                   script.checkpoints)
    result = {'script': fn, 'start': mcgwords.format_word(script.start),
              'moves': len(script.moves),
              'checkpoints': len(script.checkpoints),
              'verified': Answer.YES if v.verified else Answer.NO,
              'step': v.step, 'reason': v.reason}
    citations = ['replay of {}'.format(fn)]
    if v.verified:
        w = script.start
        for mv in script.moves:
            w = mcgwords.apply_move(w, mv)
        pos = mcgwords.is_positive_factorization(w)
        result['final'] = mcgwords.format_word(w)
        if pos is None:
            result['positive'] = Answer.UNKNOWN
        else:
            result['positive'] = Answer.YES
            result['blocks'] = [mcgwords.format_word(b) for b in pos.blocks]
    shadows = [mcgwords.homological_shadow(c) for c in script.checkpoints]
    result['shadows_agree'] = all(s == shadows[0] for s in shadows)
    return report.make_report(req.command, result, citations)


def _cover (req):
    n, k = req.payload
    cr = fillability.double_cover_report(n, k)
    return report.make_report(req.command, {
        'n': n, 'k': k, 'monodromy': cr.monodromy, 'cover': cr.cover,
        'h1': homology.format_group(cr.h1),
        'h1_cover': homology.format_group(cr.h1_cover)
    })


def _config (req):
    if req.payload is not None:
        key, value = req.payload
        settings[key] = value
    return report.make_report(req.command, dict(settings.items()))


_handlers = {
    'classify': _classify,
    'h1': _h1,
    'normal-form': _normal_form,
    'rho': _rho,
    'reduce': _reduce,
    'ledger': _ledger,
    'verdict': _verdict,
    'embed-search': _embed_search,
    'divisor': _divisor,
    'mcg-verify': _mcg_verify,
    'cover': _cover,
    'config': _config
}


def run (req):
    """Carry out a request.

run(req) -> (report, exit_code)

Raises UsageError, and ValueError subclasses (HypothesisFailed and the like)
for inputs a computation can't take.

"""
    rep = _handlers[req.command](req)
    return (rep, EXIT_UNKNOWN if report.has_unknown(rep) else EXIT_OK)


def main (argv = None):
    """Command line entry point; returns the exit code."""
    conf.setup_logging()
    if argv is None:
        argv = sys.argv[1:]
    try:
        req = parse_request(argv)
        rep, code = run(req)
    except UsageError as e:
        sys.stderr.write(e.usage)
        log.error(e.message)
        return EXIT_USAGE
    except (ValueError, IOError) as e:
        log.error(e)
        return EXIT_FAILED
    if req.format == 'json':
        sys.stdout.write(report.to_json(rep))
    else:
        sys.stdout.write(report.to_text(rep))
    return code


if __name__ == '__main__':
    sys.exit(main())
