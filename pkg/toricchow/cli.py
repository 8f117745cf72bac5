#!/usr/bin/env python3
# File name   : cli.py
# Description : Command line front-end, JSON in and JSON out
# Author      : toricchow developers

import argparse
import json
import logging
import os
import sys

from . import blowup, chow, logchow
from .config import CLI_CONFIG, LOGGING_CONFIG, VERIFY_CONFIG
from .errors import InputError, ToricError
from .fan import (canonical_json, fan_fingerprint, fan_to_dict, is_complete, is_locally_free,
                  load_fan, make_cone, read_json, star)
from .fixtures import FAN_FIXTURES, FIXTURE_DIR, fixture_path
from .verify import list_suites, run_suite

logger = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _resolve(text):
    """A path, or the name of a shipped fixture (with or without .json)."""
    if os.path.exists(text):
        return text
    for name in (text, f"{text}.json"):
        if os.path.exists(os.path.join(FIXTURE_DIR, FAN_FIXTURES.get(name, name))):
            return fixture_path(name)
    return text


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required here")
    return value


def _inputs(args, count):
    if len(args.inputs) != count:
        raise UsageError(f"{args.command} {args.action} takes {count} input(s)")
    return args.inputs


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"malformed {what}", line=e.lineno, column=e.colno, reason=e.msg)


def _cone_arg(f, text):
    rays = _json_arg(text, 'cone')
    try:
        return make_cone([tuple(int(x) for x in r) for r in rays], f.rank)
    except (TypeError, ValueError) as e:
        raise InputError("malformed cone", reason=repr(e))


def _check_fingerprint(data, f):
    given = data.get('fan') if isinstance(data, dict) else None
    if isinstance(given, str) and given != fan_fingerprint(f):
        raise InputError("input belongs to a different fan", fingerprint=given)


def _load_cycle(path, f):
    data = read_json(_resolve(path))
    _check_fingerprint(data, f)
    return chow.load_cycle(data, f)


def _load_weight(path, f):
    data = read_json(_resolve(path))
    _check_fingerprint(data, f)
    return chow.load_weight(data, f)


def _load_class(path, base, level_path=None):
    """A log class file, or a bare cycle placed at --level (identity level by default)."""
    data = read_json(_resolve(path))
    if isinstance(data, dict) and 'cycle' in data:
        return logchow.load_class(data, base)
    level = blowup.load_subdivision(_resolve(level_path)) if level_path else blowup.identity_subdivision(base)
    if level.target != base:
        raise InputError("level does not subdivide the base fan")
    return logchow.LogCycleClass(base, level, chow.load_cycle(data, level.source))


def _cohomology_class(args, base):
    if args.polytope:
        return logchow.polytope_class(logchow.load_polytope(_resolve(args.polytope)), base)
    if args.weight:
        return logchow.weight_class(base, _load_weight(args.weight, base))
    raise UsageError("one of --polytope or --weight is required")


# Command groups

def fan_command(args, response):
    f = load_fan(_resolve(args.fan))
    response['title'] = f"fan {args.action}"
    if args.action == 'check':
        response['data'] = {
            'locally_free': is_locally_free(f),
            'complete': is_complete(f),
            'rank': f.rank,
            'rays': len(f.rays),
            'fingerprint': fan_fingerprint(f),
        }
    elif args.action == 'resolve':
        response['data'] = blowup.subdivision_to_dict(blowup.resolve(f))
    elif args.action == 'star':
        response['data'] = fan_to_dict(star(f, _cone_arg(f, _need(args.cone, "--cone"))))
    elif args.action == 'complete':
        done = chow.complete_fan(f)
        response['data'] = {
            'fan': fan_to_dict(done.fan),
            'resolution': blowup.subdivision_to_dict(done.resolution),
            'embedding': list(done.embedding),
        }


def blowup_command(args, response):
    response['title'] = f"blowup {args.action}"
    if args.action == 'refine':
        s1, s2 = (blowup.load_subdivision(_resolve(path)) for path in _inputs(args, 2))
        meet, first, second = blowup.common_refinement(s1, s2)
        response['data'] = {
            'fan': fan_to_dict(meet),
            'first': blowup.subdivision_to_dict(first),
            'second': blowup.subdivision_to_dict(second),
        }
        return
    f = load_fan(_resolve(_inputs(args, 1)[0]))
    if args.action == 'star':
        s = blowup.star_subdivision(f, _json_arg(_need(args.point, '--point'), 'point'))
    elif args.action == 'ideal':
        generators = _json_arg(_need(args.generators, '--generators'), 'generators')
        ideal = blowup.MonoidIdeal(_cone_arg(f, _need(args.cone, '--cone')),
                                   tuple(tuple(int(x) for x in g) for g in generators))
        s = blowup.ideal_blowup(f, ideal)
    else:
        s = blowup.barycentric(f)
    response['data'] = blowup.subdivision_to_dict(s)


def chow_command(args, response):
    f = load_fan(_resolve(args.fan))
    response['title'] = 'chow present'
    dims = [args.dim] if args.dim is not None else range(f.rank + 1)
    response['data'] = {'presentations': [chow.chow_presentation(f, k).to_dict() for k in dims]}


def mw_command(args, response):
    f = load_fan(_resolve(args.fan))
    response['title'] = 'mw basis'
    response['data'] = {'basis': [chow.weight_to_dict(w)
                                  for w in chow.minkowski_weight_basis(f, args.codim)]}


def cup_command(args, response):
    f = load_fan(_resolve(args.fan))
    response['title'] = 'cup'
    product = chow.cup(_load_weight(args.first, f), _load_weight(args.second, f), seed=args.seed)
    response['data'] = chow.weight_to_dict(product)


def _is_morphism(data):
    return isinstance(data, dict) and 'map' in data


def push_command(args, response):
    response['title'] = 'push'
    data = read_json(_resolve(args.map))
    if _is_morphism(data):
        m = blowup.load_morphism(data)
        pushed = logchow.log_pushforward(m, _load_class(args.input, m.source, args.level))
        response['data'] = logchow.class_to_dict(pushed)
    else:
        s = blowup.load_subdivision(data)
        response['data'] = chow.cycle_to_dict(
            chow.pushforward_subdivision(s, _load_cycle(args.input, s.source)))


def pull_command(args, response):
    response['title'] = 'pull'
    data = read_json(_resolve(args.map))
    if _is_morphism(data):
        m = blowup.load_morphism(data)
        pulled = logchow.log_flat_pullback(m, _load_class(args.input, m.target, args.level))
        response['data'] = logchow.class_to_dict(pulled)
    else:
        s = blowup.load_subdivision(data)
        response['data'] = chow.weight_to_dict(
            chow.weight_pullback(s, _load_weight(args.input, s.target)))


def gysin_command(args, response):
    response['title'] = 'gysin'
    s = blowup.load_subdivision(_resolve(args.subdivision))
    response['data'] = chow.cycle_to_dict(
        chow.gysin_subdivision(s, _load_cycle(args.cycle, s.target)))


def logchow_command(args, response):
    base = load_fan(_resolve(args.base))
    response['title'] = f"logchow {args.action}"
    if args.action == 'eq':
        first, second = (_load_class(path, base, args.level) for path in _inputs(args, 2))
        response['data'] = {'equal': logchow.equals(first, second)}
    elif args.action == 'act':
        a = _load_class(_inputs(args, 1)[0], base, args.level)
        response['data'] = logchow.class_to_dict(
            logchow.act(_cohomology_class(args, base), a, seed=args.seed))
    elif args.action == 'pair':
        a = _load_class(_inputs(args, 1)[0], base, args.level)
        response['data'] = {'pairing': logchow.poincare_pair(_cohomology_class(args, base), a)}
    elif args.action == 'excision':
        sigma = _cone_arg(base, _need(args.cone, '--cone'))
        response['data'] = logchow.excision_report(base, sigma)


def verify_command(args, response):
    response['title'] = f"verify {args.suite}"
    if args.suite == 'list':
        response['data'] = {'suites': list_suites()}
        return
    if args.suite not in list_suites():
        raise UsageError(f"unknown suite {args.suite!r}; try 'verify list'")
    fans = [load_fan(_resolve(path)) for path in args.fan or []]
    report = run_suite(args.suite, seed=args.seed, depth=args.depth, preset=args.preset, fans=fans)
    response['data'] = report
    if not report['pass']:
        response['status'] = 'failed'


COMMANDS = {
    'fan': fan_command,
    'blowup': blowup_command,
    'chow': chow_command,
    'mw': mw_command,
    'cup': cup_command,
    'push': push_command,
    'pull': pull_command,
    'gysin': gysin_command,
    'logchow': logchow_command,
    'verify': verify_command,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument('--seed', type=int, default=VERIFY_CONFIG['default_seed'],
                        help='seed for displacement vectors and random suites')
    common.add_argument('--out', help='write the JSON result to this path')
    common.add_argument('--verbose', action='store_true', help='debug logging on stderr')

    parser = _Parser(prog='toricchow', description='Exact log Chow computations on fans')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('fan', parents=[common], help='fan queries')
    p.add_argument('action', choices=['check', 'resolve', 'star', 'complete'])
    p.add_argument('fan')
    p.add_argument('--cone', help='JSON list of rays (fan star)')

    p = sub.add_parser('blowup', parents=[common], help='subdivisions')
    p.add_argument('action', choices=['star', 'ideal', 'barycentric', 'refine'])
    p.add_argument('inputs', nargs='+', help='fan, or two subdivisions for refine')
    p.add_argument('--point', help='JSON vector (blowup star)')
    p.add_argument('--cone', help='JSON list of rays (blowup ideal)')
    p.add_argument('--generators', help='JSON list of dual vectors (blowup ideal)')

    p = sub.add_parser('chow', parents=[common], help='Chow group presentations')
    p.add_argument('action', choices=['present'])
    p.add_argument('fan')
    p.add_argument('--dim', type=int)

    p = sub.add_parser('mw', parents=[common], help='Minkowski weights')
    p.add_argument('action', choices=['basis'])
    p.add_argument('fan')
    p.add_argument('--codim', type=int, required=True)

    p = sub.add_parser('cup', parents=[common], help='cup product of two weights')
    p.add_argument('fan')
    p.add_argument('first')
    p.add_argument('second')

    for name, help_text in (('push', 'pushforward along a subdivision or proper morphism'),
                            ('pull', 'pullback along a subdivision or flat morphism')):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument('map', help='subdivision or morphism JSON')
        p.add_argument('input', help='cycle, weight or class JSON')
        p.add_argument('--level', help='subdivision JSON carrying a bare cycle')

    p = sub.add_parser('gysin', parents=[common], help='Gysin pullback along a subdivision')
    p.add_argument('subdivision')
    p.add_argument('cycle')

    p = sub.add_parser('logchow', parents=[common], help='log Chow classes')
    p.add_argument('action', choices=['eq', 'act', 'pair', 'excision'])
    p.add_argument('base')
    p.add_argument('inputs', nargs='*')
    p.add_argument('--level', help='subdivision JSON carrying bare cycles')
    p.add_argument('--polytope', help='polytope JSON {"vertices": [...]}')
    p.add_argument('--weight', help='weight JSON on the base')
    p.add_argument('--cone', help='JSON list of rays (excision)')

    p = sub.add_parser('verify', parents=[common], help='verification suites')
    p.add_argument('suite', help="suite name, 'all' or 'list'")
    p.add_argument('--fan', action='append', help='run on this fan instead of the fixtures')
    p.add_argument('--depth', type=int, default=None)
    p.add_argument('--preset', default='acceptance', choices=['quick', 'acceptance', 'thorough'])
    return parser


def _emit(payload, out):
    text = canonical_json(payload)
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text + '\n')
    else:
        sys.stdout.write(text + '\n')


def run(argv=None) -> int:
    """Parse argv, run one command and print its JSON result; returns the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return CLI_CONFIG['exit_usage']

    level = LOGGING_CONFIG['verbose_level'] if args.verbose else LOGGING_CONFIG['level']
    logging.basicConfig(level=getattr(logging, level), format=LOGGING_CONFIG['format'],
                        stream=sys.stderr)

    response = {
        'schema_version': CLI_CONFIG['schema_version'],
        'status': 'ok',
        'title': args.command,
        'data': None,
    }
    try:
        COMMANDS[args.command](args, response)
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return CLI_CONFIG['exit_usage']
    except ToricError as e:
        logger.debug("domain error: %s", e.message)
        _emit({'schema_version': CLI_CONFIG['schema_version'], 'status': 'error',
               'title': response['title'], 'error': e.to_dict()}, args.out)
        return CLI_CONFIG['exit_domain']
    _emit(response, args.out)
    if response['status'] == 'failed':
        return CLI_CONFIG['exit_domain']
    return CLI_CONFIG['exit_ok']


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
