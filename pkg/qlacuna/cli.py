# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0.  If a copy of the MPL was not distributed with this
# file, You can obtain one at http://mozilla.org/MPL/2.0/.

"""
Command line front end. The payload goes to standard out as JSON or CSV,
diagnostics go to standard error.

Exit codes: 0 pass, 1 fail, 2 usage error, 3 error raised while computing.
"""

import argparse
import logging
import math
import sys
from datetime import datetime, timezone
from typing import List, Optional

import qlacuna
from qlacuna import bailey, identities, quadforms, tauber
from qlacuna.exceptions import Error, InterfaceError
from qlacuna.report import ERROR, RunReport
from qlacuna.series import MINUS_ONE
from qlacuna.settings import Settings, current

logger = logging.getLogger(__name__)

IDENTITIES = {
    '2.9': identities.P1,
    '2.10': identities.P2,
    '2.11': identities.P3,
    'p1': identities.P1,
    'p2': identities.P2,
    'p3': identities.P3,
}

LOVEJOY_SOURCES = {
    'lovejoy-C1': ('C1', 'L1'),
    'lovejoy-C5': ('C5', 'L2'),
}

GEOMETRIC_TOLERANCE = 0.01
GAUSS_TOLERANCE = 0.05
LANDAU_BAND = (0.3, 3.0)
C2_BAND = 2.0


def _form(text: str) -> quadforms.QuadFormSpec:
    try:
        return quadforms.parse_form(text)
    except InterfaceError as e:
        raise argparse.ArgumentTypeError(str(e))


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(',')]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, not {text!r}")


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, not {text}")
    return value


def _family(text: str) -> identities.IdentityFamily:
    try:
        return identities.family(text)
    except InterfaceError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='more diagnostics on standard error')
    common.add_argument('--format', choices=['json', 'csv'], default='json')

    parser = argparse.ArgumentParser(
        prog='qlacuna', allow_abbrev=False,
        description='Exact and numerical checks for lacunary q-series identities.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {qlacuna.__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    p = commands.add_parser('coeffs', parents=[common], allow_abbrev=False, help='dump coefficients')
    p.add_argument('--family', type=_family, required=True)
    p.add_argument('--side', choices=['lhs', 'rhs', 'formula'], default='rhs')
    p.add_argument('--n-max', type=_non_negative, default=20)
    p.set_defaults(run=cmd_coeffs)

    verify = commands.add_parser('verify', allow_abbrev=False, help='exact verification suites')
    suites = verify.add_subparsers(dest='suite', required=True)

    p = suites.add_parser('identity', parents=[common], allow_abbrev=False)
    p.add_argument('--which', choices=list(IDENTITIES), required=True)
    p.add_argument('--order', type=int, default=500)
    p.set_defaults(run=cmd_verify_identity)

    p = suites.add_parser('bailey', parents=[common], allow_abbrev=False)
    p.add_argument('--pair', choices=list(bailey.PAIRS) + list(LOVEJOY_SOURCES), required=True)
    p.add_argument('--n-max', type=_non_negative, default=10)
    p.add_argument('--order', type=int, default=80)
    p.set_defaults(run=cmd_verify_bailey)

    p = suites.add_parser('partitions', parents=[common], allow_abbrev=False)
    p.add_argument('--family', type=_family, required=True)
    p.add_argument('--n-max', type=int, default=30)
    p.set_defaults(run=cmd_verify_partitions)

    p = commands.add_parser('asym', parents=[common], allow_abbrev=False, help='bound profiles as z -> 1')
    p.add_argument('--family', type=_family, required=True)
    p.add_argument('--k-max', type=int, default=12)
    p.set_defaults(run=cmd_asym)

    p = commands.add_parser('quadform', parents=[common], allow_abbrev=False, help='partial sums of r(n)')
    p.add_argument('--form', type=_form, default=quadforms.SUM_OF_TWO_SQUARES)
    p.add_argument('--xs', type=_int_list, default=[1000, 10000, 100000])
    p.set_defaults(run=cmd_quadform)

    p = commands.add_parser('tauber-demo', parents=[common], allow_abbrev=False, help='Tauberian calibration')
    p.add_argument('--case', choices=['geometric', 'gauss', 'landau'], default='geometric')
    p.set_defaults(run=cmd_tauber_demo)

    p = commands.add_parser('triviality', parents=[common], allow_abbrev=False,
                            help='indicator(n) == R2(n) - R2(n-1)')
    source = p.add_mutually_exclusive_group()
    source.add_argument('--form', type=_form)
    source.add_argument('--family', type=_family)
    p.add_argument('--n-max', type=int, default=10000)
    p.set_defaults(run=cmd_triviality)

    return parser


def cmd_coeffs(args, settings: Settings) -> RunReport:
    f = args.family
    report = RunReport('coeffs', dict(family=f.tag, side=args.side, n_max=args.n_max), columns=['n', 'coefficient'])
    if args.side == 'lhs':
        values = identities.lhs(f, args.n_max + 1).dense(0, args.n_max + 1)
    elif args.side == 'rhs':
        values = identities.rhs_coefficients(f, args.n_max)
    else:
        # constant term of the double sum, then the explicit formula
        values = [1] + [identities.p1_formula(n) for n in range(1, args.n_max + 1)]
    for n, c in enumerate(values):
        report.add(n, int(c))
    return report


def cmd_verify_identity(args, settings: Settings) -> RunReport:
    f = IDENTITIES[args.which]
    check = identities.verify_identity(f, args.order)
    report = RunReport('verify identity', dict(which=args.which, order=args.order),
                       columns=['family', 'order', 'mismatches', 'first_exponent', 'lhs', 'rhs'])
    report.add(check.family, check.order, check.mismatches, check.first_exponent, check.lhs_value, check.rhs_value)
    if not check.passed:
        report.fail()
    return report


def cmd_verify_bailey(args, settings: Settings) -> RunReport:
    report = RunReport('verify bailey', dict(pair=args.pair, n_max=args.n_max, order=args.order),
                       columns=['n', 'passed', 'first_exponent', 'closed_form', 'closed_form_exponent'])
    closed = None
    if args.pair in LOVEJOY_SOURCES:
        source, target = LOVEJOY_SOURCES[args.pair]
        pair = bailey.lovejoy_transform(bailey.PAIRS[source](), MINUS_ONE)
        closed = bailey.pairs_equal(pair, bailey.PAIRS[target](), args.n_max, args.order)
    else:
        pair = bailey.PAIRS[args.pair]()
    checked = bailey.verify_pair(pair, args.n_max, args.order)
    for i, row in enumerate(checked.rows):
        if closed is None:
            report.add(row.n, row.passed, row.first_exponent, None, None)
        else:
            other = closed.rows[i]
            report.add(row.n, row.passed, row.first_exponent, other.passed, other.first_exponent)
    if not checked.passed or (closed is not None and not closed.passed):
        report.fail()
    return report


def cmd_verify_partitions(args, settings: Settings) -> RunReport:
    f = args.family
    report = RunReport('verify partitions', dict(family=f.tag, n_max=args.n_max),
                       columns=['n', 'enumerated', 'lhs', 'passed'])
    left = identities.lhs(f, args.n_max + 1)
    for n in range(1, args.n_max + 1):
        counted = identities.enumerate_partitions(f, n, settings).value
        expected = left.coeff(n)
        report.add(n, counted, expected, counted == expected)
        if counted != expected:
            report.fail()
    return report


def cmd_asym(args, settings: Settings) -> RunReport:
    f = args.family
    profile = tauber.bound_profile(f, args.k_max, settings)
    b1_ok = tauber.boundedness_proxy(profile.B1, settings=settings)
    b2_ok = tauber.boundedness_proxy(profile.B2, settings=settings)
    report = RunReport('asym', dict(family=f.tag, k_max=args.k_max, proxy_factor=settings.proxy_factor,
                                    B1_bounded=b1_ok, B2_bounded=b2_ok),
                       columns=['k', 'z', 'B1', 'B2'])
    for k, (z, b1, b2) in enumerate(zip(profile.zs, profile.B1, profile.B2), start=2):
        report.add(k, z, b1, b2)
    if not (b1_ok and b2_ok):
        report.fail()
    return report


def cmd_quadform(args, settings: Settings) -> RunReport:
    form = args.form
    summaries = quadforms.constant_profile(form, args.xs, settings)
    report = RunReport('quadform', dict(form=str(form), xs=','.join(str(x) for x in args.xs)),
                       columns=['x', 'R1', 'R2', 'C1_hat', 'C2_hat'])
    for s in summaries:
        report.add(s.x, s.R1, s.R2, s.C1_hat, s.C2_hat)
    monotone = all(a.R1 <= b.R1 and a.R2 <= b.R2 for a, b in zip(summaries, summaries[1:]))
    c2 = [s.C2_hat for s in summaries]
    if not monotone or max(c2) > C2_BAND * min(c2):
        report.fail()
    return report


def cmd_tauber_demo(args, settings: Settings) -> RunReport:
    if args.case == 'geometric':
        spec = tauber.AsymptoticSpec(1, 'constant_one', 1.0)
        source = tauber.geometric_source()
        grid = [1 - 10.0 ** -k for k in range(1, 4)]
    elif args.case == 'gauss':
        spec = tauber.AsymptoticSpec(1, 'constant_one', math.pi)
        source = tauber.representation_source(quadforms.SUM_OF_TWO_SQUARES, settings)
        grid = [1 - 10.0 ** -k for k in range(1, 5)]
    else:
        spec = tauber.AsymptoticSpec(1, 'inv_sqrt_log', 1.0)
        source = tauber.indicator_source(quadforms.SUM_OF_TWO_SQUARES, settings)
        grid = [1 - 10.0 ** -k for k in range(1, 5)]
    ratios = tauber.tauber_ratio_check(spec, source, grid, settings)
    report = RunReport('tauber-demo', dict(case=args.case, delta=spec.delta, h=spec.h, K=spec.K),
                       columns=['z', 'ratio'])
    for z, ratio in zip(grid, ratios):
        report.add(z, ratio)
    if args.case == 'landau':
        low, high = LANDAU_BAND
        passed = all(low <= r <= high for r in ratios)
    else:
        tolerance = GEOMETRIC_TOLERANCE if args.case == 'geometric' else GAUSS_TOLERANCE
        passed = abs(ratios[-1] - 1) <= tolerance
    if not passed:
        report.fail()
    return report


def cmd_triviality(args, settings: Settings) -> RunReport:
    source = args.family or args.form or quadforms.SUM_OF_TWO_SQUARES
    result = tauber.triviality_check(source, args.n_max, settings=settings)
    report = RunReport('triviality', dict(source=str(source), n_max=args.n_max),
                       columns=['n_max', 'passed', 'first_failure'])
    report.add(result.n_max, result.passed, result.first_failure)
    if not result.passed:
        report.fail()
    return report


def _validate(parser: argparse.ArgumentParser, args):
    if args.run is cmd_coeffs and args.side == 'formula' and args.family is not identities.P1:
        parser.error("--side formula is only available for p1")


_NOT_PARAMETERS = {'run', 'verbose', 'format', 'command', 'suite'}


def _command(args) -> str:
    if args.command == 'verify':
        return f"verify {args.suite}"
    return args.command


def _parameters(args) -> dict:
    """Command line values as report parameters, for runs that end in an error."""
    params = {}
    for key, value in sorted(vars(args).items()):
        if key in _NOT_PARAMETERS or value is None:
            continue
        if isinstance(value, list):
            value = ','.join(str(v) for v in value)
        elif not isinstance(value, (int, float)):
            value = str(value)
        params[key] = value
    return params


def _configure_logging(verbose: int):
    level = logging.WARNING - 10 * min(verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('qlacuna').setLevel(level)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2

    _configure_logging(args.verbose)
    logger.info(f"qlacuna {qlacuna.__version__}, started {datetime.now(timezone.utc).isoformat()}")

    try:
        settings = current()
        logger.debug(f"settings: {settings.summary()}")
        report = args.run(args, settings)
    except Error as e:
        logger.debug("command failed", exc_info=True)
        print(f"qlacuna: error: {e}", file=sys.stderr)
        report = RunReport(_command(args), _parameters(args), ERROR)

    sys.stdout.write(report.render(args.format))
    if args.format == 'json':
        sys.stdout.write('\n')
    logger.info(f"{report.command}: {report.status}")
    return report.exit_code
