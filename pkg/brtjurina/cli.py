"""Command line: compute, verify, table and case emission.

Exit codes: 0 success, 1 hypothesis rejected, 2 identity or consistency
check failed, 3 input error. Results go to stdout, diagnostics to stderr.
"""
import argparse
import logging
import os
import sys
from fractions import Fraction

from brtjurina.config import Config, RF_CAP_ENV
from brtjurina.errors import (
    BrTjurinaError, HypothesisError, InputError, VerificationError
)
from brtjurina.families import (
    BUILTIN, case_source, emit_case, parse_params
)
from brtjurina.identities import VERIFIERS, identities_for
from brtjurina.invariants import INVARIANT_NAMES
from brtjurina.orders import OrderKind
from brtjurina.parser import parse_case_sweep
from brtjurina.report import (
    build_report, dumps, m_family_table, table_json, table_text,
    write_table_csv
)
from brtjurina.utils import configure_logging, get_logger


logger = get_logger('cli')


class _ArgumentParser(argparse.ArgumentParser):
    """Reports usage errors as InputError instead of exiting."""

    def error(self, message):
        raise InputError(f'{self.prog}: {message}')


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument('--config_path', type=str, default=None,
                        help='Path to the json config.')
    common.add_argument('--log_path', type=str, default=None,
                        help='Optional log file.')
    common.add_argument('--quiet', action='store_true',
                        help='Only warnings on stderr, no progress bars.')
    common.add_argument('--order', choices=[k.value for k in OrderKind],
                        default=None, help='Local monomial order.')
    common.add_argument('--rf-cap', dest='rf_cap', type=int, default=None,
                        help=f'Cap of the r_f search (also ${RF_CAP_ENV}).')

    case_args = _ArgumentParser(add_help=False)
    case_args.add_argument('case', type=str,
                           help=f"Case file or built-in: {', '.join(BUILTIN)}.")
    case_args.add_argument('--param', action='append', default=[],
                           metavar='K=V', help='Built-in case parameter.')
    case_args.add_argument('--lambda', dest='lambda_values', action='append',
                           default=[], metavar='V',
                           help='Value of the case parameter lambda; '
                                'repeat to sweep.')
    case_args.add_argument('--json', action='store_true',
                           help='Print the report as JSON.')

    parser = _ArgumentParser(
        prog='brtjurina',
        description='Bruce-Roberts, Tjurina and GSV invariants of 1-forms.')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    compute = subparsers.add_parser('compute', parents=[common, case_args],
                                    help='Compute invariants of a case.')
    compute.add_argument('--invariant', dest='invariants', action='append',
                         choices=INVARIANT_NAMES, default=[],
                         help='Invariant to compute; repeat for several.')

    verify = subparsers.add_parser('verify', parents=[common, case_args],
                                   help='Check identities on a case.')
    verify.add_argument('--identity', default='all',
                        choices=list(VERIFIERS) + ['all'])

    table = subparsers.add_parser('table', parents=[common],
                                  help='Tabulate a built-in family.')
    table.add_argument('family', choices=['m-family'])
    table.add_argument('--m-min', dest='m_min', type=int, default=None)
    table.add_argument('--m-max', dest='m_max', type=int, default=None)
    table.add_argument('--workers', type=int, default=None)
    table.add_argument('--json', action='store_true')
    table.add_argument('--csv', type=str, default=None, metavar='PATH',
                       help='Also write the table as CSV.')

    case = subparsers.add_parser('case', help='Built-in case files.')
    case_commands = case.add_subparsers(dest='case_command')
    case_commands.required = True
    emit = case_commands.add_parser('emit', help='Print a built-in case.')
    emit.add_argument('name', choices=list(BUILTIN))
    emit.add_argument('params', nargs='*', metavar='K=V')
    return parser


def _setup(args):
    config = Config(args.config_path)
    level = logging.WARNING if args.quiet else logging.INFO
    configure_logging(args.log_path or config.get('log_path'), level=level)
    return config


def _rf_cap(args, config, case):
    if args.rf_cap is not None:
        if args.rf_cap < 1:
            raise InputError(f'--rf-cap must be at least 1, got {args.rf_cap}')
        return args.rf_cap
    if os.environ.get(RF_CAP_ENV) is None and case.options.rf_cap:
        return case.options.rf_cap
    return config.get_rf_cap()


def _rationals(values):
    try:
        return [Fraction(v) for v in values]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"--lambda values must be rationals, got {values}")


def _load_cases(args, config):
    name, text = case_source(args.case, parse_params(args.param))
    return parse_case_sweep(text, name,
                            lambda_values=_rationals(args.lambda_values),
                            default_lambda_values=config.get_lambda_values())


def _print_reports(reports, as_json):
    if as_json:
        documents = [r.to_json() for r in reports]
        print(dumps(documents[0] if len(documents) == 1 else documents))
    else:
        print('\n\n'.join(r.to_text() for r in reports))


def _case_reports(args, config, identities=()):
    reports = []
    for case in _load_cases(args, config):
        order = args.order or case.options.order or config.get_order()
        reports.append(build_report(
            case, invariants=getattr(args, 'invariants', None),
            identities=identities, order=order,
            rf_cap=_rf_cap(args, config, case),
            include_invariants=not identities))
    return reports


def compute(args):
    config = _setup(args)
    _print_reports(_case_reports(args, config), args.json)


def verify(args):
    config = _setup(args)
    selected = identities_for(args.identity)
    reports = _case_reports(args, config, identities=selected)
    _print_reports(reports, args.json)
    failed = [f'{r.case}: {name}' for r in reports
              for name, identity in r.identities.items() if not identity.holds]
    if failed:
        raise VerificationError(
            f"identity check failed: {', '.join(failed)}", reports)


def table(args):
    config = _setup(args)
    m_min = args.m_min if args.m_min is not None else config.get_table('m_min')
    m_max = args.m_max if args.m_max is not None else config.get_table('m_max')
    workers = (args.workers if args.workers is not None
               else config.get_table('workers'))
    if m_min < 1 or m_max < m_min:
        raise InputError(f'need 1 <= m-min <= m-max, got {m_min}..{m_max}')
    if workers < 1:
        raise InputError(f'--workers must be at least 1, got {workers}')
    rf_cap = args.rf_cap if args.rf_cap is not None else config.get_rf_cap()
    rows = m_family_table(m_min, m_max, workers=workers, rf_cap=rf_cap,
                          order=args.order or config.get_order(),
                          progress=not args.quiet)
    if args.csv:
        write_table_csv(rows, args.csv)
    print(dumps(table_json(rows)) if args.json else table_text(rows))


def case(args):
    sys.stdout.write(emit_case(args.name, parse_params(args.params)))


COMMANDS = {
    'compute': compute,
    'verify': verify,
    'table': table,
    'case': case,
}


def run_cli(argv=None) -> int:
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args)
    except SystemExit as exc:
        # --help
        return exc.code if isinstance(exc.code, int) else 0
    except HypothesisError as exc:
        print(f'error: {exc}', file=sys.stderr)
        for line in exc.diagnostics:
            print(f'  {line}', file=sys.stderr)
        return exc.exit_code
    except BrTjurinaError as exc:
        print(f'error: {exc}', file=sys.stderr)
        return exc.exit_code
    return 0


def main():
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == '__main__':
    main()
