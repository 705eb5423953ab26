"""
odelin entry point for console script

Modes:
    test1 ODE       Test I, symmetry algebra (no parameters or functions)
    test2 ODE       Test II, Thomas decomposition of the linearizing system
    lie ODE         Lie's conditions for second order ODEs
    serve           Run the HTTP service

Exit codes: 0 linearizable, 1 not linearizable, 2 usage or input error,
3 resource limit exceeded.
"""
import argparse
import logging
import os
import sys
from configparser import Error as ConfigError

from odelin.app import webapp
from odelin.config import SiteConfig
from odelin.db import init_db, open_session
from odelin.db.models import ReportRecord
from odelin.errors import OdelinError, ResourceLimitError
from odelin.liealg import linearization_test_1
from odelin.linearize import lie_conditions, linearization_test_2
from odelin.log import init_log
from odelin.parser import parse_ode
from odelin.report import EXIT_RESOURCE_LIMIT, EXIT_USAGE, report_lie, report_test1, report_test2
from odelin.utils import Stopwatch

# Log handler
logs = logging.getLogger(__name__)

# Defaults
DEFAULT_CONFIG_PATH = '/etc/odelin.conf'


def build_parser():
    """Argument parser of the console script"""
    parser = argparse.ArgumentParser(prog='odelin',
                                     description='Linearizability tests for quasi-linear ODEs')
    parser.add_argument('-c', '--config', help='Config file to load')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='More logging, repeat for debug output')

    # also accepted after the mode, without overriding the values given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', default=argparse.SUPPRESS, help='Config file to load')
    common.add_argument('-v', '--verbose', action='count', default=argparse.SUPPRESS,
                        help='More logging, repeat for debug output')

    modes = parser.add_subparsers(dest='mode', metavar='MODE')
    modes.required = True

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument('ode', help="ODE, e.g. \"y'' + y'^2/y = 0\"")
    run.add_argument('--json', action='store_true', help='Print the report as JSON')
    run.add_argument('--timing', action='store_true', help='Report the elapsed time')
    run.add_argument('--archive', action='store_true', help='Store the report in the database')

    declared = argparse.ArgumentParser(add_help=False)
    declared.add_argument('--param', action='append', default=[], metavar='NAME',
                          help='Parameter name (repeatable)')
    declared.add_argument('--func', action='append', default=[], metavar='NAME',
                          help='Undetermined function of (x, y) (repeatable)')

    test1 = modes.add_parser('test1', parents=[common, run, declared],
                             help='Symmetry algebra test (no parameters or functions)')
    test1.add_argument('--series-order', type=int, help='Series truncation order')

    test2 = modes.add_parser('test2', parents=[common, run, declared],
                             help='Thomas decomposition test')
    test2.add_argument('--max-branches', type=int, help='Branch ceiling')
    test2.add_argument('--max-terms', type=int, help='Polynomial size ceiling')

    modes.add_parser('lie', parents=[common, run, declared], help="Lie's conditions (n = 2)")

    serve = modes.add_parser('serve', parents=[common], help='Run the HTTP service')
    serve.add_argument('-b', '--bind', help='Address to bind to')
    serve.add_argument('-p', '--port', type=int, help='HTTP server port')
    serve.add_argument('-d', '--debug', action='store_true', help='Run the server in debug mode')
    return parser


def load_config(filename=None):
    """Config from ``filename``, the default path if present, or built-in defaults

    :raises configparser.Error: when a named file cannot be used
    """
    if filename:
        return SiteConfig.from_file(filename)
    if os.path.exists(DEFAULT_CONFIG_PATH):
        return SiteConfig.from_file(DEFAULT_CONFIG_PATH)
    return SiteConfig.defaults()


def run_test(args, config):
    """Run one test mode, returning its report"""
    params = getattr(args, 'param', [])
    funcs = getattr(args, 'func', [])
    with Stopwatch() as watch:
        problem = parse_ode(args.ode, params, funcs)
        if args.mode == 'test1':
            result = linearization_test_1(problem, config.series_order(args.series_order),
                                          config.max_points)
        elif args.mode == 'test2':
            result = linearization_test_2(problem, config.limits(args.max_branches,
                                                                 args.max_terms))
        else:
            result = lie_conditions(problem)
    elapsed = watch.elapsed_ms if args.timing else None

    if args.mode == 'test1':
        report = report_test1(result, elapsed)
    elif args.mode == 'test2':
        report = report_test2(result, problem.n, elapsed)
    else:
        report = report_lie(result, problem.n, elapsed)

    if args.archive:
        init_db(config)
        with open_session() as session:
            session.add(ReportRecord.from_report(report, args.ode, problem.params, problem.funcs))
    return report


def serve(args, config):
    """Start the HTTP service (cli > config > defaults)"""
    init_db(config)
    host = args.bind or config.get('server', 'bind')
    port = args.port or config.getint('server', 'port')
    webapp.debug = args.debug or config.getboolean('server', 'debug')
    webapp.config['ODELIN'] = config
    webapp.run(host=host, port=port)


def run(argv=None, stdout=None):
    """Console script body

    :return: exit code
    """
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return EXIT_USAGE if exit_.code else 0

    # Setup logging
    init_log(args.verbose)

    try:
        config = load_config(args.config)
    except ConfigError as error:
        logs.error("Exception when loading config file: %s", error)
        return EXIT_USAGE

    if args.mode == 'serve':
        serve(args, config)
        return 0

    try:
        report = run_test(args, config)
    except ResourceLimitError as error:
        print("error: %s" % error, file=sys.stderr)
        return EXIT_RESOURCE_LIMIT
    except OdelinError as error:
        print("error: %s" % error, file=sys.stderr)
        return EXIT_USAGE

    print(report.to_json() if args.json else report.render_text(), file=stdout)
    return report.exit_code


def main():
    """Service and tool entry point"""
    sys.exit(run())


# Start main
if __name__ == '__main__':
    main()
