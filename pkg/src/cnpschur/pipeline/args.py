"""ARGUMENT HANDLING.

This module defines methods for handling the command-line arguments.

:Author: CNPSchur developers

"""

import argparse as ap

from cnpschur import __version__
from cnpschur.info import cnpschur_logo
from cnpschur.modules import __module_list__


class customFormatter(
    ap.ArgumentDefaultsHelpFormatter,
    ap.RawDescriptionHelpFormatter,
):
    """Custom Formatter.

    This class combines the argparse ``ArgumentDefaultsHelpFormatter`` and
    ``RawDescriptionHelpFormatter`` formatters.

    """

    pass


def command_str():
    """Format Command String.

    Format the list of available commands as a single string.

    Returns
    -------
    str
        Formatted string of command names

    """
    string = ''

    for runner in sorted(__module_list__):
        string += f' - {runner.replace("_runner.py", "")}\n'

    return string


def _run_options():
    """Build the parent parser holding the run options."""
    parent = ap.ArgumentParser(add_help=False)
    run_opts = parent.add_argument_group('Run Options')

    run_opts.add_argument(
        '-c',
        '--config',
        default=None,
        help='configuration file name',
    )
    run_opts.add_argument(
        '--seed',
        type=int,
        default=None,
        help='random seed, overrides [RUN] SEED',
    )
    run_opts.add_argument(
        '--samples',
        type=int,
        default=None,
        help='number of sample points, overrides [RUN] SAMPLES',
    )
    run_opts.add_argument(
        '--radius-cap',
        dest='radius_cap',
        type=float,
        default=None,
        help='largest norm of sample points, overrides [RUN] RADIUS_CAP',
    )
    run_opts.add_argument(
        '--tol',
        type=float,
        default=None,
        help='verification tolerance, overrides [RUN] TOL',
    )
    run_opts.add_argument(
        '--out',
        default=None,
        help='output directory, overrides [FILE] OUTPUT_DIR',
    )

    return parent


def create_arg_parser(args=None):
    """Create Argument Parser.

    This method parses the command-line arguments.

    Parameters
    ----------
    args : list, optional
        Arguments to parse, default is ``sys.argv[1:]``

    Returns
    -------
    argparse.Namespace
        Parsed arguments

    """
    parent = _run_options()

    parser = ap.ArgumentParser(
        prog='cnpschur_run',
        add_help=False,
        description=cnpschur_logo(),
        epilog=f'Available commands:\n{command_str()}',
        formatter_class=customFormatter,
    )
    optional = parser.add_argument_group('Optional Arguments')

    optional.add_argument(
        '-h',
        '--help',
        action='help',
        help='show this help message and exit',
    )

    optional.add_argument(
        '-v',
        '--version',
        action='version',
        version=f'%(prog)s v{__version__}',
    )

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')
    commands.required = True

    check = commands.add_parser(
        'check',
        parents=[parent],
        formatter_class=customFormatter,
        help='check the solvability of an interpolation problem',
    )
    check.add_argument('problem', help='problem JSON file')

    solve = commands.add_parser(
        'solve',
        parents=[parent],
        formatter_class=customFormatter,
        help='compute the central solution of a problem',
    )
    solve.add_argument('problem', help='problem JSON file')

    evaluate = commands.add_parser(
        'eval',
        parents=[parent],
        formatter_class=customFormatter,
        help='evaluate a solution at a list of points',
    )
    evaluate.add_argument('solution', help='solution JSON file')
    evaluate.add_argument('points', help='points JSON file')

    verify = commands.add_parser(
        'verify',
        parents=[parent],
        formatter_class=customFormatter,
        help='verify a solution against a problem',
    )
    verify.add_argument('solution', help='solution JSON file')
    verify.add_argument('problem', help='problem JSON file')

    commands.add_parser(
        'selftest',
        parents=[parent],
        formatter_class=customFormatter,
        help='run the randomized identity suite',
    )

    return parser.parse_args(args)
