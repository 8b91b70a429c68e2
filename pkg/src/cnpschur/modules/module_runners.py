"""MODULE RUNNERS.

This module defines methods for importing the command runners.

:Author: CNPSchur developers

"""

from importlib import import_module

COMMANDS = ('check', 'solve', 'eval', 'verify', 'selftest')


def get_module_runners(commands=COMMANDS):
    """Get Module Runners.

    Import the runners of the specified commands.

    Parameters
    ----------
    commands : list, optional
        List of command names, default is ``COMMANDS``

    Returns
    -------
    dict
        Dictionary of command runners

    """
    package = 'cnpschur.modules'

    module_runners = dict([
        (
            command,
            getattr(
                import_module(f'.{command}_runner', package=package),
                f'{command}_runner',
            )
        )
        for command in commands
    ])

    return module_runners
