"""MODULE DECORATOR.

This module defines the command runner decorator.

:Author: CNPSchur developers

"""


def module_runner(version='0.0', inputs=[], depends=[], run_method='serial'):
    """Wrap Command Runners.

    This method adds properties to command runners.

    Parameters
    ----------
    version : str, optional
        Runner version string, default is ``0.0``
    inputs : str or list, optional
        Names of the input file arguments, default is ``[]``
    depends : str or list, optional
        Package dependencies, default is ``[]``
    run_method : {'parallel', 'serial'}, optional
        Run method, default is ``'serial'``

    Raises
    ------
    TypeError
        If ``version`` is not a string
    TypeError
        If ``inputs`` is not a list or a string
    TypeError
        If ``depends`` is not a list or a string
    ValueError
        If ``run_method`` is not valid

    """
    if not isinstance(version, str):
        raise TypeError('Module version must be a string.')

    if isinstance(inputs, str):
        inputs = [inputs]
    elif not isinstance(inputs, list):
        raise TypeError('Inputs must be a string or a list of strings.')

    if isinstance(depends, str):
        depends = [depends]
    elif not isinstance(depends, list):
        raise TypeError('Dependencies must be a string or a list of strings.')

    if run_method not in {'parallel', 'serial'}:
        raise ValueError('Run method must be a "parallel" or "serial".')

    def decorator(func):

        func.version = version
        func.inputs = inputs
        func.depends = depends
        func.run_method = run_method

        return func

    return decorator
