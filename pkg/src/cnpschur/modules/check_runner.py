"""CHECK RUNNER.

This module defines the runner of the ``check`` command: solvability of an
interpolation problem from its Pick matrix and the stepwise margins of the
Schur algorithm.

:Author: CNPSchur developers

"""

from cnpschur.modules.module_decorator import module_runner
from cnpschur.pipeline.file_io import load_problem
from cnpschur.utilities.multiplier_expr import SCHEMA_VERSION
from cnpschur.utilities.schur_algorithm import solvability_check


@module_runner(
    version='1.0',
    inputs='problem',
    depends=['numpy', 'scipy'],
    run_method='serial',
)
def check_runner(args, run_config, log):
    """Define The Check Runner."""
    problem = load_problem(args.problem, log=log)
    log.info(f' - Problem: {problem}')

    report = solvability_check(problem, log=log)

    doc = {'schema_version': SCHEMA_VERSION}
    doc.update(report.to_json())

    return {'report': doc}, 0 if report.solvable else 2
