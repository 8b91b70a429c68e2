"""SOLVE RUNNER.

This module defines the runner of the ``solve`` command, which emits the
central solution of an interpolation problem with the record of the
Schur algorithm.

:Author: CNPSchur developers

"""

from cnpschur.errors import NotSolvable
from cnpschur.modules.module_decorator import module_runner
from cnpschur.pipeline.file_io import load_problem, solution_document
from cnpschur.utilities.multiplier_expr import SCHEMA_VERSION
from cnpschur.utilities.schur_algorithm import solve_central


@module_runner(
    version='1.0',
    inputs='problem',
    depends=['numpy', 'scipy'],
    run_method='serial',
)
def solve_runner(args, run_config, log):
    """Define The Solve Runner."""
    problem = load_problem(args.problem, log=log)
    log.info(f' - Problem: {problem}')

    try:
        solution, step_log = solve_central(problem, log=log)
    except NotSolvable as err:
        log.info(f' - Not solvable: {err}')
        doc = {
            'schema_version': SCHEMA_VERSION,
            'solvable': False,
            'reason': str(err),
        }
        return {'report': doc}, 2

    log.info(f' - Solution shape: {solution.shape}')
    log.info(f' - Steps: {len(step_log.steps)}')

    return {'solution': solution_document(solution, step_log)}, 0
