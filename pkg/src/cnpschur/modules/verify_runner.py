"""VERIFY RUNNER.

This module defines the runner of the ``verify`` command: condition
residuals, a sampled Schur-class test and Poincare margins of a solution
against its problem.

:Author: CNPSchur developers

"""

from cnpschur.modules.module_decorator import module_runner
from cnpschur.pipeline.file_io import load_problem, load_solution
from cnpschur.utilities.multiplier_expr import SCHEMA_VERSION
from cnpschur.utilities.schur_algorithm import verify_solution


@module_runner(
    version='1.0',
    inputs=['solution', 'problem'],
    depends=['numpy', 'scipy'],
    run_method='serial',
)
def verify_runner(args, run_config, log):
    """Define The Verify Runner."""
    expr = load_solution(args.solution)
    problem = load_problem(args.problem, log=log)

    report = verify_solution(
        problem,
        expr,
        samples=run_config.samples,
        seed=run_config.seed,
        radius_cap=run_config.radius_cap,
        tol=run_config.tol,
    )

    log.info(f' - Max residual: {report.max_residual:.3e}')
    if not report.passed:
        log.info(f' - Worst offender: {report.worst_offender}')

    doc = {'schema_version': SCHEMA_VERSION, 'sampled': True}
    doc.update(report.to_json())

    return {'report': doc}, 0 if report.passed else 3
