"""EVAL RUNNER.

This module defines the runner of the ``eval`` command, which evaluates a
solution expression at a list of points.

:Author: CNPSchur developers

"""

from cnpschur.errors import (
    DimensionMismatch,
    DomainEscape,
    SingularDenominator,
)
from cnpschur.modules.module_decorator import module_runner
from cnpschur.pipeline.file_io import load_points, load_solution
from cnpschur.utilities.ball_geometry import encode_complex
from cnpschur.utilities.multiplier_expr import SCHEMA_VERSION


def evaluate_points(expr, points, log):
    """Evaluate Points.

    Evaluate an expression point by point. Singular denominators, points of
    the wrong dimension and points outside the domain are reported for that
    point only.

    Parameters
    ----------
    expr : MultiplierExpr
        Expression
    points : list
        Evaluation points
    log : logging.Logger
        Logging instance

    Returns
    -------
    tuple
        List of value entries in the order of ``points`` and the number of
        points that failed

    """
    values = []
    n_errors = 0

    for index, point in enumerate(points):
        entry = {'point': encode_complex(point)}
        try:
            entry['value'] = encode_complex(expr.eval(point))
        except (SingularDenominator, DomainEscape, DimensionMismatch) as err:
            n_errors += 1
            entry['error'] = type(err).__name__
            entry['message'] = str(err)
            log.info(f' - Point {index}: {type(err).__name__}: {err}')
        values.append(entry)

    return values, n_errors


@module_runner(
    version='1.0',
    inputs=['solution', 'points'],
    depends=['numpy'],
    run_method='serial',
)
def eval_runner(args, run_config, log):
    """Define The Eval Runner."""
    expr = load_solution(args.solution)
    points = load_points(args.points)
    log.info(f' - Expression: {expr}')
    log.info(f' - Number of points: {len(points)}')

    values, n_errors = evaluate_points(expr, points, log)

    doc = {
        'schema_version': SCHEMA_VERSION,
        'shape': list(expr.shape),
        'values': values,
        'n_errors': n_errors,
    }

    return {'report': doc}, 0
