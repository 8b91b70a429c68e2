"""FILE IO.

This module contains methods for reading and writing the JSON documents
exchanged on the command line: problems, solutions, point lists and
reports.

:Author: CNPSchur developers

"""

import json
import os

from cnpschur.errors import MalformedDocument
from cnpschur.utilities.ball_geometry import decode_complex
from cnpschur.utilities.multiplier_expr import (
    SCHEMA_VERSION,
    MultiplierExpr,
    deserialize,
)
from cnpschur.utilities.schur_algorithm import InterpolationProblem


def read_json(file_name):
    """Read JSON.

    Parameters
    ----------
    file_name : str
        File name

    Returns
    -------
    object
        Decoded document

    Raises
    ------
    IOError
        For non existent file
    MalformedDocument
        For invalid JSON

    """
    if not os.path.isfile(file_name):
        raise IOError(f'File {file_name} does not exist.')

    with open(file_name, 'r') as json_file:
        text = json_file.read()

    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedDocument(
            f'Invalid JSON in {file_name}: {err.msg} at line {err.lineno} '
            + f'column {err.colno}'
        )


def dump_json(doc):
    """Dump JSON.

    Parameters
    ----------
    doc : object
        JSON-ready document

    Returns
    -------
    str
        Canonical text with sorted keys

    """
    return json.dumps(doc, sort_keys=True, indent=2)


def write_json(doc, file_name):
    """Write JSON.

    Parameters
    ----------
    doc : object
        JSON-ready document
    file_name : str
        Output file name

    """
    with open(file_name, 'w') as json_file:
        json_file.write(dump_json(doc) + '\n')


def check_schema(doc, location='$'):
    """Check Schema Version.

    Documents without ``schema_version`` are accepted as version 1.

    Parameters
    ----------
    doc : dict
        Document
    location : str, optional
        Location of ``doc``

    Raises
    ------
    MalformedDocument
        For another schema version

    """
    version = doc.get('schema_version', SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise MalformedDocument(
            f'Unsupported schema version {version!r}',
            f'{location}.schema_version',
        )


def load_problem(file_name, log=None):
    """Load Problem.

    Parameters
    ----------
    file_name : str
        Problem file name
    log : logging.Logger, optional
        Logging instance

    Returns
    -------
    InterpolationProblem
        Decoded problem

    """
    doc = read_json(file_name)
    if isinstance(doc, dict):
        check_schema(doc)

    return InterpolationProblem.from_json(doc, log=log)


def solution_document(expr, step_log=None):
    """Build Solution Document.

    Parameters
    ----------
    expr : MultiplierExpr
        Solution expression
    step_log : StepLog, optional
        Record of the solver

    Returns
    -------
    dict
        Document with ``schema_version``, ``expr`` and ``step_log``

    """
    doc = {'schema_version': SCHEMA_VERSION, 'expr': expr.to_json()}
    if step_log is not None:
        doc['step_log'] = step_log.to_json()

    return doc


def load_solution(file_name):
    """Load Solution.

    Accept a solution document or a bare expression node.

    Parameters
    ----------
    file_name : str
        Solution file name

    Returns
    -------
    MultiplierExpr
        Decoded expression

    Raises
    ------
    MalformedDocument
        For an invalid document

    """
    doc = read_json(file_name)
    if not isinstance(doc, dict):
        raise MalformedDocument('A solution must be a JSON object')

    if 'node' in doc:
        return deserialize(doc, '$')

    check_schema(doc)
    if 'expr' not in doc:
        raise MalformedDocument('A solution needs an "expr" entry')

    expr = deserialize(doc['expr'], '$.expr')
    if not isinstance(expr, MultiplierExpr):
        raise MalformedDocument('Invalid expression', '$.expr')

    return expr


def load_points(file_name):
    """Load Points.

    Accept ``{"points": [...]}`` or a bare list, each point being a list of
    ``[re, im]`` pairs.

    Parameters
    ----------
    file_name : str
        Points file name

    Returns
    -------
    list
        Complex coordinate vectors

    Raises
    ------
    MalformedDocument
        For an invalid document

    """
    doc = read_json(file_name)
    location = '$'

    if isinstance(doc, dict):
        check_schema(doc)
        location = '$.points'
        doc = doc.get('points')

    if not isinstance(doc, list):
        raise MalformedDocument('Expected a list of points', location)

    return [
        decode_complex(point, 1, f'{location}[{index}]')
        for index, point in enumerate(doc)
    ]
