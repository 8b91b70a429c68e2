"""MULTIPLIER EXPRESSIONS.

This module defines a closed expression language for matrix-valued
functions on the unit ball: constants, Blaschke rows, block concatenations,
products, sums, scalar multiples, linear fractional transformations and
pullbacks by polynomial embeddings.

Expressions validate their shapes at construction, are immutable, and
serialize to a canonical JSON schema.

:Author: CNPSchur developers

"""

import json

import numpy as np
from scipy import linalg

from cnpschur.errors import (
    DimensionMismatch,
    MalformedDocument,
    ShapeMismatch,
    SingularDenominator,
)
from cnpschur.utilities.ball_geometry import (
    BallPoint,
    BlaschkeRow,
    _coords,
    decode_complex,
    encode_complex,
)
from cnpschur.utilities.kernel_engine import EmbeddingSpec

SCHEMA_VERSION = 1
COND_LIMIT = 1e12


def _common_domain(exprs):

    dims = {expr.domain_dim for expr in exprs} - {None}
    if len(dims) > 1:
        raise DimensionMismatch(
            f'Sub-expressions are defined on different domains: {dims}.'
        )

    return dims.pop() if dims else None


class MultiplierExpr(object):
    """Multiplier Expression.

    Base class of all expression nodes.

    Attributes
    ----------
    shape : tuple
        Output shape ``(rows, cols)``
    domain_dim : int or None
        Dimension of the evaluation points, ``None`` when any dimension is
        accepted

    """

    node = None
    shape = (0, 0)
    domain_dim = None

    def eval(self, point):
        """Evaluate.

        Parameters
        ----------
        point : array_like
            Evaluation point

        Returns
        -------
        numpy.ndarray
            Complex matrix of shape ``self.shape``

        Raises
        ------
        DimensionMismatch
            If the point dimension does not match ``domain_dim``

        """
        point = _coords(point)
        if self.domain_dim is not None and point.size != self.domain_dim:
            raise DimensionMismatch(
                f'Expression on C^{self.domain_dim} evaluated at a point of '
                + f'dimension {point.size}.'
            )

        return self._eval(point)

    def __call__(self, point):

        return self.eval(point)

    def _eval(self, point):

        raise NotImplementedError

    def to_json(self):
        """Convert to JSON."""
        raise NotImplementedError

    def __repr__(self):

        return f'{type(self).__name__}(shape={self.shape})'


class Const(MultiplierExpr):
    """Constant Expression.

    Parameters
    ----------
    matrix : array_like
        Constant complex matrix

    """

    node = 'const'

    def __init__(self, matrix):

        matrix = np.array(matrix, dtype=complex)
        if matrix.ndim != 2:
            raise ShapeMismatch(
                f'A constant must be a matrix, got shape {matrix.shape}.'
            )
        matrix.setflags(write=False)

        self.matrix = matrix
        self.shape = matrix.shape

    @classmethod
    def zeros(cls, rows, cols):
        """Build Zero Constant."""
        return cls(np.zeros((rows, cols), dtype=complex))

    def _eval(self, point):

        return self.matrix.copy()

    def to_json(self):

        return {'node': self.node, 'matrix': encode_complex(self.matrix)}


class Blaschke(MultiplierExpr):
    """Blaschke Row Expression.

    Parameters
    ----------
    alpha : BallPoint or array_like
        Zero of the Blaschke row

    """

    node = 'blaschke'

    def __init__(self, alpha):

        self.row = BlaschkeRow(alpha)
        self.domain_dim = self.row.dim
        self.shape = (1, self.row.dim)

    def _eval(self, point):

        return self.row.eval(BallPoint(point))

    def to_json(self):

        return {'node': self.node, 'alpha': self.row.alpha.to_json()}


class HCat(MultiplierExpr):
    """Horizontal Concatenation.

    Parameters
    ----------
    parts : list
        Expressions with equal row counts

    """

    node = 'hcat'

    def __init__(self, parts):

        parts = list(parts)
        if not parts:
            raise ShapeMismatch('Cannot concatenate an empty list.')
        rows = {part.shape[0] for part in parts}
        if len(rows) != 1:
            raise ShapeMismatch(
                f'Horizontal blocks need equal row counts, got {rows}.'
            )

        self.parts = parts
        self.domain_dim = _common_domain(parts)
        self.shape = (rows.pop(), sum(part.shape[1] for part in parts))

    def _eval(self, point):

        return np.hstack([part._eval(point) for part in self.parts])

    def to_json(self):

        return {
            'node': self.node,
            'parts': [part.to_json() for part in self.parts],
        }


class VCat(MultiplierExpr):
    """Vertical Concatenation.

    Parameters
    ----------
    parts : list
        Expressions with equal column counts

    """

    node = 'vcat'

    def __init__(self, parts):

        parts = list(parts)
        if not parts:
            raise ShapeMismatch('Cannot concatenate an empty list.')
        cols = {part.shape[1] for part in parts}
        if len(cols) != 1:
            raise ShapeMismatch(
                f'Vertical blocks need equal column counts, got {cols}.'
            )

        self.parts = parts
        self.domain_dim = _common_domain(parts)
        self.shape = (sum(part.shape[0] for part in parts), cols.pop())

    def _eval(self, point):

        return np.vstack([part._eval(point) for part in self.parts])

    def to_json(self):

        return {
            'node': self.node,
            'parts': [part.to_json() for part in self.parts],
        }


class Product(MultiplierExpr):
    """Matrix Product.

    Parameters
    ----------
    left : MultiplierExpr
        Left factor
    right : MultiplierExpr
        Right factor

    """

    node = 'product'

    def __init__(self, left, right):

        if left.shape[1] != right.shape[0]:
            raise ShapeMismatch(
                f'Cannot multiply shapes {left.shape} and {right.shape}.'
            )

        self.left = left
        self.right = right
        self.domain_dim = _common_domain([left, right])
        self.shape = (left.shape[0], right.shape[1])

    def _eval(self, point):

        return self.left._eval(point) @ self.right._eval(point)

    def to_json(self):

        return {
            'node': self.node,
            'left': self.left.to_json(),
            'right': self.right.to_json(),
        }


class Sum(MultiplierExpr):
    """Matrix Sum.

    Parameters
    ----------
    left : MultiplierExpr
        First term
    right : MultiplierExpr
        Second term

    """

    node = 'sum'

    def __init__(self, left, right):

        if left.shape != right.shape:
            raise ShapeMismatch(
                f'Cannot add shapes {left.shape} and {right.shape}.'
            )

        self.left = left
        self.right = right
        self.domain_dim = _common_domain([left, right])
        self.shape = left.shape

    def _eval(self, point):

        return self.left._eval(point) + self.right._eval(point)

    def to_json(self):

        return {
            'node': self.node,
            'left': self.left.to_json(),
            'right': self.right.to_json(),
        }


class ScalarScale(MultiplierExpr):
    """Scalar Multiple.

    Parameters
    ----------
    coeff : complex
        Scalar coefficient
    expr : MultiplierExpr
        Scaled expression

    """

    node = 'scale'

    def __init__(self, coeff, expr):

        self.coeff = complex(coeff)
        self.expr = expr
        self.domain_dim = expr.domain_dim
        self.shape = expr.shape

    def _eval(self, point):

        return self.coeff * self.expr._eval(point)

    def to_json(self):

        return {
            'node': self.node,
            'coeff': encode_complex(self.coeff),
            'expr': self.expr.to_json(),
        }


class LFT(MultiplierExpr):
    """Linear Fractional Transformation.

    The expression :math:`(A P + B)(C P + D)^{-1}` built from the blocks of
    a :math:`J`-inner factor :math:`\\Theta` and a parameter :math:`P`.

    Parameters
    ----------
    theta : ThetaFactor
        Factor providing the blocks :math:`A, B, C, D`
    param : MultiplierExpr
        Parameter of shape ``theta.param_shape``
    cond_limit : float, optional
        Largest accepted ratio between the size of the denominator terms
        and its smallest singular value, default is ``COND_LIMIT``

    Raises
    ------
    ShapeMismatch
        If the parameter shape does not match the factor

    """

    node = 'lft'

    def __init__(self, theta, param, cond_limit=COND_LIMIT):

        if param.shape != theta.param_shape:
            raise ShapeMismatch(
                f'LFT parameter must have shape {theta.param_shape}, got '
                + f'{param.shape}.'
            )

        if param.domain_dim not in (None, theta.dim):
            raise DimensionMismatch(
                f'LFT over B_{theta.dim} cannot take a parameter on '
                + f'C^{param.domain_dim}.'
            )

        self.theta = theta
        self.param = param
        self.cond_limit = cond_limit
        self.domain_dim = theta.dim
        self.shape = (theta.p, theta.q)

    def _eval(self, point):

        a_blk, b_blk, c_blk, d_blk = self.theta.blocks(point)
        param = self.param._eval(point)

        numerator = a_blk @ param + b_blk
        c_param = c_blk @ param
        denominator = c_param + d_blk

        # smallest singular value against the size of the two terms, so
        # cancellation is caught for q = 1 too
        scale = linalg.norm(c_param, 2) + linalg.norm(d_blk, 2)
        smallest = linalg.svdvals(denominator)[-1]
        if smallest * self.cond_limit <= scale:
            raise SingularDenominator(
                'LFT denominator is numerically singular at '
                + f'{np.array2string(point, precision=4)}.'
            )

        return linalg.solve(denominator.T, numerator.T).T

    def to_json(self):

        return {
            'node': self.node,
            'theta': self.theta.to_json(),
            'param': self.param.to_json(),
        }


class ComposeEmbedding(MultiplierExpr):
    """Embedding Pullback.

    The expression :math:`z \\mapsto G(\\beta(z))`.

    Parameters
    ----------
    embedding : EmbeddingSpec
        Embedding :math:`\\beta`
    expr : MultiplierExpr
        Expression :math:`G` on the target ball

    Raises
    ------
    DimensionMismatch
        If the embedding target dimension differs from the expression
        domain dimension

    """

    node = 'compose'

    def __init__(self, embedding, expr):

        if expr.domain_dim not in (None, embedding.target_dim):
            raise DimensionMismatch(
                f'Embedding into C^{embedding.target_dim} cannot be composed '
                + f'with an expression on C^{expr.domain_dim}.'
            )

        self.embedding = embedding
        self.expr = expr
        self.domain_dim = embedding.domain_dim
        self.shape = expr.shape

    def _eval(self, point):

        return self.expr.eval(self.embedding.map_point(point))

    def to_json(self):

        return {
            'node': self.node,
            'embedding': self.embedding.to_json(),
            'expr': self.expr.to_json(),
        }


def shape(expr):
    """Get Expression Shape."""
    return expr.shape


def eval_expr(expr, point):
    """Evaluate Expression.

    Parameters
    ----------
    expr : MultiplierExpr
        Expression
    point : array_like
        Evaluation point

    Returns
    -------
    numpy.ndarray
        Value of shape ``expr.shape``

    """
    return expr.eval(point)


def compose_embedding(expr, embedding):
    """Compose with Embedding.

    Parameters
    ----------
    expr : MultiplierExpr
        Expression on :math:`\\mathbb{B}_N`
    embedding : EmbeddingSpec
        Embedding :math:`\\beta: \\mathbb{C}^d \\to \\mathbb{C}^N`

    Returns
    -------
    ComposeEmbedding
        Expression :math:`z \\mapsto expr(\\beta(z))`

    """
    return ComposeEmbedding(embedding, expr)


def serialize(expr):
    """Serialize Expression.

    Parameters
    ----------
    expr : MultiplierExpr
        Expression

    Returns
    -------
    dict
        JSON-ready document

    """
    return expr.to_json()


def dumps(expr):
    """Dump Expression.

    Parameters
    ----------
    expr : MultiplierExpr
        Expression

    Returns
    -------
    str
        Canonical JSON string with sorted keys

    """
    return json.dumps(
        {'schema_version': SCHEMA_VERSION, 'expr': serialize(expr)},
        sort_keys=True,
    )


def _require(doc, keys, location):

    missing = [key for key in keys if key not in doc]
    if missing:
        raise MalformedDocument(f'Missing keys {missing}', location)


def _deserialize_parts(doc, location):

    _require(doc, ['parts'], location)
    if not isinstance(doc['parts'], list):
        raise MalformedDocument('"parts" must be a list', f'{location}.parts')

    return [
        deserialize(part, f'{location}.parts[{index}]')
        for index, part in enumerate(doc['parts'])
    ]


def deserialize(doc, location='expr'):
    """Deserialize Expression.

    Parameters
    ----------
    doc : dict
        Expression document
    location : str, optional
        Location of ``doc`` in the enclosing document, default is
        ``'expr'``

    Returns
    -------
    MultiplierExpr
        Decoded expression

    Raises
    ------
    MalformedDocument
        For unknown node tags, missing keys, malformed arrays or
        inconsistent shapes

    """
    from cnpschur.utilities.schur_step import ThetaFactor

    if not isinstance(doc, dict) or 'node' not in doc:
        raise MalformedDocument('An expression needs a "node" tag', location)

    node = doc['node']

    try:
        if node == Const.node:
            _require(doc, ['matrix'], location)
            return Const(decode_complex(doc['matrix'], 2,
                                        f'{location}.matrix'))

        elif node == Blaschke.node:
            _require(doc, ['alpha'], location)
            return Blaschke(BallPoint.from_json(doc['alpha'],
                                                f'{location}.alpha'))

        elif node == HCat.node:
            return HCat(_deserialize_parts(doc, location))

        elif node == VCat.node:
            return VCat(_deserialize_parts(doc, location))

        elif node in (Product.node, Sum.node):
            _require(doc, ['left', 'right'], location)
            cls = Product if node == Product.node else Sum
            return cls(
                deserialize(doc['left'], f'{location}.left'),
                deserialize(doc['right'], f'{location}.right'),
            )

        elif node == ScalarScale.node:
            _require(doc, ['coeff', 'expr'], location)
            return ScalarScale(
                decode_complex(doc['coeff'], 0, f'{location}.coeff'),
                deserialize(doc['expr'], f'{location}.expr'),
            )

        elif node == LFT.node:
            _require(doc, ['theta', 'param'], location)
            return LFT(
                ThetaFactor.from_json(doc['theta'], f'{location}.theta'),
                deserialize(doc['param'], f'{location}.param'),
            )

        elif node == ComposeEmbedding.node:
            _require(doc, ['embedding', 'expr'], location)
            return ComposeEmbedding(
                EmbeddingSpec.from_json(doc['embedding'],
                                        f'{location}.embedding'),
                deserialize(doc['expr'], f'{location}.expr'),
            )

    except MalformedDocument:
        raise

    except (DimensionMismatch, ValueError) as err:
        raise MalformedDocument(str(err), location)

    raise MalformedDocument(f'Unknown node tag "{node}"', location)


def loads(text):
    """Load Expression.

    Parameters
    ----------
    text : str
        JSON string produced by :func:`dumps`

    Returns
    -------
    MultiplierExpr
        Decoded expression

    Raises
    ------
    MalformedDocument
        For invalid JSON or schema

    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise MalformedDocument(f'Invalid JSON: {err.msg}')

    if not isinstance(doc, dict):
        raise MalformedDocument('Expected a JSON object')
    if doc.get('schema_version') != SCHEMA_VERSION:
        raise MalformedDocument(
            f'Unsupported schema version {doc.get("schema_version")!r}',
            '$.schema_version',
        )
    _require(doc, ['expr'], '$')

    return deserialize(doc['expr'], 'expr')
