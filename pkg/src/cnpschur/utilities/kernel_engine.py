"""KERNEL ENGINE.

This module evaluates Drury-Arveson kernels and their pullbacks by
polynomial embeddings, and assembles Gram, Pick and Schur-class test
matrices on finite point samples.

:Author: CNPSchur developers

"""

import numpy as np
from scipy import linalg

from cnpschur.errors import (
    DeltaVanishes,
    DimensionMismatch,
    DomainEscape,
    EmbeddingEscapesBall,
    MalformedDocument,
)
from cnpschur.utilities.ball_geometry import (
    BALL_MARGIN,
    BallPoint,
    _coords,
    decode_complex,
    encode_complex,
)
from cnpschur.utilities.hermitian_core import PSD_TOL, psd_check

DELTA_FLOOR = 1e-12
STRICT_FLOOR = 1e-10


class Polynomial(object):
    """Polynomial.

    A polynomial in :math:`d` complex variables stored as a list of
    ``(coefficient, exponents)`` terms.

    Parameters
    ----------
    terms : list
        List of ``(coeff, exponents)`` tuples
    n_vars : int, optional
        Number of variables, inferred from the first term if not given

    Raises
    ------
    DimensionMismatch
        If the exponent multi-indices have different lengths
    ValueError
        For negative exponents

    """

    def __init__(self, terms, n_vars=None):

        coeffs = []
        exponents = []
        for coeff, powers in terms:
            coeffs.append(complex(coeff))
            exponents.append(tuple(int(power) for power in powers))

        if n_vars is None:
            if not exponents:
                raise DimensionMismatch(
                    'Cannot infer the number of variables of an empty '
                    + 'polynomial.'
                )
            n_vars = len(exponents[0])

        if any(len(powers) != n_vars for powers in exponents):
            raise DimensionMismatch(
                f'All exponent multi-indices must have length {n_vars}.'
            )
        if any(power < 0 for powers in exponents for power in powers):
            raise ValueError('Polynomial exponents must be non-negative.')

        self.n_vars = n_vars
        self.coeffs = np.array(coeffs, dtype=complex)
        self.exponents = np.array(exponents, dtype=int).reshape(-1, n_vars)

    @classmethod
    def constant(cls, value, n_vars):
        """Build Constant Polynomial."""
        return cls([(value, [0] * n_vars)], n_vars)

    @classmethod
    def coordinate(cls, index, n_vars):
        """Build Coordinate Polynomial :math:`z_{index}`."""
        powers = [0] * n_vars
        powers[index] = 1

        return cls([(1.0, powers)], n_vars)

    @property
    def degree(self):
        """Total Degree."""
        if not self.coeffs.size:
            return 0

        return int(self.exponents.sum(axis=1).max())

    def eval(self, z):
        """Evaluate.

        Parameters
        ----------
        z : array_like
            Point of :math:`\\mathbb{C}^d`

        Returns
        -------
        complex
            Polynomial value

        Raises
        ------
        DimensionMismatch
            If the point does not have ``n_vars`` coordinates

        """
        z = _coords(z)
        if z.size != self.n_vars:
            raise DimensionMismatch(
                f'Polynomial in {self.n_vars} variables evaluated at a point '
                + f'of dimension {z.size}.'
            )

        monomials = np.prod(z[np.newaxis, :] ** self.exponents, axis=1)

        return complex(np.sum(self.coeffs * monomials))

    def __call__(self, z):

        return self.eval(z)

    def to_json(self):
        """Convert to JSON.

        Returns
        -------
        list
            List of ``{"coeff": [re, im], "exponents": [...]}`` terms

        """
        return [
            {'coeff': encode_complex(coeff), 'exponents': powers.tolist()}
            for coeff, powers in zip(self.coeffs, self.exponents)
        ]

    @classmethod
    def from_json(cls, doc, n_vars=None, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : list
            List of terms
        n_vars : int, optional
            Expected number of variables
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        Polynomial
            Decoded polynomial

        Raises
        ------
        MalformedDocument
            For an invalid term list

        """
        if not isinstance(doc, list):
            raise MalformedDocument('A polynomial must be a list of terms',
                                    location)

        terms = []
        for index, term in enumerate(doc):
            term_loc = f'{location}[{index}]'
            if not isinstance(term, dict) or set(term) != {
                'coeff',
                'exponents',
            }:
                raise MalformedDocument(
                    'A term needs exactly the keys "coeff" and "exponents"',
                    term_loc,
                )
            coeff = decode_complex(term['coeff'], 0, f'{term_loc}.coeff')
            powers = term['exponents']
            if not isinstance(powers, list) or not all(
                isinstance(power, int) and power >= 0 for power in powers
            ):
                raise MalformedDocument(
                    'Exponents must be a list of non-negative integers',
                    f'{term_loc}.exponents',
                )
            terms.append((coeff, powers))

        try:
            return cls(terms, n_vars)
        except (DimensionMismatch, ValueError) as err:
            raise MalformedDocument(str(err), location)

    def __repr__(self):

        return (
            f'Polynomial(n_vars={self.n_vars}, n_terms={self.coeffs.size}, '
            + f'degree={self.degree})'
        )


class EmbeddingSpec(object):
    """Embedding Specification.

    A polynomial map :math:`\\beta: \\mathbb{C}^d \\to \\mathbb{C}^N`, used
    to pull the Drury-Arveson kernel back to a domain
    :math:`\\Omega \\subset \\mathbb{C}^d`.

    Parameters
    ----------
    components : list
        ``N`` instances of :class:`Polynomial` in the same ``d`` variables

    Raises
    ------
    DimensionMismatch
        If the components do not share their number of variables

    Notes
    -----
    Polynomial components make :math:`\\beta` continuous; injectivity and
    the range condition :math:`\\beta(\\Omega) \\subset \\mathbb{B}_N` are
    only checked at the points where :math:`\\beta` is evaluated.

    """

    def __init__(self, components):

        if not components:
            raise DimensionMismatch('An embedding needs at least one '
                                    + 'component.')

        n_vars = {comp.n_vars for comp in components}
        if len(n_vars) != 1:
            raise DimensionMismatch(
                'All embedding components must use the same variables.'
            )

        self.components = list(components)
        self.domain_dim = n_vars.pop()
        self.target_dim = len(self.components)

    @classmethod
    def identity(cls, dim):
        """Build Identity Embedding."""
        return cls([Polynomial.coordinate(idx, dim) for idx in range(dim)])

    def eval(self, z):
        """Evaluate.

        Parameters
        ----------
        z : array_like
            Domain point

        Returns
        -------
        numpy.ndarray
            :math:`\\beta(z)`, without any range check

        """
        return np.array([comp.eval(z) for comp in self.components])

    def map_point(self, z, margin=BALL_MARGIN):
        """Map Point to Ball.

        Parameters
        ----------
        z : array_like
            Domain point
        margin : float, optional
            Boundary margin, default is ``BALL_MARGIN``

        Returns
        -------
        BallPoint
            :math:`\\beta(z)`

        Raises
        ------
        EmbeddingEscapesBall
            If :math:`\\|\\beta(z)\\| \\geq 1 - margin`

        """
        image = self.eval(z)
        try:
            return BallPoint(image, margin)
        except DomainEscape:
            raise EmbeddingEscapesBall(
                f'Embedding maps {np.array2string(_coords(z), precision=4)} '
                + f'to a point of norm {linalg.norm(image):.8f}, outside '
                + 'the unit ball.'
            )

    def __call__(self, z):

        return self.map_point(z)

    def to_json(self):
        """Convert to JSON."""
        return {
            'domain_dim': self.domain_dim,
            'target_dim': self.target_dim,
            'components': [comp.to_json() for comp in self.components],
        }

    @classmethod
    def from_json(cls, doc, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : dict
            Embedding document
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        EmbeddingSpec
            Decoded embedding

        Raises
        ------
        MalformedDocument
            For an invalid document

        """
        if not isinstance(doc, dict) or 'components' not in doc:
            raise MalformedDocument('An embedding needs "components"',
                                    location)

        domain_dim = doc.get('domain_dim')
        components = [
            Polynomial.from_json(comp, domain_dim,
                                 f'{location}.components[{index}]')
            for index, comp in enumerate(doc['components'])
        ]

        try:
            embedding = cls(components)
        except DimensionMismatch as err:
            raise MalformedDocument(str(err), location)

        if doc.get('target_dim', embedding.target_dim) != (
            embedding.target_dim
        ):
            raise MalformedDocument(
                '"target_dim" does not match the number of components',
                location,
            )

        return embedding

    def __repr__(self):

        return (
            f'EmbeddingSpec(domain_dim={self.domain_dim}, '
            + f'target_dim={self.target_dim})'
        )


class KernelSpec(object):
    """Kernel Specification.

    Either the Drury-Arveson kernel
    :math:`a_N(\\lambda, \\mu) = 1/(1 - \\langle\\lambda,\\mu\\rangle)` or
    its pullback :math:`\\delta(z)\\overline{\\delta(w)}
    a_N(\\beta(z), \\beta(w))`.

    Parameters
    ----------
    variant : {'drury_arveson', 'pullback'}
        Kernel variant
    dim : int, optional
        Ball dimension of the Drury-Arveson variant
    embedding : EmbeddingSpec, optional
        Embedding of the pullback variant
    delta : Polynomial, optional
        Scalar factor of the pullback variant, default is the constant ``1``

    Raises
    ------
    ValueError
        For an unknown variant or missing parameters

    """

    variants = ('drury_arveson', 'pullback')

    def __init__(self, variant, dim=None, embedding=None, delta=None):

        if variant not in self.variants:
            raise ValueError(
                f'Unknown kernel variant "{variant}", expected one of '
                + f'{self.variants}.'
            )

        if variant == 'drury_arveson':
            if dim is None or dim < 1:
                raise ValueError('The Drury-Arveson kernel needs N >= 1.')
            self.target_dim = int(dim)
            self.domain_dim = int(dim)
            self.embedding = None
            self.delta = None

        else:
            if embedding is None:
                raise ValueError('A pullback kernel needs an embedding.')
            if delta is None:
                delta = Polynomial.constant(1.0, embedding.domain_dim)
            if delta.n_vars != embedding.domain_dim:
                raise DimensionMismatch(
                    'Delta and embedding must use the same variables.'
                )
            self.embedding = embedding
            self.delta = delta
            self.target_dim = embedding.target_dim
            self.domain_dim = embedding.domain_dim

        self.variant = variant

    @classmethod
    def drury_arveson(cls, dim):
        """Build Drury-Arveson Kernel."""
        return cls('drury_arveson', dim=dim)

    @classmethod
    def pullback(cls, embedding, delta=None):
        """Build Pullback Kernel."""
        return cls('pullback', embedding=embedding, delta=delta)

    def map_point(self, z):
        """Map Point.

        Parameters
        ----------
        z : array_like
            Domain point

        Returns
        -------
        tuple
            Ball point :math:`\\beta(z)` and scalar :math:`\\delta(z)`

        Raises
        ------
        DomainEscape
            If a Drury-Arveson point is outside the ball
        EmbeddingEscapesBall
            If the embedding leaves the ball
        DeltaVanishes
            If :math:`|\\delta(z)|` is below ``DELTA_FLOOR``

        """
        if self.variant == 'drury_arveson':
            point = BallPoint(z)
            if point.dim != self.target_dim:
                raise DimensionMismatch(
                    f'Kernel on B_{self.target_dim} evaluated at a point of '
                    + f'dimension {point.dim}.'
                )
            return point, 1.0 + 0.0j

        delta = self.delta.eval(z)
        if abs(delta) < DELTA_FLOOR:
            raise DeltaVanishes(
                f'Delta vanishes at {np.array2string(_coords(z))}.'
            )

        return self.embedding.map_point(z), delta

    def eval(self, z, w):
        """Evaluate.

        Parameters
        ----------
        z : array_like
            First point
        w : array_like
            Second point

        Returns
        -------
        complex
            :math:`k(z, w)`

        """
        lam, delta_z = self.map_point(z)
        mu, delta_w = self.map_point(w)

        return complex(
            delta_z * np.conj(delta_w)
            / (1.0 - np.vdot(mu.coords, lam.coords))
        )

    def to_json(self):
        """Convert to JSON."""
        if self.variant == 'drury_arveson':
            return {'variant': self.variant, 'N': self.target_dim}

        return {
            'variant': self.variant,
            'embedding': self.embedding.to_json(),
            'delta': self.delta.to_json(),
        }

    @classmethod
    def from_json(cls, doc, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : dict
            Kernel document
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        KernelSpec
            Decoded kernel

        Raises
        ------
        MalformedDocument
            For an invalid document

        """
        if not isinstance(doc, dict) or doc.get('variant') not in (
            cls.variants
        ):
            raise MalformedDocument(
                f'A kernel needs a "variant" among {cls.variants}',
                location,
            )

        if doc['variant'] == 'drury_arveson':
            dim = doc.get('N')
            if not isinstance(dim, int) or dim < 1:
                raise MalformedDocument('"N" must be a positive integer',
                                        f'{location}.N')
            return cls.drury_arveson(dim)

        embedding = EmbeddingSpec.from_json(doc.get('embedding'),
                                            f'{location}.embedding')
        delta = None
        if 'delta' in doc:
            delta = Polynomial.from_json(doc['delta'], embedding.domain_dim,
                                         f'{location}.delta')

        return cls.pullback(embedding, delta)

    def __repr__(self):

        if self.variant == 'drury_arveson':
            return f'KernelSpec(drury_arveson, N={self.target_dim})'

        return f'KernelSpec(pullback, {self.embedding!r})'


class TangentialCondition(object):
    """Tangential Condition.

    The left-tangential datum :math:`\\xi^* s(\\nu) = \\eta^*`.

    Parameters
    ----------
    nu : array_like
        Interpolation node, a ball point or a domain point of an embedding
    xi : array_like
        Left direction in :math:`\\mathbb{C}^p`
    eta : array_like
        Value direction in :math:`\\mathbb{C}^q`

    Raises
    ------
    DimensionMismatch
        If one of the vectors is empty

    """

    def __init__(self, nu, xi, eta):

        self.nu = _coords(nu)
        self.xi = _coords(xi)
        self.eta = _coords(eta)

        for name, vec in (('nu', self.nu), ('xi', self.xi),
                          ('eta', self.eta)):
            if vec.size == 0:
                raise DimensionMismatch(f'Condition vector {name} is empty.')

    @property
    def p(self):
        """Row Dimension."""
        return self.xi.size

    @property
    def q(self):
        """Column Dimension."""
        return self.eta.size

    @property
    def dim(self):
        """Node Dimension."""
        return self.nu.size

    @property
    def margin(self):
        """Strictness Margin :math:`\\xi^*\\xi - \\eta^*\\eta`."""
        return float(np.vdot(self.xi, self.xi).real
                     - np.vdot(self.eta, self.eta).real)

    @property
    def strict_floor(self):
        """Strictness Floor."""
        return STRICT_FLOOR * float(np.vdot(self.xi, self.xi).real)

    @property
    def is_strict(self):
        """Strictness Flag."""
        return self.margin > self.strict_floor

    def residual(self, value):
        """Get Residual.

        Parameters
        ----------
        value : numpy.ndarray
            Matrix :math:`s(\\nu)` of shape ``(p, q)``

        Returns
        -------
        float
            :math:`\\|\\xi^* s(\\nu) - \\eta^*\\|`

        """
        return float(linalg.norm(self.xi.conj() @ value - self.eta.conj()))

    def to_json(self):
        """Convert to JSON."""
        return {
            'nu': encode_complex(self.nu),
            'xi': encode_complex(self.xi),
            'eta': encode_complex(self.eta),
        }

    @classmethod
    def from_json(cls, doc, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : dict
            Condition document
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        TangentialCondition
            Decoded condition

        Raises
        ------
        MalformedDocument
            For an invalid document

        """
        if not isinstance(doc, dict) or not {'nu', 'xi', 'eta'} <= set(doc):
            raise MalformedDocument(
                'A condition needs the keys "nu", "xi" and "eta"',
                location,
            )

        vecs = [
            decode_complex(doc[key], 1, f'{location}.{key}')
            for key in ('nu', 'xi', 'eta')
        ]

        try:
            return cls(*vecs)
        except DimensionMismatch as err:
            raise MalformedDocument(str(err), location)

    def __repr__(self):

        return (
            f'TangentialCondition(N={self.dim}, p={self.p}, q={self.q}, '
            + f'margin={self.margin:.3e})'
        )


def kernel_eval(spec, z, w):
    """Evaluate Kernel.

    Parameters
    ----------
    spec : KernelSpec
        Kernel
    z : array_like
        First point
    w : array_like
        Second point

    Returns
    -------
    complex
        :math:`k(z, w)`

    """
    return spec.eval(z, w)


def _mapped_points(spec, points):

    images = []
    deltas = []
    for point in points:
        image, delta = spec.map_point(point)
        images.append(image.coords)
        deltas.append(delta)

    return np.array(images).reshape(-1, spec.target_dim), np.array(deltas)


def gram_matrix(spec, points):
    """Gram Matrix.

    Assemble :math:`[k(z_i, z_j)]_{i,j}`.

    Parameters
    ----------
    spec : KernelSpec
        Kernel
    points : list
        Domain points

    Returns
    -------
    numpy.ndarray
        Hermitian matrix of shape ``(M, M)``

    Raises
    ------
    ValueError
        If no point is given

    """
    if len(points) == 0:
        raise ValueError('A Gram matrix needs at least one point.')

    images, deltas = _mapped_points(spec, points)
    inner = images @ images.conj().T

    return np.outer(deltas, deltas.conj()) / (1.0 - inner)


def pick_matrix(conditions):
    """Pick Matrix.

    Assemble the tangential Pick matrix with entries
    :math:`(\\xi_i^*\\xi_j - \\eta_i^*\\eta_j) /
    (1 - \\langle\\nu_i,\\nu_j\\rangle)`.

    Parameters
    ----------
    conditions : list
        Instances of :class:`TangentialCondition` with ball nodes

    Returns
    -------
    numpy.ndarray
        Hermitian matrix of shape ``(M, M)``

    Raises
    ------
    DimensionMismatch
        If the conditions do not share their dimensions

    """
    if not conditions:
        return np.zeros((0, 0), dtype=complex)

    dims = {(cond.dim, cond.p, cond.q) for cond in conditions}
    if len(dims) != 1:
        raise DimensionMismatch(
            f'Conditions have inconsistent dimensions (N, p, q): {dims}.'
        )

    nodes = np.array([BallPoint(cond.nu).coords for cond in conditions])
    xis = np.array([cond.xi for cond in conditions])
    etas = np.array([cond.eta for cond in conditions])

    numerator = xis.conj() @ xis.T - etas.conj() @ etas.T

    return numerator / (1.0 - nodes @ nodes.conj().T)


def schur_test_matrix(values, gram):
    """Schur Test Matrix.

    Assemble the point-major block matrix
    :math:`[(I_p - S_i S_j^*) k(z_i, z_j)]_{i,j}`.

    Parameters
    ----------
    values : list
        Matrices :math:`S_i` of a common shape ``(p, q)``
    gram : numpy.ndarray
        Gram matrix of shape ``(M, M)``

    Returns
    -------
    numpy.ndarray
        Hermitian matrix of shape ``(M p, M p)``

    """
    p_dim = values[0].shape[0]
    stacked = np.vstack(values)

    return (
        np.kron(gram, np.eye(p_dim))
        - np.kron(gram, np.ones((p_dim, p_dim))) * (stacked @ stacked.conj().T)
    )


def schur_class_test(s, spec, points, tol=PSD_TOL):
    """Sampled Schur-Class Test.

    Parameters
    ----------
    s : MultiplierExpr
        Candidate multiplier on the kernel domain
    spec : KernelSpec
        Kernel
    points : list
        Domain points
    tol : float, optional
        PSD tolerance, default is ``PSD_TOL``

    Returns
    -------
    PsdReport
        PSD report of the sampled kernel
        :math:`(I_p - s(z)s(w)^*) k(z, w)`

    """
    gram = gram_matrix(spec, points)
    values = [s.eval(point) for point in points]

    return psd_check(schur_test_matrix(values, gram), tol)
