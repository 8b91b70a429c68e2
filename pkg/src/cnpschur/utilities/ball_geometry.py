"""BALL GEOMETRY.

This module defines points of the open unit ball of :math:`\\mathbb{C}^N`,
their inner product, the ball Blaschke factor and the JSON encoding of
complex arrays.

:Author: CNPSchur developers

"""

import numpy as np
from scipy import linalg

from cnpschur.errors import DimensionMismatch, DomainEscape, MalformedDocument
from cnpschur.utilities.hermitian_core import hermitian_power

BALL_MARGIN = 1e-6
RADIUS_CAP = 0.95


def _coords(point):
    """Get Point Coordinates.

    Parameters
    ----------
    point : BallPoint or array_like
        Point

    Returns
    -------
    numpy.ndarray
        One-dimensional complex array

    """
    if isinstance(point, BallPoint):
        return point.coords

    return np.asarray(point, dtype=complex).ravel()


class BallPoint(object):
    """Ball Point.

    A point :math:`\\lambda` of the open unit ball :math:`\\mathbb{B}_N`.

    Parameters
    ----------
    coords : array_like
        Complex coordinates
    margin : float, optional
        Distance to keep from the unit sphere, default is ``BALL_MARGIN``

    Raises
    ------
    DomainEscape
        If :math:`\\|\\lambda\\| \\geq 1 - margin`

    """

    def __init__(self, coords, margin=BALL_MARGIN):

        self.coords = _coords(coords)
        self.margin = margin

    @property
    def coords(self):
        """Coordinates."""
        return self._coords

    @coords.setter
    def coords(self, value):

        if value.ndim != 1 or value.size == 0:
            raise DimensionMismatch(
                'A ball point must be a non-empty vector, got shape '
                + f'{value.shape}.'
            )
        self._coords = value

    @property
    def margin(self):
        """Boundary Margin."""
        return self._margin

    @margin.setter
    def margin(self, value):

        norm = linalg.norm(self._coords)
        if not norm < 1.0 - value:
            raise DomainEscape(
                f'Point of norm {norm:.8f} is not inside the unit ball '
                + f'with margin {value:.1e}.'
            )
        self._margin = value

    @property
    def dim(self):
        """Ambient Dimension."""
        return self._coords.size

    @property
    def norm_sq(self):
        """Squared Euclidean Norm."""
        return ball_inner(self, self).real

    def to_json(self):
        """Convert to JSON.

        Returns
        -------
        list
            List of ``[re, im]`` pairs

        """
        return encode_complex(self._coords)

    @classmethod
    def from_json(cls, doc, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : list
            List of ``[re, im]`` pairs
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        BallPoint
            Decoded point

        """
        return cls(decode_complex(doc, 1, location))

    def __repr__(self):

        return f'BallPoint({np.array2string(self._coords, precision=4)})'


def ball_inner(lam, mu):
    """Ball Inner Product.

    Compute :math:`\\langle\\lambda, \\mu\\rangle = \\sum_i \\lambda_i
    \\overline{\\mu_i}`.

    Parameters
    ----------
    lam : BallPoint or array_like
        First point
    mu : BallPoint or array_like
        Second point

    Returns
    -------
    complex
        Inner product

    Raises
    ------
    DimensionMismatch
        If the points have different dimensions

    """
    lam = _coords(lam)
    mu = _coords(mu)

    if lam.size != mu.size:
        raise DimensionMismatch(
            f'Points have different dimensions: {lam.size} and {mu.size}.'
        )

    return complex(np.vdot(mu, lam))


class BlaschkeRow(object):
    """Blaschke Row.

    The Blaschke factor of the ball vanishing at :math:`\\alpha`,

    .. math::

        b_\\alpha(\\lambda) =
        \\frac{\\sqrt{1 - \\langle\\alpha,\\alpha\\rangle}}
        {1 - \\langle\\lambda,\\alpha\\rangle} (\\lambda - \\alpha)
        (I_N - \\alpha^*\\alpha)^{-1/2},

    a contractive :math:`1 \\times N` row on :math:`\\mathbb{B}_N`.

    Parameters
    ----------
    alpha : BallPoint or array_like
        Base point

    Notes
    -----
    The prefactor :math:`\\sqrt{1 - \\langle\\alpha,\\alpha\\rangle}` makes
    :math:`(1 - b_\\alpha(\\lambda)b_\\alpha(\\mu)^*)/(1 -
    \\langle\\lambda,\\mu\\rangle)` equal the rank-one kernel
    :math:`(1 - \\langle\\alpha,\\alpha\\rangle)/((1 -
    \\langle\\lambda,\\alpha\\rangle)(1 - \\langle\\alpha,\\mu\\rangle))`
    and reduces to :math:`(z - a)/(1 - z\\bar{a})` on the disc.

    """

    def __init__(self, alpha):

        self.alpha = alpha if isinstance(alpha, BallPoint) else (
            BallPoint(alpha)
        )
        coords = self.alpha.coords
        self.defect = 1.0 - self.alpha.norm_sq
        self.correction = hermitian_power(
            np.eye(coords.size) - np.outer(coords.conj(), coords),
            -0.5,
        )
        self._scale = np.sqrt(self.defect)

    @property
    def dim(self):
        """Ambient Dimension."""
        return self.alpha.dim

    def eval(self, lam):
        """Evaluate.

        Parameters
        ----------
        lam : BallPoint or array_like
            Evaluation point

        Returns
        -------
        numpy.ndarray
            :math:`1 \\times N` row :math:`b_\\alpha(\\lambda)`

        Raises
        ------
        DimensionMismatch
            If the point dimension differs from the base point dimension

        """
        lam = _coords(lam)
        inner = ball_inner(lam, self.alpha)
        diff = (lam - self.alpha.coords)[np.newaxis, :]

        return self._scale / (1.0 - inner) * (diff @ self.correction)

    def __call__(self, lam):

        return self.eval(lam)

    def __repr__(self):

        return f'BlaschkeRow(alpha={self.alpha!r})'


def blaschke_eval(brow, lam):
    """Evaluate Blaschke Row.

    Parameters
    ----------
    brow : BlaschkeRow
        Blaschke factor
    lam : BallPoint or array_like
        Evaluation point

    Returns
    -------
    numpy.ndarray
        :math:`1 \\times N` row

    """
    return brow.eval(lam)


def blaschke_identity_residual(alpha, lam, mu):
    """Blaschke Identity Residual.

    Absolute difference between the two sides of

    .. math::

        \\frac{1 - b_\\alpha(\\lambda)b_\\alpha(\\mu)^*}
        {1 - \\langle\\lambda,\\mu\\rangle} =
        \\frac{1 - \\langle\\alpha,\\alpha\\rangle}
        {(1 - \\langle\\lambda,\\alpha\\rangle)
        (1 - \\langle\\alpha,\\mu\\rangle)}.

    Parameters
    ----------
    alpha : BallPoint, BlaschkeRow or array_like
        Base point, or an already built Blaschke factor
    lam : BallPoint or array_like
        First point
    mu : BallPoint or array_like
        Second point

    Returns
    -------
    float
        Residual

    """
    brow = alpha if isinstance(alpha, BlaschkeRow) else BlaschkeRow(alpha)
    alpha = brow.alpha

    b_lam = brow.eval(lam)
    b_mu = brow.eval(mu)

    lhs = (1.0 - np.vdot(b_mu, b_lam)) / (1.0 - ball_inner(lam, mu))
    rhs = brow.defect / (
        (1.0 - ball_inner(lam, alpha)) * (1.0 - ball_inner(alpha, mu))
    )

    return float(abs(lhs - rhs))


def random_ball_points(rng, count, dim, radius_cap=RADIUS_CAP):
    """Draw Random Ball Points.

    Draw points uniformly in the polydisc :math:`\\mathbb{D}^N` and rescale
    those with norm above ``radius_cap`` onto the sphere of that radius.

    Parameters
    ----------
    rng : numpy.random.Generator or int
        Random generator or seed
    count : int
        Number of points
    dim : int
        Ambient dimension
    radius_cap : float, optional
        Largest allowed norm, default is ``RADIUS_CAP``

    Returns
    -------
    numpy.ndarray
        Array of shape ``(count, dim)``

    Raises
    ------
    ValueError
        If ``radius_cap`` is not in ``(0, 1)``

    """
    if not 0.0 < radius_cap < 1.0:
        raise ValueError(
            f'The radius cap must be in (0, 1), got {radius_cap}.'
        )

    rng = np.random.default_rng(rng)

    radii = np.sqrt(rng.uniform(size=(count, dim)))
    angles = rng.uniform(0.0, 2.0 * np.pi, size=(count, dim))
    points = radii * np.exp(1j * angles)

    norms = linalg.norm(points, axis=1) if count else np.zeros(0)
    scale = np.minimum(1.0, radius_cap / np.maximum(norms, 1e-300))

    return points * scale[:, np.newaxis]


def encode_complex(values):
    """Encode Complex Array.

    Parameters
    ----------
    values : array_like
        Complex scalar, vector or matrix

    Returns
    -------
    list
        Nested lists with complex entries replaced by ``[re, im]`` pairs

    """
    values = np.asarray(values, dtype=complex)
    pairs = np.stack([values.real, values.imag], axis=-1)

    return pairs.tolist()


def decode_complex(doc, ndim, location='$'):
    """Decode Complex Array.

    Parameters
    ----------
    doc : list
        Nested lists of ``[re, im]`` pairs
    ndim : int
        Expected number of dimensions of the decoded array
    location : str, optional
        Location of ``doc`` in the enclosing document

    Returns
    -------
    numpy.ndarray
        Complex array

    Raises
    ------
    MalformedDocument
        If ``doc`` is not an array of ``[re, im]`` pairs of the expected
        dimension

    """
    try:
        pairs = np.asarray(doc, dtype=float)
    except (TypeError, ValueError):
        raise MalformedDocument(
            'Expected nested arrays of [re, im] number pairs',
            location,
        )

    if pairs.ndim != ndim + 1 or pairs.shape[-1] != 2:
        raise MalformedDocument(
            f'Expected a {ndim}-dimensional array of [re, im] pairs, got '
            + f'shape {pairs.shape}',
            location,
        )

    return pairs[..., 0] + 1j * pairs[..., 1]
