"""SCHUR STEP.

This module builds the :math:`J`-inner factors :math:`\\Theta_\\nu` of the
vanishing and tangential interpolation problems, the single-step linear
fractional transformation, and the sampled kernels that verify the
factorizations.

:Author: CNPSchur developers

"""

import numpy as np
from scipy import linalg

from cnpschur.errors import (
    HypothesisViolated,
    MalformedDocument,
    NotStrictlySolvable,
    ShapeMismatch,
)
from cnpschur.utilities.ball_geometry import (
    BallPoint,
    BlaschkeRow,
    _coords,
    ball_inner,
    decode_complex,
    encode_complex,
    random_ball_points,
)
from cnpschur.utilities.hermitian_core import (
    PSD_TOL,
    hermitian_power,
    psd_check,
    signature,
    unitary_completion,
)
from cnpschur.utilities.kernel_engine import STRICT_FLOOR
from cnpschur.utilities.multiplier_expr import (
    LFT,
    Blaschke,
    Product,
    compose_embedding,
)

N_PROBES = 8
PROBE_SEED = 0


class ThetaFactor(object):
    """Theta Factor.

    The :math:`J`-inner block function

    .. math::

        \\Theta_\\nu(\\lambda) = \\begin{pmatrix}
        \\frac{1}{\\sqrt{c^*Jc}} c\\, b_\\nu(\\lambda) & \\alpha
        \\end{pmatrix}
        = \\begin{pmatrix} A(\\lambda) & B \\\\ C(\\lambda) & D
        \\end{pmatrix},

    with :math:`c = (\\xi; \\eta)`, associated to the tangential datum
    :math:`\\xi^* s(\\nu) = \\eta^*`.

    Parameters
    ----------
    nu : BallPoint or array_like
        Interpolation node in :math:`\\mathbb{B}_N`
    xi : array_like
        Left direction in :math:`\\mathbb{C}^p`
    eta : array_like
        Value direction in :math:`\\mathbb{C}^q`
    strict_floor : float, optional
        Relative strictness floor, default is ``STRICT_FLOOR``

    Raises
    ------
    NotStrictlySolvable
        If :math:`\\xi^*\\xi - \\eta^*\\eta \\leq strict\\_floor \\cdot
        \\xi^*\\xi`

    Notes
    -----
    The columns of :math:`\\alpha = \\begin{pmatrix} U_{13} & B \\\\ 0 & D
    \\end{pmatrix}`, where :math:`U_{13}` holds the first :math:`p - 1`
    columns of a unitary completion of :math:`\\xi`,
    :math:`D = (I_q + \\eta\\eta^*/c^*Jc)^{1/2}` and
    :math:`B = \\xi\\eta^* D^{-1} / c^*Jc`, diagonalize
    :math:`J_{p,q} - cc^*/c^*Jc = \\alpha J_{p-1,q} \\alpha^*`.

    """

    def __init__(self, nu, xi, eta, strict_floor=STRICT_FLOOR):

        self.nu = nu if isinstance(nu, BallPoint) else BallPoint(nu)
        self.xi = _coords(xi)
        self.eta = _coords(eta)

        xi_sq = np.vdot(self.xi, self.xi).real
        self.c_jc = xi_sq - np.vdot(self.eta, self.eta).real

        if not self.c_jc > strict_floor * xi_sq:
            raise NotStrictlySolvable(
                'Tangential data must satisfy eta* eta < xi* xi, got '
                + f'margin {self.c_jc:.3e}.'
            )

        self.c = np.concatenate([self.xi, self.eta])
        self.blaschke = BlaschkeRow(self.nu)
        self.unitary = unitary_completion(self.xi)
        self.u13 = self.unitary[:, :self.p - 1]

        defect = (
            np.eye(self.q)
            + np.outer(self.eta, self.eta.conj()) / self.c_jc
        )
        self.d_blk = hermitian_power(defect, 0.5)
        self.d_inv = hermitian_power(defect, -0.5)
        self.b_blk = (
            np.outer(self.xi, self.eta.conj()) / self.c_jc @ self.d_inv
        )

        self.alpha = np.block([
            [self.u13, self.b_blk],
            [np.zeros((self.q, self.p - 1), dtype=complex), self.d_blk],
        ])

        self._sqrt_c_jc = np.sqrt(self.c_jc)

    @property
    def dim(self):
        """Ball Dimension :math:`N`."""
        return self.nu.dim

    @property
    def p(self):
        """Row Dimension."""
        return self.xi.size

    @property
    def q(self):
        """Column Dimension."""
        return self.eta.size

    @property
    def param_shape(self):
        """Parameter Shape ``(N + p - 1, q)``."""
        return (self.dim + self.p - 1, self.q)

    @property
    def signature_in(self):
        """Signature :math:`J_{p,q}` of the values."""
        return signature(self.p, self.q).matrix

    @property
    def signature_out(self):
        """Signature :math:`\\tilde{J} = J_{N+p-1,q}` of the arguments."""
        return signature(self.dim + self.p - 1, self.q).matrix

    def blocks(self, lam):
        """Evaluate Blocks.

        Parameters
        ----------
        lam : BallPoint or array_like
            Evaluation point

        Returns
        -------
        tuple
            Matrices ``A`` (p x (N+p-1)), ``B`` (p x q), ``C`` (q x (N+p-1))
            and ``D`` (q x q)

        """
        row = self.blaschke.eval(BallPoint(lam)) / self._sqrt_c_jc

        a_blk = np.hstack([np.outer(self.xi, row), self.u13])
        c_blk = np.hstack([
            np.outer(self.eta, row),
            np.zeros((self.q, self.p - 1), dtype=complex),
        ])

        return a_blk, self.b_blk, c_blk, self.d_blk

    def eval(self, lam):
        """Evaluate.

        Parameters
        ----------
        lam : BallPoint or array_like
            Evaluation point

        Returns
        -------
        numpy.ndarray
            Matrix of shape ``(p + q, N + p - 1 + q)``

        """
        a_blk, b_blk, c_blk, d_blk = self.blocks(lam)

        return np.block([[a_blk, b_blk], [c_blk, d_blk]])

    def __call__(self, lam):

        return self.eval(lam)

    def invariant_residuals(self):
        """Get Invariant Residuals.

        Returns
        -------
        dict
            Residuals of the orthogonality :math:`\\xi^* U_{13} = 0`, of the
            diagonalization :math:`J - cc^*/c^*Jc = \\alpha J_{p-1,q}
            \\alpha^*` and of the null identity
            :math:`c^* J \\Theta_\\nu(\\nu) = 0`, plus the strictness margin

        """
        sig = self.signature_in
        diag = (
            sig
            - np.outer(self.c, self.c.conj()) / self.c_jc
            - self.alpha @ signature(self.p - 1, self.q).matrix
            @ self.alpha.conj().T
        )
        null = self.c.conj() @ sig @ self.eval(self.nu)

        return {
            'orthogonality': float(linalg.norm(self.xi.conj() @ self.u13)),
            'diagonalization': float(linalg.norm(diag)),
            'null': float(linalg.norm(null)),
            'margin': float(self.c_jc),
        }

    def to_json(self):
        """Convert to JSON."""
        return {
            'nu': self.nu.to_json(),
            'xi': encode_complex(self.xi),
            'eta': encode_complex(self.eta),
        }

    @classmethod
    def from_json(cls, doc, location='$'):
        """Build from JSON.

        Parameters
        ----------
        doc : dict
            Document with keys ``nu``, ``xi`` and ``eta``
        location : str, optional
            Location of ``doc`` in the enclosing document

        Returns
        -------
        ThetaFactor
            Decoded factor

        Raises
        ------
        MalformedDocument
            For an invalid document

        """
        if not isinstance(doc, dict) or not {'nu', 'xi', 'eta'} <= set(doc):
            raise MalformedDocument(
                'A theta factor needs the keys "nu", "xi" and "eta"',
                location,
            )

        return cls(
            BallPoint.from_json(doc['nu'], f'{location}.nu'),
            decode_complex(doc['xi'], 1, f'{location}.xi'),
            decode_complex(doc['eta'], 1, f'{location}.eta'),
        )

    def __repr__(self):

        return (
            f'ThetaFactor(N={self.dim}, p={self.p}, q={self.q}, '
            + f'margin={self.c_jc:.3e})'
        )


def theta_vanishing(nu):
    """Theta Factor of the Vanishing Problem.

    Parameters
    ----------
    nu : BallPoint or array_like
        Zero to impose

    Returns
    -------
    ThetaFactor
        Factor with :math:`p = q = 1`, :math:`\\xi = 1`, :math:`\\eta = 0`,
        i.e. :math:`\\Theta_\\nu = \\mathrm{diag}(b_\\nu, 1)`

    """
    return ThetaFactor(nu, [1.0], [0.0])


def theta_tangential(nu, xi, eta):
    """Theta Factor of the Tangential Problem.

    Parameters
    ----------
    nu : BallPoint or array_like
        Interpolation node
    xi : array_like
        Left direction
    eta : array_like
        Value direction

    Returns
    -------
    ThetaFactor
        Factor of the datum :math:`\\xi^* s(\\nu) = \\eta^*`

    """
    return ThetaFactor(nu, xi, eta)


def f_nu_norm_sq(theta):
    """Squared Norm of the Kernel Function.

    Parameters
    ----------
    theta : ThetaFactor
        Factor

    Returns
    -------
    float
        :math:`\\|f_\\nu\\|^2 = c^*Jc / (1 - \\langle\\nu,\\nu\\rangle)`

    """
    return float(theta.c_jc / (1.0 - theta.nu.norm_sq))


def _defect_kernel(theta, lam, mu):

    sig_out = theta.signature_out
    theta_lam = theta.eval(lam)
    theta_mu = theta.eval(mu)

    return (
        (theta.signature_in - theta_lam @ sig_out @ theta_mu.conj().T)
        / (1.0 - ball_inner(lam, mu))
    )


def theta_kernel_residual(theta, lam, mu):
    """Theta Kernel Residual.

    Frobenius distance between
    :math:`f_\\nu(\\lambda) f_\\nu(\\mu)^* / \\|f_\\nu\\|^2` and
    :math:`(J - \\Theta(\\lambda)\\tilde{J}\\Theta(\\mu)^*) /
    (1 - \\langle\\lambda,\\mu\\rangle)`, where
    :math:`f_\\nu(\\lambda) = c / (1 - \\langle\\lambda,\\nu\\rangle)`.

    Parameters
    ----------
    theta : ThetaFactor
        Factor
    lam : BallPoint or array_like
        First point
    mu : BallPoint or array_like
        Second point

    Returns
    -------
    float
        Residual

    """
    f_lam = theta.c / (1.0 - ball_inner(lam, theta.nu))
    f_mu = theta.c / (1.0 - ball_inner(mu, theta.nu))
    lhs = np.outer(f_lam, f_mu.conj()) / f_nu_norm_sq(theta)

    return float(linalg.norm(lhs - _defect_kernel(theta, lam, mu)))


def block_identity_residuals(theta, lam):
    """Block Identity Residuals.

    Parameters
    ----------
    theta : ThetaFactor
        Factor
    lam : BallPoint or array_like
        Evaluation point

    Returns
    -------
    tuple
        Residuals of :math:`\\xi^*A(\\lambda) - \\eta^*C(\\lambda) =
        (\\sqrt{c^*Jc}\\, b_\\nu(\\lambda), 0)` and of
        :math:`\\xi^*B - \\eta^*D = 0`

    """
    a_blk, b_blk, c_blk, d_blk = theta.blocks(lam)
    xi_h = theta.xi.conj()
    eta_h = theta.eta.conj()

    expected = np.concatenate([
        np.sqrt(theta.c_jc) * theta.blaschke.eval(lam).ravel(),
        np.zeros(theta.p - 1),
    ])

    return (
        float(linalg.norm(xi_h @ a_blk - eta_h @ c_blk - expected)),
        float(linalg.norm(xi_h @ b_blk - eta_h @ d_blk)),
    )


def probe_points(dim, nu=None, count=N_PROBES, seed=PROBE_SEED):
    """Get Probe Points.

    Parameters
    ----------
    dim : int
        Ball dimension
    nu : BallPoint or array_like, optional
        Point prepended to the probes
    count : int, optional
        Number of random probes, default is ``N_PROBES``
    seed : int, optional
        Random seed, default is ``PROBE_SEED``

    Returns
    -------
    list
        Probe points

    """
    points = list(random_ball_points(seed, count, dim))
    if nu is not None:
        points.insert(0, _coords(nu))

    return points


def lft_step(theta, param, tol=PSD_TOL, probes=None):
    """Single Schur Step.

    Build :math:`s = (A s_\\nu + B)(C s_\\nu + D)^{-1}`.

    Parameters
    ----------
    theta : ThetaFactor
        Factor of the datum
    param : MultiplierExpr
        Schur parameter :math:`s_\\nu` of shape ``theta.param_shape``
    tol : float, optional
        Tolerance of the contractivity pre-check, default is ``PSD_TOL``
    probes : list, optional
        Points of the contractivity pre-check, default is ``nu`` and
        ``N_PROBES`` seeded random points

    Returns
    -------
    LFT
        Expression of shape ``(p, q)``

    Raises
    ------
    ShapeMismatch
        If the parameter shape does not match the factor
    HypothesisViolated
        If the parameter has norm above ``1 + tol`` at a probe point

    """
    if param.shape != theta.param_shape:
        raise ShapeMismatch(
            f'Schur parameter must have shape {theta.param_shape}, got '
            + f'{param.shape}.'
        )

    if probes is None:
        probes = probe_points(theta.dim, theta.nu)

    for point in probes:
        norm = linalg.norm(param.eval(point), 2)
        if norm > 1.0 + tol:
            raise HypothesisViolated(
                f'Schur parameter has norm {norm:.6f} > 1 at '
                + f'{np.array2string(_coords(point), precision=4)}.'
            )

    return LFT(theta, param)


def synthesize_vanishing(nu, s_nu):
    """Synthesize Vanishing Multiplier.

    Parameters
    ----------
    nu : BallPoint or array_like
        Zero to impose
    s_nu : MultiplierExpr
        Column parameter of shape ``(N, 1)``

    Returns
    -------
    Product
        Scalar expression :math:`b_\\nu(\\lambda) s_\\nu(\\lambda)`

    Raises
    ------
    ShapeMismatch
        If ``s_nu`` does not have shape ``(N, 1)``

    """
    blaschke = Blaschke(nu)
    if s_nu.shape != (blaschke.domain_dim, 1):
        raise ShapeMismatch(
            f'Parameter must have shape ({blaschke.domain_dim}, 1), got '
            + f'{s_nu.shape}.'
        )

    return Product(blaschke, s_nu)


def synthesize_vanishing_pullback(embedding, w0, g_1):
    """Synthesize Vanishing Pullback Multiplier.

    Parameters
    ----------
    embedding : EmbeddingSpec
        Embedding :math:`\\beta`
    w0 : array_like
        Domain point where the multiplier vanishes
    g_1 : MultiplierExpr
        Column parameter on :math:`\\mathbb{B}_N` of shape ``(N, 1)``

    Returns
    -------
    ComposeEmbedding
        Expression :math:`b_{\\beta(w_0)}(\\beta(z)) G_1(\\beta(z))`

    """
    inner = synthesize_vanishing(embedding.map_point(w0), g_1)

    return compose_embedding(inner, embedding)


def _scalar_values(s, points):

    if s.shape != (1, 1):
        raise ShapeMismatch(f'Expected a scalar expression, got {s.shape}.')

    return np.array([s.eval(point)[0, 0] for point in points])


def vanishing_kernel_test(s, nu, points, tol=PSD_TOL):
    """Vanishing Kernel Test.

    Sampled PSD test of
    :math:`(b_\\nu(\\lambda)b_\\nu(\\mu)^* - s(\\lambda)\\overline{s(\\mu)})
    / (1 - \\langle\\lambda,\\mu\\rangle)`.

    Parameters
    ----------
    s : MultiplierExpr
        Scalar expression
    nu : BallPoint or array_like
        Zero
    points : list
        Sample points
    tol : float, optional
        PSD tolerance, default is ``PSD_TOL``

    Returns
    -------
    PsdReport
        PSD report

    """
    blaschke = BlaschkeRow(nu)
    rows = np.vstack([blaschke.eval(point) for point in points])
    values = _scalar_values(s, points)
    nodes = np.array([_coords(point) for point in points])

    kernel = (
        (rows @ rows.conj().T - np.outer(values, values.conj()))
        / (1.0 - nodes @ nodes.conj().T)
    )

    return psd_check(kernel, tol)


def theta_kernel_test(theta, points, tol=PSD_TOL):
    """Theta Kernel Test.

    Sampled PSD test of the block kernel
    :math:`(J - \\Theta(\\lambda)\\tilde{J}\\Theta(\\mu)^*) /
    (1 - \\langle\\lambda,\\mu\\rangle)`, which is the rank-one kernel of
    :math:`f_\\nu`.

    Parameters
    ----------
    theta : ThetaFactor
        Factor
    points : list
        Sample points
    tol : float, optional
        PSD tolerance, default is ``PSD_TOL``

    Returns
    -------
    PsdReport
        PSD report

    """
    kernel = np.block([
        [_defect_kernel(theta, lam, mu) for mu in points]
        for lam in points
    ])

    return psd_check(kernel, tol)


def tangential_kernel_test(s, theta, points, tol=PSD_TOL):
    """Tangential Kernel Test.

    Sampled PSD test of
    :math:`R(\\lambda)\\tilde{J}R(\\mu)^* / (1 - \\langle\\lambda,\\mu
    \\rangle)` with :math:`R(\\lambda) = (I_p, -s(\\lambda))
    \\Theta(\\lambda)`. The kernel is positive whenever :math:`s` is a
    linear fractional transformation of a Schur parameter through
    :math:`\\Theta`.

    Parameters
    ----------
    s : MultiplierExpr
        Expression of shape ``(p, q)``
    theta : ThetaFactor
        Factor
    points : list
        Sample points
    tol : float, optional
        PSD tolerance, default is ``PSD_TOL``

    Returns
    -------
    PsdReport
        PSD report

    Raises
    ------
    ShapeMismatch
        If ``s`` does not have shape ``(p, q)``

    """
    if s.shape != (theta.p, theta.q):
        raise ShapeMismatch(
            f'Expected shape {(theta.p, theta.q)}, got {s.shape}.'
        )

    rows = [
        np.hstack([np.eye(theta.p), -s.eval(point)]) @ theta.eval(point)
        for point in points
    ]
    sig_out = theta.signature_out

    kernel = np.block([
        [
            rows[i] @ sig_out @ rows[j].conj().T
            / (1.0 - ball_inner(points[i], points[j]))
            for j in range(len(points))
        ]
        for i in range(len(points))
    ])

    return psd_check(kernel, tol)
