"""CONTRACTIVITY.

This module checks Poincare contractivity of Schur multipliers: the
pointwise inequality attached to a tangential datum, its matrix version on
finite samples, the classical inequality on the disc and its version for
pullback kernels.

:Author: CNPSchur developers

"""

import numpy as np
from joblib import Parallel, delayed
from scipy import linalg

from cnpschur.errors import (
    DenominatorVanishes,
    HypothesisViolated,
    ShapeMismatch,
)
from cnpschur.utilities.ball_geometry import (
    BlaschkeRow,
    _coords,
    encode_complex,
)
from cnpschur.utilities.hermitian_core import (
    PSD_TOL,
    hermitian_power,
    psd_check,
)

REPORT_TOL = 1e-8
HYPOTHESIS_TOL = 1e-8
DENOMINATOR_FLOOR = 1e-14


class ContractivityReport(object):
    """Contractivity Report.

    Parameters
    ----------
    lhs : float
        Left-hand side of the inequality
    rhs : float
        Right-hand side of the inequality
    point : array_like
        Evaluation point

    """

    def __init__(self, lhs, rhs, point):

        self.lhs = float(lhs)
        self.rhs = float(rhs)
        self.point = _coords(point)

    @property
    def margin(self):
        """Margin ``rhs - lhs``."""
        return self.rhs - self.lhs

    def holds(self, tol=REPORT_TOL):
        """Check Inequality.

        Parameters
        ----------
        tol : float, optional
            Tolerance, default is ``REPORT_TOL``

        Returns
        -------
        bool
            ``True`` if ``margin >= -tol``

        """
        return self.margin >= -tol

    def to_json(self):
        """Convert to JSON."""
        return {
            'point': encode_complex(self.point),
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
        }

    def __repr__(self):

        return (
            f'ContractivityReport(lhs={self.lhs:.6e}, rhs={self.rhs:.6e}, '
            + f'margin={self.margin:.3e})'
        )


class _Datum(object):
    """Tangential datum with its derived constants."""

    def __init__(self, xi, eta):

        self.xi = _coords(xi)
        self.eta = _coords(eta)
        self.c_jc = (
            np.vdot(self.xi, self.xi).real - np.vdot(self.eta, self.eta).real
        )

        if not self.c_jc > 0.0:
            raise HypothesisViolated(
                'Poincare contractivity needs eta* eta < xi* xi, got margin '
                + f'{self.c_jc:.3e}.'
            )

        defect = (
            np.eye(self.eta.size)
            + np.outer(self.eta, self.eta.conj()) / self.c_jc
        )
        self.defect_sqrt = hermitian_power(defect, 0.5)

    def check_hypothesis(self, value):

        if value.shape != (self.xi.size, self.eta.size):
            raise ShapeMismatch(
                f'Multiplier shape {value.shape} does not match the datum '
                + f'({self.xi.size}, {self.eta.size}).'
            )

        residual = linalg.norm(self.xi.conj() @ value - self.eta.conj())
        if residual > HYPOTHESIS_TOL:
            raise HypothesisViolated(
                f'Multiplier misses the datum by {residual:.3e}.'
            )

    def sides(self, value):
        """Return the left row factor and the scalar weight."""
        beta = (self.xi.conj() @ value - self.eta.conj()) @ self.defect_sqrt
        weight = (
            np.vdot(self.xi, self.xi) - self.xi.conj() @ value @ self.eta
        ) / np.sqrt(self.c_jc)

        return beta, weight


def poincare_check(s, nu, xi, eta, lam):
    """Poincare Check.

    Evaluate both sides of

    .. math::

        \\|(\\xi^*s(\\lambda) - \\eta^*)(I_q + \\eta\\eta^*/c^*Jc)^{1/2}\\|
        \\leq \\frac{|\\xi^*\\xi - \\xi^*s(\\lambda)\\eta|}{\\sqrt{c^*Jc}}
        \\|b_\\nu(\\lambda)\\|.

    Parameters
    ----------
    s : MultiplierExpr
        Multiplier of shape ``(p, q)`` with :math:`\\xi^*s(\\nu) = \\eta^*`
    nu : array_like
        Interpolation node
    xi : array_like
        Left direction
    eta : array_like
        Value direction
    lam : array_like
        Evaluation point

    Returns
    -------
    ContractivityReport
        Report

    Raises
    ------
    HypothesisViolated
        If the datum is not strict or not interpolated by ``s``

    """
    datum = _Datum(xi, eta)
    datum.check_hypothesis(s.eval(nu))

    beta, weight = datum.sides(s.eval(lam))
    b_norm = linalg.norm(BlaschkeRow(nu).eval(lam))

    return ContractivityReport(linalg.norm(beta), abs(weight) * b_norm, lam)


def pullback_poincare_check(s, embedding, w0, xi, eta, z):
    """Pullback Poincare Check.

    Poincare inequality for a multiplier :math:`S` of
    :math:`\\mathcal{H}(K_\\beta)` with :math:`\\xi^*S(w_0) = \\eta^*`, where
    the Blaschke factor is :math:`b_{\\beta(w_0)}(\\beta(z))`.

    Parameters
    ----------
    s : MultiplierExpr
        Multiplier on the embedding domain
    embedding : EmbeddingSpec
        Embedding :math:`\\beta`
    w0 : array_like
        Domain node
    xi : array_like
        Left direction
    eta : array_like
        Value direction
    z : array_like
        Domain evaluation point

    Returns
    -------
    ContractivityReport
        Report

    """
    datum = _Datum(xi, eta)
    datum.check_hypothesis(s.eval(w0))

    beta, weight = datum.sides(s.eval(z))
    b_norm = linalg.norm(
        BlaschkeRow(embedding.map_point(w0)).eval(embedding.map_point(z))
    )

    return ContractivityReport(linalg.norm(beta), abs(weight) * b_norm, z)


def poincare_matrix_check(s, nu, xi, eta, points, tol=PSD_TOL):
    """Poincare Matrix Check.

    Sampled PSD test of
    :math:`(a(\\lambda)a(\\mu)^* - \\beta(\\lambda)\\beta(\\mu)^*) /
    (1 - \\langle\\lambda,\\mu\\rangle)` with
    :math:`a(\\lambda) = (\\xi^*\\xi - \\xi^*s(\\lambda)\\eta)
    (b_\\nu(\\lambda), 0) / \\sqrt{c^*Jc}` and
    :math:`\\beta(\\lambda) = (\\xi^*s(\\lambda) - \\eta^*)
    (I_q + \\eta\\eta^*/c^*Jc)^{1/2}`.

    Parameters
    ----------
    s : MultiplierExpr
        Multiplier with :math:`\\xi^*s(\\nu) = \\eta^*`
    nu : array_like
        Interpolation node
    xi : array_like
        Left direction
    eta : array_like
        Value direction
    points : list
        Sample points
    tol : float, optional
        PSD tolerance, default is ``PSD_TOL``

    Returns
    -------
    PsdReport
        PSD report

    """
    datum = _Datum(xi, eta)
    datum.check_hypothesis(s.eval(nu))
    blaschke = BlaschkeRow(nu)

    left_rows = []
    right_rows = []
    for point in points:
        beta, weight = datum.sides(s.eval(point))
        left_rows.append(weight * blaschke.eval(point).ravel())
        right_rows.append(beta)

    left_rows = np.array(left_rows)
    right_rows = np.array(right_rows)
    nodes = np.array([_coords(point) for point in points])

    kernel = (
        (left_rows @ left_rows.conj().T - right_rows @ right_rows.conj().T)
        / (1.0 - nodes @ nodes.conj().T)
    )

    return psd_check(kernel, tol)


def _scalar(s, point):

    value = s.eval(point)
    if value.shape != (1, 1):
        raise ShapeMismatch(
            f'Expected a scalar multiplier, got {value.shape}.'
        )

    return complex(value[0, 0])


def classical_disc_check(s, a, z):
    """Classical Disc Check.

    Evaluate both sides of
    :math:`|(s(z) - s(a))/(1 - s(z)\\overline{s(a)})| \\leq
    |(z - a)/(1 - z\\bar{a})|`.

    Parameters
    ----------
    s : MultiplierExpr
        Scalar multiplier on the unit disc
    a : complex
        Base point
    z : complex
        Evaluation point

    Returns
    -------
    ContractivityReport
        Report

    Raises
    ------
    DenominatorVanishes
        If :math:`|1 - s(z)\\overline{s(a)}| < 10^{-14}`

    """
    a = complex(_coords(a)[0])
    z = complex(_coords(z)[0])
    s_a = _scalar(s, [a])
    s_z = _scalar(s, [z])

    denominator = 1.0 - s_z * np.conj(s_a)
    if abs(denominator) < DENOMINATOR_FLOOR:
        raise DenominatorVanishes(
            f'|1 - s(z) conj(s(a))| = {abs(denominator):.3e} at z={z}, a={a}.'
        )

    lhs = abs((s_z - s_a) / denominator)
    rhs = abs((z - a) / (1.0 - z * np.conj(a)))

    return ContractivityReport(lhs, rhs, [z])


def scalar_reduction_residual(s, a, z):
    """Scalar Reduction Residual.

    For :math:`N = p = q = 1`, rescale both sides of the general inequality
    with datum :math:`\\xi = 1`, :math:`\\eta = \\overline{s(a)}` by
    :math:`\\sqrt{1 - |s(a)|^2} / |1 - s(z)\\overline{s(a)}|` and compare
    them with the classical disc inequality.

    Parameters
    ----------
    s : MultiplierExpr
        Scalar multiplier on the unit disc
    a : complex
        Base point
    z : complex
        Evaluation point

    Returns
    -------
    float
        Largest absolute difference between matching sides

    """
    s_a = _scalar(s, [complex(_coords(a)[0])])
    s_z = _scalar(s, [complex(_coords(z)[0])])

    general = poincare_check(s, [a], [1.0], [np.conj(s_a)], [z])
    classical = classical_disc_check(s, a, z)

    scale = np.sqrt(1.0 - abs(s_a) ** 2) / abs(1.0 - s_z * np.conj(s_a))

    return float(max(
        abs(general.lhs * scale - classical.lhs),
        abs(general.rhs * scale - classical.rhs),
    ))


def poincare_sweep(s, nu, xi, eta, points, n_jobs=1, backend='loky'):
    """Poincare Sweep.

    Parameters
    ----------
    s : MultiplierExpr
        Multiplier with :math:`\\xi^*s(\\nu) = \\eta^*`
    nu : array_like
        Interpolation node
    xi : array_like
        Left direction
    eta : array_like
        Value direction
    points : list
        Evaluation points
    n_jobs : int, optional
        Number of joblib workers, default is ``1``
    backend : str, optional
        Joblib backend, default is ``'loky'``

    Returns
    -------
    list
        Instances of :class:`ContractivityReport` in the order of
        ``points``

    """
    return Parallel(n_jobs=n_jobs, backend=backend)(
        delayed(poincare_check)(s, nu, xi, eta, point) for point in points
    )
