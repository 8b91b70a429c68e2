"""HERMITIAN CORE.

This module defines the dense complex linear-algebra primitives used by the
constructions: positive semi-definite testing, Hermitian matrix powers,
unitary completion and signature matrices.

:Author: CNPSchur developers

"""

import numpy as np
from scipy import linalg

from cnpschur.errors import (
    DimensionMismatch,
    EmptySignature,
    NonHermitianInput,
    NotPositiveDefinite,
    ZeroVector,
)

HERMITIAN_TOL = 1e-10
PD_FLOOR = 1e-12
PSD_TOL = 1e-8


class PsdReport(object):
    """PSD Report.

    Result of a positive semi-definite test on a Hermitian matrix.

    Parameters
    ----------
    min_eigenvalue : float
        Smallest eigenvalue of the Hermitian part
    max_eigenvalue : float
        Largest eigenvalue of the Hermitian part
    tolerance_used : float
        Relative tolerance of the test
    eigenvalues : numpy.ndarray, optional
        All eigenvalues in ascending order

    Notes
    -----
    The matrix is declared PSD when
    ``min_eigenvalue >= -tolerance_used * max(1, max_eigenvalue)``.

    """

    def __init__(
        self,
        min_eigenvalue,
        max_eigenvalue,
        tolerance_used,
        eigenvalues=None,
    ):

        self.min_eigenvalue = float(min_eigenvalue)
        self.max_eigenvalue = float(max_eigenvalue)
        self.tolerance_used = float(tolerance_used)
        if eigenvalues is None:
            eigenvalues = np.array([min_eigenvalue, max_eigenvalue])
        self.eigenvalues = np.asarray(eigenvalues, dtype=float)

    @property
    def is_psd(self):
        """PSD Flag."""
        threshold = -self.tolerance_used * max(1.0, self.max_eigenvalue)

        return self.min_eigenvalue >= threshold

    def to_dict(self, with_eigenvalues=False):
        """Convert to Dictionary.

        Parameters
        ----------
        with_eigenvalues : bool, optional
            Include the full spectrum, default is ``False``

        Returns
        -------
        dict
            JSON-ready report

        """
        report = {
            'is_psd': bool(self.is_psd),
            'min_eigenvalue': self.min_eigenvalue,
            'max_eigenvalue': self.max_eigenvalue,
            'tolerance_used': self.tolerance_used,
        }
        if with_eigenvalues:
            report['eigenvalues'] = [float(val) for val in self.eigenvalues]

        return report

    def __repr__(self):

        return (
            f'PsdReport(is_psd={self.is_psd}, '
            + f'min_eigenvalue={self.min_eigenvalue:.3e}, '
            + f'max_eigenvalue={self.max_eigenvalue:.3e})'
        )


class SignatureMatrix(object):
    """Signature Matrix.

    The diagonal matrix :math:`J_{p,q} = \\mathrm{diag}(I_p, -I_q)`.

    Parameters
    ----------
    p : int
        Number of positive diagonal entries
    q : int
        Number of negative diagonal entries

    Raises
    ------
    ValueError
        For negative dimensions
    EmptySignature
        If ``p + q == 0``

    """

    def __init__(self, p, q):

        if p < 0 or q < 0:
            raise ValueError(
                f'Signature dimensions must be non-negative, got ({p}, {q}).'
            )
        if p + q == 0:
            raise EmptySignature('Signature matrix J_{0,0} is empty.')

        self.p = int(p)
        self.q = int(q)

    @property
    def diagonal(self):
        """Diagonal Entries."""
        return np.concatenate([np.ones(self.p), -np.ones(self.q)])

    @property
    def matrix(self):
        """Dense Complex Matrix."""
        return np.diag(self.diagonal).astype(complex)

    @property
    def size(self):
        """Matrix Size."""
        return self.p + self.q

    def __array__(self, dtype=None, copy=None):

        mat = self.matrix

        return mat if dtype is None else mat.astype(dtype)

    def __repr__(self):

        return f'SignatureMatrix(p={self.p}, q={self.q})'


def hermitian_deviation(mat):
    """Get Hermitian Deviation.

    Relative Frobenius distance between a matrix and its conjugate
    transpose.

    Parameters
    ----------
    mat : numpy.ndarray
        Square matrix

    Returns
    -------
    float
        :math:`\\|M - M^*\\|_F / \\max(1, \\|M\\|_F)`

    """
    mat = np.asarray(mat)

    return (
        linalg.norm(mat - mat.conj().T)
        / max(1.0, linalg.norm(mat))
    )


def as_hermitian(mat, hermitian_tol=HERMITIAN_TOL):
    """Validate Hermitian Matrix.

    Parameters
    ----------
    mat : array_like
        Square matrix
    hermitian_tol : float, optional
        Relative Hermitian tolerance, default is ``HERMITIAN_TOL``

    Returns
    -------
    numpy.ndarray
        Complex copy of the input

    Raises
    ------
    DimensionMismatch
        If the input is not a square matrix
    NonHermitianInput
        If the Hermitian deviation exceeds ``hermitian_tol``

    """
    mat = np.array(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DimensionMismatch(
            f'Expected a square matrix, got shape {mat.shape}.'
        )

    deviation = hermitian_deviation(mat) if mat.size else 0.0
    if deviation > hermitian_tol:
        raise NonHermitianInput(
            f'Matrix deviates from Hermitian by {deviation:.3e} '
            + f'(tolerance {hermitian_tol:.1e}).'
        )

    return mat


def psd_check(mat, tol=PSD_TOL, hermitian_tol=HERMITIAN_TOL):
    """Check Positive Semi-Definiteness.

    Compute the extreme eigenvalues of the Hermitian part
    :math:`(M + M^*)/2` and compare the smallest one with a relative
    threshold.

    Parameters
    ----------
    mat : array_like
        Hermitian matrix
    tol : float, optional
        Relative PSD tolerance, default is ``PSD_TOL``
    hermitian_tol : float, optional
        Relative Hermitian tolerance, default is ``HERMITIAN_TOL``

    Returns
    -------
    PsdReport
        Eigenvalue report

    Raises
    ------
    NonHermitianInput
        If the Hermitian deviation exceeds ``hermitian_tol``

    """
    mat = as_hermitian(mat, hermitian_tol)

    if mat.size == 0:
        return PsdReport(0.0, 0.0, tol, np.zeros(0))

    eigvals = linalg.eigvalsh(0.5 * (mat + mat.conj().T))

    return PsdReport(eigvals[0], eigvals[-1], tol, eigvals)


def hermitian_power(mat, exponent, pd_floor=PD_FLOOR):
    """Compute Hermitian Power.

    Compute :math:`M^{e}` for a positive definite Hermitian matrix through
    its eigendecomposition.

    Parameters
    ----------
    mat : array_like
        Positive definite Hermitian matrix
    exponent : {0.5, -0.5, -1}
        Exponent
    pd_floor : float, optional
        Relative floor on the smallest eigenvalue, default is ``PD_FLOOR``

    Returns
    -------
    numpy.ndarray
        Hermitian matrix power

    Raises
    ------
    ValueError
        For an unsupported exponent
    NotPositiveDefinite
        If the smallest eigenvalue is below the floor

    """
    if exponent not in (0.5, -0.5, -1):
        raise ValueError(
            f'Exponent must be one of 1/2, -1/2 or -1, got {exponent}.'
        )

    mat = as_hermitian(mat)
    eigvals, eigvecs = linalg.eigh(0.5 * (mat + mat.conj().T))

    if eigvals[0] <= pd_floor * max(1.0, eigvals[-1]):
        raise NotPositiveDefinite(
            f'Smallest eigenvalue {eigvals[0]:.3e} is below the positive '
            + 'definite floor.'
        )

    return (eigvecs * eigvals ** exponent) @ eigvecs.conj().T


def unitary_completion(xi):
    """Complete Vector to Unitary.

    Build a :math:`p \\times p` unitary matrix whose last column is
    :math:`\\xi / \\|\\xi\\|`, so that the first :math:`p-1` columns span
    the orthogonal complement of :math:`\\xi`.

    Parameters
    ----------
    xi : array_like
        Non-zero complex vector of length :math:`p`

    Returns
    -------
    numpy.ndarray
        Unitary matrix

    Raises
    ------
    ZeroVector
        If ``xi`` vanishes

    Notes
    -----
    A single Householder reflection :math:`H = I - 2vv^*/(v^*v)` with
    :math:`v = u + \\varphi e_p`, where :math:`u = \\xi/\\|\\xi\\|` and
    :math:`\\varphi` is the phase of :math:`u_p`, exchanges :math:`u` and
    :math:`-\\varphi e_p`. Right multiplication by
    :math:`\\mathrm{diag}(1, \\dots, 1, -\\varphi)` then sends :math:`e_p`
    to :math:`u`. Since :math:`|v_p| \\geq 1` the reflection is always
    well conditioned.

    """
    xi = np.asarray(xi, dtype=complex).ravel()
    norm = linalg.norm(xi)

    if xi.size == 0 or norm == 0.0:
        raise ZeroVector('Cannot complete the zero vector to a unitary.')

    unit = xi / norm
    last = unit[-1]
    phase = last / abs(last) if abs(last) > 0.0 else 1.0 + 0.0j

    vec = unit.copy()
    vec[-1] += phase
    reflection = (
        np.eye(xi.size, dtype=complex)
        - 2.0 * np.outer(vec, vec.conj()) / np.vdot(vec, vec).real
    )

    phases = np.ones(xi.size, dtype=complex)
    phases[-1] = -phase

    return reflection * phases


def signature(p, q):
    """Build Signature Matrix.

    Parameters
    ----------
    p : int
        Number of positive entries
    q : int
        Number of negative entries

    Returns
    -------
    SignatureMatrix
        :math:`J_{p,q}`

    """
    return SignatureMatrix(p, q)
