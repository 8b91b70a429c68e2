"""IDENTITY SUITE.

This module defines the randomized identity checks of the selftest command.
Every check is a module-level function of ``(seed, samples, radius_cap)``
returning the largest residual met, so it can be shipped to joblib workers.
Inequalities and positivity tests report their largest violation instead.

:Author: CNPSchur developers

"""

import numpy as np
from scipy import linalg

from cnpschur.utilities.ball_geometry import (
    blaschke_identity_residual,
    random_ball_points,
)
from cnpschur.utilities.contractivity import (
    classical_disc_check,
    poincare_matrix_check,
    poincare_sweep,
    scalar_reduction_residual,
)
from cnpschur.utilities.kernel_engine import (
    EmbeddingSpec,
    Polynomial,
    TangentialCondition,
)
from cnpschur.utilities.multiplier_expr import (
    LFT,
    Blaschke,
    Const,
    Product,
    ScalarScale,
    Sum,
)
from cnpschur.utilities.schur_algorithm import (
    InterpolationProblem,
    solvability_check,
    solve_central,
    verify_solution,
)
from cnpschur.utilities.schur_step import (
    ThetaFactor,
    block_identity_residuals,
    synthesize_vanishing,
    theta_kernel_residual,
    vanishing_kernel_test,
)

ALGEBRAIC_TOL = 1e-10
POSITIVITY_TOL = 1e-8
BOUNDARY_TOL = 1e-7
DEFAULT_CAP = 0.95
BLASCHKE_DIMS = (1, 2, 3, 5)
ETA_RATIO = 0.8
VIOLATION_SCALE = 1.2


def _rng(seed, salt):

    return np.random.default_rng([seed, salt])


def _complex_normal(rng, size):

    return rng.normal(size=size) + 1j * rng.normal(size=size)


def _contraction(rng, rows, cols):
    """Draw a matrix of spectral norm one."""
    mat = _complex_normal(rng, (rows, cols))

    return mat / linalg.norm(mat, 2)


def _violation(report):

    return max(0.0, -report.min_eigenvalue)


def random_datum(rng, p, q):
    """Random Datum.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random generator
    p : int
        Length of the left direction
    q : int
        Length of the value direction

    Returns
    -------
    tuple
        Unit vector :math:`\\xi` and :math:`\\eta` with
        :math:`\\eta^*\\eta \\leq 0.64\\, \\xi^*\\xi`

    """
    xi = _complex_normal(rng, p)
    xi /= linalg.norm(xi)
    eta = _complex_normal(rng, q)
    eta *= ETA_RATIO * rng.uniform() / linalg.norm(eta)

    return xi, eta


def random_theta(rng, radius_cap, max_dim=3, max_p=4, max_q=3):
    """Random Theta Factor.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random generator
    radius_cap : float
        Largest node norm
    max_dim : int, optional
        Largest ball dimension, default is ``3``
    max_p : int, optional
        Largest row dimension, default is ``4``
    max_q : int, optional
        Largest column dimension, default is ``3``

    Returns
    -------
    ThetaFactor
        Factor of a random strict datum

    """
    dim = int(rng.integers(1, max_dim + 1))
    p = int(rng.integers(1, max_p + 1))
    q = int(rng.integers(1, max_q + 1))
    nu = random_ball_points(rng, 1, dim, radius_cap)[0]
    xi, eta = random_datum(rng, p, q)

    return ThetaFactor(nu, xi, eta)


def certified_multiplier(rng, dim, p, q, radius_cap=DEFAULT_CAP):
    """Certified Multiplier.

    Build :math:`s = 0.45\\, U + 0.45\\, V b_a W` with contractions
    :math:`U, V, W` and a Blaschke row :math:`b_a`, a Schur multiplier of
    norm at most 0.9.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random generator
    dim : int
        Ball dimension
    p : int
        Row dimension
    q : int
        Column dimension
    radius_cap : float, optional
        Largest norm of the Blaschke zero, default is ``DEFAULT_CAP``

    Returns
    -------
    MultiplierExpr
        Expression of shape ``(p, q)``

    """
    alpha = random_ball_points(rng, 1, dim, radius_cap)[0]
    rows = Product(Const(_contraction(rng, p, 1)), Blaschke(alpha))
    varying = Product(rows, Const(_contraction(rng, dim, q)))

    return Sum(
        ScalarScale(0.45, Const(_contraction(rng, p, q))),
        ScalarScale(0.45, varying),
    )


def conditions_from(s, nodes, rng, p, point_map=None):
    """Build Conditions Interpolated by a Multiplier.

    Parameters
    ----------
    s : MultiplierExpr
        Multiplier on the ball
    nodes : list
        Interpolation nodes
    rng : numpy.random.Generator
        Random generator
    p : int
        Row dimension
    point_map : callable, optional
        Map applied to the nodes before evaluating ``s``

    Returns
    -------
    list
        Conditions :math:`\\xi_i^* s(\\nu_i) = \\eta_i^*`

    """
    conditions = []
    for node in nodes:
        xi = _complex_normal(rng, p)
        xi /= linalg.norm(xi)
        point = node if point_map is None else point_map(node)
        eta = s.eval(point).conj().T @ xi
        conditions.append(TangentialCondition(node, xi, eta))

    return conditions


def random_embedding(rng, domain_dim, target_dim, scale=0.9):
    """Random Polynomial Embedding.

    Each component mixes the linear monomials and one quadratic monomial
    with coefficients of total modulus ``scale / sqrt(target_dim)``, so the
    range over the unit polydisc lies in the ball of radius ``scale``.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random generator
    domain_dim : int
        Number of variables
    target_dim : int
        Number of components
    scale : float, optional
        Range radius, default is ``0.9``

    Returns
    -------
    EmbeddingSpec
        Embedding without constant terms

    """
    monomials = [list(row) for row in np.eye(domain_dim, dtype=int)]
    square = [0] * domain_dim
    square[int(rng.integers(domain_dim))] = 2
    monomials.append(square)

    components = []
    for _ in range(target_dim):
        coeffs = _complex_normal(rng, len(monomials))
        coeffs *= scale / np.sqrt(target_dim) / np.sum(np.abs(coeffs))
        components.append(
            Polynomial(list(zip(coeffs, monomials)), domain_dim)
        )

    return EmbeddingSpec(components)


def check_blaschke_identity(seed, samples, radius_cap):
    """Check the Blaschke Kernel Identity."""
    rng = _rng(seed, 1)
    residual = 0.0

    for dim in BLASCHKE_DIMS:
        triples = random_ball_points(rng, 3 * samples, dim, radius_cap)
        for alpha, lam, mu in triples.reshape(samples, 3, dim):
            residual = max(
                residual,
                blaschke_identity_residual(alpha, lam, mu),
            )

    return residual


def check_diagonalization(seed, samples, radius_cap):
    """Check the Orthogonality and Diagonalization Identities."""
    rng = _rng(seed, 2)
    residual = 0.0

    for _ in range(samples):
        res = random_theta(rng, radius_cap).invariant_residuals()
        residual = max(residual, res['orthogonality'], res['diagonalization'])

    return residual


def check_theta_kernel(seed, samples, radius_cap):
    """Check the Rank-One Defect Kernel of Theta Factors."""
    rng = _rng(seed, 3)
    residual = 0.0

    for _ in range(samples):
        theta = random_theta(rng, radius_cap)
        lam, mu = random_ball_points(rng, 2, theta.dim, radius_cap)
        residual = max(
            residual,
            theta_kernel_residual(theta, lam, mu),
            theta_kernel_residual(theta, lam, lam),
        )

    return residual


def check_theta_null(seed, samples, radius_cap):
    """Check that :math:`c^*J\\Theta_\\nu(\\nu)` Vanishes."""
    rng = _rng(seed, 4)

    return max(
        random_theta(rng, radius_cap).invariant_residuals()['null']
        for _ in range(samples)
    )


def check_block_identities(seed, samples, radius_cap):
    """Check the Block Identities of Theta Factors."""
    rng = _rng(seed, 5)
    residual = 0.0

    for _ in range(samples):
        theta = random_theta(rng, radius_cap)
        lam = random_ball_points(rng, 1, theta.dim, radius_cap)[0]
        residual = max(residual, *block_identity_residuals(theta, lam))

    return residual


def check_scalar_lft(seed, samples, radius_cap):
    """Check the Scalar Schur Step against its Closed Form.

    For :math:`N = p = q = 1` the step with parameter :math:`\\sigma` must
    equal :math:`(b_a\\sigma + w)/(1 + b_a\\sigma\\bar{w})`.

    """
    rng = _rng(seed, 6)
    residual = 0.0

    for _ in range(samples):
        a_pt, z_pt, w_pt, sigma = random_ball_points(rng, 4, 1, radius_cap)
        w_val = complex(w_pt[0])
        theta = ThetaFactor(a_pt, [1.0], [np.conj(w_val)])
        value = LFT(theta, Const([[sigma[0]]])).eval(z_pt)[0, 0]
        b_sigma = complex(theta.blaschke.eval(z_pt)[0, 0]) * sigma[0]
        expected = (b_sigma + w_val) / (1.0 + b_sigma * np.conj(w_val))
        residual = max(residual, abs(value - expected))

    return residual


def _disc_multipliers():

    z_expr = Blaschke([0.0])

    return [
        z_expr,
        Product(z_expr, z_expr),
        Blaschke([-0.3]),
        Const([[0.5]]),
    ]


def check_scalar_reduction(seed, samples, radius_cap):
    """Check the Scalar Reduction of the Poincare Inequality."""
    rng = _rng(seed, 7)
    residual = 0.0

    for s in _disc_multipliers():
        pairs = random_ball_points(rng, 2 * samples, 1, radius_cap)
        for a_pt, z_pt in pairs.reshape(samples, 2, 1):
            residual = max(residual, scalar_reduction_residual(s, a_pt, z_pt))

    return residual


def check_classical_disc(seed, samples, radius_cap):
    """Check the Classical Poincare Inequality on the Disc."""
    rng = _rng(seed, 8)
    violation = 0.0

    for s in _disc_multipliers():
        pairs = random_ball_points(rng, 2 * samples, 1, radius_cap)
        for a_pt, z_pt in pairs.reshape(samples, 2, 1):
            margin = classical_disc_check(s, a_pt, z_pt).margin
            violation = max(violation, -margin)

    return violation


def check_vanishing_kernel(seed, samples, radius_cap):
    """Check Vanishing Factorization Outputs."""
    rng = _rng(seed, 9)
    violation = 0.0

    for _ in range(samples):
        dim = int(rng.integers(1, 4))
        nu = random_ball_points(rng, 1, dim, radius_cap)[0]
        s_nu = certified_multiplier(rng, dim, dim, 1, radius_cap)
        s = synthesize_vanishing(nu, s_nu)
        points = [nu] + list(random_ball_points(rng, 10, dim, radius_cap))
        violation = max(
            violation,
            _violation(vanishing_kernel_test(s, nu, points)),
            linalg.norm(s.eval(nu)),
        )

    return violation


def check_poincare_matrix(seed, samples, radius_cap):
    """Check the Matrix Poincare Inequality."""
    rng = _rng(seed, 10)
    violation = 0.0

    for _ in range(samples):
        dim = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        q = int(rng.integers(1, 3))
        s = certified_multiplier(rng, dim, p, q, radius_cap)
        nu = random_ball_points(rng, 1, dim, radius_cap)[0]
        (cond,) = conditions_from(s, [nu], rng, p)
        points = random_ball_points(rng, 10, dim, radius_cap)
        report = poincare_matrix_check(s, nu, cond.xi, cond.eta, points)
        violation = max(violation, _violation(report))

    return violation


def check_poincare_sweep(seed, samples, radius_cap):
    """Check the Pointwise Poincare Inequality."""
    rng = _rng(seed, 13)
    violation = 0.0

    for _ in range(samples):
        dim = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        q = int(rng.integers(1, 3))
        s = certified_multiplier(rng, dim, p, q, radius_cap)
        nu = random_ball_points(rng, 1, dim, radius_cap)[0]
        (cond,) = conditions_from(s, [nu], rng, p)
        points = random_ball_points(rng, 10, dim, radius_cap)
        for report in poincare_sweep(s, nu, cond.xi, cond.eta, points):
            violation = max(violation, -report.margin)

    return violation


def violated_conditions(rng, conditions):
    """Violate One Condition.

    Rescale the value direction of one randomly chosen condition to
    ``VIOLATION_SCALE`` times the length of its left direction, which makes
    the corresponding Pick diagonal entry negative.

    Parameters
    ----------
    rng : numpy.random.Generator
        Random generator
    conditions : list
        Conditions interpolated by a Schur multiplier

    Returns
    -------
    list
        Copy of ``conditions`` with one violated entry

    """
    index = int(rng.integers(len(conditions)))
    cond = conditions[index]
    direction = cond.eta
    if linalg.norm(direction) == 0.0:
        direction = _complex_normal(rng, cond.eta.size)
    eta = (
        VIOLATION_SCALE * linalg.norm(cond.xi) * direction
        / linalg.norm(direction)
    )

    violated = list(conditions)
    violated[index] = TangentialCondition(cond.nu, cond.xi, eta)

    return violated


def check_infeasibility(seed, samples, radius_cap):
    """Check Detection of Infeasible Data.

    Returns the number of violated problems reported as solvable or with a
    Pick matrix lacking a negative eigenvalue.

    """
    rng = _rng(seed, 14)
    misses = 0

    for _ in range(samples):
        dim = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        q = int(rng.integers(1, 3))
        n_cond = int(rng.integers(1, 5))
        s = certified_multiplier(rng, dim, p, q, radius_cap)
        nodes = random_ball_points(rng, n_cond, dim, radius_cap)
        conditions = violated_conditions(
            rng,
            conditions_from(s, nodes, rng, p),
        )
        report = solvability_check(InterpolationProblem(dim, p, q,
                                                        conditions))
        if report.solvable or not report.pick.min_eigenvalue < 0.0:
            misses += 1

    return float(misses)


def _verification_residual(problem, s, seed, samples, radius_cap):

    report = verify_solution(problem, s, samples, seed, radius_cap)
    if report.schur is None:
        raise ArithmeticError(report.worst_offender)

    violation = max(report.max_residual, _violation(report.schur))
    for margin in report.poincare:
        if margin is not None:
            violation = max(violation, -margin)

    return violation


def check_interpolation(seed, samples, radius_cap):
    """Check Interpolation Soundness of the Central Solution."""
    rng = _rng(seed, 11)
    violation = 0.0

    for _ in range(samples):
        dim = int(rng.integers(1, 4))
        p = int(rng.integers(1, 3))
        q = int(rng.integers(1, 3))
        n_cond = int(rng.integers(1, 5))
        s = certified_multiplier(rng, dim, p, q, radius_cap)
        nodes = random_ball_points(rng, n_cond, dim, radius_cap)
        problem = InterpolationProblem(
            dim, p, q, conditions_from(s, nodes, rng, p),
        )
        solution, _ = solve_central(problem)
        violation = max(
            violation,
            _verification_residual(problem, solution, seed, samples,
                                   radius_cap),
        )

    return violation


def check_pullback(seed, samples, radius_cap):
    """Check Interpolation through a Polynomial Embedding."""
    rng = _rng(seed, 12)
    violation = 0.0

    for _ in range(samples):
        domain_dim = int(rng.integers(1, 3))
        dim = int(rng.integers(domain_dim, 4))
        p = int(rng.integers(1, 3))
        q = int(rng.integers(1, 3))
        n_cond = int(rng.integers(1, 4))
        embedding = random_embedding(rng, domain_dim, dim)
        g_expr = certified_multiplier(rng, dim, p, q, radius_cap)
        nodes = random_ball_points(rng, n_cond, domain_dim, radius_cap)
        problem = InterpolationProblem(
            dim, p, q,
            conditions_from(g_expr, nodes, rng, p, embedding.eval),
            embedding=embedding,
        )
        solution, _ = solve_central(problem)
        violation = max(
            violation,
            _verification_residual(problem, solution, seed, samples,
                                   radius_cap),
        )

    return violation


IDENTITIES = {
    'blaschke_identity': (check_blaschke_identity, ALGEBRAIC_TOL),
    'diagonalization': (check_diagonalization, ALGEBRAIC_TOL),
    'theta_kernel': (check_theta_kernel, ALGEBRAIC_TOL),
    'theta_null': (check_theta_null, ALGEBRAIC_TOL),
    'block_identities': (check_block_identities, ALGEBRAIC_TOL),
    'scalar_lft': (check_scalar_lft, ALGEBRAIC_TOL),
    'scalar_reduction': (check_scalar_reduction, ALGEBRAIC_TOL),
    'classical_disc': (check_classical_disc, ALGEBRAIC_TOL),
    'vanishing_kernel': (check_vanishing_kernel, POSITIVITY_TOL),
    'poincare_matrix': (check_poincare_matrix, POSITIVITY_TOL),
    'poincare_sweep': (check_poincare_sweep, POSITIVITY_TOL),
    'infeasibility': (check_infeasibility, ALGEBRAIC_TOL),
    'interpolation': (check_interpolation, POSITIVITY_TOL),
    'pullback': (check_pullback, POSITIVITY_TOL),
}


def threshold(name, radius_cap):
    """Get Identity Threshold.

    Parameters
    ----------
    name : str
        Identity name
    radius_cap : float
        Largest sample norm

    Returns
    -------
    float
        Threshold, relaxed to ``BOUNDARY_TOL`` beyond the default radius cap

    """
    base = IDENTITIES[name][1]
    if radius_cap > DEFAULT_CAP:
        return max(base, BOUNDARY_TOL)

    return base


def build_jobs(seed, samples, radius_cap):
    """Build Jobs.

    Parameters
    ----------
    seed : int
        Random seed
    samples : int
        Number of random draws per identity
    radius_cap : float
        Largest sample norm

    Returns
    -------
    list
        Tuples ``(name, function, kwargs)`` for
        :class:`~cnpschur.pipeline.job_handler.JobHandler`

    """
    kwargs = {'seed': seed, 'samples': samples, 'radius_cap': radius_cap}

    return [
        (name, function, kwargs)
        for name, (function, _) in IDENTITIES.items()
    ]


def summarise(worker_dicts, radius_cap):
    """Summarise Worker Results.

    Parameters
    ----------
    worker_dicts : list
        Results of :func:`~cnpschur.pipeline.job_handler.run_job`
    radius_cap : float
        Largest sample norm

    Returns
    -------
    dict
        Entry per identity with ``max_residual``, ``threshold`` and
        ``passed``, plus ``error`` for identities that raised

    """
    summary = {}
    for worker_dict in worker_dicts:
        name = worker_dict['job_name']
        limit = threshold(name, radius_cap)
        entry = {'threshold': limit}

        if worker_dict['exception']:
            entry['max_residual'] = None
            entry['passed'] = False
            entry['error'] = (
                f'{worker_dict["exception"]}: {worker_dict["stderr"]}'
            )
        else:
            residual = float(worker_dict['result'])
            entry['max_residual'] = residual
            entry['passed'] = bool(residual < limit)

        summary[name] = entry

    return summary
