"""SCHUR ALGORITHM.

This module solves multi-point left-tangential Nevanlinna-Pick problems
for Schur multipliers of the Drury-Arveson space and of pullback kernels.
Conditions are peeled one at a time through the Theta factors, the
remaining conditions are transported through each factor, and the zero
parameter yields the central solution.

:Author: CNPSchur developers

"""

import numpy as np
from modopt.interface.errors import warn
from scipy import linalg

from cnpschur.errors import (
    DimensionMismatch,
    EmbeddingEscapesBall,
    HypothesisViolated,
    MalformedDocument,
    NotSolvable,
    ShapeMismatch,
)
from cnpschur.utilities.ball_geometry import (
    RADIUS_CAP,
    BallPoint,
    random_ball_points,
)
from cnpschur.utilities.contractivity import (
    poincare_check,
    pullback_poincare_check,
)
from cnpschur.utilities.hermitian_core import PSD_TOL, psd_check
from cnpschur.utilities.kernel_engine import (
    STRICT_FLOOR,
    EmbeddingSpec,
    KernelSpec,
    TangentialCondition,
    pick_matrix,
    schur_class_test,
)
from cnpschur.utilities.multiplier_expr import (
    LFT,
    Const,
    compose_embedding,
)
from cnpschur.utilities.schur_step import ThetaFactor

DEGENERATE_TOL = 1e-10
RESIDUAL_TOL = 1e-8
REPEAT_TOL = 1e-12
SAMPLE_ROUNDS = 8


class InterpolationProblem(object):
    """Interpolation Problem.

    A list of left-tangential conditions :math:`\\xi_i^* s(\\nu_i) =
    \\eta_i^*` for a :math:`p \\times q` Schur multiplier. When an embedding
    :math:`\\beta` is attached, the nodes are domain points :math:`w_i` and
    the multiplier is sought on :math:`\\mathcal{H}(K_\\beta)`.

    Parameters
    ----------
    dim : int
        Ball dimension :math:`N`
    p : int
        Row dimension
    q : int
        Column dimension
    conditions : list
        Instances of
        :class:`~cnpschur.utilities.kernel_engine.TangentialCondition`
    embedding : EmbeddingSpec, optional
        Embedding of the domain into :math:`\\mathbb{B}_N`
    log : logging.Logger, optional
        Logging instance

    Raises
    ------
    DimensionMismatch
        If a condition does not match the problem dimensions

    """

    def __init__(self, dim, p, q, conditions, embedding=None, log=None):

        if min(dim, p, q) < 1:
            raise DimensionMismatch(
                f'Problem dimensions must be positive, got N={dim}, p={p}, '
                + f'q={q}.'
            )
        if embedding is not None and embedding.target_dim != dim:
            raise DimensionMismatch(
                f'Embedding targets C^{embedding.target_dim} but N={dim}.'
            )

        self.dim = int(dim)
        self.p = int(p)
        self.q = int(q)
        self.embedding = embedding
        self.conditions = list(conditions)
        self._log = log

        node_dim = self.domain_dim
        for index, cond in enumerate(self.conditions):
            if (cond.dim, cond.p, cond.q) != (node_dim, self.p, self.q):
                raise DimensionMismatch(
                    f'Condition {index} has dimensions (node={cond.dim}, '
                    + f'p={cond.p}, q={cond.q}), expected (node={node_dim}, '
                    + f'p={self.p}, q={self.q}).'
                )

        self.ball_conditions = [self._to_ball(cond) for cond in
                                self.conditions]
        self._warn_repeated_nodes()

    @property
    def domain_dim(self):
        """Dimension of the Nodes."""
        if self.embedding is None:
            return self.dim

        return self.embedding.domain_dim

    @property
    def kernel(self):
        """Kernel of the Multiplier Space."""
        if self.embedding is None:
            return KernelSpec.drury_arveson(self.dim)

        return KernelSpec.pullback(self.embedding)

    def _to_ball(self, cond):

        if self.embedding is None:
            node = BallPoint(cond.nu)
        else:
            node = self.embedding.map_point(cond.nu)

        return TangentialCondition(node, cond.xi, cond.eta)

    def _warn_repeated_nodes(self):

        nodes = [cond.nu for cond in self.ball_conditions]
        for i in range(len(nodes)):
            for j in range(i):
                if linalg.norm(nodes[i] - nodes[j]) < REPEAT_TOL:
                    warn(
                        f'Conditions {j} and {i} share the node '
                        + f'{np.array2string(nodes[i], precision=4)}.',
                        log=self._log,
                    )

    def to_json(self):
        """Convert to JSON."""
        doc = {
            'schema_version': 1,
            'N': self.dim,
            'p': self.p,
            'q': self.q,
            'conditions': [cond.to_json() for cond in self.conditions],
        }
        if self.embedding is not None:
            doc['embedding'] = self.embedding.to_json()

        return doc

    @classmethod
    def from_json(cls, doc, log=None):
        """Build from JSON.

        Parameters
        ----------
        doc : dict
            Problem document
        log : logging.Logger, optional
            Logging instance

        Returns
        -------
        InterpolationProblem
            Decoded problem

        Raises
        ------
        MalformedDocument
            For an invalid document

        """
        if not isinstance(doc, dict):
            raise MalformedDocument('A problem must be a JSON object')

        for key in ('N', 'p', 'q'):
            if not isinstance(doc.get(key), int) or doc[key] < 1:
                raise MalformedDocument(f'"{key}" must be a positive integer',
                                        f'$.{key}')

        if not isinstance(doc.get('conditions', []), list):
            raise MalformedDocument('"conditions" must be a list',
                                    '$.conditions')

        conditions = [
            TangentialCondition.from_json(cond, f'$.conditions[{index}]')
            for index, cond in enumerate(doc.get('conditions', []))
        ]

        embedding = None
        if doc.get('embedding') is not None:
            embedding = EmbeddingSpec.from_json(doc['embedding'],
                                                '$.embedding')

        try:
            return cls(doc['N'], doc['p'], doc['q'], conditions, embedding,
                       log)
        except DimensionMismatch as err:
            raise MalformedDocument(str(err))

    def __repr__(self):

        return (
            f'InterpolationProblem(N={self.dim}, p={self.p}, q={self.q}, '
            + f'M={len(self.conditions)}, '
            + f'embedding={self.embedding is not None})'
        )


class StepRecord(object):
    """Step Record.

    Parameters
    ----------
    index : int
        Step number, starting at 1
    theta : ThetaFactor
        Factor of the peeled condition
    margin : float
        Strictness margin :math:`\\xi^*\\xi - \\eta^*\\eta` of the peeled
        condition
    transported : list
        Conditions left after transport through ``theta``
    dropped : list
        Positions of degenerate transported conditions dropped at this step

    """

    def __init__(self, index, theta, margin, transported, dropped):

        self.index = index
        self.theta = theta
        self.margin = margin
        self.transported = transported
        self.dropped = dropped

    @property
    def param_rows(self):
        """Row Dimension of the Parameter after this Step."""
        return self.theta.param_shape[0]

    def to_json(self):
        """Convert to JSON."""
        return {
            'step': self.index,
            'theta': self.theta.to_json(),
            'margin': self.margin,
            'param_rows': self.param_rows,
            'transported': [cond.to_json() for cond in self.transported],
            'dropped': self.dropped,
        }


class StepLog(object):
    """Step Log.

    Record of the peeling loop.

    Attributes
    ----------
    steps : list
        Instances of :class:`StepRecord`
    solvable : bool
        ``True`` if every peeled condition was strictly solvable
    reason : str
        Explanation of a failure, empty on success
    failed_margin : float or None
        Margin of the condition that stopped the loop

    """

    def __init__(self):

        self.steps = []
        self.solvable = True
        self.reason = ''
        self.failed_margin = None

    @property
    def margins(self):
        """Stepwise Margins, including the failing one."""
        margins = [step.margin for step in self.steps]
        if self.failed_margin is not None:
            margins.append(self.failed_margin)

        return margins

    def fail(self, reason, margin=None):
        """Mark as Failed."""
        self.solvable = False
        self.reason = reason
        self.failed_margin = margin

    def to_json(self):
        """Convert to JSON."""
        return {
            'solvable': self.solvable,
            'reason': self.reason,
            'margins': self.margins,
            'steps': [step.to_json() for step in self.steps],
        }


def transport_condition(theta, cond):
    """Transport Condition.

    Rewrite :math:`\\xi^* s(\\nu_2) = \\eta^*` for
    :math:`s = (A s_\\nu + B)(C s_\\nu + D)^{-1}` as the condition
    :math:`\\xi'^* s_\\nu(\\nu_2) = \\eta'^*` on the parameter, with
    :math:`\\xi' = A(\\nu_2)^*\\xi - C(\\nu_2)^*\\eta` and
    :math:`\\eta' = D^*\\eta - B^*\\xi`.

    Parameters
    ----------
    theta : ThetaFactor
        Factor
    cond : TangentialCondition
        Condition with a ball node

    Returns
    -------
    TangentialCondition
        Condition on the parameter, at the same node

    Raises
    ------
    DimensionMismatch
        If the condition does not match the factor

    """
    if (cond.p, cond.q, cond.dim) != (theta.p, theta.q, theta.dim):
        raise DimensionMismatch(
            f'Condition (N={cond.dim}, p={cond.p}, q={cond.q}) does not '
            + f'match factor (N={theta.dim}, p={theta.p}, q={theta.q}).'
        )

    a_blk, b_blk, c_blk, d_blk = theta.blocks(cond.nu)

    xi_new = a_blk.conj().T @ cond.xi - c_blk.conj().T @ cond.eta
    eta_new = d_blk.conj().T @ cond.eta - b_blk.conj().T @ cond.xi

    return TangentialCondition(cond.nu, xi_new, eta_new)


def _peel(conditions, strict_floor=STRICT_FLOOR, log=None):
    """Run the Peeling Loop.

    Parameters
    ----------
    conditions : list
        Conditions with ball nodes
    strict_floor : float, optional
        Relative strictness floor
    log : logging.Logger, optional
        Logging instance

    Returns
    -------
    StepLog
        Record of the loop

    """
    step_log = StepLog()
    pending = list(conditions)

    while pending:
        head = pending.pop(0)
        margin = head.margin

        if not margin > strict_floor * np.vdot(head.xi, head.xi).real:
            step_log.fail(
                f'Step {len(step_log.steps) + 1}: margin {margin:.3e} is not '
                + 'strictly positive.',
                margin,
            )
            break

        theta = ThetaFactor(head.nu, head.xi, head.eta, strict_floor)

        kept = []
        dropped = []
        for position, cond in enumerate(pending):
            moved = transport_condition(theta, cond)
            scale = DEGENERATE_TOL * max(
                1.0,
                linalg.norm(np.concatenate([cond.xi, cond.eta])),
            )
            xi_zero = linalg.norm(moved.xi) <= scale
            eta_zero = linalg.norm(moved.eta) <= scale

            if xi_zero and eta_zero:
                dropped.append(position)
                warn(
                    f'Step {len(step_log.steps) + 1}: dropping degenerate '
                    + f'transported condition at position {position}.',
                    log=log,
                )
            elif xi_zero:
                step_log.fail(
                    f'Step {len(step_log.steps) + 1}: transported condition '
                    + f'at position {position} requires 0 = eta* with eta '
                    + 'non-zero.',
                    -float(np.vdot(moved.eta, moved.eta).real),
                )
                break
            else:
                kept.append(moved)

        step = StepRecord(len(step_log.steps) + 1, theta, margin, kept,
                          dropped)
        step_log.steps.append(step)

        if log is not None:
            log.info(
                f' - Step {step.index}: margin {margin:.6e}, parameter rows '
                + f'{step.param_rows}'
            )

        if not step_log.solvable:
            break

        pending = kept

    return step_log


class SolvabilityReport(object):
    """Solvability Report.

    Parameters
    ----------
    pick : PsdReport
        PSD report of the Pick matrix
    step_log : StepLog
        Record of the peeling loop

    """

    def __init__(self, pick, step_log):

        self.pick = pick
        self.step_log = step_log

    @property
    def stepwise(self):
        """Stepwise Margins."""
        return self.step_log.margins

    @property
    def solvable(self):
        """Solvability Flag."""
        return self.step_log.solvable

    def to_json(self):
        """Convert to JSON."""
        return {
            'solvable': self.solvable,
            'reason': self.step_log.reason,
            'pick': self.pick.to_dict(with_eigenvalues=True),
            'stepwise': self.stepwise,
        }


def solvability_check(problem, tol=PSD_TOL, log=None):
    """Check Solvability.

    Parameters
    ----------
    problem : InterpolationProblem
        Problem
    tol : float, optional
        PSD tolerance of the Pick matrix, default is ``PSD_TOL``
    log : logging.Logger, optional
        Logging instance

    Returns
    -------
    SolvabilityReport
        Pick matrix report and stepwise margins; the problem is solvable
        when every peeled condition is strictly solvable

    """
    pick = psd_check(pick_matrix(problem.ball_conditions), tol)
    step_log = _peel(problem.ball_conditions, log=log)

    return SolvabilityReport(pick, step_log)


def central_solution(step_log, p, q):
    """Assemble Central Solution.

    Parameters
    ----------
    step_log : StepLog
        Record of a successful peeling loop
    p : int
        Row dimension
    q : int
        Column dimension

    Returns
    -------
    MultiplierExpr
        Nested linear fractional transformations around the zero
        parameter; the innermost one collapses to the constant
        :math:`B D^{-1}`

    """
    if not step_log.steps:
        return Const.zeros(p, q)

    last = step_log.steps[-1].theta
    solution = Const(linalg.solve(last.d_blk.T, last.b_blk.T).T)

    for step in reversed(step_log.steps[:-1]):
        solution = LFT(step.theta, solution)

    return solution


def solve_central(problem, log=None):
    """Solve for the Central Solution.

    Parameters
    ----------
    problem : InterpolationProblem
        Problem
    log : logging.Logger, optional
        Logging instance

    Returns
    -------
    tuple
        Central solution expression and :class:`StepLog`; the expression is
        defined on the domain of the embedding when one is attached

    Raises
    ------
    NotSolvable
        If a peeled condition is not strictly solvable

    """
    step_log = _peel(problem.ball_conditions, log=log)

    if not step_log.solvable:
        raise NotSolvable(step_log.reason)

    solution = central_solution(step_log, problem.p, problem.q)

    if problem.embedding is not None:
        solution = compose_embedding(solution, problem.embedding)

    return solution, step_log


class VerificationReport(object):
    """Verification Report.

    Parameters
    ----------
    residuals : list
        Condition residuals :math:`\\|\\xi_i^* s(\\nu_i) - \\eta_i^*\\|`
    schur : PsdReport or None
        Sampled Schur-class report, ``None`` if evaluation failed
    poincare : list
        Smallest Poincare margin per condition, ``None`` where skipped
    tol : float
        Tolerance of the verdict
    errors : list, optional
        Evaluation errors met while sampling

    """

    def __init__(self, residuals, schur, poincare, tol, errors=None):

        self.residuals = residuals
        self.schur = schur
        self.poincare = poincare
        self.tol = tol
        self.errors = errors or []

    @property
    def max_residual(self):
        """Largest Condition Residual."""
        return max(self.residuals, default=0.0)

    @property
    def failures(self):
        """List of Failed Checks."""
        failures = []

        for index, res in enumerate(self.residuals):
            if not res < self.tol:
                failures.append(f'condition {index}: residual {res:.3e}')

        if self.schur is None:
            failures.append('schur test: evaluation failed')
        elif not self.schur.is_psd:
            failures.append(
                'schur test: min eigenvalue '
                + f'{self.schur.min_eigenvalue:.3e}'
            )

        for index, margin in enumerate(self.poincare):
            if margin is not None and margin < -self.tol:
                failures.append(
                    f'poincare condition {index}: margin {margin:.3e}'
                )

        failures.extend(self.errors)

        return failures

    @property
    def passed(self):
        """Verdict."""
        return not self.failures

    @property
    def worst_offender(self):
        """Most Severe Failure."""
        failures = self.failures

        return failures[0] if failures else None

    def to_json(self):
        """Convert to JSON."""
        # residuals of failed evaluations are null
        def finite(value):
            return float(value) if np.isfinite(value) else None

        return {
            'passed': self.passed,
            'tol': self.tol,
            'residuals': [finite(res) for res in self.residuals],
            'max_residual': finite(self.max_residual),
            'schur': None if self.schur is None else self.schur.to_dict(),
            'poincare_min_margins': self.poincare,
            'errors': self.errors,
            'worst_offender': self.worst_offender,
        }


def sample_domain_points(problem, samples, seed, radius_cap=RADIUS_CAP):
    """Sample Domain Points.

    Draw seeded points in :math:`\\mathbb{B}_N`. For a pullback problem the
    candidates are drawn in the ball of radius ``radius_cap`` of
    :math:`\\mathbb{C}^d` and kept when their image lies in the ball of
    radius ``radius_cap``.

    Parameters
    ----------
    problem : InterpolationProblem
        Problem
    samples : int
        Number of points
    seed : int
        Random seed
    radius_cap : float, optional
        Largest norm, default is ``RADIUS_CAP``

    Returns
    -------
    list
        Domain points, fewer than ``samples`` (possibly none) when
        ``SAMPLE_ROUNDS`` rounds of candidates do not provide enough

    Notes
    -----
    The ball of :math:`\\mathbb{C}^d` only restricts where candidates are
    drawn. The pullback domain itself is every :math:`z` with
    :math:`\\|\\beta(z)\\| < 1`.

    """
    if problem.embedding is None:
        return list(random_ball_points(seed, samples, problem.dim,
                                       radius_cap))

    rng = np.random.default_rng(seed)
    points = []

    for _ in range(SAMPLE_ROUNDS):
        candidates = random_ball_points(rng, 4 * samples,
                                        problem.domain_dim, radius_cap)
        for point in candidates:
            if linalg.norm(problem.embedding.eval(point)) <= radius_cap:
                points.append(point)
            if len(points) == samples:
                return points

    return points


def verify_solution(
    problem,
    s,
    samples=50,
    seed=0,
    radius_cap=RADIUS_CAP,
    tol=RESIDUAL_TOL,
):
    """Verify Solution.

    Parameters
    ----------
    problem : InterpolationProblem
        Problem
    s : MultiplierExpr
        Candidate solution on the problem domain
    samples : int, optional
        Number of sample points, default is ``50``
    seed : int, optional
        Random seed, default is ``0``
    radius_cap : float, optional
        Largest sample norm, default is ``RADIUS_CAP``
    tol : float, optional
        Tolerance of residuals, PSD test and Poincare margins, default is
        ``RESIDUAL_TOL``

    Returns
    -------
    VerificationReport
        Report

    Raises
    ------
    ShapeMismatch
        If the solution shape is not ``(p, q)``

    """
    if s.shape != (problem.p, problem.q):
        raise ShapeMismatch(
            f'Solution must have shape {(problem.p, problem.q)}, got '
            + f'{s.shape}.'
        )

    errors = []
    residuals = []
    for index, cond in enumerate(problem.conditions):
        try:
            residuals.append(cond.residual(s.eval(cond.nu)))
        except ArithmeticError as err:
            residuals.append(np.inf)
            errors.append(f'condition {index}: {err}')

    points = sample_domain_points(problem, samples, seed, radius_cap)

    if not points:
        schur = None
        errors.append(
            'schur test: no sample point is mapped inside the ball of '
            + f'radius {radius_cap}'
        )
    else:
        try:
            schur = schur_class_test(s, problem.kernel, points, tol)
        except (ArithmeticError, EmbeddingEscapesBall) as err:
            schur = None
            errors.append(f'schur test: {err}')

    poincare = []
    for index, cond in enumerate(problem.conditions):
        if not cond.is_strict or residuals[index] >= RESIDUAL_TOL:
            poincare.append(None)
            continue
        try:
            if problem.embedding is None:
                reports = [
                    poincare_check(s, cond.nu, cond.xi, cond.eta, point)
                    for point in points
                ]
            else:
                reports = [
                    pullback_poincare_check(s, problem.embedding, cond.nu,
                                            cond.xi, cond.eta, point)
                    for point in points
                ]
        except (ArithmeticError, HypothesisViolated) as err:
            poincare.append(None)
            errors.append(f'poincare condition {index}: {err}')
            continue
        poincare.append(
            min((report.margin for report in reports), default=None)
        )

    return VerificationReport(residuals, schur, poincare, tol, errors)
