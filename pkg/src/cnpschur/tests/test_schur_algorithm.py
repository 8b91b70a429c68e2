"""UNIT TESTS FOR SCHUR ALGORITHM.

This module contains unit tests for the cnpschur.utilities.schur_algorithm
module.

:Author: CNPSchur developers

"""

from unittest import TestCase

import numpy as np
import numpy.testing as npt

from cnpschur.errors import (
    DimensionMismatch,
    MalformedDocument,
    NotSolvable,
    ShapeMismatch,
)
from cnpschur.modules.selftest_package.identity_suite import (
    certified_multiplier,
    conditions_from,
    violated_conditions,
)
from cnpschur.utilities import schur_algorithm as sa
from cnpschur.utilities.ball_geometry import random_ball_points
from cnpschur.utilities.kernel_engine import (
    EmbeddingSpec,
    Polynomial,
    TangentialCondition,
)
from cnpschur.utilities.multiplier_expr import LFT, Const, Sum, serialize
from cnpschur.utilities.schur_step import theta_tangential


def disc_problem(nodes, values):

    conditions = [
        TangentialCondition([node], [1.0], [np.conj(value)])
        for node, value in zip(nodes, values)
    ]

    return sa.InterpolationProblem(1, 1, 1, conditions)


class ProblemTestCase(TestCase):

    def setUp(self):

        self.doc = {
            'schema_version': 1,
            'N': 2,
            'p': 1,
            'q': 1,
            'conditions': [
                {
                    'nu': [[0.1, 0.0], [0.0, 0.2]],
                    'xi': [[1.0, 0.0]],
                    'eta': [[0.3, 0.0]],
                },
            ],
        }

    def tearDown(self):

        self.doc = None

    def test_from_json(self):

        problem = sa.InterpolationProblem.from_json(self.doc)

        npt.assert_equal((problem.dim, problem.p, problem.q), (2, 1, 1))
        npt.assert_equal(len(problem.conditions), 1)
        npt.assert_equal(problem.domain_dim, 2)
        npt.assert_equal(problem.to_json(), self.doc)

    def test_malformed(self):

        doc = dict(self.doc, N=0)
        npt.assert_raises(MalformedDocument,
                          sa.InterpolationProblem.from_json, doc)

        doc = dict(self.doc, N=3)
        npt.assert_raises(MalformedDocument,
                          sa.InterpolationProblem.from_json, doc)

        doc = dict(self.doc, conditions={'nu': []})
        npt.assert_raises(MalformedDocument,
                          sa.InterpolationProblem.from_json, doc)

        npt.assert_raises(MalformedDocument,
                          sa.InterpolationProblem.from_json, [])

    def test_dimensions(self):

        cond = TangentialCondition([0.1], [1.0, 0.0], [0.2])

        npt.assert_raises(DimensionMismatch, sa.InterpolationProblem, 1, 1,
                          1, [cond])
        npt.assert_raises(DimensionMismatch, sa.InterpolationProblem, 0, 1,
                          1, [])
        npt.assert_raises(DimensionMismatch, sa.InterpolationProblem, 1, 2,
                          1, [cond], EmbeddingSpec.identity(2))


class TransportTestCase(TestCase):

    def setUp(self):

        self.theta = theta_tangential([0.0], [1.0], [0.0])

    def tearDown(self):

        self.theta = None

    def test_transport(self):

        cond = TangentialCondition([0.5], [1.0], [0.25])
        moved = sa.transport_condition(self.theta, cond)

        npt.assert_almost_equal(moved.nu, [0.5])
        npt.assert_almost_equal(moved.xi, [0.5])
        npt.assert_almost_equal(moved.eta, [0.25])

    def test_any_parameter(self):

        rng = np.random.default_rng(7)
        theta = theta_tangential([0.2, -0.1j], [1.0, 0.5j], [0.3])
        npt.assert_equal(theta.param_shape, (3, 1))

        for _ in range(3):
            param = rng.normal(size=(3, 1)) + 1j * rng.normal(size=(3, 1))
            param *= 0.5 / np.linalg.norm(param, 2)
            s = LFT(theta, Const(param))
            xi = rng.normal(size=2) + 1j * rng.normal(size=2)
            nu = [-0.3, 0.4j]
            cond = TangentialCondition(nu, xi, s.eval(nu).conj().T @ xi)
            moved = sa.transport_condition(theta, cond)

            npt.assert_equal(moved.xi.size, 3)
            npt.assert_array_less(moved.residual(param), 1e-10)

    def test_mismatch(self):

        cond = TangentialCondition([0.5, 0.0], [1.0], [0.25])

        npt.assert_raises(DimensionMismatch, sa.transport_condition,
                          self.theta, cond)


class SolvabilityTestCase(TestCase):

    def test_single_condition(self):

        report = sa.solvability_check(disc_problem([0.0], [0.5]))

        self.assertTrue(report.solvable)
        npt.assert_almost_equal(report.pick.min_eigenvalue, 0.75)
        npt.assert_almost_equal(report.stepwise, [0.75])

        doc = report.to_json()
        npt.assert_equal(
            sorted(doc),
            ['pick', 'reason', 'solvable', 'stepwise'],
        )

    def test_not_strict(self):

        problem = sa.InterpolationProblem(
            1, 1, 1,
            [TangentialCondition([0.2], [0.5], [0.6])],
        )
        report = sa.solvability_check(problem)

        self.assertFalse(report.solvable)
        self.assertFalse(report.pick.is_psd)
        npt.assert_almost_equal(report.stepwise, [0.25 - 0.36])
        npt.assert_raises(NotSolvable, sa.solve_central, problem)

    def test_two_point(self):

        report = sa.solvability_check(disc_problem([0.0, 0.5], [0.0, 0.25]))

        self.assertTrue(report.solvable)
        npt.assert_almost_equal(
            report.pick.eigenvalues,
            [(2.25 - np.sqrt(2.25 ** 2 - 1.0)) / 2.0,
             (2.25 + np.sqrt(2.25 ** 2 - 1.0)) / 2.0],
        )
        npt.assert_almost_equal(report.stepwise, [1.0, 0.25 - 0.0625])

    def test_infeasible_pair(self):

        # values 0.9 and -0.9 at close nodes
        problem = disc_problem([0.0, 0.1], [0.9, -0.9])
        report = sa.solvability_check(problem)

        self.assertFalse(report.solvable)
        self.assertFalse(report.pick.is_psd)
        npt.assert_equal(len(report.stepwise), 2)
        self.assertTrue(report.stepwise[-1] < 0.0)

    def test_repeated_node(self):

        problem = disc_problem([0.3, 0.3], [0.2, 0.2])
        report = sa.solvability_check(problem)

        self.assertTrue(report.solvable)
        npt.assert_equal(report.step_log.steps[0].dropped, [0])
        npt.assert_equal(len(report.step_log.steps), 1)

        conflict = disc_problem([0.3, 0.3], [0.2, 0.5])
        self.assertFalse(sa.solvability_check(conflict).solvable)

    def test_pick_agreement(self):

        rng = np.random.default_rng(31)

        for _ in range(6):
            dim = int(rng.integers(1, 4))
            p = int(rng.integers(1, 3))
            q = int(rng.integers(1, 3))
            s = certified_multiplier(rng, dim, p, q, 0.9)
            nodes = random_ball_points(rng, 3, dim, 0.9)
            conditions = conditions_from(s, nodes, rng, p)

            report = sa.solvability_check(
                sa.InterpolationProblem(dim, p, q, conditions),
            )
            self.assertTrue(report.solvable)
            self.assertTrue(report.pick.is_psd)

            report = sa.solvability_check(sa.InterpolationProblem(
                dim, p, q, violated_conditions(rng, conditions),
            ))
            self.assertFalse(report.solvable)
            self.assertFalse(report.pick.is_psd)
            self.assertTrue(report.pick.min_eigenvalue < 0.0)

    def test_param_rows(self):

        rng = np.random.default_rng(11)
        s = certified_multiplier(rng, 2, 1, 1, 0.9)
        nodes = [[0.1, 0.2j], [-0.3, 0.1], [0.0, -0.4j]]
        problem = sa.InterpolationProblem(
            2, 1, 1,
            conditions_from(s, nodes, rng, 1),
        )
        step_log = sa.solvability_check(problem).step_log

        npt.assert_equal(
            [step.param_rows for step in step_log.steps],
            [2, 3, 4],
        )


class SolveTestCase(TestCase):

    def setUp(self):

        self.problem = disc_problem([0.0, 0.5], [0.0, 0.25])

    def tearDown(self):

        self.problem = None

    def test_single_condition(self):

        s, step_log = sa.solve_central(disc_problem([0.0], [0.5]))

        npt.assert_equal(serialize(s)['node'], 'const')
        npt.assert_almost_equal(s.eval([0.3]), [[0.5]])
        npt.assert_equal(len(step_log.steps), 1)

    def test_empty(self):

        problem = sa.InterpolationProblem(2, 2, 3, [])
        s, step_log = sa.solve_central(problem)

        npt.assert_equal(s.shape, (2, 3))
        npt.assert_array_equal(s.eval([0.1, 0.2]), np.zeros((2, 3)))
        npt.assert_equal(step_log.steps, [])

    def test_two_point(self):

        s, step_log = sa.solve_central(self.problem)

        npt.assert_equal(serialize(s)['node'], 'lft')
        for z in (0.0, 0.5, 0.3 - 0.4j, -0.8j):
            npt.assert_almost_equal(s.eval([z]), [[z / 2.0]])

        npt.assert_equal(step_log.to_json()['solvable'], True)
        npt.assert_equal(step_log.steps[0].param_rows, 1)

    def test_tangential(self):

        # data of the contractive constant below
        value = np.array([[0.3, 0.1j], [-0.2, 0.4]])
        data = [
            ([0.1, 0.2j], [1.0, 0.5]),
            ([-0.3, 0.1], [0.2j, 1.0]),
            ([0.0, -0.4j], [1.0, 1.0]),
        ]
        conditions = [
            TangentialCondition(nu, xi, value.conj().T @ np.array(xi))
            for nu, xi in data
        ]
        problem = sa.InterpolationProblem(2, 2, 2, conditions)
        s, step_log = sa.solve_central(problem)

        npt.assert_equal(s.shape, (2, 2))
        for cond in conditions:
            npt.assert_array_less(cond.residual(s.eval(cond.nu)), 1e-10)

        report = sa.verify_solution(problem, s, samples=20, seed=3)
        self.assertTrue(report.passed, msg=report.worst_offender)

    def test_order_independence(self):

        rng = np.random.default_rng(21)
        s = certified_multiplier(rng, 2, 2, 2, 0.9)
        nodes = random_ball_points(rng, 4, 2, 0.9)
        conditions = conditions_from(s, nodes, rng, 2)

        for _ in range(3):
            order = rng.permutation(len(conditions))
            problem = sa.InterpolationProblem(
                2, 2, 2,
                [conditions[index] for index in order],
            )
            solution, step_log = sa.solve_central(problem)

            self.assertTrue(step_log.solvable)
            for cond in conditions:
                npt.assert_array_less(
                    cond.residual(solution.eval(cond.nu)),
                    1e-8,
                )

    def test_half_first_coordinate(self):

        # values of z_1 / 2 on the two-ball
        nodes = [[0.3, 0.1j], [-0.2, 0.4], [0.5j, -0.3]]
        conditions = [
            TangentialCondition(nu, [1.0], [np.conj(nu[0]) / 2.0])
            for nu in nodes
        ]
        problem = sa.InterpolationProblem(2, 1, 1, conditions)

        self.assertTrue(sa.solvability_check(problem).solvable)

        s, _ = sa.solve_central(problem)
        for nu in nodes:
            npt.assert_almost_equal(s.eval(nu), [[nu[0] / 2.0]])


class VerifyTestCase(TestCase):

    def setUp(self):

        self.problem = disc_problem([0.0, 0.5], [0.0, 0.25])
        self.solution = sa.solve_central(self.problem)[0]

    def tearDown(self):

        self.problem = None
        self.solution = None

    def test_central(self):

        report = sa.verify_solution(self.problem, self.solution, samples=20,
                                    seed=1)

        self.assertTrue(report.passed)
        npt.assert_array_less(report.max_residual, 1e-10)
        self.assertTrue(report.schur.is_psd)
        npt.assert_equal(len(report.poincare), 2)
        npt.assert_equal(report.worst_offender, None)
        npt.assert_equal(report.to_json()['passed'], True)

    def test_corrupted(self):

        corrupted = Sum(self.solution, Const([[0.5]]))
        report = sa.verify_solution(self.problem, corrupted, samples=20,
                                    seed=1)

        self.assertFalse(report.passed)
        npt.assert_almost_equal(report.max_residual, 0.5)
        npt.assert_equal(report.poincare, [None, None])

    def test_not_contractive(self):

        problem = sa.InterpolationProblem(1, 1, 1, [])
        report = sa.verify_solution(problem, Const([[2.0]]), samples=10)

        self.assertFalse(report.passed)
        self.assertFalse(report.schur.is_psd)
        self.assertTrue(report.worst_offender.startswith('schur test'))

    def test_shape(self):

        npt.assert_raises(ShapeMismatch, sa.verify_solution, self.problem,
                          Const.zeros(1, 2))

    def test_singular_evaluation(self):

        # the denominator 1 - 2z vanishes at the node
        problem = sa.InterpolationProblem(
            1, 1, 1,
            [TangentialCondition([0.5], [1.0], [0.1])],
        )
        s = LFT(theta_tangential([0.0], [1.0], [0.5]), Const([[-4.0]]))
        report = sa.verify_solution(problem, s, samples=10, seed=1)

        self.assertFalse(report.passed)
        npt.assert_equal(report.residuals, [np.inf])
        npt.assert_equal(report.poincare, [None])
        self.assertTrue(report.errors[0].startswith('condition 0'))

        doc = report.to_json()
        npt.assert_equal(doc['residuals'], [None])
        npt.assert_equal(doc['max_residual'], None)
        npt.assert_equal(doc['passed'], False)


class PullbackTestCase(TestCase):

    def setUp(self):

        self.embedding = EmbeddingSpec([
            Polynomial([(0.6, [1])]),
            Polynomial([(0.4, [2])]),
        ])
        self.conditions = [
            TangentialCondition([0.3], [1.0], [0.2]),
            TangentialCondition([-0.5j], [1.0], [-0.1j]),
        ]
        self.problem = sa.InterpolationProblem(2, 1, 1, self.conditions,
                                               self.embedding)

    def tearDown(self):

        self.embedding = None
        self.conditions = None
        self.problem = None

    def test_problem(self):

        npt.assert_equal(self.problem.domain_dim, 1)
        npt.assert_equal(self.problem.kernel.variant, 'pullback')
        npt.assert_almost_equal(
            self.problem.ball_conditions[0].nu,
            [0.18, 0.036],
        )

        doc = self.problem.to_json()
        decoded = sa.InterpolationProblem.from_json(doc)
        npt.assert_equal(decoded.domain_dim, 1)

    def test_sampling(self):

        points = sa.sample_domain_points(self.problem, 15, 2, 0.9)

        npt.assert_equal(len(points), 15)
        for point in points:
            npt.assert_array_less(
                np.linalg.norm(self.embedding.eval(point)),
                0.9 + 1e-12,
            )

    def test_solve(self):

        s, _ = sa.solve_central(self.problem)

        npt.assert_equal(s.domain_dim, 1)
        npt.assert_almost_equal(s.eval([0.3]), [[0.2]])
        npt.assert_almost_equal(s.eval([-0.5j]), [[0.1j]])

        report = sa.verify_solution(self.problem, s, samples=20, seed=4)
        self.assertTrue(report.passed, msg=report.worst_offender)


class NarrowEmbeddingTestCase(TestCase):

    def setUp(self):

        # range close to the sphere of radius 0.97
        self.embedding = EmbeddingSpec([
            Polynomial([(0.97, [0]), (0.01, [1])]),
        ])
        self.problem = sa.InterpolationProblem(
            1, 1, 1,
            [TangentialCondition([0.3], [1.0], [0.1])],
            self.embedding,
        )

    def tearDown(self):

        self.embedding = None
        self.problem = None

    def test_sampling(self):

        npt.assert_equal(sa.sample_domain_points(self.problem, 20, 0), [])

        points = sa.sample_domain_points(self.problem, 5, 0, 0.975)
        npt.assert_equal(len(points), 5)

    def test_verify(self):

        report = sa.verify_solution(self.problem, Const([[0.1]]),
                                    samples=20, seed=0)

        self.assertFalse(report.passed)
        npt.assert_equal(report.schur, None)
        npt.assert_almost_equal(report.max_residual, 0.0)
        self.assertTrue(
            any('no sample point' in err for err in report.errors)
        )
        npt.assert_equal(report.to_json()['passed'], False)
