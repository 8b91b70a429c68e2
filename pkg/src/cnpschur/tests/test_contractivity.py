"""UNIT TESTS FOR CONTRACTIVITY.

This module contains unit tests for the cnpschur.utilities.contractivity
module.

:Author: CNPSchur developers

"""

from unittest import TestCase

import numpy as np
import numpy.testing as npt

from cnpschur.errors import DenominatorVanishes, HypothesisViolated
from cnpschur.utilities import contractivity as ct
from cnpschur.utilities.ball_geometry import random_ball_points
from cnpschur.utilities.kernel_engine import EmbeddingSpec, Polynomial
from cnpschur.utilities.multiplier_expr import (
    Blaschke,
    Const,
    Product,
    ScalarScale,
    compose_embedding,
)


class ReportTestCase(TestCase):

    def test_report(self):

        report = ct.ContractivityReport(0.2, 0.5, [0.1j])

        npt.assert_almost_equal(report.margin, 0.3)
        self.assertTrue(report.holds())
        self.assertFalse(ct.ContractivityReport(0.5, 0.2, [0.0]).holds())
        self.assertTrue(
            ct.ContractivityReport(0.5, 0.5 - 1e-12, [0.0]).holds()
        )
        npt.assert_equal(
            report.to_json()['point'],
            [[0.0, 0.1]],
        )


class PoincareTestCase(TestCase):

    def setUp(self):

        self.half_z = ScalarScale(0.5, Blaschke([0.0]))
        self.points = [[0.4], [-0.2 + 0.7j], [0.9j]]

    def tearDown(self):

        self.half_z = None
        self.points = None

    def test_origin(self):

        for point in self.points:
            report = ct.poincare_check(self.half_z, [0.0], [1.0], [0.0],
                                       point)
            radius = abs(point[0])
            npt.assert_almost_equal(report.lhs, 0.5 * radius)
            npt.assert_almost_equal(report.rhs, radius)
            self.assertTrue(report.holds())

    def test_tangential(self):

        value = np.array([[0.3, 0.1j], [-0.2, 0.4]])
        s = Const(value)
        nu = [0.2, -0.1j]
        xi = np.array([1.0, 0.5j])
        eta = value.conj().T @ xi

        for point in random_ball_points(2, 10, 2):
            self.assertTrue(ct.poincare_check(s, nu, xi, eta, point).holds())

    def test_hypotheses(self):

        npt.assert_raises(HypothesisViolated, ct.poincare_check,
                          self.half_z, [0.0], [1.0], [0.3], [0.5])
        npt.assert_raises(HypothesisViolated, ct.poincare_check,
                          self.half_z, [0.0], [0.5], [0.6], [0.5])

    def test_matrix_check(self):

        nu = [0.3]
        points = list(random_ball_points(4, 12, 1))
        report = ct.poincare_matrix_check(self.half_z, nu, [1.0], [0.15],
                                          points)

        self.assertTrue(report.is_psd)

    def test_sweep(self):

        reports = ct.poincare_sweep(self.half_z, [0.3], [1.0], [0.15],
                                    self.points, n_jobs=2,
                                    backend='threading')

        npt.assert_equal(len(reports), len(self.points))
        for report, point in zip(reports, self.points):
            direct = ct.poincare_check(self.half_z, [0.3], [1.0], [0.15],
                                       point)
            npt.assert_almost_equal(report.margin, direct.margin)


class DiscTestCase(TestCase):

    def setUp(self):

        self.square = Product(Blaschke([0.0]), Blaschke([0.0]))
        self.scaled = ScalarScale(0.8, Blaschke([-0.3]))

    def tearDown(self):

        self.square = None
        self.scaled = None

    def test_classical(self):

        report = ct.classical_disc_check(self.square, 0.3, -0.5)

        npt.assert_almost_equal(report.lhs, 0.16 / 0.9775)
        npt.assert_almost_equal(report.rhs, 0.8 / 1.15)
        self.assertTrue(report.holds())

        grid = [0.0, 0.5, -0.3j, 0.6 + 0.6j]
        for a in grid:
            for z in grid:
                self.assertTrue(
                    ct.classical_disc_check(self.scaled, a, z).holds()
                )

    def test_denominator(self):

        npt.assert_raises(DenominatorVanishes, ct.classical_disc_check,
                          Const([[1.0]]), 0.2, 0.4)

    def test_scalar_reduction(self):

        for a in (0.0, 0.4j, -0.5 + 0.1j):
            for z in (0.7, -0.2j, 0.1 + 0.3j):
                npt.assert_array_less(
                    ct.scalar_reduction_residual(self.scaled, a, z),
                    1e-10,
                )
                npt.assert_array_less(
                    ct.scalar_reduction_residual(self.square, a, z),
                    1e-10,
                )


class PullbackTestCase(TestCase):

    def setUp(self):

        self.embedding = EmbeddingSpec([
            Polynomial([(0.6, [1])]),
            Polynomial([(0.4, [2])]),
        ])
        inner = Product(Blaschke([0.0, 0.0]), Const([[0.5], [0.5]]))
        self.s = compose_embedding(inner, self.embedding)
        self.w0 = [0.3 - 0.2j]

    def tearDown(self):

        self.embedding = None
        self.s = None
        self.w0 = None

    def test_pullback(self):

        eta = [np.conj(self.s.eval(self.w0)[0, 0])]

        for z in ([0.0], [0.8], [-0.5j], [0.9 + 0.3j]):
            report = ct.pullback_poincare_check(self.s, self.embedding,
                                                self.w0, [1.0], eta, z)
            self.assertTrue(report.holds())
