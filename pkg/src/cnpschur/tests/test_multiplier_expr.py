"""UNIT TESTS FOR MULTIPLIER EXPRESSIONS.

This module contains unit tests for the
cnpschur.utilities.multiplier_expr module.

:Author: CNPSchur developers

"""

import json
from unittest import TestCase

import numpy as np
import numpy.testing as npt

from cnpschur.errors import (
    DimensionMismatch,
    MalformedDocument,
    ShapeMismatch,
    SingularDenominator,
)
from cnpschur.utilities import multiplier_expr as me
from cnpschur.utilities.kernel_engine import EmbeddingSpec, Polynomial
from cnpschur.utilities.schur_step import theta_tangential


class ExpressionTestCase(TestCase):

    def setUp(self):

        self.point = np.array([0.1 + 0.2j, -0.3])
        self.blaschke = me.Blaschke([0.0, 0.0])
        self.matrix = np.array([[1.0, 2j], [0.5, -1.0]])

    def tearDown(self):

        self.point = None
        self.blaschke = None
        self.matrix = None

    def test_const(self):

        const = me.Const(self.matrix)

        npt.assert_equal(const.shape, (2, 2))
        npt.assert_equal(const.domain_dim, None)
        npt.assert_array_equal(const.eval(self.point), self.matrix)
        npt.assert_array_equal(const.eval([0.5]), self.matrix)
        npt.assert_array_equal(me.Const.zeros(3, 1).eval([0.0]),
                               np.zeros((3, 1)))
        npt.assert_raises(ShapeMismatch, me.Const, [1.0, 2.0])

    def test_blaschke(self):

        npt.assert_equal(self.blaschke.shape, (1, 2))
        npt.assert_almost_equal(
            self.blaschke.eval(self.point),
            self.point.reshape(1, 2),
        )
        npt.assert_raises(DimensionMismatch, self.blaschke.eval, [0.1])

    def test_algebra(self):

        const = me.Const(self.matrix)
        row = me.Const([[1.0, 1j]])
        value = self.blaschke.eval(self.point)

        hcat = me.HCat([self.blaschke, row])
        npt.assert_equal(hcat.shape, (1, 4))
        npt.assert_almost_equal(
            hcat.eval(self.point),
            np.hstack([value, [[1.0, 1j]]]),
        )

        vcat = me.VCat([self.blaschke, row])
        npt.assert_equal(vcat.shape, (2, 2))
        npt.assert_equal(vcat.domain_dim, 2)

        product = me.Product(self.blaschke, const)
        npt.assert_almost_equal(product.eval(self.point),
                                value @ self.matrix)

        total = me.Sum(self.blaschke, row)
        npt.assert_almost_equal(total.eval(self.point), value + row.matrix)

        scaled = me.ScalarScale(0.5j, self.blaschke)
        npt.assert_almost_equal(scaled.eval(self.point), 0.5j * value)

        npt.assert_equal(me.shape(product), (1, 2))
        npt.assert_almost_equal(me.eval_expr(scaled, self.point),
                                scaled(self.point))

    def test_shape_errors(self):

        npt.assert_raises(ShapeMismatch, me.HCat,
                          [self.blaschke, me.Const.zeros(2, 1)])
        npt.assert_raises(ShapeMismatch, me.VCat,
                          [self.blaschke, me.Const.zeros(1, 3)])
        npt.assert_raises(ShapeMismatch, me.HCat, [])
        npt.assert_raises(ShapeMismatch, me.Product, self.blaschke,
                          self.blaschke)
        npt.assert_raises(ShapeMismatch, me.Sum, self.blaschke,
                          me.Const.zeros(2, 2))
        npt.assert_raises(DimensionMismatch, me.HCat,
                          [self.blaschke, me.Blaschke([0.1])])


class LFTTestCase(TestCase):

    def setUp(self):

        self.nu = np.array([0.1, 0.2])
        self.gamma = 0.3 - 0.4j
        self.theta = theta_tangential(self.nu, [1.0], [np.conj(self.gamma)])

    def tearDown(self):

        self.nu = None
        self.gamma = None
        self.theta = None

    def test_interpolation(self):

        npt.assert_equal(self.theta.param_shape, (2, 1))

        central = me.LFT(self.theta, me.Const.zeros(2, 1))
        npt.assert_almost_equal(central.eval(self.nu)[0, 0], self.gamma)

        other = me.LFT(self.theta, me.Const([[0.2], [-0.5j]]))
        npt.assert_equal(other.shape, (1, 1))
        npt.assert_equal(other.domain_dim, 2)
        npt.assert_almost_equal(other.eval(self.nu)[0, 0], self.gamma)

    def test_shape_errors(self):

        npt.assert_raises(ShapeMismatch, me.LFT, self.theta,
                          me.Const.zeros(1, 1))
        npt.assert_raises(
            DimensionMismatch,
            me.LFT,
            self.theta,
            me.Product(me.Const.zeros(2, 1), me.Blaschke([0.0])),
        )

    def test_singular_denominator(self):

        # denominator proportional to 1 + z sigma w with w = 0.5
        theta = theta_tangential([0.0], [1.0], [0.5])
        lft = me.LFT(theta, me.Const([[-4.0]]))

        npt.assert_raises(SingularDenominator, lft.eval, [0.5])
        npt.assert_almost_equal(lft.eval([0.0])[0, 0], 0.5)


class CompositionTestCase(TestCase):

    def setUp(self):

        self.embedding = EmbeddingSpec([
            Polynomial([(1.0, [1])]),
            Polynomial([(0.5, [2])]),
        ])
        self.w0 = np.array([0.3 + 0.1j])

    def tearDown(self):

        self.embedding = None
        self.w0 = None

    def test_identity(self):

        blaschke = me.Blaschke([0.1, 0.2j])
        composed = me.compose_embedding(blaschke, EmbeddingSpec.identity(2))
        point = [0.3, -0.1j]

        npt.assert_almost_equal(composed.eval(point), blaschke.eval(point))

    def test_vanishing(self):

        zero = self.embedding.map_point(self.w0)
        composed = me.compose_embedding(me.Blaschke(zero), self.embedding)

        npt.assert_equal(composed.domain_dim, 1)
        npt.assert_equal(composed.shape, (1, 2))
        npt.assert_almost_equal(composed.eval(self.w0), np.zeros((1, 2)))
        npt.assert_raises(DimensionMismatch, me.compose_embedding,
                          me.Blaschke([0.0]), self.embedding)


class SerializationTestCase(TestCase):

    def setUp(self):

        theta = theta_tangential([0.1, 0.2], [1.0, 0.5j], [0.3])
        inner = theta_tangential([-0.2, 0.1j], [1.0, 0.0, 0.2], [0.1])
        self.expr = me.LFT(
            theta,
            me.LFT(inner, me.Const.zeros(4, 1)),
        )
        self.point = [0.2 - 0.1j, 0.3]

    def tearDown(self):

        self.expr = None
        self.point = None

    def test_const_document(self):

        npt.assert_equal(
            me.serialize(me.Const(np.eye(2))),
            {
                'node': 'const',
                'matrix': [[[1.0, 0.0], [0.0, 0.0]],
                           [[0.0, 0.0], [1.0, 0.0]]],
            },
        )

    def test_dumps(self):

        text = me.dumps(self.expr)
        doc = json.loads(text)

        npt.assert_equal(doc['schema_version'], me.SCHEMA_VERSION)
        npt.assert_equal(doc['expr']['node'], 'lft')
        npt.assert_equal(text, json.dumps(doc, sort_keys=True))

        decoded = me.loads(text)
        npt.assert_equal(decoded.shape, self.expr.shape)
        npt.assert_almost_equal(decoded.eval(self.point),
                                self.expr.eval(self.point))

    def test_malformed(self):

        npt.assert_raises(MalformedDocument, me.deserialize,
                          {'node': 'spline'})
        npt.assert_raises(MalformedDocument, me.deserialize,
                          {'node': 'product', 'left': {'node': 'const'}})
        npt.assert_raises(MalformedDocument, me.deserialize, [1, 2])
        npt.assert_raises(MalformedDocument, me.loads, '{"expr": ')
        npt.assert_raises(MalformedDocument, me.loads,
                          '{"schema_version": 7, "expr": {}}')
        npt.assert_raises(
            MalformedDocument,
            me.deserialize,
            {'node': 'blaschke', 'alpha': [[1.0, 0.0]]},
        )
