"""UNIT TESTS FOR PIPELINE.

This module contains unit tests for the cnpschur.pipeline module.

:Author: CNPSchur developers

"""

import json
import logging
import os
from tempfile import TemporaryDirectory
from unittest import TestCase

import numpy as np
import numpy.testing as npt

from cnpschur.errors import MalformedDocument
from cnpschur.pipeline import *
from cnpschur.utilities.multiplier_expr import Const


def square(value):

    return value ** 2


def fail(value):

    raise ValueError(f'bad value {value}')


class ConfigTestCase(TestCase):

    def setUp(self):

        self.tmp_dir = TemporaryDirectory()
        self.config_file = os.path.join(self.tmp_dir.name, 'config.ini')
        with open(self.config_file, 'w') as config_file:
            config_file.write(
                '[DEFAULT]\nVERBOSE = False\n\n'
                + '[RUN]\nSEED = 5\nSAMPLES = 7\n\n'
                + '[FILE]\nOUTPUT_DIR = $CNPSCHUR_TEST_DIR/out\n\n'
                + '[JOB]\nSMP_BATCH_SIZE = 2\nSMP_BACKEND = Threading\n'
            )
        os.environ['CNPSCHUR_TEST_DIR'] = self.tmp_dir.name

    def tearDown(self):

        os.environ.pop('CNPSCHUR_TEST_DIR', None)
        self.tmp_dir.cleanup()
        self.tmp_dir = None
        self.config_file = None

    def test_defaults(self):

        parser = config.create_config_parser()
        run_config = config.RunConfig.from_config(parser)

        npt.assert_equal(
            run_config.to_dict(),
            {'seed': 0, 'samples': 50, 'radius_cap': 0.95, 'tol': 1e-8},
        )
        npt.assert_equal(run_config.output_path, None)
        npt.assert_equal(run_config.backend, 'loky')
        npt.assert_equal(run_config.log_name, 'cnpschur')

    def test_config_file(self):

        parser = config.create_config_parser(self.config_file)
        run_config = config.RunConfig.from_config(parser)

        npt.assert_equal(run_config.seed, 5)
        npt.assert_equal(run_config.samples, 7)
        npt.assert_equal(run_config.radius_cap, 0.95)
        npt.assert_equal(run_config.batch_size, 2)
        npt.assert_equal(run_config.backend, 'threading')
        npt.assert_equal(
            run_config.output_path,
            os.path.join(self.tmp_dir.name, 'out'),
        )

    def test_overrides(self):

        parser = config.create_config_parser(self.config_file)
        parsed = args.create_arg_parser([
            'check', 'problem.json', '--seed', '3', '--radius-cap', '0.5',
            '--out', 'results',
        ])
        run_config = config.RunConfig.from_config(parser, parsed)

        npt.assert_equal(run_config.seed, 3)
        npt.assert_equal(run_config.samples, 7)
        npt.assert_equal(run_config.radius_cap, 0.5)
        npt.assert_equal(run_config.output_path, 'results')

    def test_getlist(self):

        parser = config.create_config_parser()
        parser.set('RUN', 'NAMES', 'a, b ,c')

        npt.assert_equal(parser.getlist('RUN', 'NAMES'), ['a', 'b', 'c'])

    def test_invalid(self):

        npt.assert_raises(IOError, config.create_config_parser,
                          os.path.join(self.tmp_dir.name, 'missing.ini'))
        npt.assert_raises(ValueError, config.RunConfig, samples=0)
        npt.assert_raises(ValueError, config.RunConfig, radius_cap=1.0)
        npt.assert_raises(ValueError, config.RunConfig, tol=0.0)
        npt.assert_raises(ValueError, config.RunConfig, batch_size=0)
        npt.assert_raises(ValueError, config.RunConfig, backend='dask')


class ArgsTestCase(TestCase):

    def test_commands(self):

        parsed = args.create_arg_parser(['eval', 'sol.json', 'pts.json'])

        npt.assert_equal(parsed.command, 'eval')
        npt.assert_equal(parsed.solution, 'sol.json')
        npt.assert_equal(parsed.points, 'pts.json')
        npt.assert_equal(parsed.seed, None)

        parsed = args.create_arg_parser(['selftest', '--samples', '1'])
        npt.assert_equal(parsed.samples, 1)

        self.assertIn(' - verify\n', args.command_str())

    def test_usage_errors(self):

        npt.assert_raises(SystemExit, args.create_arg_parser, ['eval', 'a'])
        npt.assert_raises(SystemExit, args.create_arg_parser, ['solver'])
        npt.assert_raises(SystemExit, args.create_arg_parser, [])


class FileIOTestCase(TestCase):

    def setUp(self):

        self.tmp_dir = TemporaryDirectory()

    def tearDown(self):

        self.tmp_dir.cleanup()
        self.tmp_dir = None

    def _write(self, name, text):

        file_name = os.path.join(self.tmp_dir.name, name)
        with open(file_name, 'w') as out_file:
            out_file.write(text)

        return file_name

    def test_read_json(self):

        npt.assert_raises(IOError, file_io.read_json,
                          os.path.join(self.tmp_dir.name, 'missing.json'))
        npt.assert_raises(MalformedDocument, file_io.read_json,
                          self._write('bad.json', '{"N": 1, '))

    def test_write_json(self):

        file_name = os.path.join(self.tmp_dir.name, 'doc.json')
        file_io.write_json({'b': 1, 'a': [1.5]}, file_name)

        with open(file_name) as in_file:
            text = in_file.read()

        npt.assert_equal(text, '{\n  "a": [\n    1.5\n  ],\n  "b": 1\n}\n')
        npt.assert_equal(file_io.read_json(file_name), {'a': [1.5], 'b': 1})

    def test_load_points(self):

        points = [[[0.1, 0.0], [0.0, 0.2]], [[0.5, 0.5], [0.0, 0.0]]]
        bare = file_io.load_points(self._write('p1.json', json.dumps(points)))
        wrapped = file_io.load_points(
            self._write('p2.json', json.dumps({'points': points}))
        )

        npt.assert_almost_equal(bare[0], [0.1, 0.2j])
        npt.assert_almost_equal(wrapped[1], [0.5 + 0.5j, 0.0])
        npt.assert_raises(MalformedDocument, file_io.load_points,
                          self._write('p3.json', '{"points": 3}'))
        npt.assert_raises(
            MalformedDocument,
            file_io.load_points,
            self._write('p4.json', '{"schema_version": 2, "points": []}'),
        )

    def test_solution(self):

        expr = Const(np.array([[0.5, 1j]]))
        doc = file_io.solution_document(expr)
        npt.assert_equal(sorted(doc), ['expr', 'schema_version'])

        from_doc = file_io.load_solution(
            self._write('s1.json', json.dumps(doc))
        )
        from_node = file_io.load_solution(
            self._write('s2.json', json.dumps(doc['expr']))
        )

        npt.assert_array_equal(from_doc.eval([0.0]), expr.matrix)
        npt.assert_array_equal(from_node.eval([0.0]), expr.matrix)
        npt.assert_raises(MalformedDocument, file_io.load_solution,
                          self._write('s3.json', '[]'))
        npt.assert_raises(MalformedDocument, file_io.load_solution,
                          self._write('s4.json', '{"schema_version": 1}'))

    def test_load_problem(self):

        doc = {
            'N': 1,
            'p': 1,
            'q': 1,
            'conditions': [
                {'nu': [[0.0, 0.0]], 'xi': [[1.0, 0.0]],
                 'eta': [[0.5, 0.0]]},
            ],
        }
        problem = file_io.load_problem(
            self._write('problem.json', json.dumps(doc))
        )

        npt.assert_equal(len(problem.conditions), 1)
        npt.assert_raises(
            MalformedDocument,
            file_io.load_problem,
            self._write('bad.json', json.dumps(dict(doc, schema_version=9))),
        )


class JobHandlerTestCase(TestCase):

    def setUp(self):

        self.log = logging.getLogger('cnpschur.test')
        self.jobs = [
            ('square', square, {'value': 3}),
            ('fail', fail, {'value': 1}),
        ]

    def tearDown(self):

        self.log = None
        self.jobs = None

    def test_run_job(self):

        worker_dict = job_handler.run_job('square', square, {'value': 2})

        npt.assert_equal(worker_dict['result'], 4)
        npt.assert_equal(worker_dict['exception'], False)

        worker_dict = job_handler.run_job('fail', fail, {'value': 2})

        npt.assert_equal(worker_dict['result'], None)
        npt.assert_equal(worker_dict['exception'], 'ValueError')
        npt.assert_equal(worker_dict['stderr'], 'bad value 2')

    def test_submit_jobs(self):

        handler = job_handler.JobHandler(self.jobs, self.log, batch_size=1,
                                         backend='threading')
        worker_dicts = handler.submit_jobs()

        npt.assert_equal([wd['job_name'] for wd in worker_dicts],
                         ['square', 'fail'])
        npt.assert_equal(worker_dicts[0]['result'], 9)
        npt.assert_equal(handler.error_count, 1)

    def test_invalid(self):

        npt.assert_raises(TypeError, job_handler.JobHandler, self.jobs,
                          'log')
        npt.assert_raises(ValueError, job_handler.JobHandler, self.jobs,
                          self.log, batch_size=0)
        npt.assert_raises(ValueError, job_handler.JobHandler, self.jobs,
                          self.log, backend='dask')


class RunLogTestCase(TestCase):

    def setUp(self):

        self.tmp_dir = TemporaryDirectory()

    def tearDown(self):

        self.tmp_dir.cleanup()
        self.tmp_dir = None

    def test_no_output(self):

        run_log.RunLog(config.RunConfig(), 'check').close()
        log = run_log.RunLog(config.RunConfig(), 'check')

        npt.assert_equal(log.log_name, None)
        npt.assert_equal(log.log.name, 'cnpschur')
        log.close()

    def test_file_log(self):

        out_dir = os.path.join(self.tmp_dir.name, 'out')
        log = run_log.RunLog(
            config.RunConfig(output_path=out_dir, log_name='run'),
            'solve',
        )
        log.close()

        log_file = os.path.join(out_dir, 'run.log')
        self.assertTrue(os.path.isfile(log_file))
        with open(log_file) as in_file:
            self.assertIn('Starting CNPSchur Run: solve', in_file.read())
