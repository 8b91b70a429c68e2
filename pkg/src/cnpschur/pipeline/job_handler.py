"""JOB HANDLER.

This module defines a class for distributing independent check jobs, such
as the identity families of the self-test, among joblib workers.

:Author: CNPSchur developers

"""

from gc import collect
from logging import Logger
from time import perf_counter

from joblib import Parallel, cpu_count, delayed
from modopt.interface.errors import warn

from cnpschur.pipeline.config import BACKENDS


def run_job(job_name, job_function, job_kwargs):
    """Run Job.

    Run one job and collect its outcome in a worker dictionary. Exceptions
    are caught and recorded so one failing job does not stop the others.

    Parameters
    ----------
    job_name : str
        Job name
    job_function : callable
        Module-level function returning a JSON-ready result
    job_kwargs : dict
        Keyword arguments of ``job_function``

    Returns
    -------
    dict
        Worker dictionary with keys ``job_name``, ``result``, ``exception``,
        ``stderr`` and ``time``

    """
    worker_dict = {
        'job_name': job_name,
        'result': None,
        'exception': False,
        'stderr': '',
    }

    start = perf_counter()
    try:
        worker_dict['result'] = job_function(**job_kwargs)
    except Exception as err:
        worker_dict['exception'] = type(err).__name__
        worker_dict['stderr'] = str(err)
    worker_dict['time'] = perf_counter() - start

    return worker_dict


class JobHandler(object):
    """Job Handler.

    This class handles the submission of jobs to workers distributed among
    a specified number of CPUs.

    Parameters
    ----------
    jobs : list
        Tuples ``(job_name, job_function, job_kwargs)``
    log : logging.Logger
        Logging instance
    batch_size : int, optional
        Number of jobs submitted simultaneously, default is ``1``
    backend : str, optional
        Joblib backend, default is ``'loky'``
    verbose : bool, optional
        Verbose setting, default is ``False``

    """

    def __init__(self, jobs, log, batch_size=1, backend='loky', verbose=False):

        self.jobs = jobs
        self.log = log
        self.batch_size = batch_size
        self.backend = backend
        self.error_count = 0
        self.worker_dicts = []
        self._verbose = verbose

        self._log_job_parameters()

    @property
    def log(self):
        """Set Log.

        Raises
        ------
        TypeError
            For incorrect input type

        """
        return self._log

    @log.setter
    def log(self, value):

        if not isinstance(value, Logger):
            raise TypeError('log must be an instance of logging.Logger.')

        self._log = value

    @property
    def batch_size(self):
        """Set Batch Size.

        Raises
        ------
        ValueError
            For invalid batch size value

        """
        return self._batch_size

    @batch_size.setter
    def batch_size(self, value):

        if not isinstance(value, int) or (value < 1):
            raise ValueError('Batch size must be an integer >= 1.')

        if value > cpu_count():
            warn('Batch size exceeds the number of available CPUs.')

        self._batch_size = value

    @property
    def backend(self):
        """Set Backend.

        Raises
        ------
        ValueError
            For invalid backend value

        """
        return self._backend

    @backend.setter
    def backend(self, value):

        if value not in BACKENDS:
            raise ValueError(f'{value} is not a valid joblib backend.')

        self._backend = value

    def _log_job_parameters(self):
        """Log Job Parameters."""
        self.log.info('Starting job handler with:')
        self.log.info(f' - Number of jobs: {len(self.jobs)}')
        self.log.info(f' - Batch size: {self.batch_size}')
        self.log.info(f' - Backend: {self.backend}')

    def submit_jobs(self):
        """Submit Jobs.

        Run the jobs in parallel and record the worker dictionaries.

        Returns
        -------
        list
            Worker dictionaries in the order of ``jobs``

        """
        self.worker_dicts = Parallel(
            n_jobs=self.batch_size,
            backend=self.backend,
        )(
            delayed(run_job)(job_name, job_function, job_kwargs)
            for job_name, job_function, job_kwargs in self.jobs
        )

        self._check_for_errors()
        self.log.info('All jobs complete')
        self.log.info('')
        collect()

        return self.worker_dicts

    def _check_for_errors(self):
        """Check for Errors.

        Count the jobs that raised and report them.

        """
        for worker_dict in self.worker_dicts:
            self.log.info(
                f' - {worker_dict["job_name"]}: '
                + f'{worker_dict["time"]:.3f}s'
            )
            if worker_dict['exception']:
                self.error_count += 1
                message = (
                    f'Job {worker_dict["job_name"]} raised '
                    + f'{worker_dict["exception"]}: {worker_dict["stderr"]}'
                )
                self.log.info(f'ERROR: {message}')
                if self._verbose:
                    warn(message)
