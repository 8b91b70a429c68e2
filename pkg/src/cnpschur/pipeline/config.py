"""CONFIGURATION FILE HANDLING.

This module defines methods for handling the configuration file and the
run parameters.

:Author: CNPSchur developers

"""

import os
from configparser import ConfigParser

BACKENDS = ('loky', 'multiprocessing', 'threading')


class CustomParser(ConfigParser):
    """Custom Parser.

    This class adds functionality to the ``ConfigParser`` class.

    """

    def getexpanded(self, section, option):
        """Get Expanded.

        This method expands environment variables obtained using the get
        method.

        Parameters
        ----------
        section : str
            Configuration file section
        option : str
            Configuration file option

        Returns
        -------
        str
            Expanded environment variables

        """
        return self._get(section, os.path.expandvars, option)

    def getlist(self, section, option, delimiter=','):
        """Get List.

        This method retrieves a list of strings separated by a given
        delimiter.

        Parameters
        ----------
        section : str
            Configuration file section
        option : str
            Configuration file option
        delimiter : str, optional
            Delimiter between list entries, default is ','

        Returns
        -------
        list
            List of strings

        """
        return [
            opt.strip()
            for opt in self.getexpanded(section, option).split(delimiter)
        ]


class SetUpParser(object):
    """Set Up Parser.

    This class sets up an instance of ``CustomParser`` and completes it with
    the default run, file and job options.

    Parameters
    ----------
    file_name : str, optional
        Configuration file name, default is ``None`` (defaults only)

    """

    def __init__(self, file_name=None):

        self.file_name = file_name
        self.config = CustomParser()

    @property
    def file_name(self):
        """Set file name.

        This sets the configuration file name.

        Raises
        ------
        IOError
            For non existent configuration file

        """
        return self._file_name

    @file_name.setter
    def file_name(self, value):

        if value is not None and not os.path.exists(value):
            raise IOError(f'Configuration file {value} does not exist.')

        self._file_name = value

    def _set_option(self, section, option, value):

        if section != 'DEFAULT' and not self.config.has_section(section):
            self.config.add_section(section)

        if not self.config.has_option(section, option):
            self.config.set(section, option, value)

    def _set_defaults(self):
        """Set Defaults.

        Set default configuration options.

        """
        self._set_option('DEFAULT', 'VERBOSE', 'False')

    def _set_run_options(self):
        """Set Run Options.

        Set the sampling and tolerance options.

        """
        self._set_option('RUN', 'SEED', '0')
        self._set_option('RUN', 'SAMPLES', '50')
        self._set_option('RUN', 'RADIUS_CAP', '0.95')
        self._set_option('RUN', 'TOL', '1e-8')

    def _set_file_options(self):
        """Set File Options.

        Set the output options. No output directory means documents are
        written to stdout and nothing is written to disk.

        """
        self._set_option('FILE', 'LOG_NAME', 'cnpschur')

    def _set_job_options(self):
        """Set Job Options.

        Set the joblib options of parallel sweeps.

        """
        self._set_option('JOB', 'SMP_BATCH_SIZE', '1')
        self._set_option('JOB', 'SMP_BACKEND', 'loky')

    def get_parser(self):
        """Get Parser.

        Return a configuration file parser instance.

        Returns
        -------
        CustomParser
            Custom configuration file parser

        """
        if self.file_name is not None:
            self.config.read(self.file_name)
        self._set_defaults()
        self._set_run_options()
        self._set_file_options()
        self._set_job_options()

        return self.config


def create_config_parser(file_name=None):
    """Create Configuration Parser.

    This function creates a configuration file parser instance.

    Parameters
    ----------
    file_name : str, optional
        Configuration file name

    Returns
    -------
    CustomParser
        Custom configuration file parser

    """
    parser = SetUpParser(file_name).get_parser()
    parser.file_name = file_name

    return parser


class RunConfig(object):
    """Run Configuration.

    Validated run parameters.

    Parameters
    ----------
    seed : int, optional
        Random seed, default is ``0``
    samples : int, optional
        Number of sample points, default is ``50``
    radius_cap : float, optional
        Largest norm of sample points, default is ``0.95``
    tol : float, optional
        Verification tolerance, default is ``1e-8``
    output_path : str, optional
        Output directory, default is ``None`` (stdout)
    log_name : str, optional
        Log file name without extension, default is ``'cnpschur'``
    batch_size : int, optional
        Number of joblib workers, default is ``1``
    backend : str, optional
        Joblib backend, default is ``'loky'``
    verbose : bool, optional
        Verbose setting, default is ``False``

    Raises
    ------
    ValueError
        For invalid parameter values

    """

    def __init__(
        self,
        seed=0,
        samples=50,
        radius_cap=0.95,
        tol=1e-8,
        output_path=None,
        log_name='cnpschur',
        batch_size=1,
        backend='loky',
        verbose=False,
    ):

        self.seed = seed
        self.samples = samples
        self.radius_cap = radius_cap
        self.tol = tol
        self.output_path = output_path
        self.log_name = log_name
        self.batch_size = batch_size
        self.backend = backend
        self.verbose = verbose

    @property
    def samples(self):
        """Set Samples.

        Raises
        ------
        ValueError
            If samples is smaller than 1

        """
        return self._samples

    @samples.setter
    def samples(self, value):

        if not isinstance(value, int) or value < 1:
            raise ValueError(f'Samples must be an integer >= 1, got {value}.')

        self._samples = value

    @property
    def radius_cap(self):
        """Set Radius Cap.

        Raises
        ------
        ValueError
            If the radius cap is not in (0, 1)

        """
        return self._radius_cap

    @radius_cap.setter
    def radius_cap(self, value):

        if not 0.0 < value < 1.0:
            raise ValueError(f'Radius cap must be in (0, 1), got {value}.')

        self._radius_cap = float(value)

    @property
    def tol(self):
        """Set Tolerance.

        Raises
        ------
        ValueError
            If the tolerance is not positive

        """
        return self._tol

    @tol.setter
    def tol(self, value):

        if not value > 0.0:
            raise ValueError(f'Tolerance must be positive, got {value}.')

        self._tol = float(value)

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

        if not isinstance(value, int) or value < 1:
            raise ValueError('Batch size must be an integer >= 1.')

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

    @classmethod
    def from_config(cls, config, args=None):
        """Build from Configuration.

        Command-line values override the configuration file.

        Parameters
        ----------
        config : CustomParser
            Configuration parser completed by :class:`SetUpParser`
        args : argparse.Namespace, optional
            Parsed command-line arguments

        Returns
        -------
        RunConfig
            Validated run configuration

        """
        def override(name, value):
            arg = getattr(args, name, None)
            return value if arg is None else arg

        output_path = None
        if config.has_option('FILE', 'OUTPUT_DIR'):
            output_path = config.getexpanded('FILE', 'OUTPUT_DIR') or None

        return cls(
            seed=override('seed', config.getint('RUN', 'SEED')),
            samples=override('samples', config.getint('RUN', 'SAMPLES')),
            radius_cap=override(
                'radius_cap',
                config.getfloat('RUN', 'RADIUS_CAP'),
            ),
            tol=override('tol', config.getfloat('RUN', 'TOL')),
            output_path=override('out', output_path),
            log_name=config.get('FILE', 'LOG_NAME'),
            batch_size=config.getint('JOB', 'SMP_BATCH_SIZE'),
            backend=config.get('JOB', 'SMP_BACKEND').lower(),
            verbose=config.getboolean('DEFAULT', 'VERBOSE'),
        )

    def to_dict(self):
        """Convert to Dictionary."""
        return {
            'seed': self.seed,
            'samples': self.samples,
            'radius_cap': self.radius_cap,
            'tol': self.tol,
        }

    def __repr__(self):

        return (
            f'RunConfig(seed={self.seed}, samples={self.samples}, '
            + f'radius_cap={self.radius_cap}, tol={self.tol}, '
            + f'output_path={self.output_path!r})'
        )
