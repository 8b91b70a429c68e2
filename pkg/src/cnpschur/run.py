"""CNPSCHUR RUN.

This module sets up and executes a given CNPSchur command.

:Author: CNPSchur developers

"""

import os

from joblib import cpu_count
from modopt.interface.errors import catch_error

from cnpschur.modules.module_runners import get_module_runners
from cnpschur.pipeline.args import create_arg_parser
from cnpschur.pipeline.config import RunConfig, create_config_parser
from cnpschur.pipeline.file_io import dump_json, write_json
from cnpschur.pipeline.run_log import RunLog

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFICATION_FAILURE = 3


class CnpSchur(object):
    """CNPSchur.

    CNPSchur runner class.

    """

    def __init__(self):

        self.log = None
        self.run_log = None

    def set_up(self, args=None):
        """Set Up.

        Parse the command line and the configuration file, and open the run
        log.

        Parameters
        ----------
        args : list, optional
            Command-line arguments, default is ``sys.argv[1:]``

        """
        self._args = create_arg_parser(args)
        self.command = self._args.command
        self.config = create_config_parser(self._args.config)
        self.run_config = RunConfig.from_config(self.config, self._args)
        self.runner = get_module_runners([self.command])[self.command]
        self.run_log = RunLog(self.run_config, self.command)
        self.log = self.run_log.log
        self._check_system_setup()

    def _check_system_setup(self):
        """Check System Set Up.

        Log the runner version and the machine set up.

        """
        self.log.info('Checking System Set Up:')
        self.log.info(f' - Command: {self.command} {self.runner.version}')
        self.log.info(f' - Run method: {self.runner.run_method}')
        self.log.info(f' - Dependencies: {", ".join(self.runner.depends)}')
        self.log.info(f' - Number of available CPUs: {cpu_count()}')
        self.log.info('')

    def output_name(self, key):
        """Get Output File Name.

        Parameters
        ----------
        key : str
            Document key returned by the runner

        Returns
        -------
        str
            ``<output_path>/<command>_report.json`` for reports and
            ``<output_path>/<key>.json`` otherwise

        """
        if key == 'report':
            base = f'{self.command}_report.json'
        else:
            base = f'{key}.json'

        return os.path.join(self.run_config.output_path, base)

    def write_documents(self, documents):
        """Write Documents.

        Without an output directory the first document goes to stdout;
        otherwise every document is written to the output directory.

        Parameters
        ----------
        documents : dict
            Documents keyed by name

        """
        if self.run_config.output_path is None:
            print(dump_json(next(iter(documents.values()))))
            return

        for key, doc in documents.items():
            file_name = self.output_name(key)
            write_json(doc, file_name)
            self.log.info(f' - Wrote {file_name}')

    def execute(self):
        """Execute Command.

        Returns
        -------
        int
            Exit code

        """
        self.log.info(f'Running command {self.command}')
        documents, exit_code = self.runner(
            self._args,
            self.run_config,
            self.log,
        )
        self.write_documents(documents)
        self.log.info(f' - Exit code: {exit_code}')
        self.log.info('')

        if exit_code != EXIT_OK:
            self.run_log.error_count += 1

        return exit_code

    def close(self):
        """Close Run Log."""
        if self.run_log is not None:
            self.run_log.close()


def run(*args):
    """Run CNPSchur.

    This function runs a CNPSchur command. Input, parse and runtime errors
    are reported on stderr and mapped to exit code ``1``.

    Parameters
    ----------
    args : list, optional
        Command-line arguments, default is ``sys.argv[1:]``

    Returns
    -------
    int
        Exit code

    """
    pipe = CnpSchur()

    try:
        pipe.set_up(*args)
        exit_code = pipe.execute()

    except SystemExit as err:
        # argparse exits with 0 for --help and --version, 2 on usage errors
        exit_code = EXIT_OK if not err.code else EXIT_INPUT_ERROR

    except Exception as err:
        catch_error(err, log=pipe.log)
        if pipe.run_log is not None:
            pipe.run_log.error_count += 1
        exit_code = EXIT_INPUT_ERROR

    pipe.close()

    return exit_code
