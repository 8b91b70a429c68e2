"""RUN LOG HANDLING.

This module defines a class for creating and closing the run log.

:Author: CNPSchur developers

"""

import logging
import os
import sys

from modopt.interface.log import close_log, set_up_log

from cnpschur.info import cnpschur_logo, line


class RunLog(object):
    """Run Log Class.

    This class manages the log of a CNPSchur run. With an output directory
    the log is written to ``<output_path>/<log_name>.log``; without one a
    handler-less logger is used so nothing is written to disk.

    Parameters
    ----------
    run_config : RunConfig
        Run configuration
    command : str
        Command name

    """

    def __init__(self, run_config, command):

        self.run_config = run_config
        self.command = command
        self.error_count = 0
        self._file_log = run_config.output_path is not None
        self.log = self._create_log()

    @property
    def log_name(self):
        """Log File Name, without Extension."""
        if not self._file_log:
            return None

        return os.path.join(self.run_config.output_path,
                            self.run_config.log_name)

    def _create_log(self):
        """Create Log.

        Create the logging instance and write the start banner.

        Returns
        -------
        logging.Logger
            Logging instance

        """
        if self._file_log:
            os.makedirs(self.run_config.output_path, exist_ok=True)
            log = set_up_log(self.log_name, verbose=False)
        else:
            log = logging.getLogger('cnpschur')
            if not log.handlers:
                log.addHandler(logging.NullHandler())

        start_text = f'Starting CNPSchur Run: {self.command}'

        log.info(cnpschur_logo())
        log.info(start_text)
        for key, value in self.run_config.to_dict().items():
            log.info(f' - {key}: {value}')
        log.info('')

        if self.run_config.verbose:
            print(start_text, file=sys.stderr)

        return log

    def close(self):
        """Close Log.

        Write the error count and close the logging instance.

        """
        if self.error_count == 1:
            plur = ' was'
        else:
            plur = 's were'

        self.log.info(f'A total of {self.error_count} error{plur} recorded.')
        self.log.info(f'Finishing CNPSchur Run: {self.command}')
        self.log.info(line())

        if self._file_log:
            close_log(self.log, verbose=False)
