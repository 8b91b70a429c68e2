"""CNPSCHUR PIPELINE.

This module contains sub-modules for handling command-line arguments,
configuration, documents, logging and job management.

:Author: CNPSchur developers

"""

__all__ = [
    'args',
    'config',
    'file_io',
    'job_handler',
    'run_log',
]
