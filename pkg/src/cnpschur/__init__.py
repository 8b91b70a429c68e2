"""CNPSCHUR PACKAGE.

CNPSchur constructs and verifies Schur-class multipliers of complete
Nevanlinna-Pick kernels on the unit ball.

:Author: CNPSchur developers

"""

__all__ = ['errors', 'modules', 'pipeline', 'utilities']

from importlib.metadata import metadata, version

__version__ = version('cnpschur')
__about__ = metadata('cnpschur').get('Summary')
