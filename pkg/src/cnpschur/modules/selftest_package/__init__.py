"""SELFTEST PACKAGE.

This package contains the randomized identity suite run by the selftest
command.

:Author: CNPSchur developers

"""

__all__ = ['identity_suite']
