#! /usr/bin/env python

"""CNPSCHUR RUN SCRIPT

This script runs a CNPSchur command.

:Author: CNPSchur developers

"""

from sys import exit

from cnpschur.run import run


def main(args=None):

    return run(args)


if __name__ == "__main__":
    exit(main())
