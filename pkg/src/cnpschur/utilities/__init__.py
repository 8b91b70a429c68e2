"""CNPSCHUR UTILITIES.

This module contains the numerical constructions: Hermitian linear algebra,
ball geometry, kernels, multiplier expressions, Schur steps, the
interpolation solver and the contractivity checks.

:Author: CNPSchur developers

"""

__all__ = [
    'ball_geometry',
    'contractivity',
    'hermitian_core',
    'kernel_engine',
    'multiplier_expr',
    'schur_algorithm',
    'schur_step',
]
