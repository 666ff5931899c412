"""Product Clenshaw-Curtis quadrature for int_0^2 f(s) exp(z s) ds.

The weights omega_n(z) = int_0^2 T_n(s-1) e^{zs} ds are generated in O(L)
operations for any complex ``z`` with ``Re z <= 4``: a forward recurrence
while it is stable, then a scaled tridiagonal solve closed off by a single
far coefficient.

>>> import numpy as np
>>> from ccexp import integrate, builtin
>>> r = integrate(builtin("const"), -1.0, 8)
>>> bool(abs(r.value - (1 - np.exp(-2))) < 1e-14)
True
"""
from ._accel import NUMBA_ENABLED
from .cheb_core import ChebCoeffs, ChebGrid, dct1_coeffs, eval_cheb_T, eval_interpolant, make_grid
from .integrands import Integrand, builtin
from .quadrature import RuleResult, convergence_table, integrate, integrate_batch, integrate_coeffs
from .weights import (
    ExpParam,
    NearSingular,
    Phase3Params,
    PositiveRealPartWarning,
    TridiagSystem,
    WeightTable,
    assemble_tridiag,
    compute_weights,
    phase1_recurrence,
    phase3_far_coefficient,
    solve_tridiag,
    stability_threshold,
)

__version__ = "0.1.0"

__all__ = [
    "NUMBA_ENABLED",
    "ChebCoeffs",
    "ChebGrid",
    "dct1_coeffs",
    "eval_cheb_T",
    "eval_interpolant",
    "make_grid",
    "Integrand",
    "builtin",
    "RuleResult",
    "convergence_table",
    "integrate",
    "integrate_batch",
    "integrate_coeffs",
    "ExpParam",
    "NearSingular",
    "Phase3Params",
    "PositiveRealPartWarning",
    "TridiagSystem",
    "WeightTable",
    "assemble_tridiag",
    "compute_weights",
    "phase1_recurrence",
    "phase3_far_coefficient",
    "solve_tridiag",
    "stability_threshold",
]
