"""Product Clenshaw-Curtis rule for int_0^2 f(s) exp(z s) ds."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .cheb_core import ChebCoeffs, dct1_coeffs, make_grid
from .integrands import Integrand
from .weights import Z_FLOOR, ExpParam, Phase3Params, compute_weights

__all__ = ["RuleResult", "integrate", "integrate_coeffs", "integrate_batch", "convergence_table"]


@dataclass(frozen=True)
class RuleResult:
    """Value of the rule plus ``|alpha_{L-1}| + |alpha_L|``.

    The coefficient tail is a heuristic size indicator for the interpolation
    error, not a bound.
    """

    value: complex
    L: int
    z: ExpParam
    coeff_tail: float


def _sample(f, L: int) -> ChebCoeffs:
    grid = make_grid(L)
    fe = getattr(f, "eval", f)
    vals = np.asarray(fe(grid.nodes))
    if vals.shape != grid.nodes.shape:
        raise ValueError("integrand must return one value per node")
    return dct1_coeffs(vals, L)


def integrate_coeffs(coeffs: ChebCoeffs, z, p: Phase3Params | None = None) -> RuleResult:
    """Apply the rule to precomputed Chebyshev coefficients."""
    zp = ExpParam.coerce(z)
    table = compute_weights(zp, coeffs.L, p)
    value = complex(np.dot(coeffs.halved(), table.omega))
    tail = float(abs(coeffs.alpha[-2]) + abs(coeffs.alpha[-1]))
    return RuleResult(value, coeffs.L, zp, tail)


def integrate(f: Integrand, z, L: int, p: Phase3Params | None = None) -> RuleResult:
    """I_{L,z}(f) = sum'' alpha_l(f) omega_l(z) with L+1 Chebyshev samples of ``f``.

    For ``|z|`` below the engine floor the value comes from the angle-variable
    Gauss-Legendre reference integrator instead, and ``z`` is kept as a
    plain complex number in the result.
    """
    coeffs = _sample(f, L)
    if isinstance(z, ExpParam) or abs(complex(z)) >= Z_FLOOR:
        return integrate_coeffs(coeffs, z, p)
    from .oracle import integrate_angle

    tail = float(abs(coeffs.alpha[-2]) + abs(coeffs.alpha[-1]))
    return RuleResult(integrate_angle(f, complex(z)), coeffs.L, complex(z), tail)


def integrate_batch(f: Integrand, zs, L: int, p: Phase3Params | None = None, threads: int = 1):
    """Evaluate the rule at many ``z`` from a single set of L+1 samples.

    Returns a list aligned with ``zs``; an entry whose ``z`` fails (bad
    parameter, engine failure) holds the exception instead of a result.
    """
    coeffs = _sample(f, L)

    def one(z):
        try:
            return integrate_coeffs(coeffs, z, p)
        except (ValueError, ArithmeticError) as exc:
            return exc

    zs = list(zs)
    if threads and threads > 1 and len(zs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(one, zs))
    return [one(z) for z in zs]


def convergence_table(f: Integrand, zs, Ls, L_ref: int, threads: int = 1) -> np.ndarray:
    """Self-convergence errors ``|I_{L_i, z_j} - I_{L_ref, z_j}|``, shape (len(Ls), len(zs))."""
    Ls = [int(L) for L in Ls]
    if L_ref <= max(Ls):
        raise ValueError("L_ref must exceed every L in the table")
    ref = integrate_batch(f, zs, L_ref, threads=threads)
    out = np.empty((len(Ls), len(ref)))
    for i, L in enumerate(Ls):
        row = integrate_batch(f, zs, L, threads=threads)
        for j, (a, b) in enumerate(zip(row, ref)):
            for r in (a, b):
                if isinstance(r, Exception):
                    raise r
            out[i, j] = abs(a.value - b.value)
    return out
