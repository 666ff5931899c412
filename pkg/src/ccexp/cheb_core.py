"""Chebyshev nodes on [0, 2], DCT-I coefficients, and series evaluation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import clenshaw_sum

__all__ = [
    "ChebGrid",
    "ChebCoeffs",
    "make_grid",
    "dct1_coeffs",
    "eval_cheb_T",
    "eval_interpolant",
]


@dataclass(frozen=True)
class ChebGrid:
    """Shifted Chebyshev extrema ``1 + cos(l*pi/L)``, l = 0..L (descending)."""

    L: int
    nodes: np.ndarray


@dataclass(frozen=True)
class ChebCoeffs:
    """Coefficients of ``Q_L f(s) = sum'' alpha_l T_l(s - 1)``.

    The double prime means the first and last terms carry weight 1/2.
    """

    L: int
    alpha: np.ndarray

    def halved(self) -> np.ndarray:
        """Coefficients with the end terms already halved."""
        c = np.array(self.alpha, dtype=np.complex128)
        c[0] *= 0.5
        c[-1] *= 0.5
        return c


def make_grid(L: int) -> ChebGrid:
    if int(L) != L or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")
    L = int(L)
    nodes = np.empty(L + 1)
    half = L // 2
    ell = np.arange(half + 1)
    nodes[: half + 1] = 1.0 + np.cos(ell * np.pi / L)
    # mirror: 2 - x is exact for x in [1, 2]
    nodes[L - half :] = (2.0 - nodes[: half + 1])[::-1]
    nodes[0] = 2.0
    nodes[L] = 0.0
    if L % 2 == 0:
        nodes[half] = 1.0
    nodes.setflags(write=False)
    return ChebGrid(L, nodes)


def dct1_coeffs(samples, L: int | None = None) -> ChebCoeffs:
    """Chebyshev coefficients of the interpolant through ``samples``.

    ``samples[j]`` must hold ``f(1 + cos(j*pi/L))``. The DCT-I is computed
    through a length-2L FFT of the even extension, O(L log L).

    Parameters
    ----------
    samples : array_like, shape (L+1,)
        Real or complex samples at the grid of :func:`make_grid`.
    L : int, optional
        Declared degree; checked against ``len(samples) - 1``.
    """
    v = np.asarray(samples)
    if v.ndim != 1 or v.shape[0] < 2:
        raise ValueError("need a 1-D vector of at least 2 samples")
    n = v.shape[0] - 1
    if L is not None and L != n:
        raise ValueError(f"expected {L + 1} samples for L={L}, got {v.shape[0]}")
    ext = np.concatenate([v, v[-2:0:-1]])
    spectrum = np.fft.fft(ext)[: n + 1] / n
    if not np.iscomplexobj(v):
        spectrum = spectrum.real
    return ChebCoeffs(n, spectrum)


def eval_cheb_T(n: int, x: float) -> float:
    """T_n(x) by the three-term recurrence."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if abs(x) > 1.0 + 1e-12:
        raise ValueError(f"|x| must not exceed 1, got {x!r}")
    if n == 0:
        return 1.0
    t_prev, t = 1.0, x
    for _ in range(n - 1):
        t_prev, t = t, 2.0 * x * t - t_prev
    return t


def eval_interpolant(coeffs: ChebCoeffs, s):
    """Evaluate ``sum'' alpha_l T_l(s - 1)`` by Clenshaw's backward recurrence.

    ``s`` may be a scalar or an array; every point must lie in [0, 2].
    Returns real output when the coefficients are real.
    """
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s_arr < 0.0) or np.any(s_arr > 2.0):
        raise ValueError("evaluation points must lie in [0, 2]")
    out = clenshaw_sum(coeffs.halved(), s_arr - 1.0)
    if not np.iscomplexobj(coeffs.alpha):
        out = out.real
    if np.ndim(s) == 0:
        return out[0]
    return out
