"""Laplace inversion along a hyperbola for a scalar fractional evolution mode.

The model problem is one spectral mode of

    u'(t) + lam_eig * D_t^{-alpha} u(t) = f(t),   u(0) = u0,

whose Laplace transform gives ``u_hat(z) = E(z) (u0 + f_hat(z))`` with the
scalar resolvent ``E(z) = z**alpha / (z**(1+alpha) + lam_eig)``. Writing
``u(t) = (1/2 pi i) int E(z) g(z, t) dz`` with

    g(z, t) = e^{zt} u0 + int_0^t e^{z(t-r)} f(r) dr
            = e^{zt} u0 + (t/2) int_0^2 f(t (1 - s/2)) e^{(t/2) z s} ds,

the inner integral is exactly the product rule's target with exponent
``(t/2) z``. Along the contour those exponents sweep a wide region of the
complex plane, including a few points with positive real part.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .integrands import Integrand
from .quadrature import integrate_batch
from .weights import Z_FLOOR, PositiveRealPartWarning

__all__ = [
    "ContourSpec",
    "ScalarProblem",
    "resolvent",
    "g_term",
    "invert",
    "tuned_contour",
    "heat_sine_exact",
    "POLE_TOL",
]

POLE_TOL = 1e-12


@dataclass(frozen=True)
class ContourSpec:
    """Truncated, discretised hyperbola ``z(xi) = lam (1 - sin(delta - i xi))``.

    Nodes sit at ``xi_j = j k`` for ``j = -N..N``.
    """

    lam: float
    delta: float
    k: float
    N: int
    alpha: float = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lam must be positive")
        if not 0.0 < self.delta < 0.5 * math.pi:
            raise ValueError("delta must lie in (0, pi/2)")
        if not self.k > 0:
            raise ValueError("step k must be positive")
        if int(self.N) != self.N or self.N < 1:
            raise ValueError("N must be a positive integer")
        if not -1.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (-1, 1)")

    def xi(self) -> np.ndarray:
        return self.k * np.arange(-self.N, self.N + 1)

    def point(self, xi):
        return self.lam * (1.0 - np.sin(self.delta - 1j * np.asarray(xi)))

    def derivative(self, xi):
        return 1j * self.lam * np.cos(self.delta - 1j * np.asarray(xi))

    def nodes(self) -> np.ndarray:
        return self.point(self.xi())

    def derivatives(self) -> np.ndarray:
        return self.derivative(self.xi())


@dataclass(frozen=True)
class ScalarProblem:
    """One mode: eigenvalue ``lam_eig > 0``, initial value, forcing, order.

    ``f`` maps an array of times to an array of (real or complex) values
    and may be called from several threads.
    """

    lam_eig: float
    u0: complex = 1.0
    f: Callable[[np.ndarray], np.ndarray] | None = None
    alpha: float = 0.0

    def __post_init__(self):
        if not self.lam_eig > 0:
            raise ValueError("lam_eig must be positive")
        if not -1.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (-1, 1)")

    def forcing(self, t):
        t = np.asarray(t, dtype=float)
        if self.f is None:
            return np.zeros_like(t)
        return np.asarray(self.f(t))


def resolvent(z: complex, prob: ScalarProblem) -> complex:
    """``z**alpha / (z**(1+alpha) + lam_eig)`` on the principal branch."""
    z = complex(z)
    a = prob.alpha
    za = z ** a if a != 0 else 1.0 + 0j
    denom = z * za + prob.lam_eig
    if abs(denom) < POLE_TOL:
        raise ZeroDivisionError(f"z = {z} is within {POLE_TOL:g} of a resolvent pole")
    return za / denom


def _tilde(prob: ScalarProblem, t: float) -> Integrand:
    """f~_t(s) = f(t (1 - s/2)), s in [0, 2]."""
    return Integrand(lambda s: prob.forcing(t * (1.0 - 0.5 * np.asarray(s))), f"f~[t={t:g}]")


def _small_z_integral(ft: Integrand, w: complex) -> complex:
    from .oracle import integrate_angle

    return integrate_angle(ft, w)


def g_term(z: complex, t: float, prob: ScalarProblem, L: int) -> complex:
    """``e^{zt} u0 + (t/2) I_{L,(t/2) z}(f~_t)`` for a single contour point."""
    return _g_many(np.array([complex(z)]), float(t), prob, L)[0]


def _g_many(zs: np.ndarray, t: float, prob: ScalarProblem, L: int, threads: int = 1) -> np.ndarray:
    if not t > 0:
        raise ValueError("t must be positive")
    ws = 0.5 * t * np.asarray(zs, dtype=np.complex128)
    out = np.exp(np.asarray(zs) * t) * complex(prob.u0)
    if prob.f is None:
        return out
    ft = _tilde(prob, t)
    tiny = np.abs(ws) < Z_FLOOR
    big = np.flatnonzero(~tiny)
    with warnings.catch_warnings():
        # a handful of contour points always lie right of the imaginary axis
        warnings.simplefilter("ignore", PositiveRealPartWarning)
        results = integrate_batch(ft, ws[big], L, threads=threads)
    for idx, res in zip(big, results):
        if isinstance(res, Exception):
            raise res
        out[idx] += 0.5 * t * res.value
    for idx in np.flatnonzero(tiny):
        out[idx] += 0.5 * t * _small_z_integral(ft, complex(ws[idx]))
    return out


def invert(t: float, prob: ScalarProblem, c: ContourSpec, L: int, threads: int = 1) -> complex:
    """U_N(t) = k/(2 pi i) sum_j E(z_j) g(z_j, t) z'_j over the 2N+1 nodes.

    The forcing is sampled once for this ``t``; all contour points share
    those samples.
    """
    zs = c.nodes()
    dz = c.derivatives()
    ev = np.array([resolvent(z, prob) for z in zs])
    g = _g_many(zs, float(t), prob, L, threads=threads)
    return complex(c.k / (2j * math.pi) * np.sum(ev * g * dz))


def tuned_contour(T: float, alpha: float, N: int, k: float | None = None) -> ContourSpec:
    """Hyperbola parameters for a time window ending at ``T``.

    beta = pi/4 + pi/(2(1+alpha)), delta = beta - pi/2,
    r = beta - 0.9 (delta + pi/2), gamma = 1.8 (1+alpha),
    kappa = 1 - sin(delta - r), lam = 2 gamma / (kappa T),
    k = sqrt(4 pi r / gamma) / sqrt(N).

    The step shrinks like ``N**-0.5`` so the rule converges as ``N`` grows.
    Pass ``k`` to impose any other step.
    """
    if not T > 0:
        raise ValueError("T must be positive")
    if not 0.0 <= alpha < 1.0:
        raise ValueError("tuning is defined for 0 <= alpha < 1")
    beta = 0.25 * math.pi + 0.5 * math.pi / (1.0 + alpha)
    delta = -0.25 * math.pi + 0.5 * math.pi / (1.0 + alpha)
    r = beta - 0.9 * (delta + 0.5 * math.pi)
    gam = 1.8 * (1.0 + alpha)
    kappa = 1.0 - math.sin(delta - r)
    lam = 2.0 * gam / (kappa * T)
    c_k = math.sqrt(4.0 * math.pi * r / gam)
    step = c_k / math.sqrt(N) if k is None else float(k)
    return ContourSpec(lam, delta, step, int(N), alpha)


def heat_sine_exact(t: float, lam_eig: float = 1.0, u0: float = 1.0) -> float:
    """Exact u(t) for u' + lam u = sin t, u(0) = u0 (the alpha = 0 mode)."""
    a = lam_eig
    part = (a * math.sin(t) - math.cos(t) + math.exp(-a * t)) / (1.0 + a * a)
    return u0 * math.exp(-a * t) + part
