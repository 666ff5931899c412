"""Slow, independent reference computations.

Nothing in here calls the weight engine; these routines exist to be compared
against it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .cheb_core import ChebCoeffs
from .weights import TridiagSystem

__all__ = [
    "PanelRule",
    "gauss_legendre",
    "integrate_full",
    "integrate_angle",
    "integrate_weight",
    "weight_moments",
    "naive_dct1",
    "dense_solve",
    "phase1_unbounded",
    "default_panels",
]


@lru_cache(maxsize=16)
def gauss_legendre(order: int = 16):
    """Gauss-Legendre nodes and weights on [-1, 1] by Newton's method."""
    n = int(order)
    k = np.arange(1, n + 1)
    x = np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(100):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(2, n + 1):
            p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
        dp = n * (x * p1 - p0) / (x * x - 1.0)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(2, n + 1):
        p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order_idx = np.argsort(x)
    x, w = x[order_idx], w[order_idx]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def default_panels(z, degree: int = 0) -> int:
    """Panel count that keeps >= 4 points per local wavelength."""
    return max(16, math.ceil((degree + abs(z)) / 4))


@dataclass(frozen=True)
class PanelRule:
    """Composite Gauss-Legendre rule on [0, 2].

    With ``grading > 1`` the breakpoints ``2 - 2 (1 - k/P)**grading``
    accumulate at s = 2.
    """

    panels: int = 16
    points_per_panel: int = 16
    grading: float = 1.0

    def __post_init__(self):
        if self.panels < 1 or self.points_per_panel < 1:
            raise ValueError("panels and points_per_panel must be positive")
        if self.grading < 1.0:
            raise ValueError("grading must be >= 1")

    def breakpoints(self) -> np.ndarray:
        u = np.arange(self.panels + 1) / self.panels
        if self.grading == 1.0:
            b = 2.0 * u
        else:
            b = 2.0 - 2.0 * (1.0 - u) ** self.grading
        b[0], b[-1] = 0.0, 2.0
        return b

    def nodes(self, a: float = None, b: float = None):
        """Quadrature nodes and weights over [0, 2] (or the given [a, b] uniformly)."""
        x, w = gauss_legendre(self.points_per_panel)
        if a is None:
            br = self.breakpoints()
        else:
            br = np.linspace(a, b, self.panels + 1)
        left, right = br[:-1, None], br[1:, None]
        half = 0.5 * (right - left)
        s = (left + half * (x[None, :] + 1.0)).ravel()
        ws = (half * w[None, :]).ravel()
        return s, ws


def integrate_full(f, z: complex, rule: PanelRule | None = None) -> complex:
    """Composite Gauss-Legendre value of int_0^2 f(s) exp(z s) ds.

    ``f`` is called once with the array of all nodes. When ``rule`` is
    omitted the panel count follows :func:`default_panels`.
    """
    rule = rule or PanelRule(default_panels(z))
    s, ws = rule.nodes()
    fe = getattr(f, "eval", f)
    vals = np.asarray(fe(s), dtype=np.complex128) * np.exp(complex(z) * s)
    return complex(np.sum(ws * vals))


def integrate_angle(f, z: complex, rule: PanelRule | None = None) -> complex:
    """int_0^2 f(s) e^{zs} ds computed as int_0^pi f(1 + cos t) e^{z(1 + cos t)} sin t dt.

    Algebraic endpoint factors such as ``(2 - s)**a`` turn into powers of
    ``sin(t/2)``, so the Gauss-Legendre panels see a much smoother integrand
    than in the ``s`` variable.
    """
    z = complex(z)
    panels = rule.panels if rule else max(16, math.ceil(abs(z) / 2))
    points = rule.points_per_panel if rule else 16
    theta, wts = _theta_nodes(panels, points)
    # 2 cos^2(t/2) and 2 sin^2(t/2) keep s and 2 - s accurate near both ends
    s = 2.0 * np.cos(0.5 * theta) ** 2
    fe = getattr(f, "eval", f)
    vals = np.asarray(fe(s), dtype=np.complex128) * np.exp(z * s) * np.sin(theta)
    return complex(np.sum(wts * vals))


def _theta_nodes(panels: int, points: int):
    return PanelRule(panels, points).nodes(0.0, math.pi)


def weight_moments(nmax: int, z: complex, rule: PanelRule | None = None):
    """All brute-force moments ``(omega_0..omega_nmax, rho_0..rho_nmax)``.

    Integrates in the angle variable ``s = 1 + cos(t)``, where T_n and U_n
    become single trigonometric modes and no endpoint clustering occurs.
    """
    panels = rule.panels if rule else max(16, math.ceil((nmax + abs(z)) / 2))
    points = rule.points_per_panel if rule else 16
    theta, wts = _theta_nodes(panels, points)
    return _kernels.theta_moments(int(nmax), complex(z), theta, wts)


def integrate_weight(n: int, z: complex, kind: str = "T", rule: PanelRule | None = None) -> complex:
    """Brute-force omega_n(z) (``kind='T'``) or rho_n(z) (``kind='U'``)."""
    kind = kind.upper()
    if kind not in ("T", "U"):
        raise ValueError("kind must be 'T' or 'U'")
    panels = rule.panels if rule else max(16, math.ceil((n + abs(z)) / 2))
    points = rule.points_per_panel if rule else 16
    theta, wts = _theta_nodes(panels, points)
    s = 2.0 * np.cos(0.5 * theta) ** 2
    ez = np.exp(complex(z) * s)
    if kind == "T":
        vals = np.cos(n * theta) * np.sin(theta) * ez
    else:
        vals = np.sin((n + 1) * theta) * ez
    return complex(np.sum(wts * vals))


def naive_dct1(samples) -> ChebCoeffs:
    """Direct O(L^2) evaluation of alpha_l = (2/L) sum'' cos(j l pi / L) f_j."""
    v = np.asarray(samples)
    if v.ndim != 1 or v.shape[0] < 2:
        raise ValueError("need at least 2 samples")
    L = v.shape[0] - 1
    w = v.astype(np.complex128 if np.iscomplexobj(v) else float)
    w = w.copy()
    w[0] *= 0.5
    w[-1] *= 0.5
    alpha = np.empty(L + 1, dtype=w.dtype)
    j = np.arange(L + 1)
    for ell in range(L + 1):
        # reduce j*ell mod 2L before scaling so the angle stays exact
        phase = (j * ell) % (2 * L)
        alpha[ell] = (2.0 / L) * np.sum(np.cos(phase * np.pi / L) * w)
    return ChebCoeffs(L, alpha)


def dense_solve(sys: TridiagSystem, z: complex) -> np.ndarray:
    """Materialise ``(2/z) D^{1/2} (I + (z/2) M) D^{1/2}`` and solve densely.

    Uses LAPACK's partially pivoted LU through :func:`numpy.linalg.solve`.
    """
    n = sys.size
    if n > 4096:
        raise ValueError("dense oracle limited to 4096 unknowns")
    z = complex(z)
    sq = np.sqrt(sys.dscale)
    inner = np.eye(n, dtype=np.complex128)
    idx = np.arange(n - 1)
    inner[idx, idx + 1] = 0.5 * z * sys.offdiag
    inner[idx + 1, idx] = -0.5 * z * sys.offdiag
    A = (2.0 / z) * (sq[:, None] * inner * sq[None, :])
    return np.linalg.solve(A, sys.rhs)


def phase1_unbounded(z: complex, L: int) -> np.ndarray:
    """rho_0..rho_L from the raw forward recurrence with no threshold.

    Once an entry overflows, it and every later entry is reported as +inf.
    """
    z = complex(z)
    rho0, rho1 = _kernels.seeds(z)
    rho = np.empty(L + 1, dtype=np.complex128)
    rho[0], rho[1] = rho0, rho1
    g_even, g_odd = _kernels.gamma_pair(z)
    with np.errstate(over="ignore", invalid="ignore"):
        for n in range(1, L):
            g = g_even if (n + 1) % 2 == 0 else g_odd
            rho[n + 1] = rho[n - 1] - (2 * n + 2) * rho[n] / z + 2.0 * g
    bad = ~np.isfinite(rho)
    if bad.any():
        rho[np.argmax(bad):] = np.inf
    return rho[: L + 1]
