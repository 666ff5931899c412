"""Moments of Chebyshev polynomials against exp(z s) on [0, 2].

For degree ``L`` and parameter ``z`` this module produces

    omega_n(z) = int_0^2 T_n(s-1) exp(z s) ds,
    rho_n(z)   = int_0^2 U_n(s-1) exp(z s) ds,     n = 0..L,

in O(L) work (plus O(|z|) when L exceeds the recurrence threshold) using
three cooperating pieces:

* a forward three-term recurrence, trusted only up to an index ``n0(z)``;
* a tridiagonal solve for the remaining indices, with both boundary values
  known;
* a boundary-free tridiagonal solve far out (index above ``(1+r)|z|``) whose
  middle entry supplies the far boundary value.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _kernels

__all__ = [
    "ExpParam",
    "WeightTable",
    "TridiagSystem",
    "Phase3Params",
    "NearSingular",
    "PositiveRealPartWarning",
    "Z_FLOOR",
    "PIVOT_TOL",
    "SMALL_Z",
    "gamma_n",
    "seed_weights",
    "stability_threshold",
    "run_recurrence",
    "phase1_recurrence",
    "assemble_tridiag",
    "solve_tridiag",
    "phase3_chain_length",
    "phase3_far_coefficient",
    "compute_weights",
    "recurrence_residual",
    "coupling_residual",
]

Z_FLOOR = 1e-8
PIVOT_TOL = 1e-10
MAX_RETRIES = 3
# below this |z| the 1/z factors in the recurrence cancel badly; measured
# crossover against the oracle, both paths agree to ~1e-15 above it
SMALL_Z = 4.0

RECURRENCE = "recurrence"
TRIDIAG = "tridiag"


class NearSingular(ArithmeticError):
    """A Thomas pivot fell below :data:`PIVOT_TOL`."""

    def __init__(self, min_pivot: float, n_lo: int, n_hi: int):
        super().__init__(
            f"pivot {min_pivot:.3e} below {PIVOT_TOL:g} in window ({n_lo}, {n_hi})"
        )
        self.min_pivot = min_pivot
        self.n_lo = n_lo
        self.n_hi = n_hi


class PositiveRealPartWarning(UserWarning):
    """Re z > 0: admissible up to mu0, but the integral grows like e^{2 Re z}."""


@dataclass(frozen=True)
class ExpParam:
    """Validated exponential parameter ``z`` with ``Re z <= mu0`` and ``|z| >= 1e-8``.

    Real parts tiny relative to ``|z|`` are snapped to exactly zero so the
    purely oscillatory branch of the threshold is taken.
    """

    z: complex
    mu0: float = 4.0

    def __post_init__(self):
        z = complex(self.z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise ValueError(f"z must be finite, got {z!r}")
        if abs(z) < Z_FLOOR:
            raise ValueError(f"|z| = {abs(z):.3e} below the floor {Z_FLOOR:g}")
        if z.real != 0.0 and abs(z.real) < 1e-14 * abs(z):
            z = complex(0.0, z.imag)
        if z.real > self.mu0:
            raise ValueError(f"Re z = {z.real:g} exceeds mu0 = {self.mu0:g}")
        if z.real > 0.0:
            warnings.warn(
                f"Re z = {z.real:g} > 0; integrals grow like exp(2 Re z)",
                PositiveRealPartWarning,
                stacklevel=3,
            )
        object.__setattr__(self, "z", z)

    @property
    def sigma(self) -> float:
        return self.z.real

    @property
    def eta(self) -> float:
        return self.z.imag

    @classmethod
    def coerce(cls, z) -> "ExpParam":
        return z if isinstance(z, cls) else cls(z)


@dataclass(frozen=True)
class Phase3Params:
    r: float = 1.0
    eps: float = 2.0**-52

    def __post_init__(self):
        if not self.r > 0:
            raise ValueError("r must be positive")
        if not 0 < self.eps < 1:
            raise ValueError("eps must lie in (0, 1)")


@dataclass(frozen=True)
class WeightTable:
    """omega_0..omega_L and rho_0..rho_L for one (L, z).

    ``phase_of[n]`` records whether index ``n`` came from the forward
    recurrence or the tridiagonal solve. ``n1`` is None when no far
    coefficient was needed.
    """

    L: int
    z: ExpParam
    omega: np.ndarray
    rho: np.ndarray
    n0: int
    n1: int | None
    phase_of: tuple = field(repr=False)


@dataclass(frozen=True)
class TridiagSystem:
    """Scaled form of the recurrence on the window ``(n_lo, n_hi)``.

    Unknowns are rho_{n_lo+1} .. rho_{n_hi}. The matrix is
    ``(2/z) D^{1/2} (I + (z/2) M) D^{1/2}`` with ``D = diag(dscale)`` and
    ``M`` skew-symmetric tridiagonal, ``M[j, j+1] = offdiag[j] = -M[j+1, j]``.
    """

    n_lo: int
    n_hi: int
    dscale: np.ndarray
    offdiag: np.ndarray
    rhs: np.ndarray

    @property
    def size(self) -> int:
        return self.n_hi - self.n_lo

    @property
    def superdiag(self) -> np.ndarray:
        return self.offdiag

    @property
    def subdiag(self) -> np.ndarray:
        return -self.offdiag

    def matvec(self, x: np.ndarray, z: complex) -> np.ndarray:
        """Apply the unscaled recurrence matrix ``A`` to ``x``."""
        x = np.asarray(x, dtype=np.complex128)
        out = (2.0 * self.dscale / z) * x
        out[:-1] += x[1:]
        out[1:] -= x[:-1]
        return out


def gamma_n(n: int, z) -> complex:
    """(e^{2z} - 1)/z for even ``n``, (e^{2z} + 1)/z for odd ``n``."""
    z = ExpParam.coerce(z).z
    g_even, g_odd = _kernels.gamma_pair(z)
    return g_even if n % 2 == 0 else g_odd


def seed_weights(z):
    """Return ``(rho0, rho1, omega0, omega1)`` in closed form."""
    z = ExpParam.coerce(z).z
    rho0, rho1 = _kernels.seeds(z)
    return rho0, rho1, rho0, 0.5 * rho1


def stability_threshold(z) -> int:
    """Last index the forward recurrence is trusted for.

    ``ceil|z| + 1`` on the imaginary axis, ``2 ceil(sqrt|z|) + 1`` otherwise.
    """
    p = ExpParam.coerce(z)
    if p.sigma == 0.0:
        return math.ceil(abs(p.z)) + 1
    return 2 * math.ceil(math.sqrt(abs(p.z))) + 1


def run_recurrence(z: complex, rho0: complex, rho1: complex, n_last: int):
    """Forward recurrence from explicit seeds; returns ``(omega, rho)`` of length n_last+1.

    No threshold is applied, so this is also the unstable reference path.
    """
    z = complex(z)
    n_last = max(int(n_last), 1)
    rho = np.empty(n_last + 1, dtype=np.complex128)
    omega = np.empty(n_last + 1, dtype=np.complex128)
    rho[0], rho[1] = rho0, rho1
    omega[0], omega[1] = rho0, 0.5 * rho1
    g_even, g_odd = _kernels.gamma_pair(z)
    with np.errstate(over="ignore", invalid="ignore"):
        _kernels.recurrence_fill(rho, omega, z, n_last, g_even, g_odd)
    return omega, rho


def phase1_recurrence(z, L0: int) -> WeightTable:
    """Weights 0..L0 from the forward recurrence alone."""
    p = ExpParam.coerce(z)
    if L0 < 1:
        raise ValueError("L0 must be at least 1")
    rho0, rho1 = _kernels.seeds(p.z)
    omega, rho = run_recurrence(p.z, rho0, rho1, L0)
    return WeightTable(
        L=L0,
        z=p,
        omega=omega,
        rho=rho,
        n0=stability_threshold(p),
        n1=None,
        phase_of=(RECURRENCE,) * (L0 + 1),
    )


_ABSENT = None


def assemble_tridiag(z, n_lo: int, n_hi: int, rho_lo=_ABSENT, rho_hi_plus1=_ABSENT) -> TridiagSystem:
    """Build the window system for rho_{n_lo+1} .. rho_{n_hi}.

    Supply both boundary values (rho_{n_lo}, rho_{n_hi+1}) for the exact
    system, or neither for the truncated boundary-free system.
    """
    p = ExpParam.coerce(z)
    if n_hi <= n_lo:
        raise ValueError(f"empty window ({n_lo}, {n_hi})")
    if (rho_lo is None) != (rho_hi_plus1 is None):
        raise ValueError("give both boundary values or neither")
    g_even, g_odd = _kernels.gamma_pair(p.z)
    k = np.arange(n_lo + 1, n_hi + 1)  # recurrence row index
    dscale = (k + 1).astype(float)
    offdiag = 1.0 / np.sqrt(dscale[:-1] * dscale[1:])
    rhs = np.where((k + 1) % 2 == 0, 2.0 * g_even, 2.0 * g_odd).astype(np.complex128)
    if rho_lo is not None:
        rhs[0] += rho_lo
        rhs[-1] -= rho_hi_plus1
    for arr in (dscale, offdiag):
        arr.setflags(write=False)
    return TridiagSystem(n_lo, n_hi, dscale, offdiag, rhs)


def solve_tridiag(sys: TridiagSystem, z) -> np.ndarray:
    """Solve ``A rho = b`` through the scaled skew form and Thomas elimination.

    Raises :class:`NearSingular` if any pivot magnitude drops below
    :data:`PIVOT_TOL`.
    """
    zc = ExpParam.coerce(z).z
    inv_sqrt_d = 1.0 / np.sqrt(sys.dscale)
    c = 0.5 * zc * inv_sqrt_d * sys.rhs
    y, min_piv = _kernels.skew_thomas(np.ascontiguousarray(sys.offdiag), c, zc)
    if min_piv < PIVOT_TOL:
        raise NearSingular(min_piv, sys.n_lo, sys.n_hi)
    return inv_sqrt_d * y


def phase3_chain_length(p: Phase3Params) -> int:
    """Odd window length m = 2 floor(log(3/(eps r)) / log(1+r)) + 1."""
    return 2 * math.floor(math.log(3.0 / (p.eps * p.r)) / math.log1p(p.r)) + 1


def phase3_far_coefficient(z, L: int, p: Phase3Params | None = None):
    """Return ``(n1, rho_{n1+1})`` from the middle of a boundary-free window.

    The window starts at ``m0 = max(floor((1+r)|z|) - 2, L)`` where the
    scaled matrix is a contraction, so dropping the boundary terms only
    perturbs the middle entry by about ``eps``.
    """
    zp = ExpParam.coerce(z)
    p = p or Phase3Params()
    m0 = max(math.floor((1.0 + p.r) * abs(zp.z)) - 2, int(L))
    m = phase3_chain_length(p)
    m1 = m0 + m
    sys = assemble_tridiag(zp, m0, m1)
    rho_win = solve_tridiag(sys, zp)
    n1 = (m1 + m0 - 1) // 2
    return n1, rho_win[(m - 1) // 2]


def _compute_once(zp: ExpParam, L: int, p: Phase3Params, n0: int) -> WeightTable:
    L0 = min(n0, L)
    rho0, rho1 = _kernels.seeds(zp.z)
    omega_1, rho_1 = run_recurrence(zp.z, rho0, rho1, L0)
    if L0 >= L:
        return WeightTable(L, zp, omega_1, rho_1, n0, None, (RECURRENCE,) * (L + 1))

    n1, rho_far = phase3_far_coefficient(zp, L, p)
    sys = assemble_tridiag(zp, n0, n1, rho_1[n0], rho_far)
    rho_win = solve_tridiag(sys, zp)

    rho = np.empty(L + 1, dtype=np.complex128)
    omega = np.empty(L + 1, dtype=np.complex128)
    rho[: n0 + 1] = rho_1
    omega[: n0 + 1] = omega_1
    rho[n0 + 1 :] = rho_win[: L - n0]
    if abs(zp.z) < SMALL_Z:
        # T_n = (U_n - U_{n-2}) / 2 avoids the (n+1)/z amplification
        omega[n0 + 1 :] = 0.5 * (rho[n0 + 1 :] - rho[n0 - 1 : L - 1])
    else:
        g_even, g_odd = _kernels.gamma_pair(zp.z)
        n = np.arange(n0, L)
        g = np.where((n + 1) % 2 == 0, g_even, g_odd)
        omega[n0 + 1 :] = g - (n + 1) * rho[n0:L] / zp.z
    tags = (RECURRENCE,) * (n0 + 1) + (TRIDIAG,) * (L - n0)
    return WeightTable(L, zp, omega, rho, n0, n1, tags)


def compute_weights(z, L: int, p: Phase3Params | None = None, n0: int | None = None) -> WeightTable:
    """Stable omega_0..omega_L and rho_0..rho_L for any admissible ``z``.

    Parameters
    ----------
    z : complex or ExpParam
    L : int
        Highest index, ``L >= 1``.
    p : Phase3Params, optional
        Far-coefficient tuning (defaults r=1, eps=2**-52).
    n0 : int, optional
        Override the recurrence threshold. Used by tests that cross-check the
        two phases on overlapping indices.

    Notes
    -----
    For ``|z| < 4`` every recurrence step divides by a small ``z`` and
    cancels terms of size ``1/|z|``. There the tridiagonal solve starts right
    after the two closed-form seeds (``n0 = 1``) and omega comes from
    ``T_n = (U_n - U_{n-2}) / 2`` instead of the coupling relation.

    If the tridiagonal elimination meets a tiny pivot the threshold is moved
    up by 2 and the solve is retried, at most three times.
    """
    zp = ExpParam.coerce(z)
    if int(L) != L or L < 1:
        raise ValueError(f"L must be a positive integer, got {L!r}")
    L = int(L)
    p = p or Phase3Params()
    if n0 is None:
        n0 = stability_threshold(zp) if abs(zp.z) >= SMALL_Z else 1
    n0 = int(n0)
    if n0 < 1:
        raise ValueError("n0 must be at least 1")
    for attempt in range(MAX_RETRIES + 1):
        try:
            return _compute_once(zp, L, p, n0)
        except NearSingular:
            if attempt == MAX_RETRIES:
                raise
            n0 += 2
    raise AssertionError("unreachable")


def recurrence_residual(table: WeightTable) -> np.ndarray:
    """|-rho_{n-1} + (2n+2)/z rho_n + rho_{n+1} - 2 gamma_{n+1}| for n = 1..L-1."""
    z = table.z.z
    rho = table.rho
    g_even, g_odd = _kernels.gamma_pair(z)
    n = np.arange(1, table.L)
    g = np.where((n + 1) % 2 == 0, g_even, g_odd)
    return np.abs(-rho[:-2] + (2 * n + 2) * rho[1:-1] / z + rho[2:] - 2.0 * g)


def coupling_residual(table: WeightTable) -> np.ndarray:
    """|omega_{n+1} - gamma_{n+1} + (n+1)/z rho_n| for n = 0..L-1."""
    z = table.z.z
    g_even, g_odd = _kernels.gamma_pair(z)
    n = np.arange(table.L)
    g = np.where((n + 1) % 2 == 0, g_even, g_odd)
    return np.abs(table.omega[1:] - g + (n + 1) * table.rho[:-1] / z)
