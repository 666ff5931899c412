"""Hot loops: forward recurrence, skew tridiagonal elimination, moment oracle.

Everything here takes and returns plain arrays/scalars so the same source runs
under numba and under the interpreter.
"""
import math

import numpy as np

from ._accel import kernel


@kernel
def expm1_c(w):
    """exp(w) - 1 for complex ``w`` without cancellation near zero."""
    if abs(w) < 0.5:
        term = w
        acc = w
        for k in range(2, 30):
            term = term * w / k
            acc += term
            if abs(term) <= 1e-17 * abs(acc):
                break
        return acc
    return np.exp(w) - 1.0


@kernel
def gamma_pair(z):
    """Return (gamma_even, gamma_odd) = ((e^{2z}-1)/z, (e^{2z}+1)/z)."""
    em1 = expm1_c(2.0 * z)
    return em1 / z, (em1 + 2.0) / z


@kernel
def seeds(z):
    """rho_0(z) and rho_1(z), series-evaluated for small |z|."""
    rho0 = expm1_c(2.0 * z) / z
    if abs(z) < 0.5:
        # rho_1 = 4 e^z sum_{k>=1} 2k z^{2k-1} / (2k+1)!
        z2 = z * z
        power = z + 0j
        fact = 6.0
        acc = 2.0 * power / fact
        for k in range(2, 30):
            power = power * z2
            fact = fact * (2 * k) * (2 * k + 1)
            term = 2.0 * k * power / fact
            acc += term
            if abs(term) <= 1e-17 * abs(acc):
                break
        rho1 = 4.0 * np.exp(z) * acc
    else:
        rho1 = 2.0 * (z + np.exp(2.0 * z) * (z - 1.0) + 1.0) / (z * z)
    return rho0, rho1


@kernel
def recurrence_fill(rho, omega, z, n_last, g_even, g_odd):
    """Forward recurrence for indices 2..n_last; rho[0:2], omega[0:2] preset.

    rho_{n+1} = rho_{n-1} - (2n+2)/z rho_n + 2 gamma_{n+1}
    omega_{n+1} = gamma_{n+1} - (n+1)/z rho_n
    """
    for n in range(1, n_last):
        g = g_even if (n + 1) % 2 == 0 else g_odd
        omega[n + 1] = g - (n + 1) * rho[n] / z
        rho[n + 1] = rho[n - 1] - (2 * n + 2) * rho[n] / z + 2.0 * g


@kernel
def skew_thomas(offdiag, c, z):
    """Solve (I + (z/2) M) y = c, M skew tridiagonal with M[j, j+1] = offdiag[j].

    No pivoting. Returns ``(y, min_abs_pivot)``.
    """
    n = c.shape[0]
    y = np.empty(n, dtype=np.complex128)
    cp = np.empty(n, dtype=np.complex128)
    half = 0.5 * z
    piv = 1.0 + 0j
    min_piv = 1.0
    if n == 1:
        y[0] = c[0]
        return y, min_piv
    cp[0] = half * offdiag[0]
    y[0] = c[0]
    for j in range(1, n):
        low = -half * offdiag[j - 1]
        piv = 1.0 - low * cp[j - 1]
        ap = abs(piv)
        if ap < min_piv:
            min_piv = ap
        if j < n - 1:
            cp[j] = half * offdiag[j] / piv
        y[j] = (c[j] - low * y[j - 1]) / piv
    for j in range(n - 2, -1, -1):
        y[j] = y[j] - cp[j] * y[j + 1]
    return y, min_piv


@kernel
def theta_moments(nmax, z, theta, wts):
    """Brute-force moments omega_n, rho_n (n = 0..nmax) in the angle variable.

    omega_n = int_0^pi cos(n t) e^{z s(t)} sin(t) dt,
    rho_n   = int_0^pi sin((n+1) t) e^{z s(t)} dt,  s(t) = 2 cos^2(t/2).

    Accumulation is compensated (Kahan) since the node count reaches 1e5-1e6.
    """
    omega = np.zeros(nmax + 1, dtype=np.complex128)
    rho = np.zeros(nmax + 1, dtype=np.complex128)
    comp_o = np.zeros(nmax + 1, dtype=np.complex128)
    comp_r = np.zeros(nmax + 1, dtype=np.complex128)
    rot = 1.0 + 0j
    step = 1.0 + 0j
    for i in range(theta.shape[0]):
        t = theta[i]
        ch = math.cos(0.5 * t)
        s = 2.0 * ch * ch
        base = wts[i] * np.exp(z * s)
        st = math.sin(t)
        for n in range(nmax + 1):
            # exact angle every 32 steps bounds rotation drift
            if n % 32 == 0:
                rot = complex(math.cos(n * t), math.sin(n * t))
                step = complex(math.cos(t), math.sin(t))
            term = base * st * rot.real - comp_o[n]
            acc = omega[n] + term
            comp_o[n] = (acc - omega[n]) - term
            omega[n] = acc
            rot_next = rot * step
            term = base * rot_next.imag - comp_r[n]
            acc = rho[n] + term
            comp_r[n] = (acc - rho[n]) - term
            rho[n] = acc
            rot = rot_next
    return omega, rho


@kernel
def clenshaw_sum(c, x):
    """sum_k c[k] T_k(x) for an array of points ``x`` (plain sum, no halving)."""
    out = np.empty(x.shape[0], dtype=np.complex128)
    n = c.shape[0]
    for i in range(x.shape[0]):
        xi = x[i]
        b1 = 0j
        b2 = 0j
        for k in range(n - 1, 0, -1):
            b0 = c[k] + 2.0 * xi * b1 - b2
            b2 = b1
            b1 = b0
        out[i] = c[0] + xi * b1 - b2
    return out
