"""Builtin integrands, addressable by name from the command line.

Names take an optional ``:parameter`` suffix::

    const            f = 1
    const:2.5        f = 2.5
    monomial:3       f = s**3
    chebyshev:5      f = T_5(s - 1)
    legendre:32      f = P_32(s - 1)
    smooth-j         f = cos(5 pi s) / (4 + sin(4 pi s))
    alpha:0.5        f = (2 (2 - s))**0.5        (singular at s = 2 only)
    alpha-both:0.5   f = (s (2 - s))**0.5        (singular at both ends)

``alpha-both`` has the closed form
sqrt(pi) Gamma(a+1) (2/z)**(a+1/2) I_{a+1/2}(z) e^z for the full integral.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["Integrand", "builtin", "BUILTIN_NAMES", "legendre", "chebyshev_T"]


@dataclass(frozen=True)
class Integrand:
    """A function on [0, 2] plus a label.

    ``eval`` receives a float array and must return an array of the same
    shape. It may be called from several threads at once.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    label: str = "f"

    def __call__(self, s):
        return self.eval(np.asarray(s, dtype=float))


def legendre(n: int, x):
    """P_n(x) via (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p


def chebyshev_T(n: int, x):
    x = np.asarray(x, dtype=float)
    t_prev = np.ones_like(x)
    if n == 0:
        return t_prev
    t = x.copy()
    for _ in range(n - 1):
        t_prev, t = t, 2.0 * x * t - t_prev
    return t


def _const(c: float) -> Integrand:
    return Integrand(lambda s: np.full(np.shape(s), c, dtype=float), f"const:{c:g}")


def _smooth_j(s):
    return np.cos(5 * np.pi * s) / (4.0 + np.sin(4 * np.pi * s))


def _alpha_singular(alpha: float, both: bool = False) -> Integrand:
    if alpha <= 0:
        raise ValueError("alpha must be positive (the integrand must stay bounded)")

    if both:
        def f(s):
            s = np.asarray(s, dtype=float)
            return np.maximum(s * (2.0 - s), 0.0) ** alpha

        return Integrand(f, f"alpha-both:{alpha:g}")

    def f(s):
        return (2.0 * np.maximum(2.0 - s, 0.0)) ** alpha

    return Integrand(f, f"alpha:{alpha:g}")


BUILTIN_NAMES = ("const", "monomial", "chebyshev", "legendre", "smooth-j", "alpha", "alpha-both")


def builtin(name: str) -> Integrand:
    """Look up a builtin integrand by ``name[:param]``."""
    head, _, arg = name.partition(":")
    head = head.strip().lower()
    try:
        if head == "const":
            return _const(float(arg) if arg else 1.0)
        if head == "monomial":
            k = int(arg)
            return Integrand(lambda s: np.asarray(s, dtype=float) ** k, f"monomial:{k}")
        if head == "chebyshev":
            d = int(arg)
            return Integrand(lambda s: chebyshev_T(d, np.asarray(s) - 1.0), f"chebyshev:{d}")
        if head == "legendre":
            n = int(arg)
            return Integrand(lambda s: legendre(n, np.asarray(s) - 1.0), f"legendre:{n}")
        if head == "smooth-j":
            return Integrand(_smooth_j, "smooth-j")
        if head == "alpha":
            return _alpha_singular(float(arg) if arg else 0.5)
        if head == "alpha-both":
            return _alpha_singular(float(arg) if arg else 0.5, both=True)
    except ValueError as exc:
        raise ValueError(f"bad parameter in integrand {name!r}: {exc}") from None
    raise ValueError(f"unknown integrand {name!r}; choose from {', '.join(BUILTIN_NAMES)}")
