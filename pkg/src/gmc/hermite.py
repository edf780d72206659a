"""Orthonormal Hermite functions in the unit-variance-free normalization.

The base function is h_0(x) = 2^{1/4} exp(-pi x^2) and the ladder is
A = (d/dx + 2 pi x) / (2 sqrt(pi)), so that the k-th function satisfies the
stable three-term recurrence

    h_{k+1}(x) = (2 sqrt(pi) x h_k(x) - sqrt(k) h_{k-1}(x)) / sqrt(k+1).

For quadrature we work with the Gaussian-free values
hs_k(x) = h_k(x) exp(pi x^2), which obey the same recurrence and stay
polynomial-sized at Gauss-Hermite nodes.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

_TWO_SQRT_PI = 2.0 * math.sqrt(math.pi)


def hermite_scaled(x: np.ndarray, nmax: int) -> np.ndarray:
    """Gaussian-free values hs_k(x) for k = 0..nmax; shape (nmax+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((nmax + 1, x.size))
    out[0] = 2.0 ** 0.25
    if nmax >= 1:
        out[1] = _TWO_SQRT_PI * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = (_TWO_SQRT_PI * x * out[k] - math.sqrt(k) * out[k - 1]) / math.sqrt(k + 1)
    return out


def hermite_functions(x: np.ndarray, nmax: int) -> np.ndarray:
    """Values h_k(x) for k = 0..nmax; shape (nmax+1, len(x))."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return hermite_scaled(x, nmax) * np.exp(-math.pi * x * x)


def hermite_series_value(coeffs: np.ndarray, x) -> np.ndarray | complex:
    """Pointwise sum_k coeffs[k] h_k(x)."""
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    vals = hermite_functions(xs, len(coeffs) - 1)
    out = coeffs @ vals
    return complex(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out


@lru_cache(maxsize=64)
def hermite_at_zero(nmax: int) -> np.ndarray:
    """h_k(0) for k = 0..nmax (zero at odd k)."""
    out = np.zeros(nmax + 1)
    out[0] = 2.0 ** 0.25
    for k in range(1, nmax):
        out[k + 1] = -math.sqrt(k) / math.sqrt(k + 1) * out[k - 1]
    return out


def hermite_at_zero_single(k: int) -> float:
    if k % 2 == 1:
        return 0.0
    m = k // 2
    # |h_{2m}(0)| = 2^{1/4} sqrt((2m)!) / (2^m m!), sign (-1)^m
    log_mag = 0.25 * math.log(2.0) + 0.5 * math.lgamma(2 * m + 1) - m * math.log(2.0) - math.lgamma(m + 1)
    return (-1.0) ** m * math.exp(log_mag)


@lru_cache(maxsize=64)
def gauss_hermite_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Raw Gauss-Hermite nodes/weights for weight exp(-y^2).

    scipy's rule stays stable at large node counts where the numpy one
    overflows in the weight computation.
    """
    from scipy.special import roots_hermite

    y, w = roots_hermite(n)
    return y, w


@lru_cache(maxsize=32)
def gauss_legendre_rule(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on [-1, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def legendre_on_interval(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = gauss_legendre_rule(n)
    return 0.5 * (b - a) * x + 0.5 * (b + a), 0.5 * (b - a) * w
