"""Polylogarithms and the extended Rogers L-function on the real line.

``L(x) = Li2(x) + 1/2 log|x| log(1 - x)`` for ``x <= 1``.  Every argument
is reduced into ``|x| <= 1/2``, where the power series converges
geometrically, by reflection, inversion and Landen's transformation.
"""
from __future__ import annotations

import functools
import math

import numpy as np

from ._backend import kernels
from .errors import DomainError

PI2 = math.pi * math.pi
ZETA2 = PI2 / 6.0

__all__ = [
    "polylog",
    "li2",
    "rogers_l",
    "rogers_l_array",
    "rogers_l_infinity",
    "ZETA2",
]


def _check_real_le_one(x: float, name: str) -> float:
    x = float(x)
    if math.isnan(x) or x > 1.0:
        raise DomainError(f"{name} is defined for real x <= 1, got {x!r}")
    return x


def li2(x: float) -> float:
    """Dilogarithm ``Li2(x)`` for real ``x <= 1``.

    Accurate to about 1e-15 absolute on ``[-1, 1]``; for large negative
    ``x`` the error grows with ``log(-x)**2``.

    Raises
    ------
    DomainError
        If ``x > 1`` (the value is complex there).
    """
    x = _check_real_le_one(x, "li2")
    if math.isinf(x):
        raise DomainError("li2 diverges as x -> -inf")
    return kernels.li2(x)


def rogers_l(x: float) -> float:
    """Extended Rogers L-function for real ``x <= 1``.

    ``rogers_l(0) == 0`` and ``rogers_l(1) == pi**2/6`` exactly;
    ``rogers_l(-inf)`` returns the limit ``-pi**2/6``.
    """
    return kernels.rogers_l(_check_real_le_one(x, "rogers_l"))


def rogers_l_array(xs) -> np.ndarray:
    """Vectorised :func:`rogers_l`."""
    arr = np.asarray(xs, dtype=np.float64)
    if np.isnan(arr).any() or (arr > 1.0).any():
        raise DomainError("rogers_l is defined for real x <= 1")
    return kernels.rogers_l_array(arr)


def rogers_l_infinity() -> float:
    """Limit of ``L(x)`` as ``x -> -inf``, equal to ``-pi**2/6``."""
    return -ZETA2


def _eta(k: int) -> float:
    # Dirichlet eta(k) = (1 - 2^(1-k)) zeta(k), k >= 2
    return (1.0 - 2.0 ** (1 - k)) * _zeta(k)


@functools.lru_cache(maxsize=None)
def _zeta(k: int) -> float:
    """Riemann zeta at integer ``k``; ``k == 1`` is the pole."""
    if k == 1:
        raise DomainError("zeta has a pole at 1")
    if k == 0:
        return -0.5
    if k < 0:
        n = 1 - k
        if n % 2 == 1:
            return 0.0
        return -_bernoulli(n) / n
    if k == 2:
        return ZETA2
    if k >= 60:
        return 1.0
    # zeta(k) = eta(k) / (1 - 2^(1-k)); alternating series with Euler-Borwein weights
    n = 64
    d = [0.0] * (n + 1)
    acc = 0.0
    for i in range(n + 1):
        acc += math.factorial(n + i - 1) * 4.0 ** i / (math.factorial(n - i) * math.factorial(2 * i)) * n
        d[i] = acc
    s = 0.0
    for j in range(n):
        s += (-1) ** j * (d[n] - d[j]) / (j + 1) ** k
    eta = s / d[n]
    return eta / (1.0 - 2.0 ** (1 - k))


def _bernoulli(n: int) -> float:
    from fractions import Fraction

    b = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        b[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            b[j - 1] = j * (b[j - 1] - b[j])
    return float(b[0]) if n != 1 else 0.5


def _polylog_series(k: int, x: float) -> float:
    total = 0.0
    xn = 1.0
    n = 0
    while True:
        n += 1
        xn *= x
        term = xn / n ** k
        total += term
        if abs(term) <= 1e-17 * max(abs(total), 1e-300) or n > 200000:
            return total


def _polylog_near_one(k: int, x: float) -> float:
    # Expansion in mu = log(x) about 1, valid for |mu| < 2 pi, k >= 3
    mu = math.log(x)
    harmonic = math.fsum(1.0 / j for j in range(1, k))
    total = 0.0
    power = 1.0
    fact = 1.0
    for m in range(0, 80):
        if m > 0:
            power *= mu
            fact *= m
        if m == k - 1:
            tail = harmonic - math.log(-mu) if mu < 0.0 else 0.0
            term = power / fact * tail
        else:
            term = _zeta(k - m) * power / fact
        total += term
        # zeta vanishes at negative even integers, so a zero term says nothing
        if m > k + 2 and term != 0.0 and abs(term) < 1e-18 * abs(total):
            break
    return total


def polylog(k: int, x: float) -> float:
    """``Li_k(x) = sum_{n >= 1} x**n / n**k`` for real ``x`` in ``[-1, 1]``.

    ``k = 0`` follows the series from ``n = 1``, i.e. ``x / (1 - x)``.
    ``x = 1`` is allowed for ``k >= 2`` and ``x = -1`` for ``k >= 1``.
    """
    if isinstance(k, bool) or int(k) != k or k < 0:
        raise DomainError(f"polylog order must be a non-negative integer, got {k!r}")
    k = int(k)
    x = float(x)
    if math.isnan(x) or not -1.0 <= x <= 1.0:
        raise DomainError(f"polylog is evaluated on [-1, 1], got {x!r}")
    if x == 1.0 and k < 2:
        raise DomainError(f"Li_{k}(1) diverges")
    if x == -1.0 and k < 1:
        raise DomainError("Li_0(-1) is not defined by a convergent series")
    if k == 0:
        return x / (1.0 - x)
    if k == 1:
        return -math.log1p(-x)
    if k == 2:
        return kernels.li2(x)
    if x == 1.0:
        return _zeta(k)
    if x == -1.0:
        return -_eta(k)
    if abs(x) <= 0.5:
        return _polylog_series(k, x)
    if x > 0.0:
        return _polylog_near_one(k, x)
    # Li_k(x) + Li_k(-x) = 2^(1-k) Li_k(x^2)
    return 2.0 ** (1 - k) * polylog(k, x * x) - polylog(k, -x)
