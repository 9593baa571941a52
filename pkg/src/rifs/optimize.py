"""Scalar search primitives: golden-section minimization and monotone bisection."""

from __future__ import annotations

import math
from typing import Callable

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-10,
    max_iter: int = 400,
) -> tuple[float, float]:
    """Minimize a unimodal f on [lo, hi]; returns (argmin, min)."""
    a, b = float(lo), float(hi)
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol * max(1.0, abs(a), abs(b)):
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    if fc <= fd:
        return c, fc
    return d, fd


def bisect_level(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    level: float = 1.0,
    tol: float = 1e-10,
    max_iter: int = 400,
) -> float:
    """Smallest argument with ``f <= level`` for a nonincreasing f.

    Requires ``f(lo) > level >= f(hi)``.  Returns the upper bracket, so for a
    map with a jump the result lands in the closed sublevel set.
    """
    a, b = float(lo), float(hi)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        m = 0.5 * (a + b)
        if f(m) <= level:
            b = m
        else:
            a = m
    return b
