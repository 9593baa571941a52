"""Rearrangement layer: distribution function, decreasing rearrangement,
maximal function, Hardy-Littlewood-Polya domination, equimeasurability and
measure-preserving transport onto the rearrangement.

The maximal function of a step function is exactly representable: on each
interval between breakpoints of ``x*`` it has the form ``B + A/t`` (``B`` the
local level, ``A`` the accumulated integral offset), which makes domination
checks exact rather than sampled.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .step import MERGE_TOL, StepFunction


def distribution(x: StepFunction, lam: float) -> float:
    """Measure of ``{ |x| > lam }``; nonincreasing and right-continuous in lam."""
    if lam < 0:
        raise SchemaError("distribution requires lam >= 0")
    return sum(t1 - t0 for t0, t1, v in x.pieces if abs(v) > lam)


def rearrange(x: StepFunction) -> StepFunction:
    """Decreasing rearrangement x*: nonincreasing, nonnegative, left-packed.

    Ties between equal values are broken by source order; the result does not
    depend on the tie-break because only values and lengths matter.
    """
    nonzero = [(t0, t1, abs(v)) for t0, t1, v in x.pieces if v != 0.0]
    nonzero.sort(key=lambda p: (-p[2], p[0]))
    out = []
    cursor = 0.0
    for t0, t1, v in nonzero:
        length = t1 - t0
        out.append((cursor, cursor + length, v))
        cursor += length
    return StepFunction.make(out, x.alpha)


@dataclass(frozen=True)
class MaximalCurve:
    """Exact representation of ``x**(t) = (1/t) * integral_0^t x*``.

    ``breakpoints = (0, s_1, ..., s_m)``; ``coeffs[k] = (A_k, B_k)`` gives
    ``x**(t) = B_k + A_k / t`` on ``(s_k, s_{k+1})``, the last entry covering
    ``(s_m, inf)`` with ``B = 0``.  The curve is nonincreasing, continuous,
    and sits above ``x*`` pointwise.
    """

    breakpoints: tuple[float, ...]
    coeffs: tuple[tuple[float, float], ...]

    @property
    def value_at_zero(self) -> float:
        """Limit of x** as t -> 0+ (equals the top level of x*)."""
        return self.coeffs[0][1]

    @property
    def total_integral(self) -> float:
        """Integral of x* over the whole domain."""
        return self.coeffs[-1][0]

    def eval(self, t: float) -> float:
        if t <= 0:
            raise SchemaError("x** is defined for t > 0")
        k = bisect_left(self.breakpoints, t) - 1
        k = min(max(k, 0), len(self.coeffs) - 1)
        a, b = self.coeffs[k]
        return b + a / t

    def eval_many(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        ks = np.clip(np.searchsorted(self.breakpoints, ts, side="left") - 1, 0, len(self.coeffs) - 1)
        arr = np.asarray(self.coeffs, dtype=float)
        return arr[ks, 1] + arr[ks, 0] / ts


def maximal_curve(x: StepFunction) -> MaximalCurve:
    star = rearrange(x)
    if star.is_zero:
        return MaximalCurve((0.0,), ((0.0, 0.0),))
    breakpoints = [0.0]
    coeffs = []
    acc = 0.0  # integral of x* up to the current breakpoint
    for t0, t1, v in star.pieces:
        coeffs.append((acc - v * t0, v))
        acc += v * (t1 - t0)
        breakpoints.append(t1)
    coeffs.append((acc, 0.0))
    return MaximalCurve(tuple(breakpoints), tuple(coeffs))


def hlp_dominates(x: StepFunction, y: StepFunction, tol: float | None = None) -> bool:
    """Hardy-Littlewood-Polya relation ``x < y``: x**(t) <= y**(t) + tol for all t > 0.

    On each interval of the common breakpoint refinement the difference of the
    two curves is ``(B1-B2) + (A1-A2)/t``, monotone in t, so checking the
    refinement endpoints together with the t -> 0+ and t -> inf limits is
    exact.  Default tol is 1e-12 scaled by max(1, sup y**).
    """
    cx, cy = maximal_curve(x), maximal_curve(y)
    if tol is None:
        tol = 1e-12 * max(1.0, cy.value_at_zero)
    if tol < 0:
        raise SchemaError("tol must be >= 0")
    if cx.value_at_zero > cy.value_at_zero + tol:  # limit at t -> 0+
        return False
    points = sorted({t for t in cx.breakpoints + cy.breakpoints if t > 0.0})
    for t in points:
        if cx.eval(t) > cy.eval(t) + tol:
            return False
    # t -> inf: the difference tends to 0, dominated by tol >= 0.
    return True


def equimeasurable(x: StepFunction, y: StepFunction) -> bool:
    """True iff x and y have identical distribution (canonical x* equal)."""
    return rearrange(x).approx_equal(rearrange(y))


@dataclass(frozen=True)
class TransportMap:
    """Measure-preserving map from supp(x) onto supp(x*), interval by interval.

    ``pairs`` lists ``((s0, s1), (d0, d1))`` with equal lengths: the affine
    increasing map of each source interval onto its target.
    """

    alpha: float
    pairs: tuple[tuple[tuple[float, float], tuple[float, float]], ...]

    @property
    def total_length(self) -> float:
        return sum(s1 - s0 for (s0, s1), _ in self.pairs)


def ryff_transport(x: StepFunction) -> TransportMap:
    """Transport sigma with ``x* o sigma = |x|`` a.e. on supp(x).

    The zero function has empty support and yields the empty map.
    """
    nonzero = [(t0, t1, abs(v)) for t0, t1, v in x.pieces if v != 0.0]
    nonzero.sort(key=lambda p: (-p[2], p[0]))
    pairs = []
    cursor = 0.0
    for t0, t1, _ in nonzero:
        length = t1 - t0
        pairs.append(((t0, t1), (cursor, cursor + length)))
        cursor += length
    return TransportMap(x.alpha, tuple(pairs))


def transport_pullback(tmap: TransportMap, g: StepFunction) -> StepFunction:
    """Compose ``g`` with the transport: returns ``g o sigma`` on the source side.

    With ``g = x*`` and ``sigma = ryff_transport(x)`` this reproduces ``|x|``
    exactly, which is the verification contract of the transport.
    """
    out = []
    for (s0, s1), (d0, d1) in tmap.pairs:
        shift = s0 - d0
        for t0, t1, v in g.pieces:
            lo, hi = max(t0, d0), min(t1, d1)
            if hi - lo > MERGE_TOL * max(1.0, abs(hi)):
                out.append((lo + shift, hi + shift, v))
    return StepFunction.make(out, tmap.alpha)
