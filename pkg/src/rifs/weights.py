"""Symbolic weight algebra: finitely many pieces of the form
``c * t^a * log(e + t)^b`` partitioning ``(0, alpha)``.

Restricting weights to power-log pieces keeps every integral either in closed
form (b = 0) or decidable: divergence of improper integrals is settled by the
piece exponents, never by numeric integration.  Numeric quadrature is used
only to evaluate convergent b != 0 integrals.

Divergence rules for a tail piece ``c * t^a * log(e+t)^b`` (c > 0):
  * integral to infinity diverges  iff  a > -1, or a = -1 and b >= -1;
  * integral from 0 diverges       iff  a <= -1  (the log factor tends to 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DivergentIntegralError, SchemaError, WeightDomainError
from .quadrature import integrate, integrate_to_infinity

_EDGE_TOL = 1e-12


def tail_integral_diverges(a: float, b: float) -> bool:
    """Does ``integral^inf t^a log(e+t)^b dt`` diverge?"""
    return a > -1.0 or (a == -1.0 and b >= -1.0)


def origin_integral_diverges(a: float) -> bool:
    """Does ``integral_0 t^a log(e+t)^b dt`` diverge?  (b is irrelevant at 0.)"""
    return a <= -1.0


def power_log_integral(c: float, a: float, b: float, lo: float, hi: float,
                       rel_tol: float = 1e-10) -> float:
    """``integral_lo^hi c t^a log(e+t)^b dt``; hi may be inf.  Returns inf on divergence."""
    if c == 0.0 or hi <= lo:
        return 0.0
    if lo == 0.0 and origin_integral_diverges(a):
        return math.inf
    if math.isinf(hi) and tail_integral_diverges(a, b):
        return math.inf
    if b == 0.0:
        if a == -1.0:
            return c * (math.log(hi) - math.log(lo))  # hi finite here
        antider = lambda t: c * t ** (a + 1.0) / (a + 1.0)
        upper = 0.0 if math.isinf(hi) else antider(hi)  # a < -1 at inf
        lower = 0.0 if lo == 0.0 else antider(lo)
        return upper - lower

    if a == -1.0 and math.isinf(hi):
        # b < -1 here.  Split 1/t = 1/(e+t) + e/(t(e+t)): the first term is the
        # closed form in z = log(e+t); the second has a bounded substituted
        # integrand, which adaptive quadrature handles.
        z0 = math.log(math.e + lo)
        leading = z0 ** (b + 1.0) / (-(b + 1.0))

        def remainder(ts: np.ndarray) -> np.ndarray:
            return np.log(np.e + ts) ** b * math.e / (ts * (math.e + ts))

        return c * (leading + integrate_to_infinity(remainder, lo, rel_tol=rel_tol))

    def f(ts: np.ndarray) -> np.ndarray:
        return c * ts ** a * np.log(np.e + ts) ** b

    if math.isinf(hi):
        return integrate_to_infinity(f, lo, rel_tol=rel_tol)
    return integrate(f, lo, hi, rel_tol=rel_tol)


@dataclass(frozen=True)
class WeightPiece:
    t0: float
    t1: float  # may be inf on the last piece
    c: float
    a: float
    b: float


@dataclass(frozen=True)
class WeightSpec:
    """Nonnegative weight assembled from power-log pieces partitioning (0, end)."""

    pieces: tuple[WeightPiece, ...]

    @classmethod
    def make(cls, pieces: Iterable[Sequence[float]]) -> "WeightSpec":
        built = []
        cursor = 0.0
        for t0, t1, c, a, b in pieces:
            t0, c, a, b = float(t0), float(c), float(a), float(b)
            t1 = math.inf if t1 in ("inf", math.inf) else float(t1)
            if abs(t0 - cursor) > _EDGE_TOL * max(1.0, cursor):
                raise SchemaError("weight pieces must partition (0, end) contiguously")
            if t1 <= t0:
                raise SchemaError("weight piece must have t1 > t0")
            if c < 0:
                raise SchemaError("weight pieces must be nonnegative (c >= 0)")
            built.append(WeightPiece(cursor, t1, c, a, b))
            cursor = t1
        if not built:
            raise SchemaError("weight needs at least one piece")
        return cls(tuple(built))

    @classmethod
    def constant(cls, c: float = 1.0, end: float = math.inf) -> "WeightSpec":
        return cls.make([(0.0, end, c, 0.0, 0.0)])

    @classmethod
    def power(cls, a: float, c: float = 1.0, end: float = math.inf) -> "WeightSpec":
        return cls.make([(0.0, end, c, a, 0.0)])

    @property
    def domain_end(self) -> float:
        return self.pieces[-1].t1

    @property
    def tail(self) -> WeightPiece:
        return self.pieces[-1]

    def value(self, t: float) -> float:
        for p in self.pieces:
            if p.t0 <= t < p.t1:
                return p.c * t ** p.a * math.log(math.e + t) ** p.b
        return 0.0

    def values(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        out = np.zeros_like(ts)
        for p in self.pieces:
            mask = (ts >= p.t0) & (ts < p.t1)
            if mask.any():
                tm = ts[mask]
                out[mask] = p.c * tm ** p.a * np.log(np.e + tm) ** p.b
        return out

    def W(self, t: float, rel_tol: float = 1e-10) -> float:
        """``W(t) = integral_0^t w``; inf when w is not integrable at 0."""
        total = 0.0
        for p in self.pieces:
            if p.t0 >= t:
                break
            part = power_log_integral(p.c, p.a, p.b, p.t0, min(t, p.t1), rel_tol)
            if math.isinf(part):
                return math.inf
            total += part
        return total

    def W_infinity(self, rel_tol: float = 1e-10) -> float:
        total = 0.0
        for p in self.pieces:
            part = power_log_integral(p.c, p.a, p.b, p.t0, p.t1, rel_tol)
            if math.isinf(part):
                return math.inf
            total += part
        return total

    def wp_tail_integral(self, p_exp: float, s: float, rel_tol: float = 1e-10) -> float:
        """``integral_s^end t^(-p) w(t) dt``; inf when the tail diverges."""
        total = 0.0
        for p in self.pieces:
            if p.t1 <= s:
                continue
            part = power_log_integral(p.c, p.a - p_exp, p.b, max(s, p.t0), p.t1, rel_tol)
            if math.isinf(part):
                return math.inf
            total += part
        return total

    def Wp(self, p_exp: float, s: float, rel_tol: float = 1e-10) -> float:
        """``W_p(s) = s^p * integral_s^end t^(-p) w``; inf when divergent."""
        tail = self.wp_tail_integral(p_exp, s, rel_tol)
        return math.inf if math.isinf(tail) else s ** p_exp * tail

    def origin_wp_diverges(self, p_exp: float) -> bool:
        """Is ``integral_0^t w(s) s^(-p) ds`` infinite for every t > 0?"""
        first = self.pieces[0]
        return first.c > 0 and origin_integral_diverges(first.a - p_exp)

    def strictly_increasing_W(self) -> bool:
        """W strictly increasing, i.e. no piece with c = 0."""
        return all(p.c > 0 for p in self.pieces)

    def flat_intervals(self) -> list[tuple[float, float]]:
        return [(p.t0, p.t1) for p in self.pieces if p.c == 0.0]

    def to_json(self) -> dict:
        return {
            "pieces": [
                {
                    "t0": p.t0,
                    "t1": "inf" if math.isinf(p.t1) else p.t1,
                    "c": p.c,
                    "a": p.a,
                    "b": p.b,
                }
                for p in self.pieces
            ]
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WeightSpec":
        try:
            pieces = [(p["t0"], p["t1"], p["c"], p.get("a", 0.0), p.get("b", 0.0))
                      for p in obj["pieces"]]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad weight JSON: {exc}") from exc
        return cls.make(pieces)


def weight_W(w: WeightSpec, t: float) -> float:
    """W(t) for 0 < t <= domain end; raises outside the domain."""
    if not (0.0 < t <= w.domain_end):
        raise SchemaError(f"t={t} outside weight domain (0, {w.domain_end}]")
    return w.W(t)


def weight_W_infinity(w: WeightSpec) -> float:
    return w.W_infinity()


def weight_Wp(w: WeightSpec, p: float, s: float) -> float:
    """W_p(s); raises DivergentIntegralError when the defining integral diverges."""
    if p <= 0:
        raise SchemaError("weight_Wp requires p > 0")
    if not (0.0 < s < w.domain_end) and not (s == w.domain_end == 1.0):
        raise SchemaError(f"s={s} outside weight domain (0, {w.domain_end})")
    out = w.Wp(p, s)
    if math.isinf(out):
        raise DivergentIntegralError(
            f"W_p(s) diverges for s={s}: tail exponent violates the D_p condition"
        )
    return out


def in_D_p(w: WeightSpec, p: float, alpha: float) -> bool:
    """Class D_p: W(s) and W_p(s) finite on (0, 1] if alpha = 1, on (0, inf) otherwise."""
    if p <= 0:
        raise SchemaError("in_D_p requires p > 0")
    first = w.pieces[0]
    if first.c > 0 and origin_integral_diverges(first.a):
        return False
    if math.isinf(alpha):
        t = w.tail
        if math.isinf(w.domain_end) and t.c > 0 and tail_integral_diverges(t.a - p, t.b):
            return False
    return True


def require_D_p(w: WeightSpec, p: float, alpha: float) -> None:
    if not in_D_p(w, p, alpha):
        raise WeightDomainError(
            f"weight is not in class D_{p}: W or W_p diverges on (0, {alpha})"
        )
