"""Orlicz functions from named families, their Young conjugates, the convex
modular, and the Luxemburg / Amemiya-form norms on step functions.

Families
    power(p, coef)        psi(u) = coef * |u|^p, p >= 1
    shifted_power(a, p)   psi(u) = max(0, |u| - a)^p, a > 0, p >= 1
    exp_minus_one         psi(u) = exp(|u|) - 1
    table(points)         convex piecewise-linear through (t, psi(t)) points;
                          optionally psi = inf beyond the last point

Every family is even, convex, continuous, vanishes at zero and tends to
infinity; construction validates this on the parameters and a probe grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SchemaError
from .optimize import bisect_level, golden_section_min
from .step import StepFunction


def _safe_pow(base: float, p: float, coef: float = 1.0) -> float:
    """coef * base**p without OverflowError; overflow maps to inf."""
    if base <= 0.0:
        return 0.0
    if p * math.log(base) > 709.0:
        return math.inf
    return coef * base ** p


@dataclass(frozen=True)
class OrliczSpec:
    family: str
    p: float | None = None
    coef: float = 1.0
    shift: float | None = None
    points: tuple[tuple[float, float], ...] | None = None
    inf_beyond: bool = False

    @classmethod
    def power(cls, p: float, coef: float = 1.0) -> "OrliczSpec":
        if p < 1:
            raise SchemaError("power family needs p >= 1 for convexity")
        if coef <= 0:
            raise SchemaError("power family needs coef > 0")
        return cls("power", p=float(p), coef=float(coef))

    @classmethod
    def shifted_power(cls, shift: float, p: float) -> "OrliczSpec":
        if shift <= 0 or p < 1:
            raise SchemaError("shifted_power needs shift > 0 and p >= 1")
        return cls("shifted_power", p=float(p), shift=float(shift))

    @classmethod
    def exp_minus_one(cls) -> "OrliczSpec":
        return cls("exp_minus_one")

    @classmethod
    def table(cls, points, inf_beyond: bool = False) -> "OrliczSpec":
        pts = tuple((float(t), float(v)) for t, v in points)
        if not pts or pts[0] != (0.0, 0.0):
            pts = ((0.0, 0.0),) + pts
        ts = [t for t, _ in pts]
        vs = [v for _, v in pts]
        if any(t1 <= t0 for t0, t1 in zip(ts, ts[1:])):
            raise SchemaError("table points must have strictly increasing t")
        if any(v < 0 for v in vs):
            raise SchemaError("table values must be nonnegative")
        slopes = [(v1 - v0) / (t1 - t0) for (t0, v0), (t1, v1) in zip(pts, pts[1:])]
        if any(s1 < s0 - 1e-12 for s0, s1 in zip(slopes, slopes[1:])):
            raise SchemaError("table must be convex (nondecreasing slopes)")
        if not inf_beyond and (not slopes or slopes[-1] <= 0):
            raise SchemaError(
                "table must tend to infinity: positive final slope or inf_beyond")
        return cls("table", points=pts, inf_beyond=inf_beyond)

    @property
    def finite_valued(self) -> bool:
        return not (self.family == "table" and self.inf_beyond)

    def psi(self, u: float) -> float:
        u = abs(u)
        if self.family == "power":
            return _safe_pow(u, self.p, self.coef)
        if self.family == "shifted_power":
            return _safe_pow(max(0.0, u - self.shift), self.p)
        if self.family == "exp_minus_one":
            return math.expm1(u) if u <= 709.0 else math.inf
        ts = [t for t, _ in self.points]
        vs = [v for _, v in self.points]
        if u <= ts[-1]:
            return float(np.interp(u, ts, vs))
        if self.inf_beyond:
            return math.inf
        last_slope = (vs[-1] - vs[-2]) / (ts[-1] - ts[-2]) if len(ts) > 1 else 0.0
        return vs[-1] + last_slope * (u - ts[-1])

    def psi_many(self, us: np.ndarray) -> np.ndarray:
        us = np.abs(np.asarray(us, dtype=float))
        with np.errstate(over="ignore"):
            if self.family == "power":
                return self.coef * us ** self.p
            if self.family == "shifted_power":
                return np.maximum(0.0, us - self.shift) ** self.p
            if self.family == "exp_minus_one":
                return np.where(us > 709.0, np.inf, np.expm1(np.minimum(us, 709.0)))
        return np.array([self.psi(u) for u in us])

    def to_json(self) -> dict:
        params: dict = {}
        if self.family == "power":
            params = {"p": self.p, "coef": self.coef}
        elif self.family == "shifted_power":
            params = {"a": self.shift, "p": self.p}
        elif self.family == "table":
            params = {"points": [list(pt) for pt in self.points],
                      "inf_beyond": self.inf_beyond}
        return {"family": self.family, "params": params}

    @classmethod
    def from_json(cls, obj: dict) -> "OrliczSpec":
        try:
            family = obj["family"]
            params = obj.get("params", {})
            if family == "power":
                return cls.power(params["p"], params.get("coef", 1.0))
            if family == "shifted_power":
                return cls.shifted_power(params["a"], params["p"])
            if family == "exp_minus_one":
                return cls.exp_minus_one()
            if family == "table":
                return cls.table(params["points"], params.get("inf_beyond", False))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad Orlicz JSON: {exc}") from exc
        raise SchemaError(f"unknown Orlicz family {family!r}")


def young_conjugate(psi: OrliczSpec, u: float) -> float:
    """``sup_(v>0) { |u| v - psi(v) }``; inf when the supremum diverges."""
    u = abs(u)
    if u == 0.0:
        return 0.0
    if psi.family == "power":
        if psi.p == 1.0:
            return 0.0 if u <= psi.coef else math.inf
        # stationarity: u = coef * p * v^(p-1)
        v = (u / (psi.coef * psi.p)) ** (1.0 / (psi.p - 1.0))
        return u * v - psi.coef * v ** psi.p

    def neg_obj(v: float) -> float:
        val = psi.psi(v)
        return math.inf if math.isinf(val) else -(u * v - val)

    if psi.family == "table" and psi.inf_beyond:
        upper = psi.points[-1][0]  # psi jumps to inf here; sup lives on [0, T]
    else:
        # Expand until the concave objective starts decreasing (or psi hits inf).
        hi = 1.0
        for _ in range(80):
            if neg_obj(2.0 * hi) >= neg_obj(hi):
                break
            hi *= 2.0
        else:
            return math.inf
        upper = 2.0 * hi
    _, neg = golden_section_min(neg_obj, 0.0, upper, tol=1e-10)
    # The boundary itself can carry the sup when psi jumps to inf beyond it.
    boundary = u * upper - psi.psi(upper)
    return max(0.0, -neg, boundary if math.isfinite(boundary) else 0.0)


def modular(x: StepFunction, psi: OrliczSpec) -> float:
    """``rho_psi(x) = integral psi(x(t)) dt``, exact over the pieces (may be inf)."""
    total = 0.0
    for t0, t1, v in x.pieces:
        val = psi.psi(v)
        if math.isinf(val):
            return math.inf
        total += (t1 - t0) * val
    return total


def luxemburg_norm(x: StepFunction, psi: OrliczSpec) -> float:
    """``inf { lam > 0 : rho_psi(x / lam) <= 1 }`` by bisection; 0 for x = 0.

    The map lam -> rho(x/lam) is nonincreasing; at a modular jump (non-finite
    psi) the upper bracket is returned, i.e. the inf over the closed sublevel
    set.  Power family is solved in closed form.
    """
    if x.is_zero:
        return 0.0
    if psi.family == "power":
        s = sum((t1 - t0) * abs(v) ** psi.p for t0, t1, v in x.pieces)
        return (psi.coef * s) ** (1.0 / psi.p)

    def rho(lam: float) -> float:
        return modular(StepFunction(x.alpha, tuple((t0, t1, v / lam) for t0, t1, v in x.pieces)), psi)

    hi = max(x.sup_abs, 1e-12)
    for _ in range(200):
        if rho(hi) <= 1.0:
            break
        hi *= 2.0
    else:
        raise SchemaError("luxemburg norm: modular never drops to 1")
    lo = hi
    while rho(lo / 2.0) <= 1.0:
        lo /= 2.0
        if lo < 1e-150:
            return 0.0  # modular stays below 1 for every positive scale
    return bisect_level(rho, lo / 2.0, hi, level=1.0, tol=1e-10)


def orlicz_norm(x: StepFunction, psi: OrliczSpec) -> float:
    """Amemiya form ``inf_(k>0) (1 + rho_psi(k x)) / k`` of the Orlicz norm.

    The objective is unimodal in k (rho is convex with rho(0) = 0), so an
    expanding bracket plus golden section converges; tolerance 1e-9.
    """
    if x.is_zero:
        return 0.0

    def h(k: float) -> float:
        if k <= 0:
            return math.inf
        rho = modular(StepFunction(x.alpha, tuple((t0, t1, k * v) for t0, t1, v in x.pieces)), psi)
        return math.inf if math.isinf(rho) else (1.0 + rho) / k

    k_lo, k_hi = 1.0, 1.0
    for _ in range(80):
        if h(k_lo / 2.0) >= h(k_lo):
            break
        k_lo /= 2.0
    for _ in range(80):
        if h(k_hi * 2.0) >= h(k_hi):
            break
        k_hi *= 2.0
    _, val = golden_section_min(h, k_lo / 2.0, k_hi * 2.0, tol=1e-9)
    return val
