"""Weight algebra: W, W_p, D_p membership, tail rules.

Closed forms and quadrature are cross-checked against scipy.integrate.quad,
which shares no code with the piece-integral machinery.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from rifs import (
    DivergentIntegralError,
    SchemaError,
    WeightSpec,
    in_D_p,
    weight_W,
    weight_W_infinity,
    weight_Wp,
)

INF = math.inf


def test_W_constant_weight():
    assert weight_W(WeightSpec.constant(), 3.0) == 3.0


def test_W_inverse_sqrt():
    # W(t) = 2 sqrt(t)
    assert weight_W(WeightSpec.power(-0.5), 4.0) == pytest.approx(4.0, rel=1e-12)


def test_W_infinity_tail_rule():
    assert math.isinf(weight_W_infinity(WeightSpec.constant()))
    assert weight_W_infinity(WeightSpec.make([(0, 1, 1, 0, 0), (1, INF, 1, -2, 0)])) \
        == pytest.approx(2.0, rel=1e-12)
    # log corrections: a = -1 diverges for b >= -1, converges for b < -1
    assert math.isinf(weight_W_infinity(WeightSpec.make([(0, 1, 1, 0, 0), (1, INF, 1, -1, -1)])))
    assert math.isfinite(weight_W_infinity(WeightSpec.make([(0, 1, 1, 0, 0), (1, INF, 1, -1, -2)])))


def test_W_diverges_at_origin():
    assert math.isinf(WeightSpec.power(-2.0).W(1.0))


def test_Wp_constant_weight():
    # s^2 * integral_s^inf t^-2 dt = s
    assert weight_Wp(WeightSpec.constant(), 2.0, 1.0) == pytest.approx(1.0, rel=1e-12)
    assert weight_Wp(WeightSpec.constant(), 2.0, 3.0) == pytest.approx(3.0, rel=1e-12)


def test_Wp_inverse_sqrt():
    assert weight_Wp(WeightSpec.power(-0.5), 2.0, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_Wp_divergence_signalled():
    with pytest.raises(DivergentIntegralError):
        weight_Wp(WeightSpec.power(2.0), 2.0, 1.0)


def test_Wp_alpha_one_domain():
    w = WeightSpec.constant(end=1.0)
    # s^2 * integral_s^1 t^-2 dt = s - s^2
    assert weight_Wp(w, 2.0, 0.5) == pytest.approx(0.25, rel=1e-12)


def test_in_D_p_examples():
    assert in_D_p(WeightSpec.constant(), 2.0, INF)
    assert not in_D_p(WeightSpec.power(-2.0), 2.0, INF)  # W blows up at 0
    assert not in_D_p(WeightSpec.power(2.0), 2.0, INF)   # W_p tail diverges
    assert in_D_p(WeightSpec.power(2.0), 2.0, 1.0)       # finite domain saves the tail
    # boundary a - p = -1 diverges, log correction b < -1 converges
    assert not in_D_p(WeightSpec.power(1.0), 2.0, INF)
    assert in_D_p(WeightSpec.make([(0, INF, 1, 1.0, -2.0)]), 2.0, INF)


def test_domain_validation():
    with pytest.raises(SchemaError):
        weight_W(WeightSpec.constant(end=1.0), 2.0)
    with pytest.raises(SchemaError):
        WeightSpec.make([(0.5, 1.0, 1, 0, 0)])  # does not start at 0


def test_weight_value_and_vectorized_agree():
    w = WeightSpec.make([(0, 1, 2.0, -0.5, 0), (1, 4, 1.0, 1.0, 1.5), (4, INF, 0.5, -3.0, 2.0)])
    ts = np.geomspace(0.01, 50, 40)
    assert np.allclose(w.values(ts), [w.value(float(t)) for t in ts], rtol=1e-14)


@pytest.mark.parametrize("c,a,b,lo,hi", [
    (1.0, 0.0, 0.0, 0.0, 3.0),
    (2.0, -0.5, 0.0, 0.0, 4.0),
    (1.0, 1.5, 0.0, 0.5, 7.0),
    (1.0, -1.0, 0.0, 0.5, 7.0),
    (1.5, 0.5, 2.0, 0.0, 5.0),
    (1.0, -0.5, -1.0, 0.0, 2.0),
    (0.7, 2.0, 1.0, 1.0, 9.0),
])
def test_piece_integral_matches_scipy(c, a, b, lo, hi):
    from rifs.weights import power_log_integral

    def f(t):
        return c * t ** a * math.log(math.e + t) ** b

    expected, _ = quad(f, lo, hi, limit=200)
    assert power_log_integral(c, a, b, lo, hi) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("c,a,b,lo", [
    (1.0, -2.0, 0.0, 1.0),
    (1.0, -2.0, 1.0, 0.5),
    (2.0, -1.5, -1.0, 2.0),
])
def test_tail_integral_matches_scipy(c, a, b, lo):
    from rifs.weights import power_log_integral

    def f(t):
        return c * t ** a * math.log(math.e + t) ** b

    expected, _ = quad(f, lo, math.inf, limit=400)
    assert power_log_integral(c, a, b, lo, math.inf) == pytest.approx(expected, rel=1e-7)


def test_tail_integral_log_boundary_case():
    # a = -1, b < -1 decays too slowly for naive quadrature; the oracle uses
    # the substitution z = log(e+t), under which the integrand is benign.
    import mpmath as mp
    from rifs.weights import power_log_integral

    mp.mp.dps = 30
    z0 = mp.log(mp.e + 3)
    expected = float(mp.quad(lambda z: z ** -2 * (1 + mp.e / (mp.exp(z) - mp.e)),
                             [z0, mp.inf]))
    mine = power_log_integral(1.0, -1.0, -2.0, 3.0, math.inf)
    assert mine == pytest.approx(expected, rel=1e-8)


def test_W_matches_scipy_on_multi_piece_log_weight():
    w = WeightSpec.make([(0, 2, 1.0, -0.25, 1.0), (2, INF, 3.0, -2.0, -1.0)])
    for t in (0.5, 1.5, 2.0, 6.0):
        expected, _ = quad(lambda s: w.value(s), 0.0, t, points=[2.0] if t > 2 else None, limit=200)
        assert w.W(t) == pytest.approx(expected, rel=1e-8)
    wp_expected, _ = quad(lambda s: w.value(s) / s ** 2, 1.0, math.inf, limit=400)
    assert w.wp_tail_integral(2.0, 1.0) == pytest.approx(wp_expected, rel=1e-7)


def test_origin_wp_divergence_rule():
    assert WeightSpec.power(-0.5).origin_wp_diverges(2.0)     # a - p = -2.5
    assert not WeightSpec.power(1.5).origin_wp_diverges(2.0)  # a - p = -0.5
    w_zero = WeightSpec.make([(0, 1, 0, 0, 0), (1, INF, 1, -0.5, 0)])
    assert not w_zero.origin_wp_diverges(2.0)


def test_flat_interval_reporting():
    w = WeightSpec.make([(0, 1, 1, -0.5, 0), (1, 3, 0, 0, 0), (3, INF, 1, -0.5, 0)])
    assert not w.strictly_increasing_W()
    assert w.flat_intervals() == [(1.0, 3.0)]
    assert WeightSpec.power(-0.5).strictly_increasing_W()


def test_weight_json_round_trip():
    w = WeightSpec.make([(0, 1, 2.0, -0.5, 0), (1, INF, 1.0, -2.0, 1.0)])
    again = WeightSpec.from_json(w.to_json())
    assert again == w
