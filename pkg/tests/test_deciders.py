"""Decision criteria: Delta2, N-at-zero, K-order continuity, the fundamental
function cross-checks, reflexivity, approximative compactness, the RB_p
comparison, and the explicit associate/dual weight formulas."""

import math

import numpy as np
import pytest

from rifs import (
    HypothesisNotMetError,
    OrliczSpec,
    SchemaError,
    SpaceHandle,
    WeightDomainError,
    WeightSpec,
    a_psi,
    a_psi_vs_phi_infty,
    embeds_in_L1,
    gamma_approx_compact_decider,
    gamma_dual_weight,
    gamma_reflexive_decider,
    is_N_at_zero,
    is_delta2,
    lambda_associate_weight,
    orlicz_koc_decider,
    rbp_check,
    weight_W_infinity,
)

INF = math.inf
POWER1 = OrliczSpec.power(1)
POWER2 = OrliczSpec.power(2)
EXP = OrliczSpec.exp_minus_one()
SHIFTED = OrliczSpec.shifted_power(1.0, 2.0)
W_HALF = WeightSpec.power(-0.5)


# ----------------------------------------------------------------------- a_psi

def test_a_psi_values():
    assert a_psi(POWER2) == 0.0
    assert a_psi(SHIFTED) == 1.0
    assert abs(a_psi(EXP)) <= 1e-12  # psi > 0 on (0, inf)
    assert a_psi(OrliczSpec.table([(1.0, 0.0), (2.0, 0.0), (3.0, 1.0)])) == 2.0


def test_a_psi_positive_iff_vanishing_region():
    for psi in (POWER1, POWER2, EXP):
        assert a_psi(psi) <= 1e-12


# --------------------------------------------------------------------- delta2

def test_delta2_power_holds_with_doubling_constant():
    v = is_delta2(OrliczSpec.power(3))
    assert v.holds and v.witness["K"] == 8.0


def test_delta2_exp_fails_with_large_u_witness():
    v = is_delta2(EXP)
    assert v.status == "fails"
    assert v.witness["u"] == 20.0
    assert v.witness["ratio"] == pytest.approx(math.expm1(40.0) / math.expm1(20.0), rel=1e-12)
    assert v.witness["ratio"] > 1e8


def test_delta2_shifted_power_fails_near_zero_set():
    v = is_delta2(SHIFTED)
    assert v.status == "fails" and v.witness["ratio"] > 1e6


def test_delta2_table_never_unqualified_holds():
    v = is_delta2(OrliczSpec.table([(1.0, 1.0), (10.0, 30.0)]), u_range=(0.1, 10.0))
    assert v.status == "inconclusive"
    assert v.probe_log["observed_K"] >= 2.0
    assert "exhausted" in v.probe_log


def test_delta2_table_with_zero_region_fails():
    v = is_delta2(OrliczSpec.table([(1.0, 0.0), (2.0, 5.0)]))
    assert v.status == "fails" and v.witness["ratio"] == INF


# ------------------------------------------------------------------ N-at-zero

def test_n_at_zero_power_split():
    assert is_N_at_zero(POWER2).holds
    v = is_N_at_zero(POWER1)
    assert v.status == "fails" and v.witness["ratio_limit"] == 1.0


def test_n_at_zero_shifted_and_exp():
    assert is_N_at_zero(SHIFTED).holds
    assert is_N_at_zero(EXP).status == "fails"


def test_n_at_zero_table_first_slope():
    assert is_N_at_zero(OrliczSpec.table([(1.0, 0.0), (2.0, 4.0)])).holds
    assert is_N_at_zero(OrliczSpec.table([(1.0, 0.5), (2.0, 4.0)])).status == "fails"


# ------------------------------------------------------------------------ KOC

def test_koc_table_of_verdicts():
    assert orlicz_koc_decider(POWER2, INF).holds
    v = orlicz_koc_decider(POWER1, INF)
    assert v.status == "fails" and v.witness["reason"] == "N-at-zero"
    assert orlicz_koc_decider(POWER1, 1.0).holds
    v = orlicz_koc_decider(EXP, INF)
    assert v.status == "fails" and v.witness["reason"] == "delta2"
    v = orlicz_koc_decider(EXP, 1.0)
    assert v.status == "fails" and v.witness["reason"] == "delta2"


def test_koc_power_family_sweep():
    for p in (1.1, 1.5, 2.0, 4.0, 8.0):
        assert orlicz_koc_decider(OrliczSpec.power(p), INF).holds


def test_koc_shifted_fails_via_delta2():
    v = orlicz_koc_decider(SHIFTED, 1.0)
    assert v.status == "fails" and v.witness["reason"] == "delta2"


def test_koc_inconclusive_propagates_from_table():
    v = orlicz_koc_decider(OrliczSpec.table([(1.0, 1.0), (5.0, 9.0)]), 1.0)
    assert v.status == "inconclusive"


# -------------------------------------------------------- a_psi vs phi(inf)

def test_a_psi_phi_agreement_power():
    v = a_psi_vs_phi_infty(POWER2)
    assert v.holds and v.probe_log["a_psi"] == 0.0


def test_a_psi_phi_agreement_shifted():
    v = a_psi_vs_phi_infty(SHIFTED)
    assert v.holds and v.probe_log["plateau_bound"] == 1.0


def test_a_psi_phi_inconclusive_on_slow_table():
    # a_psi = 1e-9 puts the plateau at 1e9, beyond the probe grid.
    psi = OrliczSpec.table([(1e-9, 0.0), (1.0, 1.0)])
    v = a_psi_vs_phi_infty(psi)
    assert v.status == "inconclusive"
    assert "exhausted" in v.probe_log


# -------------------------------------------------------------- L^1 embedding

def test_embeds_l1_gamma_never_under_dp():
    # Under D_p both W(t)/t^p and the W_p tail vanish, so d = 0 for every
    # admissible weight; the x**-based space never embeds in L^1.
    for w in (WeightSpec.constant(), W_HALF,
              WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)])):
        v = embeds_in_L1(SpaceHandle.lorentz_gamma(2.0, w))
        assert v.status == "fails" and v.witness["d"] == 0.0
        ratios = [r for _, r in v.probe_log["phi_over_t"]]
        assert all(a >= b - 1e-12 for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] < 0.01 * ratios[0] + 1e-12


def test_embeds_l1_orlicz_cases():
    assert embeds_in_L1(SpaceHandle.orlicz_space(POWER1)).holds          # it is L^1
    assert embeds_in_L1(SpaceHandle.orlicz_space(POWER2)).status == "fails"
    assert embeds_in_L1(SpaceHandle.orlicz_space(SHIFTED)).status == "fails"
    v = embeds_in_L1(SpaceHandle.orlicz_space(EXP))
    assert v.holds and v.witness["d"] == 1.0


def test_embeds_l1_lambda_tail_rule():
    # W(t) ~ t^2/2 for w = t: phi(t)/t -> (1/2)^(1/2) > 0.
    v = embeds_in_L1(SpaceHandle.lorentz_lambda(2.0, WeightSpec.power(1.0)))
    assert v.holds and v.witness["d"] == pytest.approx(math.sqrt(0.5))
    v = embeds_in_L1(SpaceHandle.lorentz_lambda(2.0, WeightSpec.constant()))
    assert v.status == "fails"


def test_embeds_l1_requires_infinite_domain():
    with pytest.raises(SchemaError):
        embeds_in_L1(SpaceHandle.orlicz_space(POWER1, alpha=1.0))


def test_associate_fundamental_in_probe_log():
    v = embeds_in_L1(SpaceHandle.lorentz_gamma(2.0, W_HALF))
    pairs = v.probe_log["associate_fundamental"]
    assert all(b > a for (_, a), (_, b) in zip(pairs, pairs[1:]))  # t/phi(t) grows


# ----------------------------------------------------------------- reflexivity

def test_reflexive_sqrt_weight_with_numeric_confirmation():
    v = gamma_reflexive_decider(2.0, W_HALF)
    assert v.holds
    assert v.probe_log["V_numeric_1_to_1e6"] > 1e3
    assert v.probe_log["V_tail"]["t_exponent"] == pytest.approx(0.5)


def test_reflexive_fails_on_integrable_tail():
    w = WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)])
    v = gamma_reflexive_decider(2.0, w)
    assert v.status == "fails" and v.witness["stage"] == "W-infinity"


def test_reflexive_inconclusive_when_prerequisite_fails():
    w = WeightSpec.make([(0, 1, 0, 0, 0), (1, INF, 1, -0.5, 0)])
    v = gamma_reflexive_decider(2.0, w)
    assert v.status == "inconclusive"
    assert not v.probe_log["prerequisite"]["holds"]


def test_reflexive_prerequisite_boundary_exponent():
    # a - p = -1 diverges at the origin (boundary case of the rule)
    w = WeightSpec.power(1.0, end=INF)  # a = 1, p = 2; fails D_p though
    with pytest.raises(WeightDomainError):
        gamma_reflexive_decider(2.0, w)
    w_log = WeightSpec.make([(0, INF, 1, 1.0, -2.0)])  # D_p ok via log correction
    v = gamma_reflexive_decider(2.0, w_log)
    assert v.holds


def test_reflexive_validates_p():
    with pytest.raises(SchemaError):
        gamma_reflexive_decider(1.0, W_HALF)


# --------------------------------------------------- approximative compactness

def test_approx_compact_strictly_increasing_weight():
    assert gamma_approx_compact_decider(2.0, W_HALF).holds


def test_approx_compact_flat_piece_witness():
    w = WeightSpec.make([(0, 1, 1, -0.5, 0), (1, 3, 0, 0, 0), (3, INF, 1, -0.5, 0)])
    v = gamma_approx_compact_decider(2.0, w)
    assert v.status == "fails" and v.witness["flat_interval"] == [1.0, 3.0]
    assert v.probe_log["reflexive"]["status"] == "holds"


def test_approx_compact_propagates_reflexivity_failure():
    w = WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)])
    v = gamma_approx_compact_decider(2.0, w)
    assert v.status == "fails" and v.witness["reason"] == "not-reflexive"


def test_approx_compact_implies_reflexive_on_battery():
    battery = [
        W_HALF,
        WeightSpec.constant(),
        WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)]),
        WeightSpec.make([(0, 1, 0, 0, 0), (1, INF, 1, -0.5, 0)]),
        WeightSpec.make([(0, 1, 1, -0.5, 0), (1, 3, 0, 0, 0), (3, INF, 1, -0.5, 0)]),
    ]
    for w in battery:
        ac = gamma_approx_compact_decider(2.0, w)
        if ac.holds:
            assert gamma_reflexive_decider(2.0, w).holds


# ------------------------------------------------------------ weight formulas

def test_associate_weight_unit():
    v = lambda_associate_weight(2.0, WeightSpec.constant())
    for t in np.geomspace(1e-5, 1e5, 40):
        assert v.value(float(t)) == pytest.approx(1.0, abs=1e-9)
    assert math.isinf(weight_W_infinity(v))


def test_associate_weight_sqrt_law():
    # v(t) = (t / 2 sqrt(t))^2 * t^(-1/2) = sqrt(t) / 4
    v = lambda_associate_weight(2.0, W_HALF)
    for t in np.geomspace(1e-4, 1e4, 40):
        assert v.value(float(t)) == pytest.approx(math.sqrt(t) / 4.0, rel=1e-9)
    assert math.isinf(weight_W_infinity(v))


def test_associate_weight_nonnegative_everywhere():
    w = WeightSpec.make([(0, 2, 1.0, -0.25, 0), (2, INF, 0.5, 0.25, 0)])
    v = lambda_associate_weight(2.0, w)
    ts = np.geomspace(1e-6, 1e6, 200)
    assert np.all(v.values(ts) >= 0.0)


def test_associate_weight_hypothesis_failures():
    with pytest.raises(HypothesisNotMetError):
        lambda_associate_weight(2.0, WeightSpec.make([(0, 1, 0, 0, 0), (1, INF, 1, 0, 0)]))
    with pytest.raises(HypothesisNotMetError):
        lambda_associate_weight(2.0, WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)]))


# ------------------------------------------------------------------------ RB_p

def test_rbp_exact_ratios():
    v = rbp_check(2.0, W_HALF)
    assert v.holds and v.witness["A"] == pytest.approx(3.0, abs=1e-6)
    v = rbp_check(2.0, WeightSpec.constant())
    assert v.holds and v.witness["A"] == pytest.approx(1.0, abs=1e-6)


def test_rbp_fails_when_weight_concentrates_near_zero():
    w = WeightSpec.make([(0, 1, 1, 0, 0), (1, INF, 0, 0, 0)])
    v = rbp_check(2.0, w)
    assert v.status == "fails" and v.witness["ratio"] == INF


def test_rbp_fails_on_borderline_tail():
    # a = -1 tail with W(inf) = inf: W grows like log while W_p stays bounded.
    w = WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -1.0, 0)])
    v = rbp_check(2.0, w)
    assert v.status == "fails"


# ----------------------------------------------------------------- dual weight

def test_dual_weight_unit():
    v = gamma_dual_weight(2.0, WeightSpec.constant())
    for t in np.geomspace(1e-5, 1e5, 40):
        assert v.value(float(t)) == pytest.approx(1.0, abs=1e-6)
    assert math.isinf(weight_W_infinity(v))


def test_dual_weight_sqrt_law():
    # inner integral (2/3) t^(-3/2); v = d/dt (3/2 t^(3/2))^... = (9/4) sqrt(t)
    v = gamma_dual_weight(2.0, W_HALF)
    for t in np.geomspace(1e-4, 1e4, 40):
        assert v.value(float(t)) == pytest.approx(2.25 * math.sqrt(t), rel=1e-6)


def test_dual_weight_matches_central_difference_oracle():
    # Oracle: central differences of g(t)^(-1/(p-1)) on a log grid.  Pure
    # power weights reproduce exactly; mixed weights go through the tabulated
    # power-piece representation, whose log-grid resolution bounds agreement.
    p = 2.0
    cases = [(WeightSpec.constant(), 1e-9), (W_HALF, 1e-9),
             (WeightSpec.make([(0, 1, 2.0, -0.5, 0), (1, INF, 1.0, -0.75, 0)]), 1e-3)]
    for w, rel in cases:
        v = gamma_dual_weight(p, w)

        def transformed(t):
            return w.wp_tail_integral(p, t) ** (-1.0 / (p - 1.0))

        boundaries = [pc.t0 for pc in w.pieces]
        for t in np.geomspace(1e-3, 1e3, 25):
            if any(abs(t - b) < 1e-3 * max(1.0, b) for b in boundaries):
                continue  # v jumps with w; the symmetric difference is ill-posed there
            h = t * 1e-4
            oracle = (transformed(t + h) - transformed(t - h)) / (2.0 * h)
            assert v.value(float(t)) == pytest.approx(oracle, rel=rel)


def test_dual_weight_v_infinity_confirmed():
    # V(t) = g(t)^(-1/(p-1)) exactly, and g -> 0 forces V(inf) = inf.
    for w in (WeightSpec.constant(), W_HALF):
        g_far = w.wp_tail_integral(2.0, 1e9)
        assert g_far ** (-1.0) > 1e6
        assert math.isinf(weight_W_infinity(gamma_dual_weight(2.0, w)))


def test_dual_weight_hypothesis_failures():
    with pytest.raises(HypothesisNotMetError):
        gamma_dual_weight(2.0, WeightSpec.make([(0, 1, 1, -0.5, 0), (1, INF, 1, -2, 0)]))
    # in D_p but the origin integral of w s^(-p) converges
    with pytest.raises(HypothesisNotMetError):
        gamma_dual_weight(2.0, WeightSpec.make([(0, 1, 1, 1.5, 0), (1, INF, 1, -0.5, 0)]))


def test_weight_formula_outputs_nonnegative():
    for w in (WeightSpec.constant(), W_HALF):
        for out in (lambda_associate_weight(2.0, w), gamma_dual_weight(2.0, w)):
            ts = np.geomspace(1e-6, 1e6, 120)
            assert np.all(out.values(ts) >= 0.0)
