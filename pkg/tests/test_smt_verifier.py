"""Truncation constants and scenario-level inequality verification."""

import math
from fractions import Fraction
from pathlib import Path

import pytest
from mpmath import mp, mpf

from smtlab.errors import (
    CertificationError,
    DegenerateInputError,
    ValidationError,
)
from smtlab.scenario import load_scenario, scenario_from_dict
from smtlab.smt_verifier import (
    SMTConstants,
    certified_floor,
    constants_fixed,
    constants_moving,
    constants_plane,
    constants_theoremB,
    defect_relation_report,
    verify_main_inequality,
)

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"
F = Fraction


# -- constants ---------------------------------------------------------------

def test_fixed_constants_frozen():
    c = constants_fixed(1, 1, 1, F(1), F(1))
    assert c.u == 18 and c.L == 57
    assert abs(c.log10_L - math.log10(57)) <= 1e-9
    assert constants_fixed(1, 1, 1, F(1), F(2)).u == 12


def test_fixed_constants_preconditions():
    with pytest.raises(ValidationError):
        constants_fixed(1, 1, 1, F(1), F(0))
    with pytest.raises(ValidationError):
        constants_fixed(0, 1, 1, F(1), F(1))


def test_moving_constants_frozen():
    c = constants_moving(1, 1, 1, 2, F(1), F(1))
    assert c.u == 36
    assert 9.8e4 <= c.log10_L <= 9.9e4
    # independent reconstruction of the whole tower at high precision
    with mp.workdps(60):
        quotient = mpf(50653) / mp.log(mpf(5) / 4) ** 2
        exponent = int(mp.floor(quotient)) + 1
    assert exponent == 1017271
    assert c.L is not None
    assert c.L == 37 * (5 ** exponent >> (2 * exponent))
    assert 10 ** 98585 <= c.L < 10 ** 98586
    with mp.workdps(40):
        direct = float(mp.log10(37) + exponent * mp.log10(mpf(5) / 4))
    assert abs(c.log10_L - direct) <= 2e-6
    assert "whole-product floor exceeds it by 21" in c.note


def test_moving_constants_preconditions():
    with pytest.raises(ValidationError):
        constants_moving(1, 1, 1, 2, F(1), F(2))  # epsilon = (n+1) Delta
    with pytest.raises(ValidationError):
        constants_moving(1, 1, 1, 0, F(1), F(1))
    with pytest.raises(ValidationError):
        constants_moving(1, 1, 1, 2, F(-1), F(1))


def test_epsilon_monotonicity():
    ladder = [F(1, 4), F(1, 2), F(1), F(3, 2)]
    mov = [constants_moving(1, 1, 1, 2, F(1), e).u for e in ladder]
    assert all(a >= b for a, b in zip(mov, mov[1:]))
    assert constants_moving(1, 1, 1, 2, F(1), F(1)).u \
        < constants_moving(1, 1, 1, 2, F(1), F(1, 2)).u
    fix = [constants_fixed(1, 1, 1, F(1), e).L for e in ladder]
    assert all(a >= b for a, b in zip(fix, fix[1:]))
    thb = [constants_theoremB(1, 1, 1, 3, F(1), e).L for e in ladder]
    assert all(a >= b for a, b in zip(thb, thb[1:]))


def test_theoremB_frozen_and_comparison():
    assert constants_theoremB(1, 1, 1, 2, F(1), F(1)).L == 65
    big = constants_theoremB(1, 1, 1, 5, F(1), F(1))
    assert big.L == 3914
    small = constants_fixed(1, 1, 1, F(1), F(1), q=5)
    assert 68.0 <= big.L / small.L <= 69.5


def test_plane_constants():
    c = constants_plane(1, 1, 1, 3, F(1), F(1, 2), moving=False)
    assert c.variant == "Plane"
    assert c.u == 60 and c.L == 95  # doubled step, fixed-formula truncation
    m = constants_plane(1, 1, 1, 2, F(1), F(1), moving=True)
    assert m.variant == "Plane" and m.u == 36


def test_certified_floor_resolves_and_caps():
    from mpmath import iv
    assert certified_floor(lambda: iv.mpf(3), "an exact integer") == 3
    with pytest.raises(CertificationError, match="precision cap"):
        certified_floor(lambda: iv.mpf([2.5, 3.5]), "a stuck bracket")


def test_constants_invariants_enforced():
    with pytest.raises(ValidationError):
        SMTConstants("FixedB", 0, 57, math.log10(57), 1, 1, 1, 1, F(1), F(1))
    with pytest.raises(CertificationError):
        SMTConstants("FixedB", 18, 57, 3.0, 1, 1, 1, 1, F(1), F(1))
    with pytest.raises(CertificationError):
        SMTConstants("MovingA", 35, None, 9.9e4, 1, 1, 1, 2, F(1), F(1))


# -- scenario verification ------------------------------------------------------

def test_verify_three_points():
    s = load_scenario(str(SCENARIOS / "line_three_points.json"))
    rep = verify_main_inequality(s)
    assert rep.constants.variant == "Plane"
    assert not rep.falsified
    assert any("saturated" in f for f in rep.flags)
    assert all(margin >= -1e-6 for _, _, _, margin in rep.rows)
    for (r, lhs, rhs, margin) in rep.rows:
        assert margin == rhs - lhs
    # plane case: no correction term anywhere
    assert all(corr == 0.0 for _, corr in rep.rhs_terms)
    values = dict(rep.defects)
    assert abs(values[0] - 1.0) <= 0.02
    assert abs(values[1]) <= 0.02 and abs(values[2]) <= 0.02


def test_verify_conic_four_lines():
    s = load_scenario(str(SCENARIOS / "conic_four_lines.json"))
    rep = verify_main_inequality(s)
    c = rep.constants
    assert (c.n, c.deg_V, c.d, c.q) == (1, 2, 1, 4)
    assert c.delta_V == 1
    with mp.workdps(30):
        assert c.L == int(mp.floor(84 * mp.e))
    assert not rep.falsified
    assert any("saturated" in f for f in rep.flags)


def test_verify_disc_model_growth():
    s = load_scenario(str(SCENARIOS / "disc_model_growth.json"))
    rep = verify_main_inequality(s)
    assert rep.constants.variant == "FixedB"
    assert rep.constants.u == 30 and rep.constants.L == 95
    assert not rep.falsified
    # the correction term is strictly positive and reported separately
    assert all(corr > 0 for _, corr in rep.rhs_terms)


def test_verify_determinism():
    s = load_scenario(str(SCENARIOS / "line_three_points.json"))
    a = verify_main_inequality(s)
    b = verify_main_inequality(s)
    assert a.rows == b.rows and a.defects == b.defects and a.flags == b.flags


def test_verify_degenerate_curve_in_member():
    data = {
        "ambient_N": 1,
        "curve": {"components": ["poly: z", "poly: z"], "domain_R": "inf"},
        "hypersurfaces": [
            {"degree": 1, "coefficients": {"x1": "1", "x0": "-1"}}],
        "epsilon": "1/2",
        "r0": 0.25,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 10.0,
                 "points": 3},
    }
    with pytest.raises(DegenerateInputError):
        verify_main_inequality(scenario_from_dict(data))


def test_verify_degenerate_linear_relation():
    data = {
        "ambient_N": 2,
        "curve": {"components": ["poly: 1", "poly: z", "poly: 2*z"],
                  "domain_R": "inf"},
        "hypersurfaces": [
            {"degree": 1, "coefficients": {"x0": "1", "x1": "1", "x2": "1"}}],
        "epsilon": "1/2",
        "r0": 0.25,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 10.0,
                 "points": 3},
    }
    with pytest.raises(DegenerateInputError, match="degree-1"):
        verify_main_inequality(scenario_from_dict(data))


def test_verify_vacuous_regime():
    data = {
        "ambient_N": 1,
        "curve": {"components": ["poly: 1", "poly: z"], "domain_R": "inf"},
        "hypersurfaces": [{"degree": 1, "coefficients": {"x0": "1"}}],
        "epsilon": "1/2",
        "r0": 0.25,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 10.0,
                 "points": 3},
    }
    rep = verify_main_inequality(scenario_from_dict(data))
    assert any("vacuous" in f for f in rep.flags)
    assert not rep.falsified


def test_verify_truncation_override():
    s = load_scenario(str(SCENARIOS / "line_three_points.json"))
    data = {
        "ambient_N": 1,
        "curve": {"components": ["poly: 1", "poly: z"], "domain_R": "inf"},
        "hypersurfaces": [
            {"degree": 1, "coefficients": {"x0": "1"}},
            {"degree": 1, "coefficients": {"x1": "1", "x0": "-1"}},
            {"degree": 1, "coefficients": {"x1": "1", "x0": "1"}}],
        "epsilon": "1/2",
        "r0": 0.25,
        "truncation": 1,
        "seed": 0,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 1000.0,
                 "points": 40},
    }
    rep = verify_main_inequality(scenario_from_dict(data))
    assert any("overridden to 1" in f for f in rep.flags)
    base = verify_main_inequality(s)
    assert rep.rows == base.rows  # all zeros are simple here


# -- defect relation ---------------------------------------------------------------

def test_defect_relation_three_points():
    s = load_scenario(str(SCENARIOS / "line_three_points.json"))
    d = defect_relation_report(s)
    assert d.bound == 2.5
    assert d.total <= 2.5
    assert abs(d.total - 1.0) <= 0.05
    assert d.holds
    assert any("saturated" in f for f in d.flags)
    assert d.u_bound == 60


def test_defect_relation_single_target():
    data = {
        "ambient_N": 1,
        "curve": {"components": ["poly: 1", "poly: z"], "domain_R": "inf"},
        "hypersurfaces": [{"degree": 1, "coefficients": {"x0": "1"}}],
        "epsilon": "1/2",
        "r0": 0.25,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 100.0,
                 "points": 5},
    }
    d = defect_relation_report(scenario_from_dict(data))
    assert d.total == 1.0 and d.holds


def test_defect_relation_needs_fixed_targets():
    data = {
        "ambient_N": 1,
        "curve": {"components": ["poly: 1", "poly: z"], "domain_R": "inf"},
        "hypersurfaces": [
            {"degree": 1, "coefficients": {"x1": "1", "x0": "poly: z"},
             "moving": True}],
        "epsilon": "1/2",
        "r0": 0.25,
        "grid": {"kind": "geometric", "r_min": 2.0, "r_max": 10.0,
                 "points": 3},
    }
    with pytest.raises(ValidationError):
        defect_relation_report(scenario_from_dict(data))
