import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from aztec_efp import matrix_model as mm
from aztec_efp.asymptotics import v_critical
from aztec_efp.efp_exact import DomainError


def two_sat(alpha, frac=0.4):
    return mm.endpoints(alpha, 1 + frac * (v_critical(alpha)[1] - 1))


@st.composite
def solutions(draw):
    a = draw(st.floats(0.05, 0.95))
    R_c = v_critical(a)[1]
    R = draw(st.floats(1.001, 2 * R_c))
    return mm.endpoints(a, R)


def test_endpoint_examples():
    s = mm.endpoints(0.25, 5)
    assert s.scenario == mm.ONE_SATURATED
    assert (s.a, s.b) == pytest.approx((1 / 3, 3), abs=1e-15)
    assert mm.endpoints_scenario_two(0.25, 3) == pytest.approx((1 / 3, 3), abs=1e-15)
    s = mm.endpoints(0.25, 1)
    assert s.a == pytest.approx(2 / 3) and s.b == pytest.approx(2 / 3)
    with pytest.raises(DomainError):
        mm.endpoints(0.25, 0.9)


@pytest.mark.parametrize("a", [0.25, 0.5, 0.75])
def test_scenario_boundary(a):
    R_c = v_critical(a)[1]
    assert mm.endpoints(a, R_c).b == pytest.approx(R_c, abs=1e-12)
    assert mm.endpoints_scenario_two(a, R_c)[1] == pytest.approx(R_c, abs=1e-12)
    assert mm.endpoints(a, R_c * (1 - 1e-9)).scenario == mm.TWO_SATURATED


@given(solutions())
def test_solution_invariants(sol):
    assert 0 < sol.a < sol.b <= sol.R + 1e-12
    if sol.scenario == mm.ONE_SATURATED:
        assert sol.a * sol.b == pytest.approx(1, abs=1e-12)
    else:
        lhs = math.sqrt(sol.a * sol.b) + math.sqrt((sol.R - sol.a) * (sol.R - sol.b))
        assert lhs == pytest.approx(1, abs=1e-12)


@given(solutions())
def test_density_bounds(sol):
    vals = [mm.density(sol, float(m)) for m in np.linspace(0, sol.R, 1000)]
    assert min(vals) >= 0 and max(vals) <= 1


def test_density_edges():
    s1, s2 = mm.endpoints(0.25, 5), two_sat(0.25)
    for s in (s1, s2):
        assert mm.density(s, s.a + 1e-12) == pytest.approx(1, abs=1e-5)
    assert mm.density(s1, s1.b - 1e-12) == pytest.approx(0, abs=1e-5)
    assert mm.density(s2, s2.b - 1e-12) == pytest.approx(1, abs=1e-5)
    with pytest.raises(DomainError):
        mm.density(s1, 5.5)


def test_boundary_density_finite():
    sol = mm.endpoints(0.25, 3)
    assert all(math.isfinite(r) for _, r in mm.sample_density(sol, 50))


@pytest.mark.parametrize("R", [5, 3, 2, 1.2])
def test_normalization_and_moment(R):
    sol = mm.endpoints(0.25, R)
    assert mm.normalization(sol) == pytest.approx(1, abs=1e-8)
    e_f, e_q = mm.first_moment_check(sol)
    assert e_f == pytest.approx(e_q, abs=1e-8)


def test_first_moment_values():
    assert mm.endpoints(0.25, 5).E == pytest.approx(5 / 6, abs=1e-14)
    # (1 + alpha) / (2 (1 - alpha)) for every one-saturated alpha
    for a in (0.1, 0.5, 0.8):
        assert mm.endpoints(a, 100).E == pytest.approx((1 + a) / (2 * (1 - a)), abs=1e-12)
    R_c = 3.0
    assert mm.endpoints(0.25, R_c * (1 - 1e-13)).E == pytest.approx(5 / 6, abs=1e-6)


@pytest.mark.parametrize("sol", [mm.endpoints(0.25, 5), mm.endpoints(0.25, 2)], ids=["I", "II"])
def test_resolvent_asymptotics(sol):
    z = 1e6
    assert abs(z * mm.resolvent(sol, z) - 1) <= 1e-5
    z = 1e4
    assert (z * z * (mm.resolvent(sol, z) - 1 / z)).real == pytest.approx(sol.E, abs=1e-3)
    c = mm.laurent_coefficients(sol, 3)
    assert abs(c[0]) < 1e-10 and abs(c[1] - 1) < 1e-10 and abs(c[2] - sol.E) < 1e-10


def test_resolvent_rejects_cut():
    sol = mm.endpoints(0.25, 5)
    with pytest.raises(mm.CutEvaluationError):
        mm.resolvent(sol, 1.0)


@pytest.mark.parametrize("sol", [mm.endpoints(0.25, 5), two_sat(0.5)], ids=["I", "II"])
def test_density_from_resolvent_jump(sol):
    for mu in np.linspace(sol.a, sol.b, 9)[1:-1]:
        assert mm.density_from_resolvent(sol, mu) == pytest.approx(mm.density(sol, mu), abs=1e-8)
        # the saddle-point equation on the cut
        assert mm.resolvent_real_part_on_cut(sol, mu) == pytest.approx(-0.5 * math.log(sol.alpha), abs=1e-6)


@pytest.mark.parametrize("sol", [mm.endpoints(0.25, 5), two_sat(0.25)], ids=["I", "II"])
def test_h_equation(sol):
    # H(mu+i0) + H(mu-i0) matches its prescribed right-hand side on the cut
    for mu in np.linspace(sol.a, sol.b, 7)[1:-1]:
        eps = 1e-9
        s = mm.auxiliary_h(sol, complex(mu, eps)) + mm.auxiliary_h(sol, complex(mu, -eps))
        assert s.real == pytest.approx(mm.h_jump_target(sol, mu), abs=1e-6)


def test_master_integral_examples():
    lhs, rhs = mm.appendix_b_integral_check(1, 2, 0, 0.5, 4)
    assert lhs == pytest.approx(rhs, abs=1e-8)
    assert mm.appendix_b_integral_check(1, 2, 0.3, 0.3, 5) == pytest.approx((0, 0), abs=1e-14)
    with pytest.raises(mm.UnsupportedCaseError):
        mm.appendix_b_integral_check(1, 2, 0.5, 3, 5)


@pytest.mark.parametrize("R,z", [(5, 5.0), (5, -0.7), (2, 5.5), (2, -0.7)])
def test_resolvent_from_integral(R, z):
    sol = mm.endpoints(0.25, R)
    assert mm.resolvent_from_integral(sol, z) == pytest.approx(mm.resolvent(sol, z), abs=1e-8)


@given(st.integers(0, 2**32 - 1), st.sampled_from(["left", "right"]))
def test_master_integral_random(seed, branch):
    rng = np.random.default_rng(seed)
    for case in mm.random_master_integral_cases(rng, 3, branch):
        lhs, rhs = mm.appendix_b_integral_check(*case)
        assert lhs == pytest.approx(rhs, abs=1e-8)


def test_phi_from_moment():
    grid = np.linspace(0.1, 0.9, 9)
    R = 50.0
    ref = [mm.phi_closed_form(a, R) for a in grid]
    assert mm.phi_from_moment(grid, R) == pytest.approx(ref, abs=1e-6)
    R = 2.0
    grid = np.array([0.3, 0.6, 0.9])
    ref = [mm.phi_closed_form(a, R) for a in grid]
    for anchor in ("auto", "zero", "one"):
        assert mm.phi_from_moment(grid, R, anchor=anchor) == pytest.approx(ref, abs=1e-5)
    with pytest.raises(DomainError):
        mm.phi_from_moment([0.0, 0.5], R)
