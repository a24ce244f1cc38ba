"""Acceptance criteria, each at its stated tolerance.

Every test prints exactly one ``[criterion N] PASS|FAIL`` line (also
collected into the terminal summary) and then asserts.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from aztec_efp import asymptotics as asy
from aztec_efp import matrix_model as mm
from aztec_efp.closed_forms import hahn_determinant, meixner_determinant
from aztec_efp.efp_exact import ModelParams, efp_hankel, efp_oracle, hankel_matrix
from aztec_efp.exact_algebra import AlphaPoly, det_fraction_free, one_minus_alpha_pow
from aztec_efp.toda import toda_reconstruct, toda_residual_r, toda_residual_s

from conftest import ACCEPTANCE_LINES


def verdict(capsys, n, ok, detail):
    line = f"[criterion {n:2d}] {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_criterion_01_special_values(capsys):
    t0 = time.perf_counter()
    bad = []
    for r in range(1, 11):
        if efp_hankel(ModelParams(r, 1)).as_polynomial != AlphaPoly.constant(1) - AlphaPoly.monomial(r):
            bad.append((r, 1))
        if efp_hankel(ModelParams(r, r)).as_polynomial != one_minus_alpha_pow(r * r):
            bad.append((r, r))
    dt = time.perf_counter() - t0
    verdict(capsys, 1, not bad and dt < 1.0,
            f"f_r1 = 1-a^r, f_rr = (1-a)^(r^2) exact for r<=10; mismatches={bad}; {dt:.2f}s (<1s)")


def test_criterion_02_oracle_equivalence(capsys):
    t0 = time.perf_counter()
    bad, n = [], 0
    for a in (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)):
        for r in range(1, 7):
            for s in range(0, r + 1):
                p = ModelParams(r, s, a)
                n += 1
                if efp_hankel(p).value_exact != efp_oracle(p).value_exact:
                    bad.append((r, s, a))
    dt = time.perf_counter() - t0
    verdict(capsys, 2, not bad and dt < 10.0,
            f"hankel == matrix-model sum on {n} (r,s,alpha) points; mismatches={len(bad)}; {dt:.2f}s (<10s)")


def test_criterion_03_toda(capsys):
    t0 = time.perf_counter()
    bad = []
    for r in range(2, 13):
        for s in range(1, r):
            if not toda_residual_s(r, s).holds:
                bad.append(("s", r, s))
            if not toda_residual_r(r, s).holds:
                bad.append(("r", r, s))
    recon_bad = [r for r in range(1, 11)
                 if toda_reconstruct(r, r) != [efp_hankel(ModelParams(r, s)).as_polynomial
                                               if s else AlphaPoly.constant(1) for s in range(r + 1)]]
    dt = time.perf_counter() - t0
    verdict(capsys, 3, not bad and not recon_bad and dt < 60.0,
            f"toda residuals zero for 1<=s<r<=12 (nonzero: {bad}); reconstruction r<=10 "
            f"(mismatch: {recon_bad}); {dt:.1f}s (<60s)")


def _meixner_deviation(s, a, r):
    return abs(det_fraction_free(hankel_matrix(r, s, a)) / meixner_determinant(s, a) - 1)


def test_criterion_04_closed_determinants(capsys):
    hahn_bad = [(s, r) for r in range(1, 11) for s in range(1, r + 1)
                if det_fraction_free(hankel_matrix(r, s, Fraction(1))) != hahn_determinant(s, r)]
    a = Fraction(1, 2)
    parts, ok_meixner = [], True
    for s in (2, 3):
        rs = list(range(s + 1, 41))
        scaled = {r: float(_meixner_deviation(s, a, r) / a**r) for r in rs}
        # K fitted on the first half of the range, bound tested on the rest
        K = max(v for r, v in scaled.items() if r <= 20)
        worst = max(v for r, v in scaled.items() if r > 20)
        held = worst <= K
        ok_meixner &= held
        # decay base of the deviation once a power-law prefactor is removed
        x = np.array(rs[-15:], dtype=float)
        y = np.log([scaled[r] * a**r for r in rs[-15:]])
        coef = np.linalg.lstsq(np.column_stack([np.ones_like(x), np.log(x), x]), y, rcond=None)[0]
        parts.append(f"s={s}: K(r<=20)={K:.3g}, max on 20<r<=40={worst:.3g} "
                     f"({'holds' if held else 'exceeds K'}); fitted base={math.exp(coef[2]):.4f}, "
                     f"prefactor r^{coef[1]:.2f}")
    ok = not hahn_bad and ok_meixner
    verdict(capsys, 4, ok, f"hahn exact for s<=r<=10 (mismatch: {hahn_bad}); meixner |ratio-1|<=K a^r: "
            + "; ".join(parts))


def test_criterion_05_transition_location(capsys):
    v, R = asy.v_critical(0.25)
    loc = abs(v - 1 / 3) <= 2 * np.spacing(1 / 3) and abs(R - 3) <= 2 * np.spacing(3.0)
    rng = np.random.default_rng(5)
    worst = 0.0
    for a in rng.uniform(0.001, 0.999, 20):
        e = asy.arctic_ellipse(float(a))
        worst = max(worst, abs(e.corner_fraction - e.contact_value))
    verdict(capsys, 5, loc and worst <= 1e-14,
            f"v_c(1/4)={v!r}, R_c={R!r}; max |v_c/(1+v_c) - (1-sqrt a)/2| over 20 alpha = {worst:.2e} (<=1e-14)")


def test_criterion_06_third_order(capsys):
    p = asy.sigma_profile(0.25)
    vc = p.v_c
    zeros = max(abs(p.sigma(vc)), abs(p.sigma_d1(vc)), abs(p.sigma_d2(vc)),
                abs(p.sigma_d1(vc + 1e-15)), abs(p.sigma_d2(vc + 1e-15)))
    h = 1e-4
    s = [p.sigma(vc + k * h) for k in range(4)]
    fd = (s[3] - 3 * s[2] + 3 * s[1] - s[0]) / h**3
    target = 1 / (vc * (1 - vc * vc))
    assert target == pytest.approx(27 / 8, rel=1e-12)
    rel = abs(fd - target) / target
    verdict(capsys, 6, zeros <= 1e-10 and rel <= 0.01,
            f"sigma, sigma', sigma'' at v_c+ = {zeros:.1e} (<=1e-10); forward-difference sigma'''(v_c+)="
            f"{fd:.4f} vs stated 1/(v_c(1-v_c^2))={target:.4f}: rel err {rel:.3f} (<=0.01); "
            f"analytic 2/(v_c(1-v_c^2))={2 * target:.4f}")


def test_criterion_07_ode(capsys):
    worst = {}
    for a in (0.25, 0.5, 0.75):
        vc = asy.v_critical(a)[0]
        vs = np.linspace(vc, 1, 102)[1:-1]
        worst[a] = max(asy.ode_residual(a, float(v)) for v in vs)
    m = max(worst.values())
    verdict(capsys, 7, m <= 1e-10, f"max ODE residual on 100 points x 3 alpha = {m:.2e} (<=1e-10)")


def test_criterion_08_finite_size(capsys):
    t0 = time.perf_counter()
    a = Fraction(1, 4)
    rs = [8, 16, 24, 32, 40]
    tab = asy.finite_size_extrapolate(a, Fraction(1, 2), rs)
    sig = asy.sigma_profile(0.25).sigma(0.5)
    errs = [abs(row[3] - sig) for row in tab.rows]
    mono = all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))
    lim_ok = abs(tab.limit - sig) <= 1e-2
    ones = asy.finite_size_estimates(a, Fraction(1), rs)
    target = -math.log(1 - 0.25)
    exact = all(f == (1 - a) ** (r * r) for r, _, f, _ in ones)
    floats = max(abs(est - target) for *_, est in ones)
    dt = time.perf_counter() - t0
    ok = mono and lim_ok and exact and floats <= 4 * np.spacing(target) and dt < 120
    verdict(capsys, 8, ok,
            f"errors {['%.2e' % e for e in errs]} monotone={mono}; extrapolated {tab.limit:.6f} vs "
            f"sigma(1/2)={sig:.6f} (|diff|={abs(tab.limit - sig):.1e} <=1e-2, fitted exponent {tab.exponent:.2f}); "
            f"v=1: f=(1-a)^(r^2) exactly={exact}, estimate off by {floats:.1e}; {dt:.1f}s (<120s)")


def test_criterion_09_matrix_model(capsys):
    s1 = mm.endpoints(0.25, 5.0)
    s2 = mm.endpoints(0.25, 1.2)
    norm = max(abs(mm.normalization(s) - 1) for s in (s1, s2))
    e1f, e1q = mm.first_moment_check(s1)
    e2f, e2q = mm.first_moment_check(s2)
    mom = max(abs(e1q - 5 / 6), abs(e1f - 5 / 6), abs(e2q - e2f))
    lau = 0.0
    for s in (s1, s2):
        c = mm.laurent_coefficients(s, 2)
        lau = max(lau, abs(c[1] - 1), abs(c[2] - s.E))
    bnd = 0.0
    for a in (0.25, 0.5, 0.75):
        R_c = asy.v_critical(a)[1]
        two = mm.endpoints_scenario_two(a, R_c)
        one = mm.endpoints(a, R_c)
        bnd = max(bnd, abs(two[0] - one.a), abs(two[1] - one.b))
    ok = norm <= 1e-8 and mom <= 1e-8 and lau <= 1e-5 and bnd <= 1e-12
    verdict(capsys, 9, ok, f"normalization {norm:.1e} (<=1e-8); first moments {mom:.1e} (<=1e-8); "
            f"1/z, E/z^2 coefficients {lau:.1e} (<=1e-5); endpoints at R_c {bnd:.1e} (<=1e-12)")


def test_criterion_10_master_integral(capsys):
    rng = np.random.default_rng(10)
    worst = {}
    for branch in ("left", "right"):
        cases = mm.random_master_integral_cases(rng, 20, branch)
        worst[branch] = max(abs(l - r) for l, r in (mm.appendix_b_integral_check(*c) for c in cases))
    verdict(capsys, 10, max(worst.values()) <= 1e-8,
            f"quadrature vs closed form, 20 cases each: c,d<=a {worst['left']:.1e}, c,d>=b {worst['right']:.1e} (<=1e-8)")
