"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import cmath
import json
import math
import time

import numpy as np
import pytest

from fourier_dunkl import cli, dunkl, measure, specfun, weights
from fourier_dunkl._core import gamma

TRIG_CONST = 2.0 ** (-0.25) * math.pi**0.25


def report(k, text):
    print(f"ACCEPTANCE {k}: PASS - {text}")


def test_criterion_1_orthonormality(systems, rules):
    t0 = time.time()
    worst = 0.0
    for a in (-0.75, -0.5, 0.0, 2.0):
        system = systems(a, 17)
        rule = rules(a, 128)
        rows = np.array([dunkl.eval_e(system, j, rule.nodes) for j in range(-16, 17)])
        gram = (rows * rule.weights) @ rows.conj().T
        worst = max(worst, float(np.max(np.abs(gram - np.eye(33)))))
    elapsed = time.time() - t0
    assert worst <= 1e-8
    assert elapsed <= 60.0
    report(1, f"orthonormality residual {worst:.2e} (<= 1e-8) in {elapsed:.1f}s (<= 60s)")


def test_criterion_2_trig_reduction(systems):
    system = systems(-0.5, 11)
    xs = np.linspace(-0.99, 0.99, 81)
    worst = 0.0
    for j in range(-10, 11):
        expect = TRIG_CONST * np.exp(1j * math.pi * j * xs)
        got = dunkl.eval_e(system, j, xs)
        worst = max(worst, float(np.max(np.abs(got - expect))))
    assert worst <= 1e-10
    zero_err = max(abs(system.zeros.zeros[j - 1] - j * math.pi) for j in range(1, 12))
    assert zero_err <= 1e-12
    report(2, f"trig reduction {worst:.2e} (<= 1e-10), zeros off pi-grid by {zero_err:.2e} (<= 1e-12)")


def test_criterion_3_zero_accuracy():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40

    def series(z, terms=220):
        # truncated power series of J_1(z)/z in extended precision
        q = mpmath.mpf(z) ** 2 / 4
        term = mpmath.mpf(1) / 2
        total = term
        for n in range(1, terms):
            term *= -q / (n * (n + 1))
            total += term
        return total

    def bisect(lo, hi):
        flo = series(lo)
        for _ in range(140):
            mid = (lo + hi) / 2
            fm = series(mid)
            if (fm < 0) == (flo < 0):
                lo, flo = mid, fm
            else:
                hi = mid
        return float((lo + hi) / 2)

    table = specfun.build_zero_table(0.0, 10)
    worst = 0.0
    for j in range(1, 11):
        guess = table.zeros[j - 1]
        oracle = bisect(mpmath.mpf(guess) - mpmath.mpf("0.5"), mpmath.mpf(guess) + mpmath.mpf("0.5"))
        worst = max(worst, abs(guess - oracle))
    assert worst <= 1e-9
    report(3, f"first 10 zeros of the order-1 Bessel function within {worst:.2e} (<= 1e-9) of the series-bisection oracle")


def test_criterion_4_kernel_identity(systems, rng):
    # closed sum form vs direct sesquilinear sum on 200 random triples
    alphas = [-0.9, -0.6, -0.5, -0.25, 0.0, 0.5, 1.0, 2.0]
    worst_rel = 0.0
    count = 0
    while count < 200:
        a = float(rng.choice(alphas))
        system = systems(a, 21)
        x, y = (float(v) for v in rng.uniform(-0.95, 0.95, 2))
        if abs(x) < 1e-3 or abs(y) < 1e-3:
            continue
        n = int(rng.integers(0, 21))
        direct = dunkl.kernel_direct(system, n, x, y)
        closed = dunkl.kernel_closed_sum_form(system, n, x, y)
        worst_rel = max(worst_rel, abs(direct - closed) / max(1.0, abs(direct)))
        count += 1
    assert worst_rel <= 1e-8

    # truncated-kernel integral identity: quadrature of the E-product vs the
    # modified-function pair expression
    worst_pair = 0.0
    count = 0
    while count < 50:
        a = float(rng.choice([-0.6, 0.0, 0.7]))
        system = systems(a, 13)
        x, y = (float(v) for v in rng.uniform(-0.85, 0.85, 2))
        if abs(x - y) < 0.05 or abs(x * y) < 5e-3:
            continue
        m_trunc = system.zeros.midpoint(int(rng.integers(1, 12)))
        rule = measure.build_rule(a, min(200, max(128, int(2 * m_trunc))))
        re1, im1 = specfun._e_alpha_imag_axis_arrays(a, m_trunc * x * rule.nodes)
        re2, im2 = specfun._e_alpha_imag_axis_arrays(a, m_trunc * y * rule.nodes)
        quad = m_trunc ** (2 * a + 2) * complex(np.sum(rule.weights * (re1 + 1j * im1) * (re2 - 1j * im2)))
        pair = dunkl.b_function(system, m_trunc, x, y) + dunkl.b_function(system, m_trunc, y, x)
        worst_pair = max(worst_pair, abs(quad.real - pair), abs(quad.imag))
        count += 1
    assert worst_pair <= 1e-6
    report(4, f"kernel forms agree to {worst_rel:.2e} rel (<= 1e-8) on 200 triples; "
              f"pair-integral identity within {worst_pair:.2e} (<= 1e-6) on 50 points")


def test_criterion_5_kernel_bound_stability(systems):
    for a in (-0.75, 0.0):
        system = systems(a, 41)
        xs = np.linspace(-0.85, 0.85, 161)
        mask = (np.abs(xs[:, None] - xs[None, :]) >= 1e-3) & (
            np.abs(xs[:, None] * xs[None, :]) >= 1e-3
        )
        fitted = []
        for n in (8, 16, 32):
            residual, bound = dunkl.remainder_grid(system, n, xs, xs)
            fitted.append(float(np.max((residual / bound)[mask])))
        variation = max(fitted) / min(fitted) - 1.0
        assert variation <= 0.25, (a, fitted)
        report(5, f"alpha={a}: fitted constants {[f'{c:.3f}' for c in fitted]} vary {variation:.1%} (<= 25%)")


def test_criterion_6_convergence_dichotomy():
    estimates = {}
    for p in (2.0, 3.0, 6.0):
        cfg = cli.ExperimentConfig(alpha=0.0, p=p, n_max=64, order=200, seed=1).validate()
        estimates[p] = {n: est for n, est, _ in cli.norm_growth_rows(cfg)}
    for n, est in estimates[2.0].items():
        assert 0.98 <= est <= 1.02, (n, est)
    slope3 = math.log(estimates[3.0][64] / estimates[3.0][32]) / math.log(2.0)
    slope6 = math.log(estimates[6.0][64] / estimates[6.0][32]) / math.log(2.0)
    assert slope3 <= 0.05
    assert slope6 >= 0.05
    report(6, f"p=2 projection norm in [0.98,1.02]; last-octave slopes p=3: {slope3:.3f} (<= 0.05), "
              f"p=6: {slope6:.3f} (>= 0.05)")


def test_criterion_7_corollary_predicate_grid():
    counterexamples = 0
    for a in (-0.75, -0.5, 0.0, 1.0):
        for p in (1.5, 2.0, 3.0, 6.0):
            for b in (-0.4, 0.0, 0.4):
                u = weights.PowerWeight(((0.0, b),))
                cor = weights.corollary_predicate(a, p, b, 0.0, 0.0)
                cond = weights.theorem_conditions(a, p, u, u, 1.0)
                applicable = cond["thm1"] if a >= -0.5 else cond["thm2"]
                if cor and not applicable:
                    counterexamples += 1
                if cor and not cond["thm3_necessary"]:
                    counterexamples += 1
    assert counterexamples == 0
    report(7, "corollary implies the applicable theorem condition and the necessary "
              "integrability conditions on the full 48-point grid (0 counterexamples)")


def test_criterion_8_ap_cross_validation():
    checked = 0
    for g in (-0.9, -0.5, 0.0, 0.5, 0.9, 1.5):
        for p in (1.5, 2.0, 3.0):
            if min(abs(g + 1.0), abs(g - (p - 1.0))) < 0.05:
                continue
            w = weights.PowerWeight(((0.0, g),))
            analytic = weights.power_pair_in_ap(w, w, p)
            numeric = weights.ap_numeric(w, w, p, budget=18)
            assert numeric.verdict == ("satisfied" if analytic else "violated"), (g, p)
            if analytic:
                nested = weights.ap_numeric(w, w, p, delta=1.0, budget=18)
                deeper = weights.ap_numeric(w, w, p, delta=1.2, budget=18)
                if deeper.verdict == "satisfied":
                    assert nested.verdict == "satisfied"
            checked += 1
    assert checked >= 12
    report(8, f"numeric and analytic Muckenhoupt verdicts agree on {checked} grid points; "
              "delta-power membership implies the delta=1 membership throughout")


def test_criterion_9_operator_oracles(rng):
    a, b = -0.35, 0.55
    ind = lambda y: ((np.asarray(y) > a) & (np.asarray(y) < b)).astype(float)
    worst_h = 0.0
    count = 0
    while count < 20:
        x = float(rng.uniform(-0.99, 0.99))
        if a - 0.02 <= x <= b + 0.02:
            continue
        got = weights.hilbert(ind, x, breakpoints=(a, b))
        worst_h = max(worst_h, abs(got - math.log(abs((x - a) / (x - b)))))
        count += 1
    assert worst_h <= 1e-6

    worst_c = max(
        abs(weights.calderon(lambda y: np.ones_like(y), x) - (1.0 + math.log(2.0 / x)))
        for x in np.linspace(0.05, 1.95, 20)
    )
    assert worst_c <= 1e-8

    f = weights.random_test_function((-1.0, 1.0), 7, rng)
    f1 = lambda t: f(1.0 - np.asarray(t, dtype=np.float64))
    for x in np.linspace(-0.9, 0.9, 13):
        jval = weights.operator_j(f, float(x), breakpoints=f.breakpoints)
        assert abs(jval) <= weights.calderon(f1, 1.0 - float(x)) + 1e-9
    report(9, f"Hilbert indicator oracle within {worst_h:.2e} (<= 1e-6), Calderon constant oracle "
              f"within {worst_c:.2e} (<= 1e-8), averaging-domination holds at 13 probe points")


def test_criterion_10_reproducibility(tmp_path):
    commands = [
        ["zeros", "--alpha", "0.3", "--nmax", "6"],
        ["norm-growth", "--alpha", "0", "--p", "3", "--nmax", "8", "--seed", "5"],
        ["convergence", "--alpha", "-0.5", "--p", "2", "--nmax", "10", "--f", "step"],
        ["kernel-sweep", "--alpha", "0", "--nlist", "4,8", "--gridsize", "11"],
        ["ap-check", "--alpha", "-0.75", "--p", "2", "--weight", "0.4,0,0", "--numeric"],
    ]
    for argv in commands:
        out1 = tmp_path / "run1.out"
        out2 = tmp_path / "run2.out"
        assert cli.run(argv + ["--out", str(out1)]) == 0
        assert cli.run(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.stat().st_size > 0
    report(10, "all five commands byte-identical across repeated runs with fixed config+seed")
