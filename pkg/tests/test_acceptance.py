"""Exit criteria for the package, one test (or parametrized group) per criterion.

Every test records a one-line PASS/FAIL verdict, printed in the pytest
terminal summary under "acceptance criteria".
"""
import math
import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES
from holderopt import AlgoParams, compute_C0, constant, holder_norm, needle, optimize, suite
from holderopt import analysis as an
from holderopt.battery import code_roundtrip_error
from holderopt.geometry import wrap_domain

CENTERS = (0.3, 0.65, 0.45)
RATE_TS = [2**k for k in range(6, 15)]


def verdict(label, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
    return ok


def average_regret_slope(obj, make_params, Ts=RATE_TS):
    pairs = [(T, an.regrets(optimize(obj, make_params(T))).average) for T in Ts]
    return an.rate_fit(pairs)[0]


# 1 -------------------------------------------------------------------------

_rate_clock = {"elapsed": 0.0}


@pytest.mark.parametrize("n, alpha", [(1, 0.5), (2, 0.5), (2, 0.8), (3, 0.5)])
def test_c01_rate_reproduction(n, alpha):
    obj = holder_norm(n, 1.0, alpha, CENTERS[:n])
    start = time.perf_counter()
    slope = average_regret_slope(obj, lambda T: AlgoParams.minimax(n, T, 1.0, 1.0, alpha))
    _rate_clock["elapsed"] += time.perf_counter() - start
    target = -alpha / n
    ok = abs(slope - target) <= 0.15
    verdict(f"C1 rate n={n} alpha={alpha}", ok,
            f"slope {slope:.4f}, target {target:.4f} +/- 0.15 (cumulative runtime {_rate_clock['elapsed']:.1f}s)")
    assert ok, f"fitted slope {slope:.4f} outside {target:.4f} +/- 0.15"
    assert _rate_clock["elapsed"] < 30.0


# 2 -------------------------------------------------------------------------


@pytest.mark.parametrize("obj", suite(), ids=lambda o: o.name)
def test_c02_cumulative_regret_lemma(obj):
    T = 2**12
    C0 = compute_C0(1.0, obj.C, obj.alpha, obj.n, T)
    trace = optimize(obj, AlgoParams.explicit(obj.n, T, C0))
    eps0 = an.epsilon0_exact(C0, obj.C, obj.alpha, an.theta_diameter(obj.n))
    measured, bound = an.cumulative_regret_curves(trace, obj.C, obj.alpha, C0, eps0)
    violations = int(np.count_nonzero(measured > bound * (1 + 1e-9)))
    verdict(f"C2 cumulative regret {obj.name}", violations == 0,
            f"{violations} violations over {T} prefixes, min slack ratio {np.min((bound - measured) / bound):.3f}")
    assert violations == 0


# 3 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c03_edge_norm_sums(n):
    alpha = 0.5
    T = 2**14
    trace = optimize(holder_norm(n, 1.0, alpha, CENTERS[:n]), AlgoParams.minimax(n, T, 1.0, 1.0, alpha))
    violations = 0
    for beta in (alpha, 1.0):
        rep = an.lemma4_report(trace, beta, rtol=1e-12)
        violations += 0 if rep.satisfied else 1
    verdict(f"C3 edge-norm sums n={n}", violations == 0, f"beta in {{{alpha}, 1}}, all prefixes to {T}")
    assert violations == 0


def test_c03_spot_value():
    const = optimize(constant(2), AlgoParams.explicit(2, 4, 1.0))
    bound = an.vt_sum_bound(1.0, math.sqrt(0.75), 4, 2)
    measured = const.edge_norms.sum()
    ok = abs(bound - 5.913592) < 1e-6 and abs(measured - 2.523782) < 1e-6 and measured <= bound
    verdict("C3 spot n=2 beta=1 T=4", ok, f"bound {bound:.6f} measured {measured:.6f}")
    assert ok


# 4 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c04_exact_norm_decay(n):
    trace = optimize(holder_norm(n, 1.0, 0.5, CENTERS[:n]), AlgoParams.minimax(n, 2**14, 1.0, 1.0, 0.5))
    rep = an.norm_decay_report(trace, rtol=1e-12)
    verdict(f"C4 norm decay n={n}", rep.satisfied, f"max relative error {rep.measured:.3e} (tol 1e-12)")
    assert rep.satisfied


# 5 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c05_partition_volume(n):
    spec = wrap_domain(n)
    T = 2**12
    checkpoints = set(np.random.default_rng(n).choice(np.arange(1, T + 1), size=100, replace=False).tolist())
    worst = []

    def probe(t, frontier):
        if t in checkpoints:
            worst.append(an.verify_partition(frontier.snapshot(), spec, pairwise=False)[0].measured)

    optimize(holder_norm(n, 1.0, 0.5, CENTERS[:n]), AlgoParams.minimax(n, T, 1.0, 1.0, 0.5), callback=probe)
    ok = len(worst) == 100 and max(worst) <= 1e-9
    verdict(f"C5 partition volume n={n}", ok, f"100 checkpoints, max relative error {max(worst):.3e}")
    assert ok


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c05_partition_disjoint(n):
    spec = wrap_domain(n)
    overlaps = []

    def probe(t, frontier):
        overlaps.append(an.verify_partition(frontier.snapshot(), spec, pairwise=True)[1].measured)

    optimize(holder_norm(n, 1.0, 0.5, CENTERS[:n]), AlgoParams.minimax(n, 512, 1.0, 1.0, 0.5), callback=probe)
    ok = len(overlaps) == 512 and sum(overlaps) == 0
    verdict(f"C5 partition disjoint n={n}", ok, f"all pairs at each of {len(overlaps)} steps, {sum(overlaps)} overlaps")
    assert ok


# 6 -------------------------------------------------------------------------


def test_c06_epsilon0_lemma():
    grid = (0.1, 0.5, 1.0, 5.0, 10.0)
    alphas = [k / 10 for k in range(1, 10)]
    D = math.sqrt(2.0)
    d = np.linspace(0.0, D, 1_000_000)
    above = 0
    worst_gap = 0.0
    for C0 in grid:
        for C in grid:
            for alpha in alphas:
                exact = an.epsilon0_exact(C0, C, alpha, D)
                above += exact > an.epsilon0_bound(C0, C, alpha) + 1e-9
                oracle = max(0.0, float(np.max(C * d**alpha - C0 * d)))
                worst_gap = max(worst_gap, abs(exact - oracle))
    spots = (
        abs(an.epsilon0_exact(1, 1, 0.5, D) - 0.25) < 1e-12
        and abs(an.epsilon0_bound(1, 1, 0.5) - 1.0) < 1e-12
        and abs(an.epsilon0_exact(10, 1, 0.5, D) - 0.025) < 1e-12
        and abs(an.epsilon0_bound(10, 1, 0.5) - 0.1) < 1e-12
    )
    ok = above == 0 and worst_gap <= 1e-6 and spots
    verdict("C6 eps0 lemma", ok, f"{above} bound violations on 225 points, max oracle gap {worst_gap:.2e}")
    assert ok


# 7 -------------------------------------------------------------------------


def test_c07_score_offset_invariance():
    T = 2**10
    objs = [holder_norm(2, 1.0, 0.5, CENTERS[:2]), suite()[-1], needle(2, 1.0, 0.5, eps=0.05)]
    differing = 0
    for obj in objs:
        params = AlgoParams.minimax(obj.n, T, 1.0, obj.C, obj.alpha)
        a = optimize(obj, params)
        b = optimize(obj, params, score_offset=12.34)
        differing += int(np.count_nonzero(np.any(a.x_omega != b.x_omega, axis=1)))
    verdict("C7 score offset invariance", differing == 0, f"{differing} differing queries over 3 x {T}")
    assert differing == 0


# 8 -------------------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_c08_code_roundtrip(n):
    spec = wrap_domain(n)
    last = {}
    trace = optimize(holder_norm(n, 1.0, 0.5, CENTERS[:n]), AlgoParams.minimax(n, 2048, 1.0, 1.0, 0.5),
                     callback=lambda t, f: last.update(frontier=f))
    err = code_roundtrip_error(trace, last["frontier"], spec)
    ok = err <= 1e-12
    verdict(f"C8 code round trip n={n}", ok, f"{trace.T + len(last['frontier'])} candidates, max error {err:.1e}")
    assert ok


# 9 -------------------------------------------------------------------------


def test_c09_needle_equality():
    obj = needle(2, 1.0, 0.5, x_star=(0.447214, 0.447214), eps=0.001)
    params = AlgoParams.minimax(2, 256, 1.0, 1.0, 0.5)
    trace = optimize(obj, params)
    avg = an.regrets(trace).average
    bound_ok = an.cumulative_regret_bound(trace, 1.0, 0.5, params.C0)[0].satisfied
    ok = bool(np.all(trace.values == 0.0)) and abs(avg - 0.031623) < 1e-6 and abs(avg - 0.001**0.5) <= 1e-12 and bound_ok
    verdict("C9 needle equality", ok, f"average regret {avg:.12f} vs eps^alpha {0.001 ** 0.5:.12f}")
    assert ok


# 10 ------------------------------------------------------------------------


def test_c10_misspecification_ordering():
    n, alpha = 2, 0.5
    obj = holder_norm(n, 1.0, alpha, CENTERS[:n])
    slopes = {ap: average_regret_slope(obj, lambda T, ap=ap: AlgoParams.misspecified(n, T, ap)) for ap in (0.1, alpha, 0.9)}
    ok = slopes[alpha] <= slopes[0.1] - 0.02 and slopes[alpha] <= slopes[0.9] - 0.02
    detail = ", ".join(f"alpha'={ap}: {s:.4f}" for ap, s in slopes.items())
    verdict("C10 misspecification ordering", ok, detail)
    assert ok, detail
