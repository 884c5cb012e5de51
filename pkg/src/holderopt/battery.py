"""The desk-scale verification battery behind ``holderopt verify``.

``tolerance`` is the relative slack granted to inequality checks (regret and
edge-norm bounds, eps0 ordering). Equality checks carry their own fixed
tolerances: 1e-12 relative for norm decay and code round trips, 1e-9 for
partition volume, 1e-6 absolute for the eps0 grid oracle, 1e-12 for the
needle equality case, and exact match for offset invariance.
"""
from __future__ import annotations

import numpy as np

from . import analysis as an
from .frontier import decode
from .geometry import wrap_domain
from .objectives import holder_norm, needle, suite
from .optimizer import AlgoParams, compute_C0, optimize

CENTERS = (0.3, 0.65, 0.45)


class _PartitionProbe:
    """Frontier callback that checks the partition at chosen steps."""

    def __init__(self, spec, steps, pairwise_limit=513, largest=True):
        self.spec = spec
        self.steps = set(steps)
        self.pairwise_limit = pairwise_limit
        self.largest = largest
        self.volume_err = 0.0
        self.overlaps = 0
        self.checked = 0
        self.final = None

    def __call__(self, t, frontier):
        self.final = frontier
        if t not in self.steps:
            return
        snap = frontier.snapshot()
        reports = an.verify_partition(snap, self.spec, pairwise=len(frontier) <= self.pairwise_limit, largest=self.largest)
        self.volume_err = max(self.volume_err, reports[0].measured)
        if len(reports) > 1:
            self.overlaps += int(reports[1].measured)
        self.checked += 1


def code_roundtrip_error(trace, frontier, spec, largest=True) -> float:
    """Max abs deviation between stored boxes and boxes rebuilt from their codes."""
    err = 0.0
    for i, code in enumerate(trace.codes):
        r = decode(code, spec, largest)
        err = max(err, float(np.max(np.abs(np.array(r.center) - trace.x_theta[i]))))
        err = max(err, float(np.max(np.abs(np.array(r.edge) - trace.edges[i]))))
    for cand in frontier:
        r = decode(cand.code, spec, largest)
        err = max(err, max(abs(a - b) for a, b in zip(r.center + r.edge, cand.rect.center + cand.rect.edge)))
    return err


def dimension_checks(n, T=1024, alpha=0.5, bad_split=False, tolerance=1e-9, seed=0):
    spec = wrap_domain(n)
    obj = holder_norm(n, 1.0, alpha, CENTERS[:n])
    params = AlgoParams.minimax(n, T, 1.0, obj.C, alpha)
    rng = np.random.default_rng(seed)
    steps = set(range(1, min(T, 64) + 1)) | set(rng.integers(1, T + 1, size=32).tolist()) | {T}
    probe = _PartitionProbe(spec, steps, largest=not bad_split)
    trace = optimize(obj, params, callback=probe, largest_axis=not bad_split)

    out = [
        an.lemma4_report(trace, alpha, rtol=tolerance),
        an.lemma4_report(trace, 1.0, rtol=tolerance),
        an.norm_decay_report(trace),
        an.BoundReport(f"partition_volume[n={n},checkpoints={probe.checked}]", probe.volume_err, 1e-9,
                       probe.volume_err <= 1e-9, 1e-9 - probe.volume_err),
        an.BoundReport(f"partition_disjoint[n={n}]", probe.overlaps, 0, probe.overlaps == 0, -probe.overlaps),
        an.BoundReport(f"frontier_size[n={n}]", len(probe.final), T + 1, len(probe.final) == T + 1,
                       T + 1 - len(probe.final)),
    ]
    out.extend(an.cumulative_regret_bound(trace, obj.C, alpha, params.C0, rtol=tolerance))
    out.append(an.per_sample_regret_report(trace, obj.C, alpha, params.C0, rtol=tolerance))
    err = code_roundtrip_error(trace, probe.final, spec, largest=not bad_split)
    out.append(an.BoundReport(f"code_roundtrip[n={n}]", err, 1e-12, err <= 1e-12, 1e-12 - err))
    return out


def epsilon0_checks(tolerance=1e-9):
    worst = -np.inf
    for C0 in (0.1, 0.5, 1.0, 5.0, 10.0):
        for C in (0.1, 0.5, 1.0, 5.0, 10.0):
            for alpha in np.arange(1, 10) / 10:
                D = an.theta_diameter(2)
                worst = max(worst, an.epsilon0_exact(C0, C, alpha, D) - an.epsilon0_bound(C0, C, alpha))
    out = [an.check("epsilon0_exact<=bound[grid 5x5x9]", worst, 0.0, atol=tolerance)]
    gap = 0.0
    for C0, C, alpha in ((1.0, 1.0, 0.5), (10.0, 1.0, 0.5), (0.5, 2.0, 0.3), (5.0, 1.0, 0.8)):
        D = float(np.sqrt(2.0))
        gap = max(gap, abs(an.epsilon0_exact(C0, C, alpha, D) - an.epsilon0_grid(C0, C, alpha, D)))
    out.append(an.BoundReport("epsilon0_grid_oracle[1e6 pts]", gap, 1e-6, gap <= 1e-6, 1e-6 - gap))
    return out


def offset_invariance_check(T=1024, offset=12.34):
    mismatches = 0
    for obj in (holder_norm(2, 1.0, 0.5, CENTERS[:2]), needle(2, 1.0, 0.5, eps=0.05), suite()[-1]):
        params = AlgoParams.minimax(obj.n, T, 1.0, obj.C, obj.alpha)
        a = optimize(obj, params)
        b = optimize(obj, params, score_offset=offset)
        mismatches += int(np.count_nonzero(np.any(a.x_omega != b.x_omega, axis=1)))
    return an.BoundReport("score_offset_invariance[3 objectives]", mismatches, 0, mismatches == 0, -mismatches)


def needle_check(T=256, tolerance=1e-9):
    obj = needle(2, 1.0, 0.5, eps=0.001)
    params = AlgoParams.minimax(2, T, 1.0, 1.0, 0.5)
    trace = optimize(obj, params)
    avg = an.regrets(trace).average
    err = abs(avg - 0.001**0.5)
    out = [an.BoundReport("needle_average_regret=C*eps^alpha", err, 1e-12, err <= 1e-12, 1e-12 - err)]
    out.extend(an.cumulative_regret_bound(trace, 1.0, 0.5, params.C0, rtol=tolerance)[:1])
    return out


def suite_checks(T=512, tolerance=1e-9):
    out = []
    for obj in suite():
        C0 = compute_C0(1.0, obj.C, obj.alpha, obj.n, T)
        trace = optimize(obj, AlgoParams.explicit(obj.n, T, C0))
        out.append(an.cumulative_regret_bound(trace, obj.C, obj.alpha, C0, rtol=tolerance)[0])
    return out


def run_battery(T=1024, bad_split=False, tolerance=1e-9):
    reports = []
    for n in (1, 2, 3):
        reports.extend(dimension_checks(n, T, bad_split=bad_split, tolerance=tolerance))
    reports.extend(epsilon0_checks(tolerance))
    reports.append(offset_invariance_check(T))
    reports.extend(needle_check(tolerance=tolerance))
    reports.extend(suite_checks(tolerance=tolerance))
    return reports
