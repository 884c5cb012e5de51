"""Best-first global optimization of Hölder-continuous functions on [0, 1]^n.

Queries follow a fixed split rule on a box whose sides form a 2^(1/n)
ladder, so each query needs no auxiliary optimization; the package also
ships the numeric checks for the optimizer's regret guarantees.
"""
from .analysis import (
    BoundReport,
    RegretReport,
    cumulative_regret_bound,
    epsilon0_bound,
    epsilon0_exact,
    rate_fit,
    regrets,
    theorem_rate_bound,
    verify_partition,
    vt_sum_bound,
)
from .baselines import grid_search, random_search
from .frontier import Candidate, EmptyFrontierError, Frontier, decode, encode, score
from .geometry import DomainSpec, HyperRect, initial_rect, project_to_domain, rect_volume, split_rect, wrap_domain
from .objectives import ObjectiveSpec, constant, holder_norm, multi_basin, needle, rescale_box, suite
from .optimizer import AlgoParams, ObjectiveError, QueryRecord, Trace, best_so_far, compute_C0, optimize

__version__ = "0.1.0"
