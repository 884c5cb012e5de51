import numpy as np
import pytest
from hypothesis import given, strategies as st

from holderopt.analysis import verify_partition
from holderopt.frontier import EmptyFrontierError, Frontier, decode, dyadic_intervals, encode, score
from holderopt.geometry import HyperRect, initial_rect, split_rect, wrap_domain


def test_score_zero_coefficient():
    assert score(0.3, (0.1, 0.9), 0.0) == 0.3


def test_score_root_edge_n2():
    # 0.3 - 2 * sqrt(0.5 + 0.25)
    assert score(0.3, (0.70710678, 0.5), 2.0) == pytest.approx(-1.432051, abs=1e-6)


def test_score_n1_root():
    assert score(0.0, (0.5,), 1.0) == -0.5


def test_push_children_root_n2():
    f = Frontier()
    plus, minus = f.push_children(initial_rect(wrap_domain(2)), "", 0.0, 1.0)
    assert plus.score == minus.score == pytest.approx(-0.866025, abs=1e-6)
    assert (plus.code, minus.code) == ("1", "0")
    assert plus.insertion_index < minus.insertion_index
    assert len(f) == 2


def test_push_children_constant_score():
    f = Frontier()
    a, b = f.push_children(initial_rect(wrap_domain(1)), "", 5.0, 0.0)
    assert a.score == b.score == 5.0


def test_code_extension():
    f = Frontier()
    a, b = f.push_children(decode("10", wrap_domain(2)), "10", 0.0, 1.0)
    assert (a.code, b.code) == ("101", "100")


def test_pop_min_strict_minimum():
    f = Frontier()
    r = initial_rect(wrap_domain(1))
    for s in (-0.1, -0.5, -0.3, -0.2, -0.9):
        f.push(r, s, "")
    assert f.pop_min().insertion_index == 4


def test_pop_min_fifo_on_ties():
    f = Frontier()
    r = initial_rect(wrap_domain(1))
    f.push(r, 0.0, "")
    f.push(r, 0.0, "")
    f.pop_min()
    f.push_children(r, "", 1.0, 0.0)  # ids 2 and 3, equal scores
    f.pop_min()  # id 1
    assert f.pop_min().code == "1"


def test_pop_min_constant_objective_norm_order():
    f = Frontier()
    root = initial_rect(wrap_domain(2))
    popped = [root.edge_norm]
    f.push_children(root, "", 0.0, 1.0)
    for _ in range(2):
        c = f.pop_min()
        popped.append(c.rect.edge_norm)
        f.push_children(c.rect, c.code, 0.0, 1.0)
    assert popped == pytest.approx([0.866025, 0.612372, 0.612372], abs=1e-6)


def test_pop_empty_raises_distinct_error():
    with pytest.raises(EmptyFrontierError):
        Frontier().pop_min()


def test_decode_examples():
    spec = wrap_domain(2)
    assert decode("", spec) == initial_rect(spec)
    r = decode("1", spec)
    assert r.center == pytest.approx((1.060660, 0.5), abs=1e-6)
    assert r.edge == pytest.approx((0.353553, 0.5), abs=1e-6)
    r = decode("10", spec)
    assert r.center == pytest.approx((1.060660, 0.25), abs=1e-6)
    assert r.edge == pytest.approx((0.353553, 0.25), abs=1e-6)


def test_decode_rejects_bad_bits():
    with pytest.raises(ValueError):
        decode("102", wrap_domain(2))


@given(st.integers(1, 4), st.text(alphabet="01", max_size=30))
def test_code_roundtrip(n, code):
    spec = wrap_domain(n)
    rect = decode(code, spec)
    f = Frontier()
    # rebuild by pushing children along the path
    parent, path = initial_rect(spec), ""
    cand = None
    for bit in code:
        plus, minus = f.push_children(parent, path, 0.0, 1.0)
        cand = plus if bit == "1" else minus
        parent, path = cand.rect, cand.code
    if cand is not None:
        assert encode(cand) == code
        assert decode(encode(cand), spec) == cand.rect
    assert rect == parent


@given(st.integers(1, 3), st.text(alphabet="01", max_size=25))
def test_dyadic_intervals_match_float_box(n, code):
    spec = wrap_domain(n)
    rect = decode(code, spec)
    for (num, depth), side, lo, hi in zip(dyadic_intervals(code, n), spec.theta_sides, rect.lower, rect.upper):
        assert lo == pytest.approx(side * num / 2**depth, abs=1e-12)
        assert hi == pytest.approx(side * (num + 1) / 2**depth, abs=1e-12)


@given(st.integers(1, 3), st.lists(st.integers(0, 10_000), min_size=1, max_size=60), st.floats(-5, 5))
def test_random_split_sequences_keep_partition(n, picks, value):
    """Any order of retiring entries keeps a disjoint full cover of Theta."""
    spec = wrap_domain(n)
    f = Frontier()
    f.push_children(initial_rect(spec), "", value, 1.0)
    for p in picks:
        entries = list(f)
        victim = entries[p % len(entries)]
        # pull the chosen entry out by draining and re-pushing the rest
        rest = []
        while len(f):
            c = f.pop_min()
            if c.insertion_index != victim.insertion_index:
                rest.append(c)
        for c in rest:
            f.push(c.rect, c.score, c.code)
        f.push_children(victim.rect, victim.code, value, 1.0)
    vol, disjoint = verify_partition(f.snapshot(), spec)
    assert vol.satisfied and disjoint.satisfied


def test_float_partition_check_detects_overlap():
    spec = wrap_domain(1)
    centers = np.array([[0.25], [0.75], [0.5]])
    edges = np.array([[0.25], [0.25], [0.1]])
    _, disjoint = verify_partition((centers, edges), spec)
    assert disjoint.measured == 2 and not disjoint.satisfied
