from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperfact.core import (
    U,
    InvalidParameters,
    Params,
    amalgamate,
    binom,
    complete,
    degree,
    identity_checks,
    make_edge,
    merge,
    restrict,
    shrink,
    slots,
    u_count,
)


def test_complete_counts():
    H = complete(6, 3)
    assert H.num_edges == 20
    assert all(degree(H, v) == 10 for v in range(1, 7))
    assert list(complete(4, 4).edges) == [(1, 2, 3, 4)]
    assert complete(9, 3).num_edges == 84 == 7 * 12


def test_complete_rejects_h_above_n():
    with pytest.raises(InvalidParameters):
        complete(3, 4)


def test_amalgamate_multiplicities():
    F = amalgamate(6, 4, 3)
    assert F.mult((U, 1, 2)) == 2
    assert F.mult((U, U, 1)) == 1
    assert F.mult((U, U, U)) == 0
    assert F.mult((1, 2, 3)) == 1


@pytest.mark.parametrize("n,m,h", [(6, 4, 3), (9, 6, 3), (10, 5, 4), (12, 6, 5)])
def test_amalgamate_edge_total_is_vandermonde(n, m, h):
    F = amalgamate(n, m, h)
    assert F.num_edges == sum(binom(m, h - i) * binom(n - m, i) for i in range(h + 1))
    assert F.num_edges == binom(n, h)


@pytest.mark.parametrize("n,m,h", [(6, 4, 3), (9, 6, 3), (10, 5, 4), (7, 5, 2)])
def test_amalgamate_degree_of_u(n, m, h):
    F = amalgamate(n, m, h)
    expected = sum(i * binom(m, h - i) * binom(n - m, i) for i in range(1, h + 1))
    assert degree(F, U) == expected
    assert expected == (n - m) * binom(n - 1, h - 1)


def test_amalgamate_rejects_bad_params():
    with pytest.raises(InvalidParameters):
        amalgamate(6, 6, 3)
    with pytest.raises(InvalidParameters):
        amalgamate(6, 2, 3)


@pytest.mark.parametrize("n", range(4, 11))
@pytest.mark.parametrize("h", [2, 3, 4])
def test_amalgamate_equals_explicit_merge(n, h):
    for m in range(h, n):
        merged = merge(complete(n, h), range(m + 1, n + 1))
        assert merged.edges == amalgamate(n, m, h).edges
    # merging a scattered vertex set gives the same shape up to relabelling
    scattered = merge(complete(n, h), range(1, n - h + 1, 1)[: n - h])
    assert scattered.num_edges == binom(n, h)


def test_degree_counts_multiplicity():
    F = amalgamate(6, 4, 3)
    one = type(F)(frozenset({U, 1}), Counter({(U, U, 1): 1}))
    assert degree(one, U) == 2 and degree(one, 1) == 1


def test_shrink_examples():
    G = shrink(complete(6, 3), {5, 6})
    assert G.mult((4,)) == 1
    assert G.mult((1, 2, 3)) == 1
    assert G.vertices == frozenset(range(1, 5))
    G = shrink(complete(5, 3), {1, 2, 3})
    assert G.num_edges == 9


def test_restrict_examples():
    H = complete(6, 3)
    assert restrict(H, {1, 2, 3}).num_edges == 19
    assert restrict(H, set()).edges == H.edges
    assert restrict(H, range(1, 7)).num_edges == 0


@pytest.mark.parametrize("n,m,h", [(9, 6, 3), (6, 6, 3), (28, 5, 4)])
def test_identity_examples(n, m, h):
    assert identity_checks(n, m, h) == (True, True)


def test_identity_degenerate_reading():
    assert 6 * (binom(5, 2) - binom(5, 2)) == 0


@given(st.integers(2, 9), st.integers(1, 4))
def test_degree_sum(n, h):
    if h > n:
        return
    H = complete(n, h)
    assert sum(degree(H, v) for v in H.vertices) == h * binom(n, h)


@settings(max_examples=60)
@given(st.integers(3, 9), st.integers(2, 4), st.data())
def test_shrink_preserves_degree_outside(n, h, data):
    if h > n:
        return
    V = data.draw(st.sets(st.integers(1, n), max_size=n - 1))
    H = complete(n, h)
    G = shrink(H, V)
    for v in G.vertices:
        assert degree(G, v) == degree(H, v)


def test_edge_helpers():
    e = make_edge([3, U, 1, U])
    assert e == (0, 0, 1, 3)
    assert slots(e) == [(U, 2), (1, 1), (3, 1)]
    assert u_count(e) == 2


def test_params():
    p = Params(n=9, h=3, r=4)
    assert p.k == 7 and p.class_size == 12 and p.admissible
    assert not Params(n=8, h=3, r=1).admissible
    with pytest.raises(InvalidParameters):
        Params(n=8, h=3, r=1).require_admissible()
    with pytest.raises(InvalidParameters):
        Params(n=0, h=3, r=1)


def test_complete_edges_are_all_subsets():
    assert set(complete(7, 3).edges) == set(combinations(range(1, 8), 3))
