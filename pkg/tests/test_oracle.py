import pytest

from hyperfact.core import Params, partial_fact, random_partial, retarget, same_classes
from hyperfact.oracle import SearchConfig, oracle_extend
from hyperfact.verify import check_full


def test_intro6_does_not_extend_to_9(intro6):
    res = oracle_extend(intro6, 9)
    assert res.status == "none"
    assert res.nodes <= 10**6
    assert res.reason


def test_empty_partial_extends():
    res = oracle_extend(partial_fact(Params(6, 3, 1), []))
    assert res.found
    assert check_full(res.factorization).ok
    assert res.factorization.k == 10


def test_found_contains_input(partial9):
    res = oracle_extend(partial9)
    assert res.found
    out = res.factorization
    assert check_full(out).ok
    for c, edges in partial9.coloring.classes.items():
        for e in edges:
            assert e in out.coloring.classes[c]


@pytest.mark.parametrize("n,h,r", [(8, 3, 1), (7, 3, 2), (6, 4, 1)])
def test_divisibility_gives_none(n, h, r):
    res = oracle_extend(partial_fact(Params(n, h, r), []))
    assert res.status == "none"


def test_tiny_budget_is_exhausted():
    pf = partial_fact(Params(9, 3, 1), [((1, 2, 3), 1)])
    res = oracle_extend(pf, cfg=SearchConfig(node_budget=3))
    assert res.status == "exhausted"


def test_symmetry_pruning_does_not_change_verdicts(intro6):
    for sym in (True, False):
        cfg = SearchConfig(symmetry_pruning=sym)
        assert oracle_extend(intro6, 9, cfg).status == "none"
        assert oracle_extend(partial_fact(Params(6, 3, 1), [((1, 2, 3), 4)]), cfg=cfg).found


@pytest.mark.parametrize("seed", range(5))
def test_random_h3_partials_on_7(seed):
    pf = random_partial(4, 3, 7, 3, seed=seed)
    res = oracle_extend(pf)
    assert res.status in ("found", "none")
    if res.found:
        assert check_full(res.factorization).ok
        kept = res.factorization.coloring.restricted_to(range(1, 5))
        assert same_classes(kept, pf.coloring.classes)


def test_retarget_keeps_coloring(intro6):
    pf = retarget(intro6, 12)
    assert pf.params.m == 6 and pf.k == 55
    assert same_classes(pf.coloring.classes, intro6.coloring.classes)


def test_invalid_budget():
    with pytest.raises(ValueError):
        SearchConfig(node_budget=0)
