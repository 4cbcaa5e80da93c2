"""Acceptance criteria, one test each.

Every test records a single PASS/FAIL line (printed in the terminal summary
under "acceptance criteria") and then asserts.  Time limits are enforced
against wall-clock time on the test machine.
"""
import random
import time
from contextlib import contextmanager

from hyperfact.core import (
    InvalidParameters,
    Params,
    as_pieces,
    as_restrict,
    binom,
    identity_checks,
    random_partial,
    same_classes,
)
from hyperfact.extend import extend_generic, extend_k4, extend_k5, extend_outside, extend_pieces, factorize
from hyperfact.oracle import SearchConfig, oracle_extend
from hyperfact.verify import check_full, check_p_friendly, check_partial, check_pieces_conditions


@contextmanager
def criterion(log, number, title):
    """Record PASS/FAIL for one criterion; the body fills ``info`` with details."""
    info = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        line = f"[{number:2d}] {'PASS' if ok else 'FAIL'} {title} ({dt:.1f}s) {info['detail']}"
        log.append(line)
        print(line)


def restriction_holds(out, pf, m):
    return same_classes(out.coloring.restricted_to(range(1, m + 1)), pf.coloring.classes)


def admissible_triples(nmax, hs):
    for h in hs:
        for n in range(h, nmax + 1):
            b = binom(n - 1, h - 1)
            for r in range(1, b + 1):
                if Params(n, h, r).admissible:
                    yield n, h, r


def test_fixture_a(intro6, acceptance_log):
    with criterion(acceptance_log, 1, "fixture A: ten-class 1-factorization of [6] triples") as info:
        t0 = time.perf_counter()
        assert check_full(intro6).ok
        assert intro6.k == 10
        assert all(intro6.coloring.class_size(c) == 2 for c in range(1, 11))
        table = intro6.coloring.degree_table(10, 6)
        assert (table[1:, 1:] == 1).all()
        assert time.perf_counter() - t0 < 1
        info["detail"] = "k=10, class size 2, all degrees 1"


def test_fixture_b(partial9, full9, acceptance_log):
    with criterion(acceptance_log, 2, "fixture B: partial and completed 4-factorization of [9] triples") as info:
        t0 = time.perf_counter()
        assert check_partial(partial9).ok
        assert check_full(full9).ok
        assert full9.k == 7
        assert all(full9.coloring.class_size(c) == 12 for c in range(1, 8))
        assert time.perf_counter() - t0 < 1
        info["detail"] = "7 classes of 12 triples"


def test_oracle_negative(intro6, acceptance_log):
    with criterion(acceptance_log, 3, "fixture A does not extend to n=9") as info:
        t0 = time.perf_counter()
        res = oracle_extend(intro6, 9, SearchConfig(node_budget=10**6, time_budget=60))
        dt = time.perf_counter() - t0
        info["detail"] = f"status={res.status} nodes={res.nodes}"
        assert res.status == "none"
        assert res.nodes <= 10**6 and dt < 60


def test_baranyai_sweep(acceptance_log):
    with criterion(acceptance_log, 4, "factorize sweep n<=12, 2<=h<=4, all admissible r") as info:
        t0 = time.perf_counter()
        bad = []
        count = 0
        for n, h, r in admissible_triples(12, (2, 3, 4)):
            count += 1
            out = factorize(n, h, r, seed=n * 100 + h * 10 + r).factorization
            if not check_full(out).ok:
                bad.append((n, h, r))
        info["detail"] = f"{count} instances, {len(bad)} failures"
        assert not bad, bad
        assert time.perf_counter() - t0 < 600


def test_h4_embedding(acceptance_log):
    with criterion(acceptance_log, 5, "h=4 embedding m=5 -> n=28, r in {1,3}, 100 seeds each") as info:
        worst = 0.0
        runs = 0
        for r in (1, 3):
            for seed in range(100):
                pf = random_partial(5, 4, 28, r, seed=1000 * r + seed)
                t0 = time.perf_counter()
                res = extend_k4(pf, seed=seed)
                worst = max(worst, time.perf_counter() - t0)
                out = res.factorization
                assert check_full(out).ok, (r, seed)
                assert restriction_holds(out, pf, 5), (r, seed)
                assert res.stage_log["e"].sum() == binom(23, 4)
                assert (res.stage_log["u degree"] == r * 23).all()
                runs += 1
                info["detail"] = f"{runs} runs, slowest extension {worst:.2f}s"
        assert worst < 30


def test_h5_embedding(acceptance_log):
    with criterion(acceptance_log, 6, "h=5 embedding m=6 -> n=40, r=1, 10 seeds") as info:
        worst = 0.0
        for seed in range(10):
            pf = random_partial(6, 5, 40, 1, seed=seed)
            t0 = time.perf_counter()
            res = extend_k5(pf, seed=seed)
            worst = max(worst, time.perf_counter() - t0)
            out = res.factorization
            assert check_full(out).ok, seed
            assert restriction_holds(out, pf, 6), seed
            assert res.stage_log["f"].sum() == binom(34, 5)
            info["detail"] = f"{seed + 1} runs, slowest extension {worst:.1f}s"
        assert worst < 300


def _pieces_instances(count, seed):
    rng = random.Random(seed)
    pool = [t for t in admissible_triples(10, (3, 4)) if t[0] - t[1] >= 1]
    for _ in range(count):
        n, h, r = rng.choice(pool)
        size = rng.randint(1, n - h)
        V = frozenset(rng.sample(range(1, n + 1), size))
        yield n, h, r, V, rng.randrange(10**6)


def test_pieces_roundtrip(acceptance_log):
    with criterion(acceptance_log, 7, "mixed-size pieces round trip, 50 instances") as info:
        t0 = time.perf_counter()
        for i, (n, h, r, V, s) in enumerate(_pieces_instances(50, seed=7)):
            pf = as_pieces(factorize(n, h, r, seed=s).factorization, V)
            assert check_pieces_conditions(pf).ok, (n, h, r, V)
            out = extend_pieces(pf, seed=s).factorization
            assert check_full(out).ok, (n, h, r, V)
            assert same_classes(out.coloring.shrunk_by(V), pf.coloring.classes)
            info["detail"] = f"{i + 1} instances"
        assert time.perf_counter() - t0 < 300


def test_outside_p_friendly(acceptance_log):
    with criterion(acceptance_log, 8, "extension outside V is P-friendly, 20 instances") as info:
        t0 = time.perf_counter()
        for i, (n, h, r, V, s) in enumerate(_pieces_instances(20, seed=8)):
            P = as_restrict(factorize(n, h, r, seed=s).factorization, V)
            out = extend_outside(P, seed=s).factorization
            assert check_full(out).ok, (n, h, r, V)
            assert check_p_friendly(P, as_restrict(out, V)).ok, (n, h, r, V)
            info["detail"] = f"{i + 1} instances"
        assert time.perf_counter() - t0 < 300


def agreement_instances():
    """Fixed partial 1-factorizations of K_m^3 with targets n <= 7."""
    for m in (3, 4, 5):
        for n in range(m + 1, 8):
            for density in (1.0, 0.5):
                for seed in range(10):
                    yield random_partial(m, 3, n, 1, seed=seed, density=density), seed
    for n in (6, 7):
        for density in (0.2, 0.35, 0.5):
            for seed in range(15):
                yield random_partial(6, 3, n, 1, seed=seed, density=density), seed


def test_oracle_agreement(acceptance_log):
    with criterion(acceptance_log, 9, "generic extension vs oracle, n<=7, h=3, r=1") as info:
        t0 = time.perf_counter()
        tally = {"found": 0, "none": 0, "exhausted": 0, "generic ok": 0}
        total = 0
        for pf, seed in agreement_instances():
            total += 1
            res = oracle_extend(pf)
            tally[res.status] += 1
            try:
                ok = extend_generic(pf, seed=seed).ok
            except InvalidParameters:
                ok = False
            tally["generic ok"] += ok
            assert res.status != "exhausted"
            if ok:
                assert res.status != "none", pf
            if res.status == "none":
                assert not ok
        info["detail"] = f"{total} instances, " + ", ".join(f"{k}={v}" for k, v in tally.items())
        assert total >= 200
        assert time.perf_counter() - t0 < 900


def test_identity_suite(acceptance_log):
    with criterion(acceptance_log, 10, "counting identities, 1<=h<=6, h<=m<=n<=30") as info:
        t0 = time.perf_counter()
        checked = 0
        for h in range(1, 7):
            for n in range(h, 31):
                for m in range(h, n + 1):
                    assert identity_checks(n, m, h) == (True, True), (n, m, h)
                    checked += 1
        info["detail"] = f"{checked} triples"
        assert time.perf_counter() - t0 < 10

