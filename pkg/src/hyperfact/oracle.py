"""Exhaustive search at tiny scale: ground truth for extension and detachment."""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .core import (
    U,
    Coloring,
    InvalidParameters,
    PartialFact,
    Params,
    complete,
    make_edge,
    retarget,
)
from .detach import DetachPlan, InvalidInput, SplitState, _check_contract
from .verify import check_full, check_partial


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int = 1_000_000
    time_budget: float = 60.0
    symmetry_pruning: bool = True

    def __post_init__(self):
        if self.node_budget <= 0 or self.time_budget <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SearchResult:
    status: str  # "found", "none" or "exhausted"
    factorization: PartialFact | None = None
    reason: str = ""
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget(Exception):
    pass


class _Counter:
    def __init__(self, cfg: SearchConfig):
        self.cfg = cfg
        self.nodes = 0
        self.deadline = time.monotonic() + cfg.time_budget

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.cfg.node_budget:
            raise _Budget
        if self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise _Budget


def oracle_extend(pf: PartialFact, n: int | None = None,
                  cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Backtracking search for an r-factorization of K_n^h containing ``pf``'s coloring."""
    if n is not None:
        pf = retarget(pf, n)
    p = pf.params
    n, h, r, k = p.n, p.h, p.r, p.k
    if h > n:
        return SearchResult("none", reason=f"h={h} exceeds n={n}")
    if not p.divides_rn:
        return SearchResult("none", reason=f"h={h} does not divide rn={r * n}")
    if not p.divides_binom:
        return SearchResult("none", reason=f"r={r} does not divide binom({n - 1}, {h - 1})")
    report = check_partial(pf)
    if not report.ok:
        return SearchResult("none", reason="input is not a partial factorization")

    size_cap = p.class_size
    deg = [[0] * (n + 1) for _ in range(k + 1)]
    size = [0] * (k + 1)
    given: list[tuple[tuple[int, ...], int]] = []
    used: Counter = Counter()
    for c, edges in pf.coloring.classes.items():
        for e, mult in edges.items():
            if len(e) != h or len(set(e)) != h or not all(1 <= v <= n for v in e):
                return SearchResult("none", reason=f"edge {e} is not an h-subset of [n]")
            used[e] += mult
            for _ in range(mult):
                given.append((e, c))
            size[c] += mult
            for v in e:
                deg[c][v] += mult
    if any(m > 1 for m in used.values()):
        return SearchResult("none", reason="an h-set is colored more than once")
    if any(s > size_cap for s in size):
        return SearchResult("none", reason="a class already exceeds rn/h edges")
    free = [e for e in combinations(range(1, n + 1), h) if e not in used]
    incident = {v: [i for i, e in enumerate(free) if v in e] for v in range(1, n + 1)}
    color = [0] * len(free)
    counter = _Counter(cfg)
    sym = cfg.symmetry_pruning

    def fits(i: int, c: int) -> bool:
        if size[c] >= size_cap:
            return False
        d = deg[c]
        return all(d[v] < r for v in free[i])

    def place(i: int, c: int, sign: int) -> None:
        color[i] = c if sign > 0 else 0
        size[c] += sign
        for v in free[i]:
            deg[c][v] += sign

    def propagate() -> tuple[bool, list[tuple[int, int]]]:
        """Apply forced placements; return (consistent, placements made)."""
        made: list[tuple[int, int]] = []
        while True:
            forced: dict[int, int] = {}
            for c in range(1, k + 1):
                for v in range(1, n + 1):
                    need = r - deg[c][v]
                    if need <= 0:
                        continue
                    cand = [i for i in incident[v] if not color[i] and fits(i, c)]
                    if len(cand) < need:
                        return False, made
                    if len(cand) == need:
                        for i in cand:
                            if forced.setdefault(i, c) != c:
                                return False, made
            if not forced:
                return True, made
            for i, c in sorted(forced.items()):
                if color[i] or not fits(i, c):
                    return False, made
                place(i, c, 1)
                made.append((i, c))

    def undo(made):
        for i, c in reversed(made):
            place(i, c, -1)

    def search() -> bool:
        counter.tick()
        ok, made = propagate()
        if not ok:
            undo(made)
            return False
        best, best_opts = None, None
        for i in range(len(free)):
            if color[i]:
                continue
            opts = [c for c in range(1, k + 1) if fits(i, c)]
            if best_opts is None or len(opts) < len(best_opts):
                best, best_opts = i, opts
                if not opts:
                    break
        if best is None:
            return True
        tried_empty = False
        for c in best_opts:
            if sym and size[c] == 0:
                if tried_empty:
                    continue
                tried_empty = True
            place(best, c, 1)
            if search():
                return True
            place(best, c, -1)
        undo(made)
        return False

    try:
        success = search()
    except _Budget:
        return SearchResult("exhausted", reason="budget exhausted", nodes=counter.nodes)
    if not success:
        return SearchResult("none", reason="no extension exists", nodes=counter.nodes)
    host = complete(n, h)
    pairs = given + [(free[i], color[i]) for i in range(len(free))]
    out = PartialFact(Params(n, h, r), host, Coloring.from_pairs(host, pairs))
    if not check_full(out).ok:
        raise AssertionError("oracle produced an invalid factorization")
    return SearchResult("found", out, nodes=counter.nodes)


def oracle_detach(F: PartialFact, plan: DetachPlan,
                  cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Exhaustively assign subvertex sets to every u-slot of ``F``."""
    p = F.params
    n = len(plan.fixed) + plan.g_u
    out_params = Params(n, p.h, p.r)
    r = p.r
    try:
        _check_contract(F, plan, SplitState(out_params.k, r, p.h))
    except InvalidInput as exc:
        return SearchResult("none", reason=str(exc))

    copies: list[tuple[int, int, tuple[int, ...]]] = []
    for c in sorted(F.coloring.classes):
        for e, mult in sorted(F.coloring.classes[c].items()):
            j = sum(1 for v in e if v == U)
            copies.extend([(c, j, e[j:])] * mult)
    copies.sort(key=lambda t: (-t[1], t[0], t[2]))
    labels = list(plan.labels)
    deg: Counter = Counter()
    made: set = set()
    chosen: list = [None] * len(copies)
    counter = _Counter(cfg)

    def options(c: int, j: int, nused: int):
        used, fresh = labels[:nused], labels[nused:]
        for a in range(0, j + 1):
            if a > len(fresh) or j - a > len(used):
                continue
            for old in combinations(used, j - a):
                yield old + tuple(fresh[:a])

    def search(idx: int, nused: int) -> bool:
        counter.tick()
        if idx == len(copies):
            return True
        c, j, W = copies[idx]
        for Usub in options(c, j, nused):
            if any(deg[c, x] >= r for x in Usub):
                continue
            e = make_edge(Usub + W)
            if e in made:
                continue
            made.add(e)
            for x in Usub:
                deg[c, x] += 1
            chosen[idx] = (e, c)
            top = max([labels.index(x) + 1 for x in Usub] + [nused])
            if search(idx + 1, top if cfg.symmetry_pruning else len(labels)):
                return True
            made.discard(e)
            for x in Usub:
                deg[c, x] -= 1
        return False

    try:
        ok = search(0, 0 if cfg.symmetry_pruning else len(labels))
    except _Budget:
        return SearchResult("exhausted", reason="budget exhausted", nodes=counter.nodes)
    if not ok:
        return SearchResult("none", reason="no detachment exists", nodes=counter.nodes)
    if set(plan.fixed) | set(labels) != set(range(1, n + 1)):
        raise InvalidParameters("fixed vertices and labels must cover [1, n]")
    host = complete(n, p.h)
    out = PartialFact(out_params, host, Coloring.from_pairs(host, chosen))
    if not check_full(out).ok:
        raise AssertionError("oracle produced an invalid detachment")
    return SearchResult("found", out, nodes=counter.nodes)
