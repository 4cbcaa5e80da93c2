"""Detachment of a single amalgamated vertex by repeated flow rounding.

The colored amalgamated hypergraph is stored as *cells*: a color, a class
``(j, W)`` (edges u^j + W, W over materialised vertices) and a copy count.
Each split peels one subvertex ``v`` off ``u``.  With ``s`` subvertices still
inside ``u``, a cell of ``M`` copies "wants" to hand ``v`` to ``M*j/s`` of
them.  Those fractional wants sum to exactly ``r`` per color and to
``binom(s-1, j-1)`` per class, so an integral rounding that keeps every cell
within floor/ceil of its want and every color/class total exact exists.  It
is found as a bipartite max-flow over the cells whose want is fractional.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_flow

from .core import (
    U,
    Coloring,
    InvalidParameters,
    PartialFact,
    Params,
    binom,
    complete,
    u_count,
)

log = logging.getLogger(__name__)


class InvalidInput(InvalidParameters):
    """The colored amalgamation does not meet the detachment contract."""


class SearchExhausted(RuntimeError):
    def __init__(self, split: int, attempts: int):
        super().__init__(f"split {split} infeasible after {attempts} attempt(s)")
        self.split = split
        self.attempts = attempts


@dataclass(frozen=True)
class DetachPlan:
    """Split U into ``g_u`` subvertices named ``labels``; ``fixed`` vertices stay put."""

    g_u: int
    fixed: tuple[int, ...]
    labels: tuple[int, ...]
    amalgamated: int = U

    def __post_init__(self):
        if self.g_u < 1:
            raise InvalidParameters("g_u must be at least 1")
        if len(self.labels) != self.g_u:
            raise InvalidParameters(f"need {self.g_u} labels, got {len(self.labels)}")
        if set(self.labels) & set(self.fixed) or len(set(self.labels)) != self.g_u:
            raise InvalidParameters("subvertex labels must be distinct and not fixed")
        if U in self.labels or U in self.fixed:
            raise InvalidParameters("vertex 0 is reserved")

    @classmethod
    def onto_range(cls, fixed, n: int) -> DetachPlan:
        """Fixed vertices plus fresh labels filling up [1, n]."""
        fixed = tuple(sorted(fixed))
        labels = tuple(v for v in range(1, n + 1) if v not in set(fixed))
        return cls(len(labels), fixed, labels)


class SplitState:
    """Cells of the partially detached hypergraph plus the class table."""

    def __init__(self, k: int, r: int, h: int):
        self.k, self.r, self.h = k, r, h
        self.keys: list[tuple[int, tuple[int, ...]]] = []
        self.index: dict[tuple[int, tuple[int, ...]], int] = {}
        self.cls_j = np.zeros(0, dtype=np.int64)
        self.color = np.zeros(0, dtype=np.int64)
        self.cls = np.zeros(0, dtype=np.int64)
        self.cnt = np.zeros(0, dtype=np.int64)
        self.done: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        self.materialised: list[int] = []

    def class_id(self, j: int, W: tuple[int, ...]) -> int:
        key = (j, W)
        cid = self.index.get(key)
        if cid is None:
            cid = len(self.keys)
            self.keys.append(key)
            self.index[key] = cid
        return cid

    def sync_table(self) -> None:
        if len(self.cls_j) < len(self.keys):
            extra = np.array([j for j, _ in self.keys[len(self.cls_j):]], dtype=np.int64)
            self.cls_j = np.concatenate([self.cls_j, extra])

    def load(self, cells: list[tuple[int, int, int]]) -> None:
        self.sync_table()
        if cells:
            arr = np.array(cells, dtype=np.int64)
            self.color, self.cls, self.cnt = arr[:, 0], arr[:, 1], arr[:, 2]
        self._merge()

    def snapshot(self):
        return self.color, self.cls, self.cnt, len(self.done)

    def restore(self, snap) -> None:
        self.color, self.cls, self.cnt, nd = snap
        del self.done[nd:]

    def _merge(self) -> None:
        """Combine duplicate (color, class) cells, drop empty ones, retire type-0 cells."""
        if len(self.cnt) == 0:
            return
        nc = max(len(self.keys), 1)
        key = self.color * nc + self.cls
        uniq, inv = np.unique(key, return_inverse=True)
        cnt = np.bincount(inv, weights=self.cnt).astype(np.int64)
        color, cls = uniq // nc, uniq % nc
        keep = cnt > 0
        color, cls, cnt = color[keep], cls[keep], cnt[keep]
        fin = self.cls_j[cls] == 0
        if fin.any():
            self.done.append((color[fin], cls[fin], cnt[fin]))
        self.color, self.cls, self.cnt = color[~fin], cls[~fin], cnt[~fin]


def _cells_from(F: PartialFact, state: SplitState) -> list[tuple[int, int, int]]:
    cells = []
    for c, edges in F.coloring.classes.items():
        for e, mult in edges.items():
            j = u_count(e)
            cells.append((c, state.class_id(j, e[j:]), mult))
    return cells


def _check_contract(F: PartialFact, plan: DetachPlan, state: SplitState) -> None:
    p = F.params
    k, r, h, g = state.k, p.r, p.h, plan.g_u
    if F.coloring.uncolored:
        raise InvalidInput(f"{sum(F.coloring.uncolored.values())} edge(s) left uncolored")
    bad = [c for c, e in F.coloring.classes.items() if e and not 1 <= c <= k]
    if bad:
        raise InvalidInput(f"colors outside [1, {k}]: {bad[:5]}")
    fixed = set(plan.fixed)
    totals: Counter = Counter()
    for edges in F.coloring.classes.values():
        for e, mult in edges.items():
            if len(e) != h:
                raise InvalidInput(f"edge {e} is not of size {h}")
            if any(v != U and v not in fixed for v in e):
                raise InvalidInput(f"edge {e} uses a vertex outside the plan")
            totals[e] += mult
    for j in range(0, h + 1):
        want = binom(g, j)
        for W in combinations(plan.fixed, h - j):
            e = (U,) * j + W
            if totals.pop(e, 0) != want:
                raise InvalidInput(f"mult{e} must be binom({g}, {j}) = {want}")
    if totals:
        raise InvalidInput(f"unexpected edges, e.g. {next(iter(totals))}")
    width = max(plan.fixed + (0,)) + 1
    table = F.coloring.degree_table(k, width - 1)
    if plan.fixed and (table[1:, list(plan.fixed)] != r).any():
        c, v = np.argwhere(table[1:, list(plan.fixed)] != r)[0]
        raise InvalidInput(f"deg of {plan.fixed[v]} in color {c + 1} is not r={r}")
    if (table[1:, U] != r * g).any():
        c = int(np.argwhere(table[1:, U] != r * g)[0][0]) + 1
        raise InvalidInput(f"deg of u in color {c} is {table[c, U]}, not r*g_u = {r * g}")


def _round(state: SplitState, s: int, rng: np.random.Generator) -> np.ndarray | None:
    """Integral share of ``v`` per cell, or None when no rounding was found."""
    k, r = state.k, state.r
    j = state.cls_j[state.cls]
    num = state.cnt * j
    lo = num // s
    frac = np.flatnonzero(num % s)
    nc = len(state.keys)

    per_color = np.bincount(state.color, weights=num, minlength=k + 1).astype(np.int64)
    if (per_color[1:] != r * s).any():
        raise InvalidInput("u's class degrees are not r times the remaining subvertices")
    per_class = np.bincount(state.cls, weights=num, minlength=nc).astype(np.int64)
    if (per_class % s).any():
        raise InvalidInput("class totals are not divisible by the remaining subvertices")
    color_need = r - np.bincount(state.color, weights=lo, minlength=k + 1).astype(np.int64)
    class_need = per_class // s - np.bincount(state.cls, weights=lo, minlength=nc).astype(np.int64)

    x = lo.copy()
    if len(frac) == 0:
        return x if not color_need[1:].any() and not class_need.any() else None

    colors, col_pos = np.unique(state.color[frac], return_inverse=True)
    classes, cls_pos = np.unique(state.cls[frac], return_inverse=True)
    total = int(color_need[colors].sum())
    if total != int(color_need[1:].sum()) or total != int(class_need[classes].sum()) \
            or total != int(class_need.sum()):
        return None
    a, b = len(colors), len(classes)
    color_node = 1 + rng.permutation(a)
    class_node = 1 + a + rng.permutation(b)
    sink = a + b + 1
    rows = np.concatenate([np.zeros(a, np.int64), color_node[col_pos], class_node])
    cols = np.concatenate([color_node, class_node[cls_pos], np.full(b, sink)])
    caps = np.concatenate([color_need[colors], np.ones(len(frac), np.int64), class_need[classes]])
    graph = csr_matrix((caps.astype(np.int32), (rows, cols)), shape=(sink + 1, sink + 1))
    res = maximum_flow(graph, 0, sink, method="dinic")
    if res.flow_value != total:
        return None
    flow = res.flow.tocsr()
    x[frac] += np.asarray(flow[color_node[col_pos], class_node[cls_pos]]).ravel()
    return x


def _apply_split(state: SplitState, x: np.ndarray, v: int) -> None:
    take = x > 0
    src = np.unique(state.cls[take])
    child = np.zeros(len(state.keys), dtype=np.int64)
    for cid in src.tolist():
        j, W = state.keys[cid]
        child[cid] = state.class_id(j - 1, tuple(sorted(W + (v,))))
    state.sync_table()
    new_color = state.color[take]
    new_cls = child[state.cls[take]]
    new_cnt = x[take]
    state.color = np.concatenate([state.color, new_color])
    state.cls = np.concatenate([state.cls, new_cls])
    state.cnt = np.concatenate([state.cnt - x, new_cnt])
    state._merge()


def _check_ledger(state: SplitState, s: int, v: int, x: np.ndarray, before) -> None:
    """After a split: new vertex r-regular per color and class totals binom(s, j)."""
    color_before = before[0]
    got = np.bincount(color_before, weights=x, minlength=state.k + 1).astype(np.int64)
    if (got[1:] != state.r).any():
        raise AssertionError(f"vertex {v} is not {state.r}-regular in every color")
    if len(state.cnt):
        totals = np.bincount(state.cls, weights=state.cnt).astype(np.int64)
        present = np.flatnonzero(totals)
        expect = np.array([binom(s, int(j)) for j in range(state.h + 1)])
        if (totals[present] != expect[state.cls_j[present]]).any():
            raise AssertionError("class ledger lost its binomial totals")


def split_once(state: SplitState, s: int, v: int, seed=0) -> SplitState | None:
    """Peel vertex ``v`` off U, which currently stands for ``s`` vertices.

    Mutates and returns ``state``; returns None, leaving ``state`` as it was,
    when the split cannot be rounded with this seed.
    """
    if s < 2:
        raise InvalidParameters("a split needs s >= 2")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    x = _round(state, s, rng)
    if x is None:
        return None
    _apply_split(state, x, v)
    return state


def detach(
    F: PartialFact,
    plan: DetachPlan,
    seed: int = 0,
    restart_budget: int = 64,
    check_ledger: bool = True,
) -> PartialFact:
    """Split U into ``plan.g_u`` vertices, producing a colored simple K_n^h.

    Raises InvalidInput when ``F`` breaks the contract (fixed vertices
    r-regular per color, u of degree r*g_u per color, mult(u^i, W) =
    binom(g_u, i)) and SearchExhausted when a split cannot be rounded within
    ``restart_budget`` attempts.
    """
    p = F.params
    n = len(plan.fixed) + plan.g_u
    out_params = Params(n=n, h=p.h, r=p.r)
    k = out_params.k
    if set(plan.fixed) | set(plan.labels) != set(range(1, n + 1)):
        raise InvalidParameters("fixed vertices and labels must cover [1, n]")
    state = SplitState(k, p.r, p.h)
    _check_contract(F, plan, state)
    state.load(_cells_from(F, state))
    rng = np.random.default_rng(seed)
    attempts = 0
    for t, v in enumerate(plan.labels):
        s = plan.g_u - t
        snap = state.snapshot()
        while True:
            x = _round(state, s, rng)
            if x is not None:
                break
            attempts += 1
            log.warning("split %d infeasible (attempt %d), restarting", t, attempts)
            state.restore(snap)
            if attempts >= restart_budget:
                raise SearchExhausted(t, attempts)
        before = (state.color, state.cls)
        _apply_split(state, x, v)
        if check_ledger:
            _check_ledger(state, s - 1, v, x, before)
    if len(state.cnt):
        raise AssertionError("cells still hold u after the last split")
    return _assemble(state, out_params)


def _assemble(state: SplitState, params: Params) -> PartialFact:
    host = complete(params.n, params.h)
    classes: dict[int, Counter] = {}
    seen = 0
    for color, cls, cnt in state.done:
        if (cnt != 1).any():
            raise AssertionError("detachment produced a repeated edge")
        for c, cid in zip(color.tolist(), cls.tolist()):
            classes.setdefault(c, Counter())[state.keys[cid][1]] += 1
            seen += 1
    if seen != host.num_edges:
        raise AssertionError(f"detachment produced {seen} edges, expected {host.num_edges}")
    coloring = Coloring.over(host, classes)
    if coloring.uncolored:
        raise AssertionError("detachment missed some h-sets")
    return PartialFact(params, host, coloring)
