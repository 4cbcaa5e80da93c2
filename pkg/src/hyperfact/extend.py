"""Staged coloring of the amalgamated hypergraph, followed by detachment.

For an input coloring of K_m^h and a target n, the n - m new vertices are
merged into U.  The uncolored edges then come in types u^1 .. u^h:

* low types are colored greedily, never pushing a class degree past r;
* the edges {x, u^(h-1)} touch one old vertex each and top up every class
  degree to exactly r;
* the copies of {u^h} are dealt out so every class ends with rn/h edges.

The resulting coloring of the amalgamation is detached into K_n^h.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any

import numpy as np

from .core import (
    U,
    Coloring,
    InternalError,
    InvalidParameters,
    PartialFact,
    Params,
    amalgam_host,
    binom,
    complete,
    retarget,
    same_classes,
    shrink,
    shrink_edge,
    u_count,
)
from .detach import DetachPlan, detach
from .verify import check_conditions, check_partial, check_pieces_conditions, type_profile

K4_THRESHOLD = Fraction(4847323, 10**6)
K5_THRESHOLD = Fraction(6285214, 10**6)


@dataclass
class ExtendResult:
    factorization: PartialFact
    stage_log: dict[str, Any] = field(default_factory=dict)
    ok: bool = True


@dataclass
class ExtendFailure:
    stage: str
    reason: str
    stage_log: dict[str, Any] = field(default_factory=dict)
    ok: bool = False


class _Stuck(Exception):
    def __init__(self, stage: str, reason: str):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason


# Counting bounds.  A greedy stage for edges W + u^j can only get stuck if
# sum_i (deg_i(x) summed over x in W) >= rk, which the bounds below rule out.

def k4_slack_u1(n: int, m: int) -> int:
    return (n**3 - 6 * n**2 - 9 * m**2 * n + 27 * m * n - 7 * n
            + 6 * m**3 - 9 * m**2 - 15 * m + 30)


def k4_slack_u2(n: int, m: int) -> int:
    return (n**3 - 6 * m * n**2 + 6 * m**2 * n + 12 * m * n - 7 * n
            - 2 * m**3 - 6 * m**2 - 4 * m + 18)


def k5_slack_u1(n: int, m: int) -> int:
    return (n**4 - 10 * n**3 + 35 * n**2 - 16 * m**3 * n + 96 * m**2 * n - 176 * m * n
            + 46 * n + 12 * m**4 - 56 * m**3 + 36 * m**2 + 104 * m + 24)


def k5_slack_u2(n: int, m: int) -> int:
    return (n**4 - 10 * n**3 - 18 * m**2 * n**2 + 54 * m * n**2 - n**2 + 24 * m**3 * n
            - 18 * m**2 * n - 114 * m * n + 58 * n - 9 * m**4 - 6 * m**3 + 45 * m**2
            + 42 * m + 24)


def old_degree_before(n: int, m: int, h: int, j: int) -> int:
    """Degree of an old vertex from type-0 edges and the greedy types below u^j."""
    return sum(binom(m - 1, h - 1 - i) * binom(n - m, i) for i in range(j))


def greedy_bound_holds(n: int, m: int, h: int, j: int) -> bool:
    """True when edges W + u^j (|W| = h - j) can never get stuck greedily."""
    w = h - j
    return w * (old_degree_before(n, m, h, j + 1) - 1) < binom(n - 1, h - 1)


def _check_threshold(n: int, m: int, threshold: Fraction, min_m: int) -> None:
    if m < min_m:
        raise InvalidParameters(f"m={m} below the supported minimum {min_m}")
    if n < threshold * m:
        raise InvalidParameters(f"n={n} below {float(threshold)} * m = {float(threshold * m):.4f}")


class _Stager:
    """Per-color degree ledger of the old vertices while the new edges are colored."""

    def __init__(self, pf: PartialFact, seed: int | None):
        p = pf.params
        self.params = p
        self.n, self.h, self.r, self.k = p.n, p.h, p.r, p.k
        self.old = sorted(pf.host.vertices)
        self.m = len(self.old)
        self.col = {v: i for i, v in enumerate(self.old)}
        self.deg = np.zeros((self.k + 1, self.m), dtype=np.int64)
        self.size = np.zeros(self.k + 1, dtype=np.int64)
        self.cells: dict[int, Counter] = {}
        for c, edges in pf.coloring.classes.items():
            for e, mult in edges.items():
                self._add(c, e, mult)
        if seed is None:
            self.tiebreak = np.arange(self.k + 1)
        else:
            self.tiebreak = np.random.default_rng(seed).permutation(self.k + 1)
        self.log: dict[str, Any] = {}

    def _add(self, c: int, e, mult: int) -> None:
        self.cells.setdefault(c, Counter())[e] += mult
        self.size[c] += mult
        for v in e:
            if v != U:
                self.deg[c, self.col[v]] += mult

    def greedy(self, j: int) -> None:
        """Color every copy of W + u^j; each copy goes to a class with spare room at
        all of W, preferring the smallest class, ties by (possibly shuffled) index."""
        copies = binom(self.n - self.m, j)
        placed = 0
        for W in combinations(self.old, self.h - j):
            cols = [self.col[v] for v in W]
            room = (self.r - self.deg[1:, cols]).min(axis=1)
            room = np.maximum(room, 0)
            colors = np.repeat(np.arange(1, self.k + 1), room)
            if len(colors) < copies:
                raise _Stuck(f"u^{j}", f"only {len(colors)} free slot(s) for {W}, need {copies}")
            starts = np.repeat(np.cumsum(room) - room, room)
            offset = np.arange(len(colors)) - starts
            order = np.lexsort((self.tiebreak[colors], self.size[colors] + offset))
            chosen = np.bincount(colors[order[:copies]], minlength=self.k + 1)
            edge = (U,) * j + W
            for c in np.flatnonzero(chosen).tolist():
                self._add(c, edge, int(chosen[c]))
            placed += copies
        self.log[f"u^{j}"] = placed

    def deficit_fill(self) -> None:
        """Copies of {x, u^(h-1)} raise every class degree of x to exactly r."""
        j = self.h - 1
        copies = binom(self.n - self.m, j)
        for x in self.old:
            need = self.r - self.deg[1:, self.col[x]]
            if (need < 0).any():
                raise InternalError(f"class degree of {x} exceeds r")
            if int(need.sum()) != copies:
                raise InternalError(
                    f"deficit at {x} is {int(need.sum())}, expected binom({self.n - self.m}, {j})"
                )
            edge = (U,) * j + (x,)
            for c in np.flatnonzero(need).tolist():
                self._add(c + 1, edge, int(need[c]))
        self.log[f"u^{j}"] = copies * self.m

    def computed_counts(self, counts: np.ndarray, name: str) -> None:
        edge = (U,) * self.h
        for c in np.flatnonzero(counts).tolist():
            self._add(c + 1, edge, int(counts[c]))
        self.log[name] = counts

    def profile(self) -> np.ndarray:
        t = np.zeros((self.k, self.h + 1), dtype=np.int64)
        for c, edges in self.cells.items():
            for e, mult in edges.items():
                t[c - 1, u_count(e)] += mult
        return t


def _u_h_counts(t: np.ndarray, params: Params, n_fixed: int) -> np.ndarray:
    """Copies of {u^h} per color: rn/h - r*n_fixed + sum_j j * mult(u^(h-j-1))."""
    h, r, n = params.h, params.r, params.n
    counts = np.full(t.shape[0], r * n // h - r * n_fixed, dtype=np.int64)
    for j in range(1, h):
        counts += j * t[:, h - j - 1]
    return counts


def _prepare(pf: PartialFact, n: int | None, h: int) -> PartialFact:
    if n is not None:
        pf = retarget(pf, n)
    p = pf.params
    if p.h != h:
        raise InvalidParameters(f"expected h={h}, got h={p.h}")
    p.require_admissible()
    m = len(pf.host.vertices)
    if pf.kind != "complete" or pf.host.vertices != frozenset(range(1, m + 1)):
        raise InvalidParameters("input must color K_m^h on vertices 1..m")
    if not h <= m < p.n:
        raise InvalidParameters(f"need h <= m < n, got m={m}, n={p.n}")
    report = check_partial(pf)
    if not report.ok:
        raise InvalidParameters(f"input is not a partial {p.r}-factorization:\n{report.summary()}")
    if pf.coloring.uncolored:
        raise InvalidParameters("every edge of K_m^h must be colored")
    return pf


def _staged(pf: PartialFact, seed: int | None, detach_seed: int,
            restart_budget: int) -> ExtendResult:
    p = pf.params
    n, h, r = p.n, p.h, p.r
    st = _Stager(pf, seed)
    m = st.m
    for j in range(1, h - 1):
        st.greedy(j)
    st.deficit_fill()
    t = st.profile()
    counts = _u_h_counts(t, p, m)
    if (counts != p.class_size - st.size[1:]).any():
        raise InternalError("{u^h} count formula disagrees with the class size target")
    if (counts < 0).any():
        c = int(np.flatnonzero(counts < 0)[0]) + 1
        raise _Stuck(f"u^{h}", f"color {c} would need {int(counts[c - 1])} copies of u^{h}")
    if int(counts.sum()) != binom(n - m, h):
        raise InternalError("{u^h} counts do not sum to binom(n-m, h)")
    st.computed_counts(counts, f"u^{h} counts")
    t = st.profile()
    u_deg = t @ np.arange(h + 1)
    if (u_deg != r * (n - m)).any():
        raise InternalError("class degree of u is not r(n-m)")
    if (st.deg[1:] != r).any():
        raise InternalError("old vertices are not r-regular in every class")
    st.log["profile"] = t
    st.log["u degree"] = u_deg

    F = _amalgam_fact(p, st.old, n - m, st.cells)
    out = detach(F, DetachPlan.onto_range(st.old, n), detach_seed, restart_budget)
    if not same_classes(out.coloring.restricted_to(st.old), pf.coloring.classes):
        raise InternalError("extension changed the input coloring")
    return ExtendResult(out, st.log)


def _amalgam_fact(p: Params, fixed, g: int, cells: dict[int, Counter]) -> PartialFact:
    host = amalgam_host(fixed, g, p.h)
    m = len(fixed) if fixed else None
    return PartialFact(Params(p.n, p.h, p.r, m), host, Coloring.over(host, cells), "amalgam")


def extend_k4(pf: PartialFact, n: int | None = None, seed: int | None = None,
              restart_budget: int = 64) -> ExtendResult:
    """Extend a partial r-factorization of K_m^4 (m >= 5, n >= 4.847323 m) to K_n^4."""
    pf = _prepare(pf, n, 4)
    n, m = pf.params.n, len(pf.host.vertices)
    _check_threshold(n, m, K4_THRESHOLD, 5)
    if k4_slack_u1(n, m) <= 0 or k4_slack_u2(n, m) <= 0:
        raise InternalError("counting bound violated")
    try:
        res = _staged(pf, seed, seed or 0, restart_budget)
    except _Stuck as exc:
        raise InternalError(f"counting bound violated at {exc}") from exc
    res.stage_log["e"] = res.stage_log["u^4 counts"]
    return res


def extend_k5(pf: PartialFact, n: int | None = None, seed: int | None = None,
              restart_budget: int = 64) -> ExtendResult:
    """Extend a partial r-factorization of K_m^5 (m >= 6, n >= 6.285214 m) to K_n^5."""
    pf = _prepare(pf, n, 5)
    n, m = pf.params.n, len(pf.host.vertices)
    _check_threshold(n, m, K5_THRESHOLD, 6)
    if k5_slack_u1(n, m) <= 0 or k5_slack_u2(n, m) <= 0 or not greedy_bound_holds(n, m, 5, 3):
        raise InternalError("counting bound violated")
    try:
        res = _staged(pf, seed, seed or 0, restart_budget)
    except _Stuck as exc:
        raise InternalError(f"counting bound violated at {exc}") from exc
    res.stage_log["f"] = res.stage_log["u^5 counts"]
    return res


def extend_generic(pf: PartialFact, n: int | None = None, seed: int | None = None,
                   budget: int = 1, restart_budget: int = 64) -> ExtendResult | ExtendFailure:
    """Same staging for any h >= 2, without a guarantee.

    Up to ``budget`` attempts are made, the first with the given seed and the
    rest with fresh tie-break shuffles.  Failure is returned, not raised.
    """
    pf = _prepare(pf, n, pf.params.h)
    if pf.params.h < 2:
        raise InvalidParameters("h must be at least 2")
    last = None
    for attempt in range(max(budget, 1)):
        s = seed if attempt == 0 else (seed or 0) * 1_000_003 + attempt
        try:
            res = _staged(pf, s, s or 0, restart_budget)
        except _Stuck as exc:
            last = ExtendFailure(exc.stage, exc.reason, {"attempts": attempt + 1})
            continue
        res.stage_log["attempts"] = attempt + 1
        return res
    return last


def extend_pieces(pf: PartialFact, seed: int = 0, restart_budget: int = 64) -> ExtendResult:
    """Extend a partial r-factorization of K_n^h - V (mixed edge sizes) to K_n^h."""
    report = check_pieces_conditions(pf)
    if not report.ok:
        raise InvalidParameters(f"conditions fail:\n{report.summary()}")
    p = pf.params
    n, h, r = p.n, p.h, p.r
    V = frozenset(pf.V)
    fixed = sorted(pf.host.vertices)
    if set(fixed) | V != set(range(1, n + 1)) or set(fixed) & V:
        raise InvalidParameters("host vertices and V must partition [1, n]")
    m = len(V)
    cells: dict[int, Counter] = {}
    t = np.zeros((p.k, h + 1), dtype=np.int64)
    for c, edges in pf.coloring.classes.items():
        for e, mult in edges.items():
            cells.setdefault(c, Counter())[(U,) * (h - len(e)) + e] += mult
            t[c - 1, h - len(e)] += mult
    counts = _u_h_counts(t, p, len(fixed))
    sizes = t.sum(axis=1)
    if (counts != p.class_size - sizes).any():
        raise InternalError("{u^h} count formula disagrees with the class size target")
    if (counts < 0).any():
        raise InternalError("negative {u^h} count under valid conditions")
    if int(counts.sum()) != binom(m, h):
        raise InternalError("{u^h} counts do not sum to binom(|V|, h)")
    for c in np.flatnonzero(counts).tolist():
        cells.setdefault(c + 1, Counter())[(U,) * h] += int(counts[c])
    t[:, h] = counts
    u_deg = t @ np.arange(h + 1)
    if (u_deg != r * m).any():
        raise InternalError("class degree of u is not r|V|")
    F = _amalgam_fact(p, fixed, m, cells)
    out = detach(F, DetachPlan(m, tuple(fixed), tuple(sorted(V))), seed, restart_budget)
    if not same_classes(out.coloring.shrunk_by(V), pf.coloring.classes):
        raise InternalError("extension changed the colors of the given pieces")
    log = {"mult u^h": counts, "profile": t, "u degree": u_deg}
    return ExtendResult(out, log)


def shrink_partial(P: PartialFact) -> PartialFact:
    """Delete V from every edge of a coloring of K_n^h \\ V."""
    V = frozenset(P.V)
    host = shrink(complete(P.params.n, P.params.h), V)
    classes = P.coloring.shrunk_by(V)
    return PartialFact(P.params, host, Coloring.over(host, classes), "pieces", V)


def extend_outside(P: PartialFact, seed: int = 0, restart_budget: int = 64) -> ExtendResult:
    """Extend a P-friendly recoloring of a partial r-factorization of K_n^h \\ V."""
    report = check_conditions(P)
    if not report.ok:
        raise InvalidParameters(f"(N1)-(N4) fail:\n{report.summary()}")
    res = extend_pieces(shrink_partial(P), seed, restart_budget)
    res.stage_log["V"] = sorted(P.V)
    return res


def factorize(n: int, h: int, r: int = 1, seed: int = 0, restart_budget: int = 64) -> ExtendResult:
    """An r-factorization of K_n^h by detaching the total amalgamation {u^h}."""
    p = Params(n=n, h=h, r=r)
    if h > n:
        raise InvalidParameters(f"h={h} exceeds n={n}")
    p.require_admissible()
    per = p.class_size
    edge = (U,) * h
    cells = {c: Counter({edge: per}) for c in range(1, p.k + 1)}
    host = amalgam_host((), n, h)
    F = PartialFact(p, host, Coloring.over(host, cells), "amalgam")
    out = detach(F, DetachPlan.onto_range((), n), seed, restart_budget)
    return ExtendResult(out, {"class size": per})


__all__ = [
    "ExtendResult",
    "ExtendFailure",
    "extend_k4",
    "extend_k5",
    "extend_generic",
    "extend_pieces",
    "extend_outside",
    "factorize",
    "shrink_partial",
    "K4_THRESHOLD",
    "K5_THRESHOLD",
    "shrink_edge",
]
