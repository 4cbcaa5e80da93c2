"""Exact combinatorial primitives: multiset edges, multihypergraphs, colorings.

Edges are canonical sorted tuples of vertex ids, repeated ids encoding
multiplicity.  The amalgamated vertex ``u`` is the reserved id ``U = 0``,
so it always sorts to the front: ``(0, 0, 3, 4)`` is the edge {u^2, 3, 4}.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, groupby
from math import comb
from typing import Iterable, Iterator

import numpy as np

Edge = tuple[int, ...]

U = 0


class InvalidParameters(ValueError):
    """Parameters or inputs violate an operation's preconditions."""


class InternalError(RuntimeError):
    """A bound the construction relies on was violated (a bug, not bad input)."""


def binom(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def make_edge(vertices: Iterable[int]) -> Edge:
    return tuple(sorted(vertices))


def slots(e: Edge) -> list[tuple[int, int]]:
    """Return ``e`` as sorted ``(vertex, multiplicity)`` pairs."""
    return [(v, len(list(g))) for v, g in groupby(e)]


def u_count(e: Edge) -> int:
    n = 0
    for v in e:
        if v != U:
            break
        n += 1
    return n


def is_set(e: Edge) -> bool:
    return all(a != b for a, b in zip(e, e[1:]))


@dataclass(frozen=True)
class MultiHypergraph:
    vertices: frozenset[int]
    edges: Counter = field(default_factory=Counter)

    def __post_init__(self):
        for e, mult in self.edges.items():
            if mult < 1:
                raise InvalidParameters(f"edge {e} has multiplicity {mult}")
            if not e:
                raise InvalidParameters("empty edge")
            if any(v not in self.vertices for v in e):
                raise InvalidParameters(f"edge {e} leaves the vertex set")

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return sum(self.edges.values())

    def mult(self, e: Iterable[int]) -> int:
        return self.edges.get(make_edge(e), 0)

    def degree(self, v: int) -> int:
        return sum(mult * e.count(v) for e, mult in self.edges.items())

    def is_simple(self) -> bool:
        return all(m == 1 and is_set(e) for e, m in self.edges.items())


def complete(n: int, h: int) -> MultiHypergraph:
    """K_n^h: every h-subset of [1, n] once."""
    if not 1 <= h <= n:
        raise InvalidParameters(f"complete({n}, {h}) needs 1 <= h <= n")
    return MultiHypergraph(
        frozenset(range(1, n + 1)),
        Counter(dict.fromkeys(combinations(range(1, n + 1), h), 1)),
    )


def amalgam_host(fixed: Iterable[int], g: int, h: int) -> MultiHypergraph:
    """The complete hypergraph on ``fixed`` plus ``g`` vertices, the latter merged into U."""
    fixed = sorted(fixed)
    if U in fixed:
        raise InvalidParameters("vertex 0 is reserved for the amalgamated vertex")
    edges: Counter = Counter()
    for i in range(0, h + 1):
        mult = binom(g, i)
        if mult == 0:
            continue
        for W in combinations(fixed, h - i):
            edges[(U,) * i + W] = mult
    verts = frozenset(fixed) | ({U} if g > 0 else set())
    return MultiHypergraph(verts, edges)


def amalgamate(n: int, m: int, h: int) -> MultiHypergraph:
    """~K_m^h: K_n^h with vertices m+1..n identified into U."""
    if not h <= m < n:
        raise InvalidParameters(f"amalgamate({n}, {m}, {h}) needs h <= m < n")
    return amalgam_host(range(1, m + 1), n - m, h)


def merge(H: MultiHypergraph, S: Iterable[int]) -> MultiHypergraph:
    """Amalgamate the vertices in ``S`` into U (the map Psi applied explicitly)."""
    S = set(S)
    edges: Counter = Counter()
    for e, mult in H.edges.items():
        edges[make_edge(U if v in S else v for v in e)] += mult
    return MultiHypergraph((H.vertices - S) | {U}, edges)


def degree(H: MultiHypergraph, v: int) -> int:
    if v not in H.vertices:
        raise InvalidParameters(f"vertex {v} not in hypergraph")
    return H.degree(v)


def shrink_edge(e: Edge, V: frozenset[int] | set[int]) -> Edge:
    return tuple(x for x in e if x not in V)


def shrink(H: MultiHypergraph, V: Iterable[int]) -> MultiHypergraph:
    """G - V.  Edges wholly inside V shrink to nothing and are dropped."""
    V = frozenset(V)
    edges: Counter = Counter()
    for e, mult in H.edges.items():
        s = shrink_edge(e, V)
        if s:
            edges[s] += mult
    return MultiHypergraph(H.vertices - V, edges)


def restrict(H: MultiHypergraph, V: Iterable[int]) -> MultiHypergraph:
    """G \\ V: drop the edges contained in V, keep every vertex."""
    V = frozenset(V)
    edges = Counter({e: m for e, m in H.edges.items() if not set(e) <= V})
    return MultiHypergraph(H.vertices, edges)


def identity_checks(n: int, m: int, h: int) -> tuple[bool, bool]:
    first = binom(n, h) == sum(binom(m, i) * binom(n - m, h - i) for i in range(h + 1))
    second = m * (binom(n - 1, h - 1) - binom(m - 1, h - 1)) == sum(
        i * binom(m, i) * binom(n - m, h - i) for i in range(1, h)
    )
    return first, second


@dataclass(frozen=True)
class Params:
    """(n, h, r) plus the optional sub-instance size m.

    ``k`` is the number of colors, binom(n-1, h-1)/r.  It is floored when r
    does not divide, so partial colorings of inadmissible instances still
    have a well-defined color budget; ``admissible`` reports divisibility.
    """

    n: int
    h: int
    r: int
    m: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.h < 1 or self.r < 1:
            raise InvalidParameters(f"n, h, r must be positive: {self}")
        if self.m is not None and self.m < 1:
            raise InvalidParameters(f"m must be positive: {self}")

    @property
    def k(self) -> int:
        return binom(self.n - 1, self.h - 1) // self.r

    @property
    def class_size(self) -> int:
        return self.r * self.n // self.h

    @property
    def divides_rn(self) -> bool:
        return (self.r * self.n) % self.h == 0

    @property
    def divides_binom(self) -> bool:
        return binom(self.n - 1, self.h - 1) % self.r == 0

    @property
    def admissible(self) -> bool:
        return self.divides_rn and self.divides_binom

    def require_admissible(self) -> None:
        if not self.divides_rn:
            raise InvalidParameters(f"h={self.h} does not divide rn={self.r * self.n}")
        if not self.divides_binom:
            raise InvalidParameters(
                f"r={self.r} does not divide binom({self.n - 1}, {self.h - 1})"
            )


@dataclass
class Coloring:
    """Color classes (1-based color -> edge multiset) and the uncolored rest."""

    classes: dict[int, Counter] = field(default_factory=dict)
    uncolored: Counter = field(default_factory=Counter)

    @classmethod
    def from_pairs(cls, host: MultiHypergraph, pairs: Iterable[tuple[Edge, int]]) -> Coloring:
        classes: dict[int, Counter] = {}
        for e, c in pairs:
            classes.setdefault(c, Counter())[make_edge(e)] += 1
        return cls.over(host, classes)

    @classmethod
    def over(cls, host: MultiHypergraph, classes: dict[int, Counter]) -> Coloring:
        colored: Counter = Counter()
        for edges in classes.values():
            colored.update(edges)
        return cls(classes, host.edges - colored)

    def pairs(self) -> Iterator[tuple[Edge, int]]:
        for c in sorted(self.classes):
            for e in sorted(self.classes[c]):
                for _ in range(self.classes[c][e]):
                    yield e, c

    def colored(self) -> Counter:
        total: Counter = Counter()
        for edges in self.classes.values():
            total.update(edges)
        return total

    def class_edges(self, color: int) -> Counter:
        return self.classes.get(color, Counter())

    def class_size(self, color: int) -> int:
        return sum(self.class_edges(color).values())

    def class_degree(self, color: int, v: int) -> int:
        return sum(m * e.count(v) for e, m in self.class_edges(color).items())

    def degree_table(self, k: int, n: int) -> np.ndarray:
        """Array ``T[c, v]`` of class degrees; row 0 and out-of-range colors are ignored."""
        table = np.zeros((k + 1, n + 1), dtype=np.int64)
        for c, edges in self.classes.items():
            if not 1 <= c <= k:
                continue
            row = table[c]
            for e, mult in edges.items():
                for v in e:
                    if 0 <= v <= n:
                        row[v] += mult
        return table

    def map_edges(self, fn) -> dict[int, Counter]:
        out: dict[int, Counter] = {}
        for c, edges in self.classes.items():
            new: Counter = Counter()
            for e, mult in edges.items():
                image = fn(e)
                if image:
                    new[image] += mult
            if new:
                out[c] = new
        return out

    def restricted_to(self, vertices: Iterable[int]) -> dict[int, Counter]:
        """Classes keeping only the edges wholly inside ``vertices``."""
        vs = frozenset(vertices)
        return self.map_edges(lambda e: e if set(e) <= vs else None)

    def shrunk_by(self, V: Iterable[int]) -> dict[int, Counter]:
        V = frozenset(V)
        return self.map_edges(lambda e: shrink_edge(e, V))


def same_classes(a: dict[int, Counter], b: dict[int, Counter]) -> bool:
    keys = {c for c, e in a.items() if e} | {c for c, e in b.items() if e}
    return all(+a.get(c, Counter()) == +b.get(c, Counter()) for c in keys)


@dataclass
class PartialFact:
    """A (partial) r-factorization: parameters, host hypergraph and its coloring.

    ``kind`` records how the host was built (complete, restrict, pieces or
    amalgam) and ``V`` the vertex set it was built around, if any.
    """

    params: Params
    host: MultiHypergraph
    coloring: Coloring
    kind: str = "complete"
    V: frozenset[int] = frozenset()

    @property
    def k(self) -> int:
        return self.params.k


def host_for(kind: str, params: Params, V: Iterable[int] = ()) -> MultiHypergraph:
    n, h = params.n, params.h
    if kind == "complete":
        return complete(params.m if params.m is not None else n, h)
    if kind == "restrict":
        return restrict(complete(n, h), V)
    if kind == "pieces":
        return shrink(complete(n, h), V)
    if kind == "amalgam":
        if params.m is None:
            raise InvalidParameters("kind=amalgam needs m")
        return amalgamate(n, params.m, h)
    raise InvalidParameters(f"unknown host kind {kind!r}")


def partial_fact(
    params: Params,
    pairs: Iterable[tuple[Iterable[int], int]],
    kind: str = "complete",
    V: Iterable[int] = (),
) -> PartialFact:
    V = frozenset(V)
    host = host_for(kind, params, V)
    return PartialFact(params, host, Coloring.from_pairs(host, pairs), kind, V)


def retarget(pf: PartialFact, n: int) -> PartialFact:
    """Reinterpret a coloring of K_m^h as a partial factorization for target ``n``."""
    p = pf.params
    if n == p.n:
        return pf
    if pf.kind != "complete":
        raise InvalidParameters(f"cannot retarget a {pf.kind} instance to n={n}")
    m = p.m if p.m is not None else p.n
    params = Params(n=n, h=p.h, r=p.r, m=m)
    return PartialFact(params, pf.host, pf.coloring, pf.kind, pf.V)


def random_partial(m: int, h: int, n: int, r: int, seed: int,
                   density: float = 1.0) -> PartialFact:
    """A random partial r-factorization of K_m^h with the color budget of K_n^h.

    Each edge (kept with probability ``density``) gets a uniformly random color
    among those still below r at all of its vertices.
    """
    rng = random.Random(seed)
    params = Params(n=n, h=h, r=r, m=m)
    k = params.k
    deg: Counter = Counter()
    pairs = []
    for e in combinations(range(1, m + 1), h):
        if rng.random() >= density:
            continue
        room = [c for c in range(1, k + 1) if all(deg[c, v] < r for v in e)]
        if not room:
            continue
        c = rng.choice(room)
        for v in e:
            deg[c, v] += 1
        pairs.append((e, c))
    return partial_fact(params, pairs)


def as_restrict(pf: PartialFact, V: Iterable[int]) -> PartialFact:
    """The coloring of K_n^h \\ V left after forgetting the edges inside V."""
    V = frozenset(V)
    host = restrict(complete(pf.params.n, pf.params.h), V)
    classes = pf.coloring.map_edges(lambda e: None if set(e) <= V else e)
    return PartialFact(Params(pf.params.n, pf.params.h, pf.params.r), host,
                       Coloring.over(host, classes), "restrict", V)


def as_pieces(pf: PartialFact, V: Iterable[int]) -> PartialFact:
    """The coloring of K_n^h - V obtained by deleting V from every edge."""
    V = frozenset(V)
    host = shrink(complete(pf.params.n, pf.params.h), V)
    return PartialFact(Params(pf.params.n, pf.params.h, pf.params.r), host,
                       Coloring.over(host, pf.coloring.shrunk_by(V)), "pieces", V)
