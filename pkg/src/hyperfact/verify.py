"""Decision procedures for (partial) r-factorizations and extension conditions.

Nothing here raises on a bad coloring; every failed inequality becomes a
:class:`Violation` carrying the observed and expected values.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import U, PartialFact, binom, u_count


@dataclass(frozen=True)
class Violation:
    kind: str
    color: int | None
    where: Any
    observed: int
    expected: int


@dataclass
class VerifyReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def extend(self, other: VerifyReport) -> VerifyReport:
        self.violations.extend(other.violations)
        return self

    def summary(self, limit: int = 10) -> str:
        if self.ok:
            return "ok"
        lines = [f"{len(self.violations)} violation(s)"]
        for v in self.violations[:limit]:
            lines.append(
                f"  {v.kind}: color={v.color} at={v.where} observed={v.observed} expected={v.expected}"
            )
        if len(self.violations) > limit:
            lines.append(f"  ... {len(self.violations) - limit} more")
        return "\n".join(lines)


def _vertex_range(pf: PartialFact) -> int:
    return max([v for v in pf.host.vertices] + [0])


def _degree_table(pf: PartialFact) -> np.ndarray:
    return pf.coloring.degree_table(pf.k, _vertex_range(pf))


def check_partial(pf: PartialFact) -> VerifyReport:
    """At most k colors, class degree at most r everywhere, colored edges drawn from the host."""
    report = VerifyReport()
    k, r = pf.k, pf.params.r
    for c, edges in sorted(pf.coloring.classes.items()):
        if edges and not 1 <= c <= k:
            report.violations.append(Violation("color-range", c, None, c, k))
    colored = pf.coloring.colored()
    for e, mult in sorted(colored.items()):
        have = pf.host.edges.get(e, 0)
        if mult > have:
            report.violations.append(Violation("not-in-host", None, e, mult, have))
    table = _degree_table(pf)
    real = sorted(v for v in pf.host.vertices if v != U)
    if real:
        sub = table[1:, real]
        for ci, vi in np.argwhere(sub > r):
            report.violations.append(
                Violation("degree-cap", int(ci) + 1, real[vi], int(sub[ci, vi]), r)
            )
    return report


def check_full(pf: PartialFact) -> VerifyReport:
    """Every host edge colored and every vertex of degree exactly r in each of the k classes."""
    report = check_partial(pf)
    for e, mult in sorted(pf.coloring.uncolored.items()):
        report.violations.append(Violation("uncolored", None, e, mult, 0))
    k, r = pf.k, pf.params.r
    table = _degree_table(pf)
    real = sorted(v for v in pf.host.vertices if v != U)
    if real:
        sub = table[1:, real]
        for ci, vi in np.argwhere(sub < r):
            report.violations.append(
                Violation("degree-exact", int(ci) + 1, real[vi], int(sub[ci, vi]), r)
            )
    if not pf.params.admissible:
        report.violations.append(Violation("divisibility", None, None, pf.params.r, k))
    return report


def _divisibility(pf: PartialFact, report: VerifyReport, labels: tuple[str, str]) -> None:
    p = pf.params
    if not p.divides_rn:
        report.violations.append(Violation(labels[0], None, None, p.r * p.n % p.h, 0))
    if not p.divides_binom:
        report.violations.append(
            Violation(labels[1], None, None, binom(p.n - 1, p.h - 1) % p.r, 0)
        )


def _class_sizes(pf: PartialFact, report: VerifyReport, label: str) -> None:
    p = pf.params
    bound = p.r * p.n // p.h
    for c in range(1, pf.k + 1):
        size = pf.coloring.class_size(c)
        if size * p.h > p.r * p.n:
            report.violations.append(Violation(label, c, None, size, bound))


def _exact_degrees(pf: PartialFact, report: VerifyReport, vertices, label: str) -> None:
    r = pf.params.r
    table = _degree_table(pf)
    vertices = sorted(vertices)
    if not vertices:
        return
    sub = table[1:, vertices]
    for ci, vi in np.argwhere(sub != r):
        report.violations.append(Violation(label, int(ci) + 1, vertices[vi], int(sub[ci, vi]), r))


def check_conditions(pf: PartialFact) -> VerifyReport:
    """(N1)-(N4) for a partial r-factorization of K_n^h \\ V."""
    report = check_partial(pf)
    _divisibility(pf, report, ("N1", "N2"))
    outside = [v for v in pf.host.vertices if v not in pf.V and v != U]
    _exact_degrees(pf, report, outside, "N3")
    _class_sizes(pf, report, "N4")
    return report


def check_pieces_conditions(pf: PartialFact) -> VerifyReport:
    """Divisibility, every class r-regular on V(H), and every class of size at most rn/h."""
    report = check_partial(pf)
    _divisibility(pf, report, ("h|rn", "r|binom"))
    _exact_degrees(pf, report, [v for v in pf.host.vertices if v != U], "neccpiece0")
    _class_sizes(pf, report, "neccpiece")
    return report


def _edge_type(e, V) -> int:
    return sum(1 for x in e if x in V)


def check_p_friendly(P: PartialFact, Q: PartialFact) -> VerifyReport:
    """Q keeps P's colors on edges missing V and P's per-color count of each other type."""
    report = VerifyReport()
    V = P.V
    h = P.params.h

    def census(pf):
        type0: dict = {}
        counts: Counter = Counter()
        for c, edges in pf.coloring.classes.items():
            for e, mult in edges.items():
                t = _edge_type(e, V)
                if t == 0:
                    type0.setdefault(e, Counter())[c] += mult
                else:
                    counts[t, c] += mult
        return type0, counts

    p0, pc = census(P)
    q0, qc = census(Q)
    for e in sorted(set(p0) | set(q0)):
        a, b = p0.get(e, Counter()), q0.get(e, Counter())
        if a != b:
            for c in sorted(set(a) | set(b)):
                if a[c] != b[c]:
                    report.violations.append(Violation("friendly-a", c, e, b[c], a[c]))
    for t, c in sorted(set(pc) | set(qc)):
        if 1 <= t <= h - 1 and pc[t, c] != qc[t, c]:
            report.violations.append(Violation("friendly-b", c, t, qc[t, c], pc[t, c]))
    return report


@dataclass
class TypeProfile:
    """``counts[i - 1, j]`` = number of color-i edges of type u^j."""

    counts: np.ndarray

    def of(self, color: int) -> np.ndarray:
        return self.counts[color - 1]

    def totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    def u_degrees(self) -> np.ndarray:
        return self.counts @ np.arange(self.counts.shape[1])


def type_profile(pf: PartialFact) -> TypeProfile:
    h, k = pf.params.h, pf.k
    counts = np.zeros((k, h + 1), dtype=np.int64)
    for c, edges in pf.coloring.classes.items():
        if not 1 <= c <= k:
            continue
        for e, mult in edges.items():
            counts[c - 1, u_count(e)] += mult
    return TypeProfile(counts)
