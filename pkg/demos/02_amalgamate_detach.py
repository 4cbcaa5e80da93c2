"""Merge vertices into one heavy vertex u, color there, then split u apart again.

Merging [7..9] of K_9^3 gives a multigraph where edges such as {u, u, 1}
appear several times.  A factorization of K_9^3 seen through the merge is a
coloring of that multigraph; detach() recovers some factorization of
K_9^3 with the colors on [1..6] untouched.
"""
from hyperfact import DetachPlan, U, amalgamate, check_full, detach, factorize
from hyperfact.core import Coloring, PartialFact, amalgam_host

n, h = 9, 3
F = amalgamate(n, 6, h)
print("copies of {u,u,1}:", F.mult((U, U, 1)), " copies of {u,1,2}:", F.mult((U, 1, 2)))

full = factorize(n, h, 1, seed=3).factorization
fixed = set(range(1, 7))
merged = full.coloring.map_edges(lambda e: tuple(sorted(v if v in fixed else U for v in e)))
host = amalgam_host(fixed, n - len(fixed), h)
amalg = PartialFact(full.params, host, Coloring.over(host, merged), "amalgam")

out = detach(amalg, DetachPlan.onto_range(fixed, n), seed=1)
print("detached factorization valid:", check_full(out).ok)
same = out.coloring.restricted_to(fixed) == full.coloring.restricted_to(fixed)
print("colors inside [1..6] unchanged:", same)
print("identical to the original everywhere:", out.coloring.classes == full.coloring.classes)
