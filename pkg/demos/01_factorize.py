"""Split every triple of a 6-set into perfect matchings, then scale up.

A 1-factorization of K_6^3 has ten classes, each a pair of disjoint
triples.  The same call handles any admissible (n, h, r).
"""
from hyperfact import check_full, factorize

res = factorize(6, 3, 1, seed=0)
pf = res.factorization
for c in range(1, pf.k + 1):
    print(c, sorted(pf.coloring.class_edges(c)))
print("valid:", check_full(pf).ok)

# r > 1: every vertex lies in r edges of each class
for n, h, r in [(9, 3, 4), (8, 4, 1), (10, 4, 2)]:
    out = factorize(n, h, r).factorization
    sizes = {out.coloring.class_size(c) for c in range(1, out.k + 1)}
    print(f"n={n} h={h} r={r}: {out.k} classes of size {sizes.pop()}, valid={check_full(out).ok}")
