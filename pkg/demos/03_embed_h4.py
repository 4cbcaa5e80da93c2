"""Embed a random 1-factorization of K_5^4 into one of K_28^4.

The stage log shows how many edges of each type {x, u^j} went into every
color before the heavy vertex was split into vertices 6..28.
"""
import time

from hyperfact import binom, check_full, extend_k4, random_partial

pf = random_partial(5, 4, 28, 1, seed=42)
print("input:", sum(pf.coloring.class_size(c) for c in range(1, pf.k + 1)), "edges on [5] colored,",
      pf.k, "colors available")

t0 = time.perf_counter()
res = extend_k4(pf, seed=0)
print(f"extended in {time.perf_counter() - t0:.2f}s")

log = res.stage_log
for key in ("u^1", "u^2", "u^3"):
    print(f"type {key}: {int(log[key])} edges")
print("copies of u^4:", int(log["e"].sum()), "=", binom(23, 4))
print("deg(u) per color is 23 everywhere:", bool((log["u degree"] == 23).all()))
print("valid:", check_full(res.factorization).ok)
