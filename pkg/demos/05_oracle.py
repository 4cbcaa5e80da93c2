"""When does a small factorization extend?

The ten-class 1-factorization of K_6^3 below cannot grow to n = 9: the
exhaustive search proves it at the root.  Growing it to n = 12 works, and
the staged heuristic finds such an extension directly.
"""
from hyperfact import check_full, extend_generic, oracle_extend, parse_hf

INTRO6 = """hf1 kind=complete n=6 h=3 r=1
1: 1 4 5
1: 2 3 6
2: 1 2 4
2: 3 5 6
3: 1 3 6
3: 2 4 5
4: 1 2 3
4: 4 5 6
5: 1 2 5
5: 3 4 6
6: 1 5 6
6: 2 3 4
7: 1 3 5
7: 2 4 6
8: 1 4 6
8: 2 3 5
9: 1 3 4
9: 2 5 6
10: 1 2 6
10: 3 4 5
"""

pf = parse_hf(INTRO6)
print("valid on [6]:", check_full(pf).ok)

res = oracle_extend(pf, 9)
print(f"oracle to n=9: {res.status} ({res.reason}, {res.nodes} nodes)")

gen = extend_generic(pf, 9, budget=3)
print("staged attempt to n=9:", "ok" if gen.ok else f"failed at {gen.stage}")

gen = extend_generic(pf, 12, budget=4)
print("staged attempt to n=12:", "ok" if gen.ok else f"failed at {gen.stage}",
      "valid:", gen.ok and check_full(gen.factorization).ok)
