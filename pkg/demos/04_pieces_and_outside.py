"""Two extension problems where a vertex set V is cut away.

Pieces: delete V from every edge of a factorization of K_10^4, keep the
colors on the leftover pieces (sizes 1..4), and rebuild a full
factorization.  Outside: forget only the edges inside V and recolor so
that each color keeps the same number of edges of every type.
"""
from hyperfact import (
    as_pieces,
    as_restrict,
    check_full,
    check_p_friendly,
    check_pieces_conditions,
    extend_outside,
    extend_pieces,
    factorize,
)

full = factorize(10, 4, 2, seed=1).factorization
V = {3, 6, 9}

pieces = as_pieces(full, V)
print("piece conditions:", check_pieces_conditions(pieces).summary())
rebuilt = extend_pieces(pieces, seed=0).factorization
print("rebuilt valid:", check_full(rebuilt).ok,
      " pieces kept:", rebuilt.coloring.shrunk_by(V) == pieces.coloring.classes)

P = as_restrict(full, V)
out = extend_outside(P, seed=5).factorization
print("outside extension valid:", check_full(out).ok)
print("type counts preserved:", check_p_friendly(P, as_restrict(out, V)).ok)
