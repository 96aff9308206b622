"""The ten-variable C2 ring and the five-variable hypersurface have the same character.

The closed form needs a single relation, so the full ring is counted degree by degree
and compared with the series of the reduced one.
"""
from zastava.charalg import graded_hilbert_function, hilbert_poly, hypersurface_series, load_fixture
from zastava.exactalg import series_expand

full = load_fixture("c2_full")
reduced = load_fixture("c2_reduced")
print("full:", len(full.names), "variables,", len(full.relations), "relations")
print("reduced:", len(reduced.names), "variables,", len(reduced.relations), "relation")

N = 8
lhs = hilbert_poly(graded_hilbert_function(full, N), 2)
rhs = series_expand(hypersurface_series(reduced), N)
for k in range(N + 1):
    a = sum(c for (j, _), c in lhs.terms.items() if j == k)
    b = sum(c for (j, _), c in rhs.terms.items() if j == k)
    print(f"q^{k}: {a} vs {b}")
print("agree through q^%d:" % N, lhs == rhs)
