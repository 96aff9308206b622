"""Folded root systems: index sets, pairings, the a-map and the Weyl action.

Indices are 0-based in code (node ``i`` here is node ``i+1`` in the usual
1-based Dynkin labels); JSON output uses 1-based labels.

Conventions
-----------
* ``pairing[i][j] = (alpha_i, alpha_j)`` with ``(alpha_i, alpha_i) = 2 d_i``;
  nodes in ``I0`` (orbit-fixed) have ``d_i = d``, nodes in ``I1`` have 1.
* ``cartan_g[i][j] = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i)``.
* z-exponents live in fundamental-weight coordinates; the coroot
  ``alpha_i^vee`` (written ``z^{alpha_i^*}``) is row ``i`` of ``cartan_g``.
* F4 nodes 1-2-3-4 with 1, 2 long; the parent E6 uses Bourbaki labels
  1-3-4-5-6 with 2 attached to 4, and sigma swaps 1<->6, 3<->5.
* D4 (parent of G2) has node 1 at the centre, sigma cycles 2 -> 3 -> 4.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .errors import UnsupportedType

RootVector = Tuple[int, ...]
WeightVector = Tuple[int, ...]


@dataclass(frozen=True)
class FoldingDatum:
    g_type: str
    rank: int
    d: int
    I0: Tuple[int, ...]
    I1: Tuple[int, ...]
    d_i: Tuple[int, ...]
    cartan_g: Tuple[Tuple[int, ...], ...]
    pairing: Tuple[Tuple[int, ...], ...]
    parent_type: str
    parent_cartan: Tuple[Tuple[int, ...], ...]
    sigma: Tuple[int, ...]
    orbit_of: Tuple[int, ...]
    a_matrix: Tuple[Tuple[int, ...], ...]

    @property
    def name(self) -> str:
        return f"{self.g_type}{self.rank}"

    @property
    def n_parent(self) -> int:
        return len(self.sigma)

    def to_json(self) -> dict:
        one = lambda xs: [x + 1 for x in xs]  # noqa: E731
        return {
            "type": self.name,
            "d": self.d,
            "I0": one(self.I0),
            "I1": one(self.I1),
            "d_i": list(self.d_i),
            "cartan_g": [list(r) for r in self.cartan_g],
            "pairing": [list(r) for r in self.pairing],
            "parent": {
                "type": self.parent_type,
                "cartan": [list(r) for r in self.parent_cartan],
                "sigma": one(self.sigma),
                "orbit_map": one(self.orbit_of),
            },
            "a_matrix": [list(r) for r in self.a_matrix],
        }


def parse_type(label: str) -> Tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Za-z])_?(\d+)\s*", label)
    if not m:
        raise UnsupportedType(f"cannot parse Dynkin label {label!r}")
    return m.group(1).upper(), int(m.group(2))


def _simply_laced_cartan(n: int, edges) -> Tuple[Tuple[int, ...], ...]:
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return tuple(tuple(r) for r in c)


def _chain(n: int):
    return [(i, i + 1) for i in range(n - 1)]


def _parent_A_pattern(n: int):
    """A_{2n-1} folded by the flip j -> 2n-2-j (0-based)."""
    m = 2 * n - 1
    sigma = tuple(m - 1 - j for j in range(m))
    orbit_of = tuple(min(j, m - 1 - j) for j in range(m))
    return f"A{m}", _simply_laced_cartan(m, _chain(m)), sigma, orbit_of


def _parent_D_pattern(n: int):
    """D_{n+1} folded by swapping its two short legs."""
    m = n + 1
    if n == 2:
        edges = [(0, 1), (0, 2)]
    else:
        edges = _chain(n) + [(n - 2, n)]
    sigma = tuple(range(n - 1)) + (n, n - 1)
    orbit_of = tuple(range(n)) + (n - 1,)
    return f"D{m}", _simply_laced_cartan(m, edges), sigma, orbit_of


def _parent_E6():
    # Bourbaki: 1-3-4-5-6 and 2-4 (here 0-based)
    edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
    sigma = (5, 1, 4, 3, 2, 0)
    # F4 node 0 <- E6 node 2, 1 <- 4, 2 <- {3,5}, 3 <- {1,6}
    orbit_of = (3, 0, 2, 1, 2, 3)
    return "E6", _simply_laced_cartan(6, edges), sigma, orbit_of


def _parent_D4_triality():
    edges = [(0, 1), (0, 2), (0, 3)]
    sigma = (0, 2, 3, 1)
    orbit_of = (0, 1, 1, 1)
    return "D4", _simply_laced_cartan(4, edges), sigma, orbit_of


def _dual_table(g_type: str, n: int):
    """Edges and long nodes of the folded diagram, from the standard tables."""
    if g_type == "A":
        return _chain(n), (), 1
    if (g_type == "B" and n >= 3) or (g_type == "C" and n == 2):
        return _chain(n), (n - 1,), 2
    if (g_type == "C" and n >= 3) or (g_type == "B" and n == 2):
        return _chain(n), tuple(range(n - 1)), 2
    if g_type == "F" and n == 4:
        return _chain(4), (0, 1), 2
    if g_type == "G" and n == 2:
        return _chain(2), (0,), 3
    raise UnsupportedType(f"no folding for {g_type}{n}")


def _parent(g_type: str, n: int):
    if g_type == "A":
        return f"A{n}", _simply_laced_cartan(n, _chain(n)), tuple(range(n)), tuple(range(n))
    if (g_type == "B" and n >= 3) or (g_type == "C" and n == 2):
        return _parent_A_pattern(n)
    if (g_type == "C" and n >= 3) or (g_type == "B" and n == 2):
        return _parent_D_pattern(n)
    if g_type == "F":
        return _parent_E6()
    if g_type == "G":
        return _parent_D4_triality()
    raise UnsupportedType(f"no folding for {g_type}{n}")


def _perm_order(sigma: Sequence[int]) -> int:
    k, cur = 1, list(sigma)
    ident = list(range(len(sigma)))
    while cur != ident:
        cur = [sigma[x] for x in cur]
        k += 1
    return k


@lru_cache(maxsize=None)
def build_folding(g_type: str, rank: int | None = None) -> FoldingDatum:
    """Folding datum for ``g_type`` in {A, B, C, F, G}; ``"C2"`` style labels accepted."""
    if rank is None:
        g_type, rank = parse_type(g_type)
    g_type = g_type.upper()
    if g_type not in "ABCFG" or rank < 1:
        raise UnsupportedType(f"unsupported type {g_type}{rank}")
    if g_type == "F" and rank != 4 or g_type == "G" and rank != 2:
        raise UnsupportedType(f"{g_type} only exists in rank {4 if g_type == 'F' else 2}")
    if g_type in "BC" and rank < 2:
        raise UnsupportedType(f"{g_type}{rank} needs rank >= 2")

    edges, long_nodes, d = _dual_table(g_type, rank)
    d_i = tuple(d if i in long_nodes else 1 for i in range(rank))
    adj = set(edges) | {(j, i) for i, j in edges}
    pairing = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            if i == j:
                pairing[i][j] = 2 * d_i[i]
            elif (i, j) in adj:
                pairing[i][j] = -max(d_i[i], d_i[j])
    cartan = [[pairing[i][j] // d_i[i] for j in range(rank)] for i in range(rank)]

    parent_type, parent_cartan, sigma, orbit_of = _parent(g_type, rank)
    a_cols = []
    for i in range(rank):
        orbit = [j for j in range(len(sigma)) if orbit_of[j] == i]
        col = [0] * len(sigma)
        for j in orbit:
            col[j] = d if len(orbit) == 1 else 1
        a_cols.append(col)
    a_matrix = tuple(tuple(a_cols[i][j] for i in range(rank)) for j in range(len(sigma)))

    return FoldingDatum(
        g_type=g_type,
        rank=rank,
        d=_perm_order(sigma),
        I0=tuple(i for i in range(rank) if i in long_nodes),
        I1=tuple(i for i in range(rank) if i not in long_nodes),
        d_i=d_i,
        cartan_g=tuple(tuple(r) for r in cartan),
        pairing=tuple(tuple(r) for r in pairing),
        parent_type=parent_type,
        parent_cartan=parent_cartan,
        sigma=sigma,
        orbit_of=orbit_of,
        a_matrix=a_matrix,
    )


SUPPORTED_TYPES = ("A1", "A2", "A3", "B2", "B3", "C2", "C3", "F4", "G2")


def a_map(F: FoldingDatum, alpha: Sequence[int]) -> Tuple[int, ...]:
    """Orbit-sum image of a coinvariant class in the parent coroot lattice."""
    return tuple(sum(row[i] * alpha[i] for i in range(F.rank)) for row in F.a_matrix)


def norm_half(F: FoldingDatum, beta: Sequence[int]) -> int:
    """``(beta, beta) / 2``."""
    total = 0
    for i in range(F.rank):
        total += beta[i] * beta[i] * F.d_i[i]
        for j in range(i + 1, F.rank):
            total += beta[i] * beta[j] * F.pairing[i][j]
    return total


def pairing(F: FoldingDatum, a: Sequence[int], b: Sequence[int]) -> int:
    return sum(a[i] * F.pairing[i][j] * b[j] for i in range(F.rank) for j in range(F.rank))


def parent_pairing(F: FoldingDatum, a: Sequence[int], b: Sequence[int]) -> int:
    """Simply-laced pairing on the parent coroot lattice (diagonal entries 2)."""
    n = F.n_parent
    return sum(a[i] * F.parent_cartan[i][j] * b[j] for i in range(n) for j in range(n))


def enumerate_below(alpha: Sequence[int]) -> List[RootVector]:
    """All ``beta`` with ``0 <= beta <= alpha`` coordinatewise, lexicographically."""
    if any(c < 0 for c in alpha):
        raise ValueError(f"{tuple(alpha)} is not in the positive cone")
    return [tuple(b) for b in itertools.product(*(range(c + 1) for c in alpha))]


def height(v: Sequence[int]) -> int:
    return sum(v)


def coroot_weight(F: FoldingDatum, i: int) -> WeightVector:
    """``alpha_i^vee`` in fundamental-weight coordinates."""
    return F.cartan_g[i]


def root_to_weight(F: FoldingDatum, beta: Sequence[int]) -> WeightVector:
    """The exponent of ``z^{beta^*}`` in fundamental-weight coordinates."""
    return tuple(sum(beta[i] * F.cartan_g[i][k] for i in range(F.rank)) for k in range(F.rank))


def reflect(F: FoldingDatum, i: int, mu: Sequence[int]) -> WeightVector:
    """Simple reflection ``s_i(mu) = mu - m_i alpha_i^vee``."""
    m = mu[i]
    row = F.cartan_g[i]
    return tuple(mu[k] - m * row[k] for k in range(F.rank))


def is_dominant(mu: Sequence[int]) -> bool:
    return all(m >= 0 for m in mu)


def _inverse(mat) -> List[List[Fraction]]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@lru_cache(maxsize=None)
def _weight_gram(F: FoldingDatum) -> Tuple[Tuple[Fraction, ...], ...]:
    # |alpha_i^vee|^2 = 2 / d_i; weights in root coordinates via cartan_g^{-1}
    n = F.rank
    root_gram = [[Fraction(F.pairing[i][j], F.d_i[i] * F.d_i[j]) for j in range(n)] for i in range(n)]
    inv = _inverse(F.cartan_g)
    gram = [[sum(inv[a][i] * root_gram[i][j] * inv[b][j] for i in range(n) for j in range(n))
             for b in range(n)] for a in range(n)]
    return tuple(tuple(r) for r in gram)


def weight_form(F: FoldingDatum, mu: Sequence[int], nu: Sequence[int]) -> Fraction:
    """W-invariant form on weights, normalized so ``|alpha_i^vee|^2 = 2 / d_i``."""
    g = _weight_gram(F)
    return sum(mu[a] * g[a][b] * nu[b] for a in range(F.rank) for b in range(F.rank))


def weight_to_roots(F: FoldingDatum, mu: Sequence[int]) -> Tuple[Fraction, ...]:
    """Coordinates of a weight in the basis ``alpha_i^vee`` (rational)."""
    inv = _inverse(F.cartan_g)
    return tuple(sum(mu[a] * inv[a][i] for a in range(F.rank)) for i in range(F.rank))


def coroot_pairing(F: FoldingDatum, mu: Sequence[int], root: Sequence[int]) -> int:
    """``<mu, gamma^vee>`` for a root ``gamma`` (given as a weight vector)."""
    val = 2 * weight_form(F, mu, root) / weight_form(F, root, root)
    if val.denominator != 1:
        raise ValueError("non-integral coroot pairing")
    return int(val)


@lru_cache(maxsize=None)
def positive_roots(F: FoldingDatum) -> Tuple[WeightVector, ...]:
    """Positive roots ``alpha^vee`` (as weight vectors), sorted by height."""
    simple = [F.cartan_g[i] for i in range(F.rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(F.rank):
                s = reflect(F, i, r)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    pos = []
    for r in seen:
        c = weight_to_roots(F, r)
        if all(x >= 0 for x in c):
            pos.append((sum(c), r))
    return tuple(r for _, r in sorted(pos))


def highest_short_root(F: FoldingDatum) -> WeightVector:
    roots = positive_roots(F)
    shortest = min(weight_form(F, r, r) for r in roots)
    return [r for r in roots if weight_form(F, r, r) == shortest][-1]


def highest_root(F: FoldingDatum) -> WeightVector:
    return positive_roots(F)[-1]


def dominant_representative(F: FoldingDatum, mu: Sequence[int]) -> Tuple[WeightVector, List[int]]:
    """Move ``mu`` to the dominant chamber; returns the weight and the reflections applied."""
    mu = tuple(mu)
    word = []
    while True:
        i = next((j for j in range(F.rank) if mu[j] < 0), None)
        if i is None:
            return mu, word
        mu = reflect(F, i, mu)
        word.append(i)


@lru_cache(maxsize=None)
def longest_word(F: FoldingDatum) -> Tuple[int, ...]:
    """A reduced word for the longest Weyl group element."""
    # s_{i_1} ... s_{i_N} rho = -rho, found by greedy descent from -rho
    rho = tuple(1 for _ in range(F.rank))
    neg = tuple(-x for x in rho)
    _, word = dominant_representative(F, neg)
    return tuple(word)


def w0(F: FoldingDatum, mu: Sequence[int]) -> WeightVector:
    mu = tuple(mu)
    for i in reversed(longest_word(F)):
        mu = reflect(F, i, mu)
    return mu


def weyl_orbit(F: FoldingDatum, mu: Sequence[int]) -> set:
    seen = {tuple(mu)}
    frontier = [tuple(mu)]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(F.rank):
                s = reflect(F, i, v)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen
