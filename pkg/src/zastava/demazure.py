"""Level-one Demazure characters of the affinization attached to a folding.

Affine weights are triples ``(level, mu, n)`` with ``mu`` in fundamental-weight
coordinates of the z-lattice and ``n`` the coefficient of ``delta``.  The extra
simple root is ``alpha_0 = delta - theta`` with ``theta`` the highest short root
of the z-lattice root system, which yields the twisted tables for non-simply-laced
types and the untwisted ones otherwise.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import InexactDivision, NormalizationFailure, NotInOrbit, UnsupportedType
from .exactalg import LaurentPoly, RationalCharacter
from .rootdata import (
    FoldingDatum,
    coroot_pairing,
    highest_short_root,
    is_dominant,
    longest_word,
    reflect,
    w0,
)

AffineWeight = Tuple[int, Tuple[int, ...], int]
SIGN_CONVENTIONS = ("minus", "plus")
WORD_BOUND = 10_000

@dataclass(frozen=True)
class AffineData:
    F: FoldingDatum
    theta: Tuple[int, ...]
    gcm: Tuple[Tuple[int, ...], ...]
    marks: Tuple[int, ...]
    comarks: Tuple[int, ...]
    name: str

    @property
    def size(self) -> int:
        return self.F.rank + 1

    def root(self, i: int) -> AffineWeight:
        """Affine simple root as a weight triple."""
        if i == 0:
            return 0, tuple(-x for x in self.theta), 1
        return 0, self.F.cartan_g[i - 1], 0

    def pair(self, tau: AffineWeight, i: int) -> int:
        """``<tau, alpha_i^vee>``; index 0 is the affine node."""
        level, mu, _ = tau
        if i == 0:
            return level - coroot_pairing(self.F, mu, self.theta)
        return mu[i - 1]

    def level(self, tau: AffineWeight) -> int:
        return sum(c * self.pair(tau, i) for i, c in enumerate(self.comarks))

    def reflect(self, i: int, tau: AffineWeight) -> AffineWeight:
        return _translate(tau, self.root(i), -self.pair(tau, i))


def _translate(tau: AffineWeight, root: AffineWeight, t: int) -> AffineWeight:
    return tau[0] + t * root[0], tuple(a + t * b for a, b in zip(tau[1], root[1])), tau[2] + t * root[2]


def _null_vector(rows: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """Primitive positive vector ``v`` with ``rows @ v = 0`` and ``v[0] = 1``."""
    n = len(rows)
    # fix v[0] = 1 and solve the finite block
    a = [[Fraction(rows[i][j]) for j in range(1, n)] + [Fraction(-rows[i][0])] for i in range(1, n)]
    m = n - 1
    for col in range(m):
        piv = next(r for r in range(col, m) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(m):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    v = [Fraction(1)] + [a[i][m] for i in range(m)]
    if any(x.denominator != 1 or x <= 0 for x in v):
        raise UnsupportedType("affine null vector is not a positive integer vector")
    return tuple(int(x) for x in v)


@lru_cache(maxsize=None)
def build_affine(F: FoldingDatum) -> AffineData:
    theta = highest_short_root(F)
    n = F.rank
    roots = [(0, tuple(-x for x in theta), 1)] + [(0, F.cartan_g[i], 0) for i in range(n)]
    provisional = AffineData(F, theta, (), (), (), "")
    gcm = tuple(tuple(provisional.pair(roots[j], i) for j in range(n + 1)) for i in range(n + 1))
    marks = _null_vector(gcm)
    comarks = _null_vector(tuple(zip(*gcm)))
    return AffineData(F, theta, gcm, marks, comarks, _affine_name(F, marks))


def _affine_name(F: FoldingDatum, marks: Sequence[int]) -> str:
    """Kac label read off from the computed diagram."""
    n = F.rank
    if F.d == 1:
        return f"{F.g_type}{n}^(1)"
    if F.d == 3:
        return "D4^(3)"
    if F.g_type == "F":
        return "E6^(2)"
    # chain with both ends doubled has all marks 1; the forked diagram does not
    if all(m == 1 for m in marks):
        return f"D{n + 1}^(2)"
    return f"A{2 * n - 1}^(2)"


# -- group algebra ------------------------------------------------------------

class AffineElement:
    """Finite formal sum of affine exponentials with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Dict[AffineWeight, Fraction] | None = None):
        self._terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def exp(cls, tau: AffineWeight, coeff=1) -> "AffineElement":
        return cls({tau: Fraction(coeff)})

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: (kv[0][0], kv[0][2], kv[0][1]))

    def __add__(self, other: "AffineElement") -> "AffineElement":
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return AffineElement(out)

    def scale(self, c) -> "AffineElement":
        return AffineElement({k: v * c for k, v in self._terms.items()})

    def shift(self, root: AffineWeight, t: int = 1) -> "AffineElement":
        return AffineElement({_translate(k, root, t): v for k, v in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, AffineElement) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __len__(self):
        return len(self._terms)

    def __repr__(self):
        return f"AffineElement({self.items()})"

    def is_zero(self) -> bool:
        return not self._terms


def _string(tau, root, p: int) -> List[Tuple[AffineWeight, int]]:
    """``D e^tau`` as (weight, sign) pairs given ``p = <tau, alpha^vee>``."""
    if p >= 0:
        return [(_translate(tau, root, -t), 1) for t in range(p + 1)]
    return [(_translate(tau, root, t), -1) for t in range(1, -p)]


def demazure_step(A: AffineData, i: int, f: AffineElement) -> AffineElement:
    """Demazure operator ``(f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})``."""
    root = A.root(i)
    out: Dict[AffineWeight, Fraction] = {}
    for tau, c in f._terms.items():
        for w, s in _string(tau, root, A.pair(tau, i)):
            out[w] = out.get(w, 0) + s * c
    return AffineElement(out)


def reflect_element(A: AffineData, i: int, f: AffineElement) -> AffineElement:
    return AffineElement({A.reflect(i, k): v for k, v in f._terms.items()})


def check_step_identity(A: AffineData, i: int, f: AffineElement) -> None:
    """Raise InexactDivision unless ``(1 - e^{-alpha_i}) D_i f = f - e^{-alpha_i} s_i f``."""
    root = A.root(i)
    d = demazure_step(A, i, f)
    lhs = d + d.shift(root, -1).scale(-1)
    rhs = f + reflect_element(A, i, f).shift(root, -1).scale(-1)
    if lhs != rhs:
        raise InexactDivision(f"Demazure operator {i} is not an exact quotient on this input")


# -- extremal weights -----------------------------------------------------------

def extremal_weight(F: FoldingDatum, lam: Sequence[int], sign_convention: str) -> AffineWeight:
    if sign_convention == "minus":
        mu = w0(F, lam)
    elif sign_convention == "plus":
        mu = tuple(lam)
    else:
        raise ValueError(f"unknown sign convention {sign_convention!r}")
    return 1, tuple(mu), 0


def dominant_walk(A: AffineData, tau: AffineWeight) -> Tuple[List[int], AffineWeight]:
    """Greedy descent to the dominant chamber; returns (steps, dominant weight)."""
    steps = []
    while True:
        i = next((j for j in range(A.size) if A.pair(tau, j) < 0), None)
        if i is None:
            return steps, tau
        if len(steps) >= WORD_BOUND:
            raise NotInOrbit(f"no dominant weight reached after {WORD_BOUND} reflections")
        tau = A.reflect(i, tau)
        steps.append(i)


def translation_word(A: AffineData, lam: Sequence[int], sign_convention: str = "minus") -> List[int]:
    """Word ``i_1 ... i_k`` with ``tau = s_{i_1} ... s_{i_k} tau_dom``."""
    if not is_dominant(lam):
        raise ValueError(f"{tuple(lam)} is not dominant")
    steps, _ = dominant_walk(A, extremal_weight(A.F, lam, sign_convention))
    return steps


# -- characters ---------------------------------------------------------------

def raw_character(A: AffineData, lam: Sequence[int], sign_convention: str = "minus") -> LaurentPoly:
    """Demazure character before normalization, with ``e^delta -> q``."""
    steps, dom = dominant_walk(A, extremal_weight(A.F, lam, sign_convention))
    f = AffineElement.exp(dom)
    for i in reversed(steps):
        f = demazure_step(A, i, f)
    return LaurentPoly(A.F.rank, {(n, mu): c for (_, mu, n), c in f._terms.items()})


def normalize_character(F: FoldingDatum, raw: LaurentPoly, lam: Sequence[int]) -> Tuple[LaurentPoly, bool]:
    """Flip by ``w0`` if needed, then shift so the ``z^lam`` coefficient starts at ``q^0``.

    Returns the normalized polynomial and whether the flip was applied.
    """
    lam = tuple(lam)
    if raw.is_zero():
        raise NormalizationFailure("character is zero")
    flipped = False
    if raw.z_coefficient(lam).is_zero():
        raw = raw.map_z(lambda mu: w0(F, mu))
        flipped = True
        if raw.z_coefficient(lam).is_zero():
            raise NormalizationFailure(f"no z^{lam} term before or after the w0 flip")
    lead = raw.z_coefficient(lam)
    e = lead.q_range()[0]
    out = raw.shift(-e, (0,) * F.rank)
    if out.coefficient(0, lam) != 1:
        raise NormalizationFailure(f"z^{lam} coefficient does not start with 1")
    return out, flipped


def demazure_character(F: FoldingDatum, lam: Sequence[int], sign_convention: str | None = None) -> LaurentPoly:
    """Normalized level-one Demazure character (the graded local Weyl module character)."""
    if sign_convention is None:
        sign_convention = load_conventions().get(F.name, {}).get("sign_convention", "minus")
    A = build_affine(F)
    out, _ = normalize_character(F, raw_character(A, lam, sign_convention), lam)
    return out


def global_weyl_character(F: FoldingDatum, psi_hat: LaurentPoly, lam: Sequence[int]) -> RationalCharacter:
    """Divide by ``prod_i prod_{r <= lam_i} (1 - q^{d_i r})``."""
    zero = (0,) * F.rank
    den = [(F.d_i[i] * r, zero) for i in range(F.rank) for r in range(1, lam[i] + 1)]
    return RationalCharacter(psi_hat, den)


def finite_demazure_step(F: FoldingDatum, i: int, f: LaurentPoly) -> LaurentPoly:
    root = F.cartan_g[i]
    out: Dict = {}
    for (k, mu), c in f.items():
        p = mu[i]
        if p >= 0:
            chain = [(tuple(a - t * b for a, b in zip(mu, root)), 1) for t in range(p + 1)]
        else:
            chain = [(tuple(a + t * b for a, b in zip(mu, root)), -1) for t in range(1, -p)]
        for nu, s in chain:
            out[(k, nu)] = out.get((k, nu), 0) + s * c
    return LaurentPoly(F.rank, out)


def weyl_character_finite(F: FoldingDatum, lam: Sequence[int]) -> LaurentPoly:
    """Character of the irreducible representation with highest weight ``lam``."""
    f = LaurentPoly.monomial(0, tuple(lam))
    for i in reversed(longest_word(F)):
        f = finite_demazure_step(F, i, f)
    return f


def is_weyl_invariant(F: FoldingDatum, p: LaurentPoly) -> bool:
    return all(p.map_z(lambda mu, i=i: reflect(F, i, mu)) == p for i in range(F.rank))


def dominant_weights(rank: int, max_total: int) -> Iterable[Tuple[int, ...]]:
    """Dominant weights with coordinate sum <= max_total, by total then lexicographically."""
    import itertools

    for total in range(max_total + 1):
        for lam in sorted(itertools.product(range(total + 1), repeat=rank), reverse=True):
            if sum(lam) == total:
                yield lam


# -- sign convention resolution ---------------------------------------------------

def convention_record(F: FoldingDatum, sign_convention: str, max_total: int = 2) -> dict | None:
    """Evidence for a convention on small weights, or None if any check fails."""
    A = build_affine(F)
    lengths = {}
    flip_any = False
    for lam in dominant_weights(F.rank, max_total):
        try:
            word = translation_word(A, lam, sign_convention)
            out, flipped = normalize_character(F, raw_character(A, lam, sign_convention), lam)
        except (NormalizationFailure, NotInOrbit):
            return None
        if not (out.is_integral() and out.is_nonnegative() and is_weyl_invariant(F, out)):
            return None
        if out.at_q_zero() != weyl_character_finite(F, lam):
            return None
        flip_any = flip_any or flipped
        lengths[",".join(map(str, lam))] = len(word)
    return {"sign_convention": sign_convention, "flip_applied": flip_any, "word_lengths": lengths}


def resolve_convention(F: FoldingDatum, max_total: int = 2) -> dict:
    for sign in SIGN_CONVENTIONS:
        rec = convention_record(F, sign, max_total)
        if rec is not None:
            return rec
    raise NormalizationFailure(f"no sign convention validates for {F.name}")


@lru_cache(maxsize=1)
def _conventions_text() -> str:
    return resources.files("zastava").joinpath("data", "conventions.json").read_text()


def load_conventions() -> dict:
    try:
        return json.loads(_conventions_text())
    except FileNotFoundError:
        return {}
