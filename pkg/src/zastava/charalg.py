"""Characters of explicitly presented multigraded rings.

A presentation is a polynomial ring with bigraded generators (q-degree, z-weight)
modulo homogeneous relations.  Single-relation presentations have a closed-form
character; general ones are handled degree by degree with exact rank computations.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

from .errors import GradingMismatch, InhomogeneousRelation, NotHypersurface, SchemaError, SlotOverflow
from .exactalg import LaurentPoly, RationalCharacter
from .rootdata import FoldingDatum, a_map, coroot_weight

GradedWeight = Tuple[int, Tuple[int, ...]]
Monomial = Tuple[int, ...]


def _wadd(a: GradedWeight, b: GradedWeight) -> GradedWeight:
    return a[0] + b[0], tuple(x + y for x, y in zip(a[1], b[1]))


def _wscale(w: GradedWeight, e: int) -> GradedWeight:
    return w[0] * e, tuple(e * x for x in w[1])


@dataclass(frozen=True)
class Relation:
    weight: GradedWeight
    terms: Dict[Monomial, Fraction]


@dataclass
class WeightedPresentation:
    """Bigraded polynomial ring modulo relations."""

    names: List[str]
    weights: List[GradedWeight]
    relations: List[Relation] = field(default_factory=list)

    def __post_init__(self):
        if len(self.names) != len(self.weights):
            raise SchemaError("names and weights differ in length")
        if len(set(self.names)) != len(self.names):
            raise SchemaError("duplicate variable name")
        ranks = {len(mu) for _, mu in self.weights}
        if len(ranks) > 1:
            raise SchemaError("variables have z-weights of different lengths")
        for name, (k, _) in zip(self.names, self.weights):
            if k < 1:
                raise SchemaError(f"variable {name} has q-weight {k} < 1")
        for rel in self.relations:
            for mono in rel.terms:
                if len(mono) != len(self.names):
                    raise SchemaError("relation monomial has the wrong number of exponents")

    @property
    def rank(self) -> int:
        return len(self.weights[0][1]) if self.weights else 0

    def index(self, name: str) -> int:
        return self.names.index(name)

    def monomial_weight(self, mono: Monomial) -> GradedWeight:
        w: GradedWeight = (0, (0,) * self.rank)
        for e, vw in zip(mono, self.weights):
            if e:
                w = _wadd(w, _wscale(vw, e))
        return w

    def with_weight(self, name: str, weight: GradedWeight) -> "WeightedPresentation":
        weights = list(self.weights)
        weights[self.index(name)] = (int(weight[0]), tuple(weight[1]))
        return WeightedPresentation(list(self.names), weights, list(self.relations))


def homogeneity_audit(P: WeightedPresentation) -> List[Tuple[int, Monomial, GradedWeight]]:
    """List of (relation index, monomial, its weight) that disagree with the tag."""
    bad = []
    for r, rel in enumerate(P.relations):
        for mono in rel.terms:
            w = P.monomial_weight(mono)
            if w != rel.weight:
                bad.append((r, mono, w))
    return bad


def check_homogeneous(P: WeightedPresentation) -> None:
    bad = homogeneity_audit(P)
    if bad:
        r, mono, w = bad[0]
        raise InhomogeneousRelation(f"relation {r}: monomial {mono} has weight {w}, tag {P.relations[r].weight}")


# -- quasimap coefficient weights ------------------------------------------

@dataclass(frozen=True)
class SlotCoefficient:
    """Coefficient of ``t^k`` in the polynomial multiplying a basis vector.

    ``slot`` is a 0-based parent node, ``depth`` the parent root-lattice
    vector by which the basis vector sits below the highest weight.
    """

    slot: int
    slot_degree: int
    t_power: int
    depth: Tuple[int, ...]


def assign_weight(F: FoldingDatum, alpha: Sequence[int], s: SlotCoefficient) -> GradedWeight:
    """q-degree ``n_j - k``; z-weight is the depth collapsed onto orbit coroots."""
    if not 0 <= s.t_power < s.slot_degree:
        raise SlotOverflow(f"t-power {s.t_power} outside [0, {s.slot_degree})")
    n = a_map(F, alpha)
    if n[s.slot] != s.slot_degree:
        raise GradingMismatch(f"slot {s.slot + 1} has degree {n[s.slot]}, not {s.slot_degree}")
    if len(s.depth) != F.n_parent:
        raise GradingMismatch("depth must be a parent root-lattice vector")
    mu = [0] * F.rank
    for j, c in enumerate(s.depth):
        for t, x in enumerate(coroot_weight(F, F.orbit_of[j])):
            mu[t] += c * x
    return s.slot_degree - s.t_power, tuple(mu)


def a1_tower(F: FoldingDatum, n: int) -> WeightedPresentation:
    """Free ring on the coefficients of a pair of polynomials (monic P, Q) of degree n."""
    if F.rank != 1:
        raise GradingMismatch("the tower is defined for rank one")
    names, weights = [], []
    for tag, depth in (("p", (0,)), ("r", (1,))):
        for k in range(n):
            names.append(f"{tag}{k}")
            weights.append(assign_weight(F, (n,), SlotCoefficient(0, n, k, depth)))
    return WeightedPresentation(names, weights)


# -- closed forms -----------------------------------------------------------

def free_series(P: WeightedPresentation) -> RationalCharacter:
    return RationalCharacter(LaurentPoly.one(P.rank), [(k, mu) for k, mu in P.weights])


def hypersurface_series(P: WeightedPresentation) -> RationalCharacter:
    """``(1 - q^{k_r} z^{mu_r}) / prod_v (1 - q^{k_v} z^{mu_v})``."""
    if len(P.relations) != 1:
        raise NotHypersurface(f"expected one relation, got {len(P.relations)}")
    k, mu = P.relations[0].weight
    num = LaurentPoly.one(P.rank) - LaurentPoly.monomial(k, mu)
    return RationalCharacter(num, [(kv, mv) for kv, mv in P.weights])


# -- degreewise Hilbert function -------------------------------------------

def monomials_by_weight(P: WeightedPresentation, N: int) -> Dict[GradedWeight, List[Monomial]]:
    """All monomials of q-degree <= N grouped by multidegree."""
    out: Dict[GradedWeight, List[Monomial]] = {}
    nv = len(P.names)
    zero = (0,) * P.rank

    def rec(i: int, exps: List[int], w: GradedWeight):
        if i == nv:
            out.setdefault(w, []).append(tuple(exps))
            return
        k, mu = P.weights[i]
        e = 0
        while w[0] + e * k <= N:
            exps.append(e)
            rec(i + 1, exps, (w[0] + e * k, tuple(a + e * b for a, b in zip(w[1], mu))))
            exps.pop()
            e += 1

    rec(0, [], (0, zero))
    return out


def _rank(rows: Iterable[Dict[int, Fraction]], ncols: int) -> int:
    pivots: Dict[int, Dict[int, Fraction]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                c = row[lead]
                pivots[lead] = {j: v / c for j, v in row.items()}
                break
            c = row[lead]
            for j, v in piv.items():
                x = row.get(j, 0) - c * v
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
        if len(pivots) == ncols:
            break
    return len(pivots)


def graded_hilbert_function(P: WeightedPresentation, N: int) -> Dict[GradedWeight, int]:
    """Dimension of every multidegree with q-degree <= N."""
    check_homogeneous(P)
    groups = monomials_by_weight(P, N)
    result: Dict[GradedWeight, int] = {}
    for w, monos in groups.items():
        col = {m: i for i, m in enumerate(monos)}

        def rows():
            for rel in P.relations:
                if rel.weight[0] > w[0]:
                    continue
                cofactor = (w[0] - rel.weight[0], tuple(a - b for a, b in zip(w[1], rel.weight[1])))
                for m in groups.get(cofactor, ()):
                    yield {col[tuple(a + b for a, b in zip(m, t))]: c for t, c in rel.terms.items()}

        result[w] = len(monos) - _rank(rows(), len(monos))
    return result


def hilbert_poly(hf: Dict[GradedWeight, int], rank: int) -> LaurentPoly:
    return LaurentPoly(rank, {w: Fraction(v) for w, v in hf.items() if v})


# -- fixture files -----------------------------------------------------------

def _parse_coeff(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad coefficient {text!r}") from exc


def fixture_from_json(data: dict) -> WeightedPresentation:
    try:
        names = [v["name"] for v in data["variables"]]
        weights = [(int(v["q"]), tuple(int(x) for x in v["z"])) for v in data["variables"]]
        relations = []
        for r in data.get("relations", []):
            terms: Dict[Monomial, Fraction] = {}
            for t in r["terms"]:
                exps = [0] * len(names)
                for var, e in t["monomial"].items():
                    exps[names.index(var)] += int(e)
                key = tuple(exps)
                terms[key] = terms.get(key, Fraction(0)) + _parse_coeff(t["coeff"])
            terms = {m: c for m, c in terms.items() if c}
            relations.append(Relation((int(r["q"]), tuple(int(x) for x in r["z"])), terms))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed fixture: {exc}") from exc
    return WeightedPresentation(names, weights, relations)


def fixture_to_json(P: WeightedPresentation) -> dict:
    def mono(m):
        return {P.names[i]: e for i, e in enumerate(m) if e}

    return {
        "variables": [{"name": n, "q": k, "z": list(mu)} for n, (k, mu) in zip(P.names, P.weights)],
        "relations": [
            {
                "q": r.weight[0],
                "z": list(r.weight[1]),
                "terms": [{"coeff": str(c), "monomial": mono(m)} for m, c in sorted(r.terms.items(), reverse=True)],
            }
            for r in P.relations
        ],
    }


BUILTIN_FIXTURES = ("c2_reduced", "c2_full", "g2_reduced")


def load_fixture(name_or_path: str | Path) -> WeightedPresentation:
    """Load a fixture by builtin name or file path."""
    if str(name_or_path) in BUILTIN_FIXTURES:
        text = resources.files("zastava").joinpath("data", "fixtures", f"{name_or_path}.json").read_text()
    else:
        text = Path(name_or_path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"fixture is not valid JSON: {exc}") from exc
    return fixture_from_json(data)
