"""Lattice q-difference operators and their polynomial eigenfunctions.

An operator is a finite sum ``sum_t c_t(q, x) T_{s_t}`` acting on functions on the
weight lattice by ``(M Psi)(lam) = sum_t c_t(q, q^lam) Psi(lam + s_t)``.  Tables of
``Psi`` are solved by induction on height using the term whose shift is highest.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, Iterable, List, Sequence, Tuple

import sympy

from .errors import (
    BoxExceeded,
    InconsistentSystem,
    InternalNonFactored,
    NonInvariantEigenvalue,
    NotTriangular,
    SchemaError,
    SingularCoefficient,
)
from .exactalg import LaurentPoly, RationalCharacter, poly_from_json, poly_to_json, rc_equal, rc_sum
from .rootdata import FoldingDatum, build_folding, is_dominant, reflect

Weight = Tuple[int, ...]
_Q = sympy.Symbol("q")


@dataclass(frozen=True)
class Term:
    shift: Weight
    coeff_text: str
    # (q exponent, x exponents, coefficient) with the per-term q-shift folded in
    monomials: Tuple[Tuple[int, Tuple[int, ...], Fraction], ...]

    def evaluate(self, lam: Sequence[int]) -> LaurentPoly:
        """Coefficient at ``x_i = q^{lam_i}`` as a q-polynomial (z-degree 0)."""
        rank = len(self.shift)
        zero = (0,) * rank
        out: Dict = {}
        for a, xs, c in self.monomials:
            k = a + sum(b * m for b, m in zip(xs, lam))
            out[(k, zero)] = out.get((k, zero), 0) + c
        return LaurentPoly(rank, out)


@dataclass
class DifferenceOperator:
    type: str
    terms: List[Term]
    eigenvalue: LaurentPoly
    provenance: str = ""

    @property
    def rank(self) -> int:
        return self.eigenvalue.nvars

    @property
    def folding(self) -> FoldingDatum:
        return build_folding(self.type)


def parse_coefficient(text: str, rank: int, q_shift: int = 0) -> Tuple[Tuple[int, Tuple[int, ...], Fraction], ...]:
    """Parse a polynomial in ``q, x1..xn`` into exponent/coefficient triples."""
    xs = sympy.symbols(f"x1:{rank + 1}")
    names = {"q": _Q, **{str(x): x for x in xs}}
    try:
        expr = sympy.sympify(str(text), locals=names)
    except (sympy.SympifyError, TypeError, SyntaxError) as exc:
        raise SchemaError(f"cannot parse coefficient {text!r}") from exc
    extra = expr.free_symbols - set(names.values())
    if extra:
        raise SchemaError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    try:
        poly = sympy.Poly(sympy.expand(expr), _Q, *xs)
    except sympy.PolynomialError as exc:
        raise SchemaError(f"coefficient {text!r} is not a polynomial") from exc
    out = []
    for exps, c in poly.terms():
        c = sympy.Rational(c)
        out.append((exps[0] + q_shift, tuple(exps[1:]), Fraction(int(c.p), int(c.q))))
    return tuple(out)


def _check_invariant(F: FoldingDatum, f: LaurentPoly) -> None:
    for i in range(F.rank):
        if f.map_z(lambda mu, i=i: reflect(F, i, mu)) != f:
            raise NonInvariantEigenvalue(f"eigenvalue is not invariant under s_{i + 1}")


def parse_operator(document: dict) -> DifferenceOperator:
    try:
        F = build_folding(document["type"])
        rank = F.rank
        terms = []
        for t in document.get("terms", []):
            shift = tuple(int(s) for s in t["shift"])
            if len(shift) != rank:
                raise SchemaError(f"shift {shift} has the wrong length for {F.name}")
            q_shift = int(t.get("q_shift", 0))
            terms.append(Term(shift, str(t["coeff"]), parse_coefficient(t["coeff"], rank, q_shift)))
        ev = document.get("eigenvalue", [])
        f = poly_from_json(ev, rank) if isinstance(ev, list) else LaurentPoly.zero(rank)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed operator: {exc}") from exc
    if any(k != 0 for k, _ in f.terms):
        raise SchemaError("eigenvalue must not depend on q")
    _check_invariant(F, f)
    return DifferenceOperator(F.name, terms, f, str(document.get("provenance", "")))


def operator_to_json(op: DifferenceOperator) -> dict:
    return {
        "type": op.type,
        "terms": [{"shift": list(t.shift), "coeff": t.coeff_text} for t in op.terms],
        "eigenvalue": poly_to_json(op.eigenvalue),
        "provenance": op.provenance,
    }


BUILTIN_OPERATORS = ("a1_toda",)


def load_operator(name_or_path: str | Path) -> DifferenceOperator:
    if str(name_or_path) in BUILTIN_OPERATORS:
        text = resources.files("zastava").joinpath("data", "operators", f"{name_or_path}.json").read_text()
    else:
        text = Path(name_or_path).read_text()
    try:
        return parse_operator(json.loads(text))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"operator file is not valid JSON: {exc}") from exc


# -- tables -------------------------------------------------------------------

def height(mu: Sequence[int]) -> int:
    return sum(mu)


def box_weights(rank: int, box: int) -> List[Weight]:
    """Dominant weights with coordinate sum <= box, by height then lexicographically."""
    out: List[Weight] = []

    def rec(prefix, left):
        if len(prefix) == rank:
            out.append(tuple(prefix))
            return
        for m in range(left + 1):
            rec(prefix + [m], left - m)

    rec([], box)
    return sorted(out, key=lambda w: (height(w), w))


@dataclass
class WhittakerTable:
    rank: int
    box: int
    entries: Dict[Weight, RationalCharacter] = field(default_factory=dict)

    def __getitem__(self, mu: Sequence[int]) -> RationalCharacter:
        mu = tuple(mu)
        if not is_dominant(mu):
            return RationalCharacter.zero(self.rank)
        if mu not in self.entries:
            raise BoxExceeded(f"no table entry at {mu}")
        return self.entries[mu]

    def __contains__(self, mu) -> bool:
        return tuple(mu) in self.entries

    def agrees_with(self, other: "WhittakerTable") -> List[Weight]:
        """Weights (common to both) where the entries differ."""
        return [mu for mu in sorted(self.entries) if mu in other.entries
                and not rc_equal(self.entries[mu], other.entries[mu])]


def lattice_apply(op: DifferenceOperator, table: WhittakerTable, lam: Sequence[int]) -> RationalCharacter:
    lam = tuple(lam)
    parts = []
    for t in op.terms:
        target = tuple(a + b for a, b in zip(lam, t.shift))
        if not is_dominant(target):
            continue
        c = t.evaluate(lam)
        if c.is_zero():
            continue
        psi = table[target]
        parts.append(RationalCharacter(psi.num * c, psi.den))
    return rc_sum(parts, table.rank)


@dataclass
class EigenReport:
    box: int
    checked: List[Weight]
    failures: List[Weight]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"box": self.box, "passed": self.passed, "checked": [list(w) for w in self.checked],
                "failures": [list(w) for w in self.failures]}


def residual(op: DifferenceOperator, table: WhittakerTable, lam: Sequence[int]) -> RationalCharacter:
    psi = table[lam]
    return lattice_apply(op, table, lam) - RationalCharacter(psi.num * op.eigenvalue, psi.den)


def eigencheck(ops, table: WhittakerTable, box: int) -> EigenReport:
    """Check ``M Psi = f Psi`` at every dominant weight of height <= box."""
    ops = _as_list(ops)
    checked, failures = [], []
    for lam in box_weights(table.rank, box):
        checked.append(lam)
        if any(not residual(op, table, lam).is_zero() for op in ops):
            failures.append(lam)
    return EigenReport(box, checked, failures)


def _as_list(ops) -> List[DifferenceOperator]:
    return [ops] if isinstance(ops, DifferenceOperator) else list(ops)


# -- solving -------------------------------------------------------------------

def _leading_term(op: DifferenceOperator) -> Term:
    if not op.terms:
        raise NotTriangular("operator has no terms")
    top = max(height(t.shift) for t in op.terms)
    leads = [t for t in op.terms if height(t.shift) == top]
    if top <= 0 or len(leads) != 1:
        raise NotTriangular("no unique shift of maximal positive height")
    return leads[0]


def _mobius(n: int) -> int:
    return int(sympy.mobius(n))


def invert_q_coefficient(c: LaurentPoly) -> RationalCharacter:
    """``1 / c`` for a nonzero q-polynomial ``c`` that is a product of cyclotomic factors."""
    rank = c.nvars
    zero = (0,) * rank
    if c.is_zero():
        raise SingularCoefficient("leading coefficient vanishes")
    lo = c.q_range()[0]
    expr = sum(sympy.Rational(v.numerator, v.denominator) * _Q ** (k - lo) for (k, _), v in c.items())
    lc, factors = sympy.factor_list(expr, _Q)
    # exponent of (q^d - 1) in the expansion of c via Phi_n = prod_{d | n} (q^d - 1)^mu(n/d)
    ex: Dict[int, int] = {}
    for fac, e in factors:
        n = _cyclotomic_index(sympy.Poly(fac, _Q))
        if n == 0:
            lo += e
            continue
        for d in sympy.divisors(n):
            mu = _mobius(n // d)
            if mu:
                ex[d] = ex.get(d, 0) + e * mu
    # (q^d - 1) = -(1 - q^d)
    sign = -1 if sum(ex.values()) % 2 else 1
    scale = Fraction(1) / (Fraction(int(sympy.Rational(lc).p), int(sympy.Rational(lc).q)) * sign)
    num = LaurentPoly.monomial(-lo, zero, scale)
    den = []
    for d, e in sorted(ex.items()):
        if e > 0:
            den += [(d, zero)] * e
        elif e < 0:
            num = num * (LaurentPoly.one(rank) - LaurentPoly.monomial(d, zero)) ** (-e)
    return RationalCharacter(num, den)


def _cyclotomic_index(p: sympy.Poly) -> int:
    """``n`` with ``p = Phi_n`` up to sign; 0 for ``p = q``; raises otherwise."""
    if p.as_expr() == _Q:
        return 0
    deg = p.degree()
    for n in range(1, 2 * deg * deg + 3):
        if sympy.totient(n) != deg:
            continue
        phi = sympy.Poly(sympy.cyclotomic_poly(n, _Q), _Q)
        if p == phi or p == -phi:
            return n
    raise InternalNonFactored(f"coefficient factor {p.as_expr()} is not cyclotomic")


def solve_whittaker(ops, box: int) -> WhittakerTable:
    """Table of eigenfunctions on the dominant box, normalized by ``Psi_0 = 1``."""
    ops = _as_list(ops)
    if not ops:
        raise NotTriangular("no operators given")
    rank = ops[0].rank
    leads = [(op, _leading_term(op)) for op in ops]
    table = WhittakerTable(rank, box, {(0,) * rank: RationalCharacter.one(rank)})
    for mu in box_weights(rank, box)[1:]:
        table.entries[mu] = _solve_entry(leads, table, mu)
    checkable = [lam for lam in box_weights(rank, box)
                 if all(tuple(a + b for a, b in zip(lam, t.shift)) in table
                        or not is_dominant(tuple(a + b for a, b in zip(lam, t.shift)))
                        for op in ops for t in op.terms)]
    for lam in checkable:
        if any(not residual(op, table, lam).is_zero() for op in ops):
            raise InconsistentSystem(f"eigen-equation fails at {lam} after solving")
    return table


def _solve_entry(leads, table: WhittakerTable, mu: Weight) -> RationalCharacter:
    for op, lead in leads:
        lam = tuple(a - b for a, b in zip(mu, lead.shift))
        if not is_dominant(lam):
            continue
        others = []
        for t in op.terms:
            if t is lead:
                continue
            target = tuple(a + b for a, b in zip(lam, t.shift))
            if is_dominant(target) and target not in table:
                raise NotTriangular(f"equation at {lam} needs the unknown entry {target}")
            others.append(t)
        rest = lattice_apply(DifferenceOperator(op.type, others, op.eigenvalue), table, lam)
        psi = table[lam]
        rhs = RationalCharacter(psi.num * op.eigenvalue, psi.den) - rest
        inv = invert_q_coefficient(lead.evaluate(lam))
        return (rhs * inv).reduced()
    raise NotTriangular(f"no operator determines the entry at {mu}")


def operator_configs(directory: str | Path | None = None) -> Dict[str, List[Tuple[str, DifferenceOperator]]]:
    """Operator files grouped by type; defaults to the shipped operators."""
    if directory is None:
        root = resources.files("zastava").joinpath("data", "operators")
        files = sorted((p.name, p.read_text()) for p in root.iterdir() if p.name.endswith(".json"))
    else:
        files = sorted((p.name, p.read_text()) for p in Path(directory).glob("*.json"))
    out: Dict[str, List[Tuple[str, DifferenceOperator]]] = {}
    for name, text in files:
        op = parse_operator(json.loads(text))
        out.setdefault(op.type, []).append((name, op))
    return out


@dataclass
class CorollaryReport:
    skipped: bool
    note: str
    results: List[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r["passed"] for r in self.results)

    def to_json(self) -> dict:
        return {"skipped": self.skipped, "note": self.note, "passed": self.passed, "results": self.results}


def corollary_probe(configs: Dict[str, List[Tuple[str, DifferenceOperator]]], box: int = 3) -> CorollaryReport:
    """Compare solved tables of every pair of configs sharing a type."""
    groups = {t: v for t, v in configs.items() if len(v) >= 2}
    if not groups:
        return CorollaryReport(True, "skipped: no external operator configs")
    results = []
    for t, items in sorted(groups.items()):
        solved = []
        for name, op in items:
            table = solve_whittaker(op, box + 1)
            solved.append((name, table, eigencheck(op, table, box).passed))
        base_name, base, _ = solved[0]
        for name, table, ok in solved[1:]:
            diff = base.agrees_with(table)
            results.append({"type": t, "configs": [base_name, name], "differences": [list(w) for w in diff],
                            "eigencheck": ok and solved[0][2], "passed": not diff and ok and solved[0][2]})
    return CorollaryReport(False, f"compared {len(results)} pair(s)", results)
