"""Verification suites run by ``zastava verify``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from . import charalg, demazure, jfun, toda
from .exactalg import rc_equal, series_expand
from .rootdata import a_map, build_folding, norm_half, parent_pairing

WEIGHT_TYPES = ("A1", "A2", "C2", "B3", "C3", "G2", "F4")
FAMILY_TYPES = ("C2", "G2", "A1", "A2")
CHARACTER_TYPES = ("C2", "G2", "A1")


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: List[Check] = field(default_factory=list)
    note: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> Check | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_json(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "note": self.note,
                "checks": [c.to_json() for c in self.checks]}


def box(rank: int, total: int):
    """Positive-cone vectors with coordinate sum <= total."""
    return [a for a in itertools.product(range(total + 1), repeat=rank) if sum(a) <= total]


def folding_identity_failures(type_name: str, total: int = 6) -> List[tuple]:
    F = build_folding(type_name)
    bad = []
    for alpha in box(F.rank, total):
        lhs = F.d * 2 * norm_half(F, alpha)
        b = a_map(F, alpha)
        if lhs != parent_pairing(F, b, b):
            bad.append(alpha)
    return bad


def suite_weights() -> SuiteReport:
    rep = SuiteReport("weights")
    for t in WEIGHT_TYPES:
        bad = folding_identity_failures(t)
        rep.checks.append(Check(f"folding identity {t}", not bad, f"first counterexample {bad[0]}" if bad else ""))
    for name in charalg.BUILTIN_FIXTURES:
        bad = charalg.homogeneity_audit(charalg.load_fixture(name))
        rep.checks.append(Check(f"homogeneity {name}", not bad, str(bad[0]) if bad else ""))
    return rep


def suite_main(series_bound: int = 12) -> SuiteReport:
    rep = SuiteReport("main")
    for t, fixture in (("C2", "c2_reduced"), ("G2", "g2_reduced"), ("C2", "c2_full")):
        r = jfun.check_theorem_main(build_folding(t), (1, 1), charalg.load_fixture(fixture))
        rep.checks.append(Check(f"J_(1,1) {t} vs {fixture} ({r.method})", r.passed,
                                "" if r.passed else f"first difference {r.first_difference}"))
    A1 = build_folding("A1")
    for n in range(1, 5):
        r = jfun.check_theorem_main(A1, (n,), charalg.a1_tower(A1, n))
        rep.checks.append(Check(f"J_{n} A1 vs free tower", r.passed))
    for t in FAMILY_TYPES:
        F = build_folding(t)
        bad_sub, bad_pos = [], []
        for alpha in box(F.rank, 5):
            if not jfun.check_resubstitution(F, alpha):
                bad_sub.append(alpha)
            s = series_expand(jfun.compute_J(F, alpha), series_bound)
            if not (s.is_integral() and s.is_nonnegative()):
                bad_pos.append(alpha)
        rep.checks.append(Check(f"recurrence resubstitution {t}", not bad_sub, str(bad_sub[:1])))
        rep.checks.append(Check(f"series positivity {t}", not bad_pos, str(bad_pos[:1])))
    return rep


def character_failures(type_name: str, total: int = 3) -> Dict[str, List[tuple]]:
    """Properties of the normalized Demazure characters on a dominant box."""
    F = build_folding(type_name)
    bad: Dict[str, List[tuple]] = {"integral": [], "invariant": [], "zero": [], "leading": [], "classical": []}
    for lam in demazure.dominant_weights(F.rank, total):
        psi = demazure.demazure_character(F, lam)
        if not (psi.is_integral() and psi.is_nonnegative()):
            bad["integral"].append(lam)
        if not demazure.is_weyl_invariant(F, psi):
            bad["invariant"].append(lam)
        if sum(lam) == 0 and psi != psi.one(F.rank):
            bad["zero"].append(lam)
        if psi.coefficient(0, lam) != 1:
            bad["leading"].append(lam)
        if psi.at_q_zero() != demazure.weyl_character_finite(F, lam):
            bad["classical"].append(lam)
    return bad


def a1_chain_failures(box_size: int = 6) -> Dict[str, list]:
    A1 = build_folding("A1")
    op = toda.load_operator("a1_toda")
    table = toda.solve_whittaker(op, box_size)
    diff = [m for m in range(box_size + 1) if not rc_equal(
        table[(m,)], demazure.global_weyl_character(A1, demazure.demazure_character(A1, (m,)), (m,)))]
    eig = toda.eigencheck(op, table, box_size - 1)
    return {"mismatch": diff, "residuals": eig.failures}


def suite_whittaker() -> SuiteReport:
    rep = SuiteReport("whittaker")
    for t in CHARACTER_TYPES:
        for prop, bad in character_failures(t).items():
            rep.checks.append(Check(f"{t} character {prop}", not bad, f"first failure {bad[0]}" if bad else ""))
    chain = a1_chain_failures()
    rep.checks.append(Check("A1 toda table vs Demazure route", not chain["mismatch"], str(chain["mismatch"][:1])))
    rep.checks.append(Check("A1 toda eigencheck", not chain["residuals"], str(chain["residuals"][:1])))
    return rep


def suite_corollary(ops_dir: str | None = None) -> SuiteReport:
    probe = toda.corollary_probe(toda.operator_configs(ops_dir))
    rep = SuiteReport("corollary", note=probe.note)
    for r in probe.results:
        rep.checks.append(Check(f"{r['type']} {' = '.join(r['configs'])}", r["passed"],
                                f"differences {r['differences']}" if r["differences"] else ""))
    return rep


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "main": suite_main,
    "weights": suite_weights,
    "whittaker": suite_whittaker,
    "corollary": suite_corollary,
}
