"""Twisted J-functions from the fermionic recurrence.

``J_alpha = sum_{0 <= beta <= alpha} q^{(beta,beta)/2} z^{beta^*} J_beta / (q)_{alpha-beta}``
with ``J_0 = 1``.  The ``beta = alpha`` term is moved to the left, so each
``J_alpha`` is the sum over smaller ``beta`` divided by
``1 - q^{(alpha,alpha)/2} z^{alpha^*}``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .errors import GradingMismatch, InternalNonFactored, NegativeCoordinate
from .exactalg import LaurentPoly, RationalCharacter, rc_equal, rc_sum, series_expand
from .rootdata import FoldingDatum, enumerate_below, norm_half, root_to_weight

DEFAULT_SERIES_BOUND = 10


def _check_positive(alpha) -> Tuple[int, ...]:
    alpha = tuple(int(c) for c in alpha)
    if any(c < 0 for c in alpha):
        raise NegativeCoordinate(f"{alpha} has a negative coordinate")
    return alpha


def pochhammer_factors(F: FoldingDatum, gamma) -> List[Tuple[int, Tuple[int, ...]]]:
    """Denominator factors ``(1 - q_i^s)`` making up ``(q)_gamma``."""
    gamma = _check_positive(gamma)
    zero = (0,) * F.rank
    return [(F.d_i[i] * s, zero) for i in range(F.rank) for s in range(1, gamma[i] + 1)]


def q_pochhammer(F: FoldingDatum, gamma) -> LaurentPoly:
    """``(q)_gamma = prod_i prod_{s=1}^{c_i} (1 - q^{d_i s})``."""
    out = LaurentPoly.one(F.rank)
    for k, mu in pochhammer_factors(F, gamma):
        out = out * (LaurentPoly.one(F.rank) - LaurentPoly.monomial(k, mu))
    return out


def boundary_weight(F: FoldingDatum, alpha) -> Tuple[int, Tuple[int, ...]]:
    """``(k, mu)`` of the eigencharacter ``q^{(alpha,alpha)/2} z^{alpha^*}``."""
    return norm_half(F, alpha), root_to_weight(F, alpha)


def recurrence_term(F: FoldingDatum, alpha, beta, j_beta: RationalCharacter) -> RationalCharacter:
    """``q^{(beta,beta)/2} z^{beta^*} J_beta / (q)_{alpha - beta}``."""
    k, mu = boundary_weight(F, beta)
    diff = tuple(a - b for a, b in zip(alpha, beta))
    return RationalCharacter(j_beta.num.shift(k, mu), j_beta.den + tuple(pochhammer_factors(F, diff)))


@dataclass
class JFamily:
    """Memo table of ``J_alpha`` for one folding."""

    F: FoldingDatum
    _memo: Dict[Tuple[int, ...], RationalCharacter] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        self._memo[(0,) * self.F.rank] = RationalCharacter.one(self.F.rank)

    def __call__(self, alpha) -> RationalCharacter:
        alpha = _check_positive(alpha)
        if alpha in self._memo:
            return self._memo[alpha]
        for beta in enumerate_below(alpha):
            if beta not in self._memo:
                self._solve(beta)
        return self._memo[alpha]

    def _solve(self, alpha):
        lower = [b for b in enumerate_below(alpha) if b != alpha]
        total = rc_sum((recurrence_term(self.F, alpha, b, self._memo[b]) for b in lower), self.F.rank)
        k, mu = boundary_weight(self.F, alpha)
        if k < 1:
            raise InternalNonFactored(f"boundary factor for {alpha} has q-degree {k}")
        result = total.divide_by_factor((k, mu)).reduced()
        if any(f[0] < 1 for f in result.den):
            raise InternalNonFactored(f"J_{alpha} acquired a q-free denominator factor")
        with self._lock:
            self._memo.setdefault(alpha, result)

    def resubstitute(self, alpha) -> RationalCharacter:
        """Right-hand side of the recurrence at ``alpha``, including ``beta = alpha``."""
        alpha = _check_positive(alpha)
        return rc_sum(
            (recurrence_term(self.F, alpha, b, self(b)) for b in enumerate_below(alpha)), self.F.rank
        )


_FAMILIES: Dict[FoldingDatum, JFamily] = {}
_FAMILIES_LOCK = threading.Lock()


def family(F: FoldingDatum) -> JFamily:
    with _FAMILIES_LOCK:
        if F not in _FAMILIES:
            _FAMILIES[F] = JFamily(F)
        return _FAMILIES[F]


def compute_J(F: FoldingDatum, alpha) -> RationalCharacter:
    return family(F)(alpha)


def check_resubstitution(F: FoldingDatum, alpha) -> bool:
    fam = family(F)
    return rc_equal(fam(alpha), fam.resubstitute(alpha))


@dataclass
class TheoremMainReport:
    type: str
    alpha: Tuple[int, ...]
    method: str
    passed: bool
    bound: int | None = None
    first_difference: Tuple[int, Tuple[int, ...]] | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "type": self.type,
            "alpha": list(self.alpha),
            "method": self.method,
            "passed": self.passed,
            "bound": self.bound,
            "first_difference": None if self.first_difference is None
            else [self.first_difference[0], list(self.first_difference[1])],
            "detail": self.detail,
        }


def check_theorem_main(F: FoldingDatum, alpha, fixture, n: int = DEFAULT_SERIES_BOUND) -> TheoremMainReport:
    """Compare ``J_alpha`` with the character of a fixture coordinate ring."""
    from . import charalg

    alpha = _check_positive(alpha)
    if fixture.rank != F.rank:
        raise GradingMismatch(f"fixture has {fixture.rank} z-coordinates, {F.name} has rank {F.rank}")
    J = compute_J(F, alpha)
    if len(fixture.relations) <= 1:
        closed = charalg.hypersurface_series(fixture) if fixture.relations else charalg.free_series(fixture)
        ok = rc_equal(J, closed)
        report = TheoremMainReport(F.name, alpha, "exact", ok)
        if not ok:
            report.first_difference = _first_difference(series_expand(J, n), series_expand(closed, n))
            report.bound = n
        return report
    hf = charalg.graded_hilbert_function(fixture, n)
    expected = charalg.hilbert_poly(hf, F.rank)
    got = series_expand(J, n)
    diff = _first_difference(got, expected)
    return TheoremMainReport(F.name, alpha, "degreewise", diff is None, bound=n, first_difference=diff)


def _first_difference(a: LaurentPoly, b: LaurentPoly):
    keys = sorted(set(a.terms) | set(b.terms))
    for key in keys:
        if a.coefficient(*key) != b.coefficient(*key):
            return key
    return None
