from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zastava import demazure
from zastava.demazure import (
    AffineElement,
    build_affine,
    check_step_identity,
    convention_record,
    demazure_character,
    demazure_step,
    dominant_weights,
    global_weyl_character,
    is_weyl_invariant,
    load_conventions,
    normalize_character,
    resolve_convention,
    translation_word,
    weyl_character_finite,
)
from zastava.errors import InexactDivision, NormalizationFailure
from zastava.exactalg import LaurentPoly, RationalCharacter, rc_equal
from zastava.rootdata import build_folding, w0

from oracles import alternating_character, from_sympy_poly, gaussian_binomial, same_function, to_sympy, zsyms

M = LaurentPoly.monomial
A1, A2, C2, G2 = (build_folding(t) for t in ("A1", "A2", "C2", "G2"))


def fundamentals(F):
    return [tuple(int(i == j) for j in range(F.rank)) for i in range(F.rank)]


def dimension(p: LaurentPoly) -> Fraction:
    return sum(p.at_q_one().terms.values())


# -- affine data --------------------------------------------------------------

def test_a1_gcm():
    assert build_affine(A1).gcm == ((2, -2), (-2, 2))


@pytest.mark.parametrize("t, gcm, name", [
    ("C2", ((2, -2, 0), (-1, 2, -1), (0, -2, 2)), "D3^(2)"),
    ("G2", ((2, -1, 0), (-1, 2, -3), (0, -1, 2)), "D4^(3)"),
])
def test_rank_two_twisted_gcm(t, gcm, name):
    A = build_affine(build_folding(t))
    assert A.gcm == gcm and A.name == name and A.size == 3


@pytest.mark.parametrize("t, name, marks, comarks", [
    ("A1", "A1^(1)", (1, 1), (1, 1)),
    ("A2", "A2^(1)", (1, 1, 1), (1, 1, 1)),
    ("A3", "A3^(1)", (1, 1, 1, 1), (1, 1, 1, 1)),
    ("C2", "D3^(2)", (1, 1, 1), (1, 2, 1)),
    ("B3", "D4^(2)", (1, 1, 1, 1), (1, 2, 2, 1)),
    ("C3", "A5^(2)", (1, 1, 2, 1), (1, 1, 2, 2)),
    ("F4", "E6^(2)", (1, 2, 3, 2, 1), (1, 2, 3, 4, 2)),
    ("G2", "D4^(3)", (1, 2, 1), (1, 2, 3)),
])
def test_null_vectors(t, name, marks, comarks):
    A = build_affine(build_folding(t))
    assert (A.name, A.marks, A.comarks) == (name, marks, comarks)
    n = A.size
    for i in range(n):
        assert sum(A.gcm[i][j] * A.marks[j] for j in range(n)) == 0
        assert sum(A.comarks[j] * A.gcm[j][i] for j in range(n)) == 0
    # finite block is the Cartan matrix of the z-lattice root system
    F = A.F
    assert tuple(tuple(r[1:]) for r in A.gcm[1:]) == tuple(zip(*F.cartan_g))


@pytest.mark.parametrize("t", ["A1", "C2", "G2", "B3"])
def test_null_root_has_level_zero(t):
    A = build_affine(build_folding(t))
    delta = (0, (0,) * A.F.rank, 1)
    assert all(A.pair(delta, i) == 0 for i in range(A.size))
    assert A.level((1, (0,) * A.F.rank, 0)) == 1


# -- Demazure operators ---------------------------------------------------------

def test_step_examples():
    A = build_affine(C2)
    tau = (1, (1, 0), 0)
    assert A.pair(tau, 1) == 1
    assert demazure_step(A, 1, AffineElement.exp(tau)) == AffineElement.exp(tau) + AffineElement.exp(A.reflect(1, tau))
    tau0 = (1, (0, 1), 0)
    assert demazure_step(A, 1, AffineElement.exp(tau0)) == AffineElement.exp(tau0)
    neg = (1, (-1, 1), 0)
    assert demazure_step(A, 1, AffineElement.exp(neg)).is_zero()


def affine_elements(rank):
    weight = st.tuples(st.integers(-1, 2), st.tuples(*[st.integers(-3, 3)] * rank), st.integers(-2, 2))
    return st.dictionaries(weight, st.integers(-3, 3), max_size=4).map(AffineElement)


@pytest.mark.parametrize("t", ["A1", "C2", "G2"])
@given(data=st.data())
def test_demazure_idempotent_and_exact(t, data):
    A = build_affine(build_folding(t))
    f = data.draw(affine_elements(A.F.rank))
    i = data.draw(st.integers(0, A.size - 1))
    once = demazure_step(A, i, f)
    assert demazure_step(A, i, once) == once
    check_step_identity(A, i, f)


def test_step_identity_guard(monkeypatch):
    A = build_affine(A1)
    f = AffineElement.exp((1, (1,), 0))
    monkeypatch.setattr(demazure, "demazure_step", lambda A, i, f: f)
    with pytest.raises(InexactDivision):
        check_step_identity(A, 1, f)


@pytest.mark.parametrize("t", ["A2", "C2", "G2"])
@given(data=st.data())
def test_finite_steps_idempotent(t, data):
    F = build_folding(t)
    mu = data.draw(st.tuples(*[st.integers(-3, 3)] * F.rank))
    i = data.draw(st.integers(0, F.rank - 1))
    once = demazure.finite_demazure_step(F, i, M(0, mu))
    assert demazure.finite_demazure_step(F, i, once) == once


# -- words and conventions ------------------------------------------------------

def test_zero_weight_word_is_empty():
    for t in ("A1", "C2", "G2"):
        F = build_folding(t)
        assert translation_word(build_affine(F), (0,) * F.rank) == []


def test_word_rejects_non_dominant():
    with pytest.raises(ValueError):
        translation_word(build_affine(C2), (1, -1))


@pytest.mark.parametrize("t", ["A1", "A2", "B2", "C2", "G2"])
def test_frozen_conventions_reproduce(t):
    F = build_folding(t)
    total = 3 if F.rank <= 2 else 2
    assert resolve_convention(F, total) == load_conventions()[t]


def test_frozen_word_lengths():
    conv = load_conventions()
    assert conv["A1"]["word_lengths"] == {"0": 0, "1": 1, "2": 2, "3": 3}
    assert {k: conv["C2"]["word_lengths"][k] for k in ("1,0", "0,1", "1,1", "3,0")} == \
        {"1,0": 4, "0,1": 3, "1,1": 7, "3,0": 12}
    assert {k: conv["G2"]["word_lengths"][k] for k in ("1,0", "0,1", "0,3")} == \
        {"1,0": 6, "0,1": 10, "0,3": 30}
    assert all(rec["sign_convention"] == "minus" and not rec["flip_applied"] for rec in conv.values())


@pytest.mark.parametrize("t", ["A1", "C2", "G2"])
def test_plus_convention_rejected(t):
    assert convention_record(build_folding(t), "plus", 2) is None


# -- characters -----------------------------------------------------------------

@pytest.mark.parametrize("t", ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2"])
def test_zero_weight_character(t):
    F = build_folding(t)
    zero = (0,) * F.rank
    assert demazure_character(F, zero) == LaurentPoly.one(F.rank)
    assert rc_equal(global_weyl_character(F, LaurentPoly.one(F.rank), zero), RationalCharacter.one(F.rank))


def test_a1_examples():
    z, zi = M(0, (1,)), M(0, (-1,))
    assert demazure_character(A1, (1,)) == z + zi
    assert demazure_character(A1, (2,)) == M(0, (2,)) + 1 + M(1, (0,)) + M(0, (-2,))
    want = RationalCharacter(z + zi, [(1, (0,))])
    assert rc_equal(global_weyl_character(A1, demazure_character(A1, (1,)), (1,)), want)


@pytest.mark.parametrize("m", range(7))
def test_a1_gaussian_binomial_oracle(m):
    (z,) = zsyms(1)
    oracle = sum(gaussian_binomial(m, k) * z ** (m - 2 * k) for k in range(m + 1))
    assert demazure_character(A1, (m,)) == from_sympy_poly(oracle, 1)


def test_c2_global_divides_by_one_factor():
    psi = demazure_character(C2, (1, 0))
    assert global_weyl_character(C2, psi, (1, 0)).den == ((1, (0, 0)),)


@pytest.mark.parametrize("t", ["A1", "C2", "G2"])
def test_character_properties(t):
    F = build_folding(t)
    for lam in dominant_weights(F.rank, 3):
        psi = demazure_character(F, lam)
        assert psi.is_integral() and psi.is_nonnegative()
        assert is_weyl_invariant(F, psi)
        assert psi.coefficient(0, lam) == 1
        assert psi.at_q_zero() == weyl_character_finite(F, lam)


@pytest.mark.parametrize("t", ["A1", "A2", "C2", "G2"])
def test_q_one_factorization(t):
    F = build_folding(t)
    fund = [demazure_character(F, w).at_q_one() for w in fundamentals(F)]
    for lam in dominant_weights(F.rank, 3):
        prod = LaurentPoly.one(F.rank)
        for p, m in zip(fund, lam):
            prod = prod * p ** m
        assert demazure_character(F, lam).at_q_one() == prod, lam


def test_c2_fundamental_dimensions_match_parent():
    # the twisted local modules restrict from fundamental A3 modules
    A3 = build_folding("A3")
    parent = sorted(dimension(weyl_character_finite(A3, w)) for w in fundamentals(A3))
    assert parent == [4, 4, 6]
    assert [dimension(demazure_character(C2, w)) for w in fundamentals(C2)] == [6, 4]


def test_g2_fundamental_dimensions():
    # 8 and 28 + 1 from the vector and adjoint of the parent D4
    assert [dimension(demazure_character(G2, w)) for w in fundamentals(G2)] == [8, 29]


# -- finite characters ------------------------------------------------------------

def test_finite_examples():
    assert weyl_character_finite(A1, (2,)) == M(0, (2,)) + 1 + M(0, (-2,))
    assert weyl_character_finite(A2, (1, 0)) == M(0, (1, 0)) + M(0, (-1, 1)) + M(0, (0, -1))
    assert weyl_character_finite(G2, (0, 0)) == LaurentPoly.one(2)


@pytest.mark.parametrize("t, total", [("A2", 3), ("C2", 3), ("G2", 2), ("B3", 1), ("C3", 1)])
def test_finite_against_alternant(t, total):
    F = build_folding(t)
    for lam in dominant_weights(F.rank, total):
        assert same_function(to_sympy(weyl_character_finite(F, lam)), alternating_character(F, lam)), lam


@pytest.mark.parametrize("t, dims", [
    ("C2", [4, 5]), ("G2", [7, 14]), ("B3", [7, 8, 21]), ("C3", [6, 14, 14]), ("A3", [4, 4, 6]),
])
def test_classical_fundamental_dimensions(t, dims):
    F = build_folding(t)
    assert sorted(dimension(weyl_character_finite(F, w)) for w in fundamentals(F)) == dims


# -- normalization ------------------------------------------------------------------

def test_normalize_examples():
    z, zi = M(0, (1,)), M(0, (-1,))
    assert normalize_character(A1, z + zi, (1,)) == (z + zi, False)
    assert normalize_character(A1, (z + zi) * M(3, (0,)), (1,)) == (z + zi, False)
    out, flipped = normalize_character(A2, M(2, w0(A2, (1, 0))), (1, 0))
    assert flipped and out == M(0, (1, 0))


def test_normalize_failures():
    with pytest.raises(NormalizationFailure):
        normalize_character(A1, LaurentPoly.zero(1), (1,))
    with pytest.raises(NormalizationFailure):
        normalize_character(A2, M(0, (1, 1)), (1, 0))
    with pytest.raises(NormalizationFailure):
        normalize_character(A1, M(0, (1,), 2), (1,))
