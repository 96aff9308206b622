import itertools
import threading

import pytest

from zastava.charalg import a1_tower, load_fixture
from zastava.errors import GradingMismatch, NegativeCoordinate
from zastava.exactalg import LaurentPoly, RationalCharacter, rc_equal, series_expand
from zastava.jfun import JFamily, boundary_weight, check_resubstitution, check_theorem_main, compute_J, q_pochhammer
from zastava.rootdata import SUPPORTED_TYPES, build_folding, coroot_weight, root_to_weight

from oracles import recurrence_J, same_function, series_coefficients, to_sympy

C2, G2, A1, A2 = (build_folding(t) for t in ("C2", "G2", "A1", "A2"))


def poly(nvars, *pairs):
    out = LaurentPoly.zero(nvars)
    for k, mu, c in pairs:
        out = out + LaurentPoly.monomial(k, mu, c)
    return out


def one_minus(k, mu):
    return LaurentPoly.one(len(mu)) - LaurentPoly.monomial(k, mu)


# -- q-Pochhammer ---------------------------------------------------------

def test_q_pochhammer_examples():
    zero = (0, 0)
    assert q_pochhammer(C2, (1, 1)) == one_minus(1, zero) * one_minus(2, zero)
    assert q_pochhammer(G2, (0, 2)) == one_minus(1, zero) * one_minus(2, zero)
    assert q_pochhammer(C2, (0, 0)) == LaurentPoly.one(2)


def test_q_pochhammer_rejects_negative():
    with pytest.raises(NegativeCoordinate):
        q_pochhammer(C2, (-1, 0))
    with pytest.raises(NegativeCoordinate):
        compute_J(C2, (0, -1))


# -- closed forms -----------------------------------------------------------

def test_zero_is_one():
    for t in SUPPORTED_TYPES:
        F = build_folding(t)
        assert compute_J(F, (0,) * F.rank) == RationalCharacter.one(F.rank)


@pytest.mark.parametrize("t", ["A1", "A2", "C2", "B3", "G2"])
def test_simple_roots(t):
    F = build_folding(t)
    zero = (0,) * F.rank
    for i in range(F.rank):
        alpha = tuple(int(i == j) for j in range(F.rank))
        d = F.d_i[i]
        want = RationalCharacter(LaurentPoly.one(F.rank), [(d, zero), (d, coroot_weight(F, i))])
        assert rc_equal(compute_J(F, alpha), want)


def test_c2_closed_form_literal():
    a1, a2 = coroot_weight(C2, 0), coroot_weight(C2, 1)
    both = root_to_weight(C2, (1, 1))
    want = RationalCharacter(one_minus(3, both),
                             [(1, (0, 0)), (2, (0, 0)), (1, a1), (2, a2), (1, both)])
    got = compute_J(C2, (1, 1))
    assert got.num == want.num and got.den == want.den


def test_g2_closed_form_literal():
    a1, a2 = coroot_weight(G2, 0), coroot_weight(G2, 1)
    both = root_to_weight(G2, (1, 1))
    want = RationalCharacter(one_minus(4, both),
                             [(1, (0, 0)), (3, (0, 0)), (3, a1), (1, a2), (1, both)])
    got = compute_J(G2, (1, 1))
    assert got.num == want.num and got.den == want.den


def test_a1_double_root():
    z = coroot_weight(A1, 0)
    want = RationalCharacter(LaurentPoly.one(1), [(1, (0,)), (2, (0,)), (1, z), (2, z)])
    assert rc_equal(compute_J(A1, (2,)), want)
    wrong = RationalCharacter(LaurentPoly.one(1), [(1, (0,)), (2, (0,)), (1, z), (1, z)])
    assert not rc_equal(compute_J(A1, (2,)), wrong)


def test_series_of_c2_to_first_order():
    a1 = coroot_weight(C2, 0)
    both = root_to_weight(C2, (1, 1))
    want = poly(2, (0, (0, 0), 1), (1, (0, 0), 1), (1, a1, 1), (1, both, 1))
    assert series_expand(compute_J(C2, (1, 1)), 1) == want


@pytest.mark.parametrize("F, alpha", [(C2, (1, 1)), (G2, (1, 1))])
def test_z_degree_zero_part_is_inverse_pochhammer(F, alpha):
    s = series_expand(compute_J(F, alpha), 10)
    inv = series_expand(RationalCharacter(LaurentPoly.one(F.rank),
                                          [(F.d_i[i] * k, (0,) * F.rank)
                                           for i in range(F.rank) for k in range(1, alpha[i] + 1)]), 10)
    zero = (0,) * F.rank
    assert s.z_coefficient(zero) == inv.z_coefficient(zero)


# -- independent oracle -------------------------------------------------------

@pytest.mark.parametrize("t, bound", [("A1", 4), ("A2", 2), ("C2", 2), ("G2", 2), ("B3", 1)])
def test_against_sympy_recurrence(t, bound):
    F = build_folding(t)
    for alpha in itertools.product(range(bound + 1), repeat=F.rank):
        if sum(alpha) > bound:
            continue
        assert same_function(to_sympy(compute_J(F, alpha)), recurrence_J(F, alpha)), alpha


def test_series_against_sympy_expansion():
    J = compute_J(C2, (1, 2))
    assert series_expand(J, 6) == series_coefficients(recurrence_J(C2, (1, 2)), 6, 2)


@pytest.mark.parametrize("t", ["A1", "A2", "C2", "G2"])
def test_boundary_factor_present(t):
    F = build_folding(t)
    for alpha in itertools.product(range(3), repeat=F.rank):
        if 0 < sum(alpha) <= 2:
            assert boundary_weight(F, alpha) in compute_J(F, alpha).den, alpha


@pytest.mark.parametrize("t, alpha", [("A2", (1, 2)), ("C2", (1, 2)), ("G2", (2, 1))])
def test_boundary_factor_can_cancel(t, alpha):
    # the fully reduced function has no pole along the boundary eigencharacter
    import sympy
    from oracles import mono, zsyms

    F = build_folding(t)
    k, mu = boundary_weight(F, alpha)
    den = sympy.denom(sympy.cancel(recurrence_J(F, alpha)))
    factors = [f for f, _ in sympy.factor_list(den)[1]]
    target = sympy.factor_list(sympy.together(1 - mono(k, mu, zsyms(F.rank))))[1]
    assert not any(sympy.simplify(f / g[0]).is_constant() for f in factors for g in target)
    assert boundary_weight(F, alpha) not in compute_J(F, alpha).den


@pytest.mark.parametrize("t", ["A1", "A2", "C2", "G2"])
def test_resubstitution(t):
    F = build_folding(t)
    for alpha in itertools.product(range(4), repeat=F.rank):
        if sum(alpha) <= 3:
            assert check_resubstitution(F, alpha)


def test_family_is_thread_safe():
    fam = JFamily(C2)
    results = []

    def work():
        results.append(fam((2, 2)))

    threads = [threading.Thread(target=work) for _ in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(rc_equal(r, compute_J(C2, (2, 2))) for r in results)


# -- comparison with fixture rings ------------------------------------------

def test_theorem_main_reduced_fixtures():
    for F, name in ((C2, "c2_reduced"), (G2, "g2_reduced")):
        r = check_theorem_main(F, (1, 1), load_fixture(name))
        assert r.passed and r.method == "exact"


def test_theorem_main_tower():
    for n in range(1, 4):
        assert check_theorem_main(A1, (n,), a1_tower(A1, n)).passed


def test_theorem_main_perturbed_fixture_fails():
    P = load_fixture("c2_reduced")
    k, mu = P.weights[P.index("a3")]
    bad = P.with_weight("a3", (k + 1, mu))
    r = check_theorem_main(C2, (1, 1), bad)
    assert not r.passed
    assert r.first_difference is not None
    assert r.to_json()["first_difference"] is not None


def test_theorem_main_grading_mismatch():
    with pytest.raises(GradingMismatch):
        check_theorem_main(A2, (1, 1), a1_tower(A1, 1))
