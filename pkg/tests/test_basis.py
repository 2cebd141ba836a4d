from fractions import Fraction

import pytest

from gamma_battery import battery
from trilie.algebra import GammaTuple, classify
from trilie.basis import (WrongCaseError, active_ks, algebra_to_dual_map, basis_kind,
                          bordered_determinant, build_basis, build_case1_basis,
                          build_case2_basis, certify_basis, clear_denominators,
                          clearing_multiplier, minor, transport_to_dual)
from trilie.coadjoint import build_operators
from trilie.poly import F, Polynomial, RationalFunction, X0, e_var, x_var


def P(v):
    return Polynomial.variable(v)


def test_minor_examples():
    g3 = GammaTuple.parse("1,0,1")
    assert minor(g3, 1) == P(x_var(3, 1))
    assert minor(g3, 1, "algebra") == P(e_var(1, 3))
    g4 = GammaTuple.parse("1,0,0,1")
    assert minor(g4, 2) == P(x_var(3, 1)) * P(x_var(4, 2)) - P(x_var(3, 2)) * P(x_var(4, 1))
    g5 = GammaTuple.parse("2,1,0,1,2")
    assert minor(g5, 2) == P(x_var(4, 1)) * P(x_var(5, 2)) - P(x_var(4, 2)) * P(x_var(5, 1))


def test_minor_bounds():
    g = GammaTuple.parse("1,0,1")
    with pytest.raises(ValueError):
        minor(g, 2)


def test_algebra_minor_is_dual_minor_under_substitution():
    for n in (3, 4, 5, 6, 7, 8):
        g = battery(n)[0][1]
        ren = algebra_to_dual_map(n)
        for k in range(1, n // 2 + 1):
            assert minor(g, k, "algebra").rename(ren) == minor(g, k)


def test_bordered_determinant_matches_substitution():
    for n in (4, 5, 6):
        g = battery(n)[0][1]
        ren = algebra_to_dual_map(n)
        for k in range(1, n // 2 + 1):
            for i in range(k + 1, n - k + 1):
                alg = bordered_determinant(g, k, i, "algebra")
                assert alg.rename(ren) == bordered_determinant(g, k, i)


def test_case1_basis_n3():
    g = GammaTuple.parse("1,0,1")
    b = build_case1_basis(g)
    assert b.cardinality == 2
    assert b.polynomial_members == [P(x_var(3, 1))]
    member = b.rational_member
    expected = RationalFunction(P(X0) * P(x_var(3, 1)) + P(x_var(2, 1)) * P(x_var(3, 2)),
                                P(x_var(3, 1)))
    assert member == expected


def test_case1_basis_n4_tie_drops_term():
    g = GammaTuple.parse("1,0,0,1")
    b = build_case1_basis(g)
    assert b.cardinality == 3
    member = b.rational_member
    x41 = P(x_var(4, 1))
    expected_num = P(X0) * x41 + P(x_var(2, 1)) * P(x_var(4, 2)) + P(x_var(3, 1)) * P(x_var(4, 3))
    assert member == RationalFunction(expected_num, x41)
    assert active_ks(g) == [1]


def test_case1_wrong_case():
    with pytest.raises(WrongCaseError):
        build_case1_basis(GammaTuple.parse("1,0,0,-2"))
    with pytest.raises(WrongCaseError):
        build_case2_basis(GammaTuple.parse("1,0,1"))


def test_case2_basis_n4():
    g = GammaTuple.parse("1,0,0,-2")
    b = build_case2_basis(g)
    assert b.cardinality == 1
    pp = b.power_members[0]
    assert pp.exponents == {1: Fraction(-1), 2: Fraction(1)}


def test_case2_basis_n2_empty():
    b = build_case2_basis(GammaTuple.parse("1,-1"))
    assert b.cardinality == 0


def test_case2_basis_deep_k0():
    g = GammaTuple.parse("0,0,0,1,0,0")
    b = build_case2_basis(g)
    assert b.cardinality == 2
    assert [m.k for m in b.members] == [1, 2]
    assert b.power_members == []


def test_clear_denominators_n3():
    g = GammaTuple.parse("1,0,1")
    cleared = clear_denominators(build_case1_basis(g))
    central = next(m for m in cleared.members if m.role == "central")
    assert central.polynomial == P(X0) * P(x_var(3, 1)) + P(x_var(2, 1)) * P(x_var(3, 2))


def test_clear_denominators_n4():
    g = GammaTuple.parse("1,0,0,1")
    cleared = clear_denominators(build_case1_basis(g))
    central = next(m for m in cleared.members if m.role == "central")
    x41 = P(x_var(4, 1))
    assert central.polynomial == (P(X0) * x41 + P(x_var(2, 1)) * P(x_var(4, 2))
                                  + P(x_var(3, 1)) * P(x_var(4, 3)))
    assert clearing_multiplier(g) == x41


def test_clear_denominators_recovers_rational_member():
    for n in (3, 4, 5, 6):
        for _, g in battery(n):
            if not classify(g).singular:
                continue
            b = build_case1_basis(g)
            cleared = clear_denominators(b)
            central = next(m for m in cleared.members if m.role == "central")
            mult = clearing_multiplier(g)
            assert RationalFunction(central.polynomial, mult) == b.rational_member


def test_clear_denominators_wrong_case():
    with pytest.raises(WrongCaseError):
        clear_denominators(build_case2_basis(GammaTuple.parse("1,0,0,-2")))


KIND_TABLE = [
    # hand-derived through the exponent formula before implementation
    ("1,0,0,1", "casimir"),        # singular
    ("1,0,0,-2", "rational"),      # alpha_2 = -1
    ("1,2,-2,-1", "rational"),     # alpha_2 = -3
    ("1,0,1,0", "polynomial"),     # alpha_2 = 0
    ("1,-1,2,0", "polynomial"),    # alpha_2 = 2
    ("1,1,0,1", "casimir"),        # k0 = n/2, no power members
    ("1,-1", "casimir"),           # n = 2, empty basis
    ("0,0,0,1,0,0", "casimir"),    # k0 = n/2 = 3
    ("1,0,5,5,2,0", "polynomial"), # alpha_2 = alpha_3 = 1
    ("1,0,1,2,3,1", "rational"),   # k0 = 2, alpha_3 = -4/3
]


@pytest.mark.parametrize("text,kind", KIND_TABLE)
def test_basis_kind_table(text, kind):
    assert basis_kind(GammaTuple.parse(text)) == kind


def test_dual_and_algebra_members_agree():
    for n in (3, 4, 5, 6):
        for _, g in battery(n)[:4]:
            dual = build_basis(g, "dual")
            alg = build_basis(g, "algebra")
            moved = transport_to_dual(alg)
            for a, b in zip(moved.members, dual.members):
                assert (a.polynomial, a.rational) == (b.polynomial, b.rational)
                if a.power is not None:
                    assert a.power.exponents == b.power.exponents


def test_minors_annihilated_after_regular_perturbation():
    # the case-1 minors are invariants of the nilpotent part: perturbing
    # gamma to a regular tuple must keep all nilpotent residues zero
    g = GammaTuple.parse("1,0,0,1")
    perturbed = GammaTuple.parse("1,0,0,-2")
    ops = [op for op in build_operators(perturbed) if op.source != ("f",)]
    for k in (1, 2):
        from trilie.coadjoint import check_invariant
        assert check_invariant(minor(g, k), ops).ok


def test_certify_basis_cross_checks_cardinality():
    from trilie.coadjoint import count_invariants_oracle
    for n in (3, 4, 5):
        for _, g in battery(n)[:4]:
            b = build_basis(g)
            ops = build_operators(g)
            certs, indep = certify_basis(b, ops)
            assert all(c.ok for c in certs)
            assert indep
            assert b.cardinality == count_invariants_oracle(g)
            assert b.cardinality == classify(g).expected_count(n)
