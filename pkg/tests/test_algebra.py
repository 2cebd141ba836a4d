import random
from fractions import Fraction

import pytest

from gamma_battery import battery
from trilie.algebra import (AllEqualGammaError, GammaTuple, StructureConstants,
                            bracket, classify, dim_algebra, e_idx, F_IDX,
                            gamma_equivalent, kappa, secondary_diagonal_commutes)


def test_gamma_rejects_constant_tuple():
    with pytest.raises(AllEqualGammaError):
        GammaTuple.parse("1,1,1")
    with pytest.raises(AllEqualGammaError):
        GammaTuple.parse("1,1")


def test_gamma_parse_fractions():
    g = GammaTuple.parse("1/2,-3/2")
    assert g.gamma == (Fraction(1, 2), Fraction(-3, 2))


def test_bracket_examples():
    g = GammaTuple.parse("1,0,1")
    assert bracket(e_idx(1, 2), e_idx(2, 3), g) == {e_idx(1, 3): 1}
    g4 = GammaTuple.parse("1,0,0,1")
    assert bracket(e_idx(1, 2), e_idx(3, 4), g4) == {}
    assert bracket(F_IDX, e_idx(1, 2), g) == {e_idx(1, 2): 1}


def test_bracket_index_out_of_range():
    g = GammaTuple.parse("1,0,1")
    with pytest.raises(ValueError):
        bracket(e_idx(1, 4), e_idx(1, 2), g)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_jacobi_and_antisymmetry(n):
    rng = random.Random(n)
    tuples = [g for _, g in battery(n)][:3]
    for _ in range(2):
        vals = [Fraction(rng.randint(-4, 4)) for _ in range(n)]
        if len(set(vals)) > 1:
            tuples.append(GammaTuple(n, tuple(vals)))
    for g in tuples:
        sc = StructureConstants(g)
        assert sc.antisymmetry_ok()
        assert sc.jacobi_ok()


def test_classify_examples():
    assert classify(GammaTuple.parse("1,0,1")).singular
    cls = classify(GammaTuple.parse("1,0,0,-2"))
    assert not cls.singular and cls.k0 == 1
    assert cls.alphas == {2: Fraction(-1)}
    assert classify(GammaTuple.parse("1,0,0,1")).singular


def test_classify_alpha_formula_hand_value():
    # alpha_2 = -((g4-g1) + (g3-g2)) / (g4-g1) = -((-2) + (-4)) / (-2) = -3
    cls = classify(GammaTuple.parse("1,2,-2,-1"))
    assert cls.k0 == 1 and cls.alphas[2] == Fraction(-3)


def test_classify_deep_k0():
    cls = classify(GammaTuple.parse("0,0,0,1,0,0"))
    assert not cls.singular and cls.k0 == 3 and cls.alphas == {}


def test_normalize_gamma():
    g = GammaTuple.parse("1,0,1").normalize()
    assert g.gamma == (Fraction(1, 3), Fraction(-2, 3), Fraction(1, 3))
    g2 = GammaTuple.parse("1,-1")
    assert g2.normalize() == g2
    g5 = GammaTuple.parse("2,1,0,1,2").normalize()
    assert g5.gamma == tuple(Fraction(x, 5) for x in (4, -1, -6, -1, 4))
    assert g5.normalize() == g5


def test_gamma_equivalent_affine():
    ok, wit = gamma_equivalent(GammaTuple.parse("1,0,1"), GammaTuple.parse("3,1,3"))
    assert ok and wit == (2, 1, False)


def test_gamma_equivalent_reflection():
    ok, wit = gamma_equivalent(GammaTuple.parse("1,0,-1"), GammaTuple.parse("-1,0,1"))
    assert ok and wit[2] in (False, True)
    # this pair is also related by the affine map lam=-1, mu=0
    lam, mu, refl = wit
    src = (1, 0, -1) if not refl else (-1, 0, 1)
    assert tuple(lam * s + mu for s in src) == (-1, 0, 1)


def test_gamma_not_equivalent():
    ok, wit = gamma_equivalent(GammaTuple.parse("1,0,1"), GammaTuple.parse("1,0,-1"))
    assert not ok and wit is None


def test_secondary_diagonal_commutes_matches_singular():
    assert secondary_diagonal_commutes(GammaTuple.parse("1,0,0,1"))
    assert not secondary_diagonal_commutes(GammaTuple.parse("1,0,0,-2"))
    assert secondary_diagonal_commutes(GammaTuple.parse("2,1,0,1,2"))
    for n in range(2, 9):
        for _, g in battery(n):
            assert secondary_diagonal_commutes(g) == classify(g).singular


def _classification_data(g):
    cls = classify(g)
    return cls.singular, cls.k0, cls.alphas


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_classification_invariant_under_equivalence(n):
    rng = random.Random(100 + n)
    for _, g in battery(n):
        base = _classification_data(g)
        for _ in range(3):
            lam = Fraction(0)
            while lam == 0:
                lam = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            mu = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            mapped = GammaTuple(n, tuple(lam * q + mu for q in g.gamma))
            assert _classification_data(mapped) == base
        assert _classification_data(g.reflect()) == base
        assert _classification_data(g.normalize()) == base


def test_dim_and_kappa():
    assert dim_algebra(4) == 7
    assert kappa(5, 2) == 4
