from fractions import Fraction

import pytest

from gamma_battery import battery
from trilie.algebra import F_IDX, GammaTuple, classify, e_idx
from trilie.basis import minor
from trilie.coadjoint import (DegenerateSamplingError, build_operators,
                              check_invariant, count_invariants_oracle,
                              functional_independence, relative_weight)
from trilie.poly import Polynomial, RationalFunction, X0, x_var


def P(v):
    return Polynomial.variable(v)


def _op(ops, idx):
    return next(o for o in ops if o.source == idx)


def test_central_element_gives_zero_operator():
    g = GammaTuple.parse("1,0,1")
    op = _op(build_operators(g), e_idx(1, 3))
    assert op.is_zero


def test_operator_coefficients_from_bracket_table():
    g = GammaTuple.parse("1,0,1")
    op = _op(build_operators(g), e_idx(1, 2))
    # [e_12, e_23] = e_13 puts coefficient x_31 on d/dx_32
    assert op.action[x_var(3, 2)] == P(x_var(3, 1))
    # [e_12, f] = -(g1 - g2) e_12 puts -x_21 on d/dx_0
    assert op.action[X0] == -P(x_var(2, 1))


def test_operator_n2_diagonal():
    g = GammaTuple.parse("1,-1")
    op = _op(build_operators(g), F_IDX)
    assert op.action == {x_var(2, 1): P(x_var(2, 1)) * 2}


def test_check_invariant_central_coordinate():
    g = GammaTuple.parse("1,0,1")
    cert = check_invariant(P(x_var(3, 1)), build_operators(g))
    assert cert.ok


def test_check_invariant_rational_member():
    g = GammaTuple.parse("1,0,1")
    F = RationalFunction(P(X0) * P(x_var(3, 1)) + P(x_var(2, 1)) * P(x_var(3, 2)),
                         P(x_var(3, 1)))
    assert check_invariant(F, build_operators(g)).ok


def test_check_invariant_detects_noninvariant():
    g = GammaTuple.parse("1,-1")
    ops = build_operators(g)
    cert = check_invariant(P(x_var(2, 1)), ops)
    assert not cert.ok
    entry = next(e for e in cert.entries if e.operator == "f")
    assert entry.residue == P(x_var(2, 1)) * 2


def test_relative_weight_examples():
    g = GammaTuple.parse("1,-1")
    ops = build_operators(g)
    assert relative_weight(P(x_var(2, 1)), _op(ops, F_IDX)) == 2

    g4 = GammaTuple.parse("1,0,0,-2")
    ops4 = build_operators(g4)
    d1, d2 = minor(g4, 1), minor(g4, 2)
    chi1 = relative_weight(d1, _op(ops4, F_IDX))
    chi2 = relative_weight(d2, _op(ops4, F_IDX))
    assert chi2 == 3
    alpha2 = classify(g4).alphas[2]
    assert alpha2 * chi1 + chi2 == 0


def test_relative_weight_nilpotent_operators_annihilate_minors():
    for n in (4, 5, 6):
        for _, g in battery(n)[:4]:
            ops = build_operators(g)
            for k in range(1, n // 2 + 1):
                d = minor(g, k)
                for op in ops:
                    if op.source == F_IDX:
                        continue
                    assert relative_weight(d, op) == 0


def test_relative_weight_not_relative():
    g = GammaTuple.parse("1,0,1")
    ops = build_operators(g)
    # x_21 + x_31 is not a weight vector for the operator of e_23
    p = P(x_var(2, 1)) + P(x_var(3, 1))
    results = {relative_weight(p, op) for op in ops}
    assert None in results


def test_count_oracle_examples():
    assert count_invariants_oracle(GammaTuple.parse("1,0,1")) == 2
    assert count_invariants_oracle(GammaTuple.parse("1,0,0,-2")) == 1
    assert count_invariants_oracle(GammaTuple.parse("1,-1")) == 0


def test_count_oracle_needs_trials():
    with pytest.raises(ValueError):
        count_invariants_oracle(GammaTuple.parse("1,-1"), trials=0)


def test_functional_independence_examples():
    g = GammaTuple.parse("1,0,1")
    member = RationalFunction(P(X0) * P(x_var(3, 1)) + P(x_var(2, 1)) * P(x_var(3, 2)),
                              P(x_var(3, 1)))
    assert functional_independence([P(x_var(3, 1)), member], g)
    assert not functional_independence([P(x_var(3, 1)), P(x_var(3, 1)) * 2], g)
    assert functional_independence([], g)


def test_functional_independence_degenerate_sampling(monkeypatch):
    import random as _random
    g = GammaTuple.parse("1,0,1")
    member = RationalFunction(P(x_var(2, 1)), P(x_var(3, 1)))
    # every sampled coordinate is zero, so the denominator always vanishes
    monkeypatch.setattr(_random.Random, "randint", lambda self, a, b: 0)
    with pytest.raises(DegenerateSamplingError):
        functional_independence([member], g, retries=3)


def test_weight_balance_for_battery_power_products():
    for n in (4, 5, 6):
        for _, g in battery(n):
            cls = classify(g)
            if cls.singular:
                continue
            ops = build_operators(g)
            minors = {k: minor(g, k) for k in range(1, n // 2 + 1)}
            for k in range(cls.k0 + 1, n // 2 + 1):
                for op in ops:
                    chi0 = relative_weight(minors[cls.k0], op)
                    chik = relative_weight(minors[k], op)
                    assert chi0 is not None and chik is not None
                    assert cls.alphas[k] * chi0 + chik == 0
