"""Minimal enveloping-algebra layer: ordered words, PBW rewriting, symmetrization.

Words are tuples of basis indices; the fixed basis order is e_ij
lexicographically by (i, j) with f last, matching the variable order of the
commutative kernel.  The normal form sorts a word by repeatedly rewriting an
adjacent out-of-order pair a*b into b*a + [a,b]; the result is independent of
the rewrite order (checked by the confluence tests).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import F_IDX, GammaTuple, Idx, bracket, classify, e_idx, idx_name, kappa
from .basis import (PowerProduct, active_ks, bordered_determinant,
                    build_case2_basis, minor)
from .poly import F, Polynomial, Var, X0

Word = Tuple[Idx, ...]


class IdentityFailureError(RuntimeError):
    """The symmetrization difference is not proportional to the minor."""

    def __init__(self, message: str, residual: "NCPolynomial"):
        super().__init__(message)
        self.residual = residual


class NCPolynomial:
    """Element of the enveloping algebra as {word: Fraction}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, Fraction]] = None):
        clean: Dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[tuple(w)] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: Dict[Word, Fraction]) -> "NCPolynomial":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls._raw({})

    @classmethod
    def word(cls, w: Sequence[Idx], coeff=1) -> "NCPolynomial":
        c = Fraction(coeff)
        return cls._raw({tuple(w): c} if c else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPolynomial._raw(out)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial._raw({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return NCPolynomial.zero()
            return NCPolynomial._raw({w: v * c for w, v in self.terms.items()})
        out: Dict[Word, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                s = out.get(w)
                s = ca * cb if s is None else s + ca * cb
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NCPolynomial._raw(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        raise TypeError("NCPolynomial is not hashable")

    def sorted_terms(self) -> List[Tuple[Word, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for w, c in self.sorted_terms():
            body = "*".join(idx_name(a) for a in w) if w else "1"
            if c == 1:
                chunks.append(body)
            elif c == -1:
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{c}*{body}")
        return " + ".join(chunks)

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"


_COMMUTATIVE_IMAGE = {F: F_IDX}


def _var_to_idx(v: Var) -> Idx:
    if v == F:
        return F_IDX
    if v[0] == 2:                       # e_ij coordinate
        return e_idx(v[1], v[2])
    if v[0] == 1:                       # dual coordinate x_ij of e_ji
        return e_idx(v[2], v[1])
    if v == X0:
        return F_IDX
    raise ValueError(f"variable {v} has no basis element")


def from_commutative(p: Polynomial) -> NCPolynomial:
    """Commutative polynomial in e/f (or dual x/x_0) variables to sorted words."""
    out: Dict[Word, Fraction] = {}
    for mono, coeff in p.terms.items():
        letters: List[Idx] = []
        for v, e in mono:
            letters.extend([_var_to_idx(v)] * e)
        letters.sort()
        w = tuple(letters)
        s = out.get(w)
        s = coeff if s is None else s + coeff
        if s:
            out[w] = s
        else:
            out.pop(w, None)
    return NCPolynomial._raw(out)


def pbw_normal_form(p: NCPolynomial, g: GammaTuple,
                    rng: Optional[random.Random] = None) -> NCPolynomial:
    """Rewrite until every word is sorted; rewrite-position choice is free."""
    out: Dict[Word, Fraction] = {}
    stack = list(p.terms.items())
    while stack:
        w, c = stack.pop()
        positions = [t for t in range(len(w) - 1) if w[t] > w[t + 1]]
        if not positions:
            s = out.get(w)
            s = c if s is None else s + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
            continue
        pos = positions[0] if rng is None else rng.choice(positions)
        a, b = w[pos], w[pos + 1]
        stack.append((w[:pos] + (b, a) + w[pos + 2:], c))
        for idx, q in bracket(a, b, g).items():
            stack.append((w[:pos] + (idx,) + w[pos + 2:], c * q))
    return NCPolynomial._raw(out)


def symmetrize_pair(w: Sequence[Idx], p: int, q: int) -> NCPolynomial:
    """Half the sum of the word and the word with positions p and q swapped."""
    w = tuple(w)
    if not 0 <= p < q < len(w):
        raise ValueError("need valid positions p < q")
    swapped = list(w)
    swapped[p], swapped[q] = swapped[q], swapped[p]
    out = NCPolynomial.word(w, Fraction(1, 2))
    return out + NCPolynomial.word(tuple(swapped), Fraction(1, 2))


def minor_variables_commute(g: GammaTuple, k: int) -> bool:
    """All basis elements occurring in Delta_k commute pairwise."""
    n = g.n
    kap = kappa(n, k)
    idxs = [e_idx(r, c) for r in range(1, k + 1) for c in range(kap, n + 1)]
    for a in idxs:
        for b in idxs:
            if bracket(a, b, g):
                return False
    return True


# ---------------------------------------------------------------------------
# the bordered determinant as an operator: ordering and symmetrization
# ---------------------------------------------------------------------------

def _split_bordered_monomial(mono, i: int):
    """Factor a bordered-determinant monomial into (column, row, rest) letters.

    Exactly one factor e_(i', i) ends at i and exactly one factor e_(i, j')
    starts at i; everything else belongs to the minor block and commutes
    with both.
    """
    left = right = None
    rest: List[Idx] = []
    for v, e in mono:
        idx = _var_to_idx(v)
        for _ in range(e):
            if idx[2] == i:
                if left is not None:
                    raise ValueError("monomial with two column factors")
                left = idx
            elif idx[1] == i:
                if right is not None:
                    raise ValueError("monomial with two row factors")
                right = idx
            else:
                rest.append(idx)
    if left is None or right is None:
        raise ValueError("monomial misses the noncommuting pair")
    rest.sort()
    return left, right, rest


def bordered_nc_forms(g: GammaTuple, k: int, i: int,
                      order: str = "after") -> Tuple[NCPolynomial, NCPolynomial]:
    """Ordered and pair-symmetrized forms of the bordered determinant.

    order == "after" writes the column factor e_(i', i) after the row factor
    e_(i, j') in every monomial; "before" is the opposite uniform convention.
    """
    if order not in ("after", "before"):
        raise ValueError("order must be 'after' or 'before'")
    det = bordered_determinant(g, k, i, variables="algebra")
    ordered: Dict[Word, Fraction] = {}
    sym = NCPolynomial.zero()
    for mono, coeff in det.terms.items():
        left, right, rest = _split_bordered_monomial(mono, i)
        pair = (right, left) if order == "after" else (left, right)
        w = tuple(rest) + pair
        s = ordered.get(w)
        s = coeff if s is None else s + coeff
        if s:
            ordered[w] = s
        else:
            ordered.pop(w, None)
        half = Fraction(coeff, 2)
        sym = sym + NCPolynomial.word(tuple(rest) + (left, right), half)
        sym = sym + NCPolynomial.word(tuple(rest) + (right, left), half)
    return NCPolynomial._raw(ordered), sym


def constant_summand_pairs(g: GammaTuple) -> Dict[int, List[int]]:
    """Admissible (k, i) index sets; an empty list marks a vacuous k."""
    n = g.n
    return {k: list(range(k + 1, kappa(n, k)))
            for k in range(1, n // 2 + 1)}


def verify_constant_summand(g: GammaTuple, k: int, i: int,
                            order: str = "after") -> Fraction:
    """Exact scalar c with  sym - ordered = c * Delta_k  in normal form.

    Raises IdentityFailureError when the difference is not proportional to
    the minor.  The returned scalar is reported as computed; no particular
    value is forced.
    """
    cls = classify(g)
    if not cls.singular:
        raise ValueError("constant-summand check is defined for singular tuples")
    n = g.n
    if not (1 <= k <= n // 2 and k < i < kappa(n, k)):
        raise ValueError(f"need k <= n/2 and k < i < kappa, got k={k} i={i}")
    ordered, sym = bordered_nc_forms(g, k, i, order)
    diff = pbw_normal_form(sym - ordered, g)
    minor_nc = pbw_normal_form(from_commutative(minor(g, k, "algebra")), g)
    if diff.is_zero:
        return Fraction(0)
    w0, c0 = next(iter(minor_nc.terms.items()))
    if w0 not in diff.terms:
        raise IdentityFailureError("difference misses the minor support", diff)
    c = diff.terms[w0] / c0
    residual = diff - minor_nc * c
    if not residual.is_zero:
        raise IdentityFailureError("difference not proportional to the minor",
                                   residual)
    return c


# ---------------------------------------------------------------------------
# the operator basis
# ---------------------------------------------------------------------------

def central_member_nc(g: GammaTuple, order: str = "before") -> NCPolynomial:
    """Cleared f-member of the operator basis, in uniform word order.

    The element is f * P + sum_k w_k * C_k * B_k where P is the product of
    the surviving minors, C_k the product with the k-th minor removed and
    B_k the sum of ordered bordered blocks.  The minor products are kept as
    leading word blocks (their full polynomials are central, their single
    letters are not), and within each bordered block the column/row pair is
    written in the requested uniform order.
    """
    n = g.n
    actives = active_ks(g)
    deltas = {k: minor(g, k, "algebra") for k in actives}
    prod_all = Polynomial.one()
    for k in actives:
        prod_all = prod_all * deltas[k]
    out = from_commutative(Polynomial.variable(F) * prod_all)
    for k in actives:
        weight = g.g(k) - g.g(k + 1)
        if k % 2 == 0:
            weight = -weight
        cof = Polynomial.one()
        for kk in actives:
            if kk != k:
                cof = cof * deltas[kk]
        cof_nc = from_commutative(cof)
        blocks = NCPolynomial.zero()
        for i in range(k + 1, kappa(n, k)):
            blocks = blocks + bordered_nc_forms(g, k, i, order)[0]
        out = out + (cof_nc * blocks) * weight
    return out


def build_operator_basis(g: GammaTuple,
                         order: str = "before") -> Tuple[List[NCPolynomial], List[PowerProduct]]:
    """Members of the operator basis: word elements plus power-product data."""
    cls = classify(g)
    if cls.singular:
        members = [from_commutative(minor(g, k, "algebra"))
                   for k in range(1, g.n // 2 + 1)]
        members.append(central_member_nc(g, order))
        return members, []
    basis = build_case2_basis(g, variables="algebra")
    members = [from_commutative(m.polynomial) for m in basis.members
               if m.polynomial is not None]
    return members, basis.power_members


def symmetrized_member_matches(g: GammaTuple, order: str = "before") -> bool:
    """Emitted member equals the symmetrized member minus the constant summands.

    The symmetrized form replaces each bordered block by its pair-symmetrized
    version; the per-block discrepancy is the scalar reported by
    ``verify_constant_summand`` (same ordering convention) times the block's
    minor, which the cleared product turns into a multiple of the full minor
    product.  Both sides are compared in PBW normal form.
    """
    n = g.n
    actives = active_ks(g)
    deltas = {k: minor(g, k, "algebra") for k in actives}
    prod_all = Polynomial.one()
    for k in actives:
        prod_all = prod_all * deltas[k]
    prod_nc = from_commutative(prod_all)

    sym_member = from_commutative(Polynomial.variable(F) * prod_all)
    correction = NCPolynomial.zero()
    for k in actives:
        weight = g.g(k) - g.g(k + 1)
        if k % 2 == 0:
            weight = -weight
        cof = Polynomial.one()
        for kk in actives:
            if kk != k:
                cof = cof * deltas[kk]
        cof_nc = from_commutative(cof)
        for i in range(k + 1, kappa(n, k)):
            _, sym = bordered_nc_forms(g, k, i, order)
            sym_member = sym_member + (cof_nc * sym) * weight
            c = verify_constant_summand(g, k, i, order)
            correction = correction + prod_nc * (weight * c)

    emitted = central_member_nc(g, order)
    lhs = pbw_normal_form(sym_member, g)
    rhs = pbw_normal_form(emitted + correction, g)
    return lhs == rhs
