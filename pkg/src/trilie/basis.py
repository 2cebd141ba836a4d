"""Construction of the invariant bases, both cases, in dual or algebra variables.

Case 1 (singular tuples, gamma_k == gamma_(n-k+1) for all k <= n//2): the
floor(n/2) minors of the corner submatrices together with one member carrying
x_0, a sum of bordered determinants over the minors.

Case 2 (regular tuples): the minors below the first asymmetric index k0 stay
as plain polynomials, the rest enter only through the formal power products
Delta_k0^alpha_k * Delta_k, which are certified through relative weights
rather than expanded into radicals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import GammaClassification, GammaTuple, classify, kappa
from .coadjoint import (CertificateEntry, CoadjointOperator, InvarianceCertificate,
                        check_invariant, functional_independence, relative_weight)
from .poly import (F, Polynomial, RationalFunction, Var, X0, determinant,
                   e_var, x_var)


class WrongCaseError(ValueError):
    """Operation applied to a basis of the other case."""


def _zero() -> Polynomial:
    return Polynomial.zero()


def minor_matrix(n: int, k: int, variables: str = "dual") -> List[List[Polynomial]]:
    if not 1 <= k <= n // 2:
        raise ValueError(f"minor index k={k} out of range for n={n}")
    kap = kappa(n, k)
    if variables == "dual":
        # rows kappa..n, columns 1..k of the strictly lower matrix X
        return [[Polynomial.variable(x_var(r, c)) for c in range(1, k + 1)]
                for r in range(kap, n + 1)]
    if variables == "algebra":
        # rows 1..k, columns kappa..n of the strictly upper matrix E
        return [[Polynomial.variable(e_var(r, c)) for c in range(kap, n + 1)]
                for r in range(1, k + 1)]
    raise ValueError(f"unknown variable set {variables!r}")


def minor_n(n: int, k: int, variables: str = "dual") -> Polynomial:
    return determinant(minor_matrix(n, k, variables))


def minor(g: GammaTuple, k: int, variables: str = "dual") -> Polynomial:
    """Delta_k, the k-th corner minor (both variable sets give equal images)."""
    return minor_n(g.n, k, variables)


def bordered_determinant(g: GammaTuple, k: int, i: int,
                         variables: str = "dual") -> Polynomial:
    """The (k+1)x(k+1) bordered determinant attached to row/column i, k<i<kappa."""
    n = g.n
    kap = kappa(n, k)
    if not (1 <= k <= n // 2 and k < i < kap):
        raise ValueError(f"bordered determinant needs k < i < kappa, got k={k} i={i}")
    if variables == "dual":
        rows = [[Polynomial.variable(x_var(i, c)) for c in range(1, k + 1)] + [_zero()]]
        for r in range(kap, n + 1):
            rows.append([Polynomial.variable(x_var(r, c)) for c in range(1, k + 1)]
                        + [Polynomial.variable(x_var(r, i))])
        return determinant(rows)
    if variables == "algebra":
        rows = []
        for r in range(1, k + 1):
            rows.append([Polynomial.variable(e_var(r, i))]
                        + [Polynomial.variable(e_var(r, c)) for c in range(kap, n + 1)])
        rows.append([_zero()] + [Polynomial.variable(e_var(i, c))
                                 for c in range(kap, n + 1)])
        return determinant(rows)
    raise ValueError(f"unknown variable set {variables!r}")


def active_ks(g: GammaTuple) -> List[int]:
    """Indices whose term survives in the case-1 member: gamma_k != gamma_{k+1}."""
    return [k for k in range(1, g.n // 2 + 1) if g.g(k) != g.g(k + 1)]


@dataclass
class PowerProduct:
    """Formal product of minors with rational exponents (case-2 members)."""

    n: int
    exponents: Dict[int, Fraction]

    def factors(self) -> List[Tuple[int, Fraction]]:
        return sorted(self.exponents.items())

    def gradient_row(self, point: Dict[Var, Fraction],
                     variables: Sequence[Var]) -> List[Fraction]:
        """Logarithmic-derivative row sum r_k * grad(Delta_k)/Delta_k at a point."""
        row = [Fraction(0)] * len(variables)
        for k, r in self.factors():
            d = minor_n(self.n, k)
            dv = d.evaluate(point)
            if dv == 0:
                raise ZeroDivisionError("minor vanishes at the sample point")
            grads = d.gradient()
            for pos, v in enumerate(variables):
                if v in grads:
                    row[pos] += r * grads[v].evaluate(point) / dv
        return row

    def __str__(self) -> str:
        return "*".join(f"D{k}^({r})" for k, r in self.factors())


@dataclass
class BasisMember:
    role: str                                    # "minor" | "central" | "power"
    k: Optional[int] = None                      # minor index when role == "minor"
    polynomial: Optional[Polynomial] = None
    rational: Optional[RationalFunction] = None
    power: Optional[PowerProduct] = None

    @property
    def value(self):
        if self.polynomial is not None:
            return self.polynomial
        if self.rational is not None:
            return self.rational
        return self.power


@dataclass
class InvariantBasis:
    gamma: GammaTuple
    case: str                                    # "singular" | "regular"
    kind: str
    variables: str                               # "dual" | "algebra"
    cleared: bool
    classification: GammaClassification
    members: List[BasisMember] = field(default_factory=list)

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def polynomial_members(self) -> List[Polynomial]:
        return [m.polynomial for m in self.members if m.polynomial is not None]

    @property
    def rational_member(self) -> Optional[RationalFunction]:
        for m in self.members:
            if m.rational is not None:
                return m.rational
        return None

    @property
    def power_members(self) -> List[PowerProduct]:
        return [m.power for m in self.members if m.power is not None]


def basis_kind(g: GammaTuple) -> str:
    """Casimir / rational / polynomial classification of the basis.

    A basis of Casimir operators exists iff gamma_k == gamma_(n-k+1) for all
    k <= n//2 - 1 (this covers the singular case and the regular case with
    k0 == n//2, where no power products occur at all).  Otherwise the basis
    is rational iff every exponent alpha_k is rational, which over rational
    gamma always holds, and polynomial iff additionally the alpha_k all
    vanish or some alpha_k is positive.
    """
    n = g.n
    m = n // 2
    if all(g.g(k) == g.g(kappa(n, k)) for k in range(1, m)):
        return "casimir"
    cls = classify(g)
    alphas = list(cls.alphas.values())
    if all(a == 0 for a in alphas) or any(a > 0 for a in alphas):
        return "polynomial"
    return "rational"


def build_case1_basis(g: GammaTuple, variables: str = "dual") -> InvariantBasis:
    cls = classify(g)
    if not cls.singular:
        raise WrongCaseError("case-1 basis requested for a regular tuple")
    n = g.n
    m = n // 2
    members = [BasisMember("minor", k=k, polynomial=minor(g, k, variables))
               for k in range(1, m + 1)]

    actives = active_ks(g)
    # every valid singular tuple keeps at least one term, otherwise gamma
    # would be constant
    assert actives, "empty active set contradicts the non-constant gamma"
    deltas = {k: minor(g, k, variables) for k in actives}
    den = Polynomial.one()
    for k in actives:
        den = den * deltas[k]
    x0 = Polynomial.variable(X0 if variables == "dual" else F)
    num = x0 * den
    for k in actives:
        weight = g.g(k) - g.g(k + 1)
        if k % 2 == 0:
            weight = -weight
        cof = Polynomial.one()
        for kk in actives:
            if kk != k:
                cof = cof * deltas[kk]
        total = Polynomial.zero()
        for i in range(k + 1, kappa(n, k)):
            total = total + bordered_determinant(g, k, i, variables)
        num = num + cof * total * weight
    members.append(BasisMember("central", rational=RationalFunction(num, den)))
    return InvariantBasis(g, "singular", basis_kind(g), variables, False, cls, members)


def build_case2_basis(g: GammaTuple, variables: str = "dual") -> InvariantBasis:
    cls = classify(g)
    if cls.singular:
        raise WrongCaseError("case-2 basis requested for a singular tuple")
    n = g.n
    m = n // 2
    members = [BasisMember("minor", k=k, polynomial=minor(g, k, variables))
               for k in range(1, cls.k0)]
    for k in range(cls.k0 + 1, m + 1):
        pp = PowerProduct(n, {cls.k0: cls.alphas[k], k: Fraction(1)})
        members.append(BasisMember("power", power=pp))
    return InvariantBasis(g, "regular", basis_kind(g), variables, False, cls, members)


def build_basis(g: GammaTuple, variables: str = "dual") -> InvariantBasis:
    if classify(g).singular:
        return build_case1_basis(g, variables)
    return build_case2_basis(g, variables)


def clearing_multiplier(g: GammaTuple, variables: str = "dual") -> Polynomial:
    out = Polynomial.one()
    for k in active_ks(g):
        out = out * minor(g, k, variables)
    return out


def clear_denominators(basis: InvariantBasis) -> InvariantBasis:
    """Replace the rational member by multiplier * member, a polynomial.

    The multiplier is the product of the minors whose term survives; the
    construction of the rational member keeps exactly that product as its
    denominator, so the cleared member is its numerator.
    """
    if basis.case != "singular":
        raise WrongCaseError("only the singular case has a rational member")
    members = []
    for mem in basis.members:
        if mem.role == "central":
            members.append(BasisMember("central", polynomial=mem.rational.num))
        else:
            members.append(mem)
    return InvariantBasis(basis.gamma, basis.case, basis.kind, basis.variables,
                          True, basis.classification, members)


# ---------------------------------------------------------------------------
# certification of a built basis
# ---------------------------------------------------------------------------

def power_product_certificate(pp: PowerProduct, g: GammaTuple,
                              ops: Sequence[CoadjointOperator],
                              subject: str = "") -> InvarianceCertificate:
    """Weight-balance certificate sum_k r_k * chi_a(Delta_k) = 0 per operator."""
    cert = InvarianceCertificate(subject or str(pp))
    weights: Dict[int, Dict[str, Fraction]] = {}
    for k, _ in pp.factors():
        d = minor(g, k)
        weights[k] = {}
        for op in ops:
            chi = relative_weight(d, op)
            weights[k][op.name] = chi
    for op in ops:
        total: Optional[Fraction] = Fraction(0)
        for k, r in pp.factors():
            chi = weights[k][op.name]
            if chi is None:
                total = None
                break
            total += r * chi
        cert.entries.append(CertificateEntry(op.name, "weight_balance", balance=total))
    return cert


def certify_basis(basis: InvariantBasis, ops: Sequence[CoadjointOperator],
                  seed: int = 0) -> Tuple[List[InvarianceCertificate], bool]:
    """Per-member exact certificates plus the Jacobian independence verdict.

    Certification always runs on the dual-variable image of the basis; for
    an algebra-variable basis the members are transported back first.
    """
    g = basis.gamma
    dual = basis if basis.variables == "dual" else transport_to_dual(basis)
    certs: List[InvarianceCertificate] = []
    for pos, mem in enumerate(dual.members):
        label = f"member[{pos}]:{mem.role}"
        if mem.power is not None:
            certs.append(power_product_certificate(mem.power, g, ops, label))
        elif mem.rational is not None:
            certs.append(check_invariant(mem.rational, ops, label))
        else:
            certs.append(check_invariant(mem.polynomial, ops, label))
    values = [m.value for m in dual.members]
    independent = functional_independence(values, g, seed=seed)
    return certs, independent


_DUAL_OF_ALGEBRA_CACHE: Dict[int, Dict[Var, Var]] = {}


def algebra_to_dual_map(n: int) -> Dict[Var, Var]:
    m = _DUAL_OF_ALGEBRA_CACHE.get(n)
    if m is None:
        m = {F: X0}
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                m[e_var(i, j)] = x_var(j, i)
        _DUAL_OF_ALGEBRA_CACHE[n] = m
    return m


def dual_to_algebra_map(n: int) -> Dict[Var, Var]:
    return {v: k for k, v in algebra_to_dual_map(n).items()}


def transport_to_dual(basis: InvariantBasis) -> InvariantBasis:
    """Commutative image of an algebra-variable basis in dual variables."""
    if basis.variables == "dual":
        return basis
    ren = algebra_to_dual_map(basis.gamma.n)
    members = []
    for mem in basis.members:
        if mem.polynomial is not None:
            members.append(BasisMember(mem.role, k=mem.k,
                                       polynomial=mem.polynomial.rename(ren)))
        elif mem.rational is not None:
            members.append(BasisMember(mem.role, rational=RationalFunction(
                mem.rational.num.rename(ren), mem.rational.den.rename(ren))))
        else:
            members.append(mem)
    return InvariantBasis(basis.gamma, basis.case, basis.kind, "dual",
                          basis.cleared, basis.classification, members)
